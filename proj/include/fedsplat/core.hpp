#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fedsplat/common.hpp"

namespace fedsplat {

// Axis-aligned box used for scene extents and hash-encoding normalization.
struct Bounds {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());

  bool valid() const { return (hi.array() >= lo.array()).all(); }

  void expand(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }

  void expand(const Bounds& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }

  bool contains(const Vec3& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }

  Vec3 clamp(const Vec3& p) const { return p.cwiseMax(lo).cwiseMin(hi); }

  Vec3 center() const { return 0.5 * (lo + hi); }

  Vec3 extent() const { return hi - lo; }

  double diagonal() const { return (hi - lo).norm(); }

  void inflate(double margin) {
    lo.array() -= margin;
    hi.array() += margin;
  }
};

// One splat. Covariance is kept factored as scale + rotation so it stays
// positive definite under gradient descent.
struct Gaussian {
  Vec3 position = Vec3::Zero();
  Vec3 scale = Vec3::Ones();          // positive lengths
  Vec4 rotation = Vec4(1, 0, 0, 0);   // unit quaternion (w, x, y, z)
  ShMatrix sh_coeffs = ShMatrix::Zero();
  double opacity_logit = 0.0;

  double opacity() const { return sigmoid(opacity_logit); }
};

struct Camera {
  Mat3 intrinsic = Mat3::Identity();
  Mat34 extrinsic = Mat34::Zero();  // world-to-camera [R | t]
  int width = 0;
  int height = 0;
  std::uint64_t image_id = 0;

  Mat3 rotation() const { return extrinsic.leftCols<3>(); }
  Vec3 translation() const { return extrinsic.col(3); }
  Vec3 position() const { return -rotation().transpose() * translation(); }
};

struct GaussianCloud {
  std::vector<Gaussian> gaussians;
  Bounds bounds;

  std::size_t size() const { return gaussians.size(); }
  bool empty() const { return gaussians.empty(); }

  void recompute_bounds() {
    bounds = Bounds{};
    for (const auto& g : gaussians) bounds.expand(g.position);
  }
};

struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<double> rgb;  // row-major, 3 channels per pixel, values in [0, 1]

  ImageBuffer() = default;
  ImageBuffer(int w, int h, double fill = 0.0)
      : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, fill) {}

  double& at(int x, int y, int ch) { return rgb[(static_cast<std::size_t>(y) * width + x) * 3 + ch]; }
  double at(int x, int y, int ch) const { return rgb[(static_cast<std::size_t>(y) * width + x) * 3 + ch]; }

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

  bool same_shape(const ImageBuffer& o) const { return width == o.width && height == o.height; }
};

// Rotation matrix from a quaternion given as (w, x, y, z). The quaternion is
// normalized here, so callers may pass slightly denormalized values.
inline Mat3 rotation_from_quaternion(const Vec4& q_raw) {
  const Vec4 q = q_raw / q_raw.norm();
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Mat3 r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

// Sigma = R * diag(scale^2) * R^T.
inline Mat3 covariance_from_factors(const Vec3& scale, const Vec4& rotation) {
  if (!is_finite(scale) || !is_finite(rotation)) {
    throw std::invalid_argument("covariance_from_factors: non-finite input");
  }
  if (!(scale.array() > 0.0).all()) {
    throw std::invalid_argument("covariance_from_factors: scale must be positive");
  }
  if (std::abs(rotation.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("covariance_from_factors: quaternion not normalized");
  }
  const Mat3 r = rotation_from_quaternion(rotation);
  const Mat3 m = r * scale.asDiagonal();
  return m * m.transpose();
}

// Real spherical harmonics basis up to degree 2, 3DGS coefficient order.
inline constexpr double kSh0 = 0.28209479177387814;
inline constexpr double kSh1 = 0.4886025119029199;
inline constexpr std::array<double, 5> kSh2 = {1.0925484305920792, -1.0925484305920792,
                                               0.31539156525252005, -1.0925484305920792,
                                               0.5462742152960396};

inline std::array<double, 9> sh_basis(const Vec3& dir) {
  const double x = dir[0], y = dir[1], z = dir[2];
  return {kSh0,
          -kSh1 * y,
          kSh1 * z,
          -kSh1 * x,
          kSh2[0] * x * y,
          kSh2[1] * y * z,
          kSh2[2] * (2.0 * z * z - x * x - y * y),
          kSh2[3] * x * z,
          kSh2[4] * (x * x - y * y)};
}

// d(basis_i)/d(dir) for the position gradient through the view direction.
inline std::array<Vec3, 9> sh_basis_grad(const Vec3& dir) {
  const double x = dir[0], y = dir[1], z = dir[2];
  return {Vec3(0, 0, 0),
          Vec3(0, -kSh1, 0),
          Vec3(0, 0, kSh1),
          Vec3(-kSh1, 0, 0),
          Vec3(kSh2[0] * y, kSh2[0] * x, 0),
          Vec3(0, kSh2[1] * z, kSh2[1] * y),
          Vec3(-2.0 * kSh2[2] * x, -2.0 * kSh2[2] * y, 4.0 * kSh2[2] * z),
          Vec3(kSh2[3] * z, 0, kSh2[3] * x),
          Vec3(2.0 * kSh2[4] * x, -2.0 * kSh2[4] * y, 0)};
}

// Evaluates the SH color: basis dot coefficients plus the 0.5 offset,
// clamped at zero. All-zero coefficients give mid gray.
inline Vec3 sh_to_color(const ShMatrix& sh, const Vec3& view_dir) {
  if (!is_finite(view_dir)) throw std::invalid_argument("sh_to_color: non-finite direction");
  const auto basis = sh_basis(view_dir);
  Vec3 color;
  for (int ch = 0; ch < 3; ++ch) {
    double v = 0.5;
    for (int b = 0; b < 9; ++b) v += basis[b] * sh(ch, b);
    color[ch] = std::max(0.0, v);
  }
  return color;
}

// Keeps Gaussians whose opacity is at least `threshold`, preserving order.
inline GaussianCloud prune_by_opacity(const GaussianCloud& cloud, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("prune_by_opacity: threshold must be in (0, 1)");
  }
  GaussianCloud out;
  out.bounds = cloud.bounds;
  out.gaussians.reserve(cloud.size());
  for (const auto& g : cloud.gaussians) {
    if (g.opacity() >= threshold) out.gaussians.push_back(g);
  }
  return out;
}

inline void validate_gaussian(const Gaussian& g) {
  if (!is_finite(g.position) || !is_finite(g.scale) || !is_finite(g.rotation) ||
      !is_finite(g.sh_coeffs) || !std::isfinite(g.opacity_logit)) {
    throw std::invalid_argument("gaussian has non-finite parameters");
  }
  if (!(g.scale.array() > 0.0).all()) throw std::invalid_argument("gaussian scale must be positive");
  if (std::abs(g.rotation.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("gaussian quaternion not normalized");
  }
}

inline void validate_camera(const Camera& c) {
  if (!is_finite(c.intrinsic) || !is_finite(c.extrinsic)) {
    throw std::invalid_argument("camera has non-finite parameters");
  }
  if (!(c.intrinsic(0, 0) > 0.0) || !(c.intrinsic(1, 1) > 0.0)) {
    throw std::invalid_argument("camera focal entries must be positive");
  }
  if (c.intrinsic(0, 1) != 0.0) throw std::invalid_argument("camera skew must be zero");
  const Mat3 r = c.rotation();
  if ((r * r.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6) {
    throw std::invalid_argument("camera rotation block not orthonormal");
  }
  if (c.width <= 0 || c.height <= 0) throw std::invalid_argument("camera dimensions must be positive");
}

}  // namespace fedsplat
