#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace fedsplat {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat34 = Eigen::Matrix<double, 3, 4>;
using ShMatrix = Eigen::Matrix<double, 3, 9>;  // row = channel, col = SH coefficient

// Renderer constants shared with the reference 3DGS conventions.
inline constexpr double kNearPlane = 0.01;
inline constexpr double kCovLowPass = 0.3;
inline constexpr double kAlphaCap = 0.99;
inline constexpr double kAlphaFloor = 1.0 / 255.0;
inline constexpr double kTransmittanceCutoff = 1e-4;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double logit(double p) { return std::log(p / (1.0 - p)); }

inline bool all_finite(const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) return false;
  }
  return true;
}

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace fedsplat
