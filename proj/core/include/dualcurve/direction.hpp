#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <vector>

#include "dualcurve/error.hpp"

namespace dualcurve {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Unit vector on S^{n-1}. The norm is 1 within 1e-12 by construction.
class Direction {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  /// Normalizes an arbitrary nonzero vector.
  static Direction normalized(const Vec& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw GeometryError(ErrorCode::InvalidArgument, "direction must be a nonzero finite vector");
    }
    return Direction(v / norm);
  }

  /// Wraps a vector that is already unit length; rejects anything else.
  static Direction unit(const Vec& v) {
    if (std::abs(v.norm() - 1.0) > kUnitTolerance) {
      throw GeometryError(ErrorCode::InvalidArgument, "direction is not a unit vector");
    }
    return Direction(v);
  }

  static Direction axis(int dim, int index, double sign = 1.0) {
    Vec v = Vec::Zero(dim);
    v(index) = sign;
    return Direction(v);
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const Vec& coords() const { return coords_; }
  double operator[](int i) const { return coords_(i); }
  double dot(const Vec& x) const { return coords_.dot(x); }
  double dot(const Direction& o) const { return coords_.dot(o.coords_); }

  Direction operator-() const { return Direction(-coords_); }

  /// Angle to another direction, accurate near 0 and pi.
  double angle_to(const Direction& o) const {
    const double c = coords_.dot(o.coords_);
    const double s = (coords_ - c * o.coords_).norm();
    return std::atan2(s, c);
  }

 private:
  explicit Direction(Vec v) : coords_(std::move(v)) {}
  Vec coords_;
};

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface area of S^{n-1}, i.e. n times the unit ball volume.
inline double sphere_area(int n) { return n * unit_ball_volume(n); }

}  // namespace dualcurve
