#pragma once

#include <Eigen/Core>

namespace fastice {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Nodal velocity field, interleaved as (vx0, vy0, vx1, vy1, ...).
using NodalField = Eigen::VectorXd;

/// One scalar per cell (tracers live at cell centers).
using CellField = Eigen::VectorXd;

/// Axis-aligned rectangle given by its lower-left and upper-right corners.
struct Rect {
  Vec2 lower_left = Vec2::Zero();
  Vec2 upper_right = Vec2::Zero();

  double width() const { return upper_right.x() - lower_left.x(); }
  double height() const { return upper_right.y() - lower_left.y(); }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p) const {
    return p.x() >= lower_left.x() && p.x() <= upper_right.x() && p.y() >= lower_left.y() &&
           p.y() <= upper_right.y();
  }
};

/// k x v for the upward unit vector k.
inline Vec2 cross_k(const Vec2& v) { return {-v.y(), v.x()}; }

}  // namespace fastice
