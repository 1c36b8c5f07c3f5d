#pragma once

#include <array>
#include <vector>

#include "fastice/types.hpp"

namespace fastice {

/// Values and reference-cell gradients of the four bilinear shape functions.
///
/// Local node order is counterclockwise starting at the lower-left corner:
/// (0,0), (1,0), (1,1), (0,1).
struct ShapeValues {
  std::array<double, 4> value{};
  std::array<Vec2, 4> grad{};
};

ShapeValues basis_eval(const Vec2& local);

/// Tensor-product Gauss-Legendre rule on the reference cell [0,1]^2.
/// Weights sum to one, so integrals over a physical cell scale by its area.
class QuadratureRule {
 public:
  static QuadratureRule gauss(int points_per_direction);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<Vec2> points_;
  std::vector<double> weights_;
};

/// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct PointLocation {
  int cell = 0;
  int i = 0;  // cell column
  int j = 0;  // cell row
  Vec2 local = Vec2::Zero();
};

/// Uniform quadrilateral grid on [0, extent_x] x [0, extent_y].
///
/// Node (i, j) sits at (i * resolution, j * resolution) and has index
/// j * (nx + 1) + i; cell (i, j) has index j * nx + i.  The mesh is immutable
/// after construction.
class Mesh {
 public:
  Mesh(double extent_x, double extent_y, double resolution);

  double extent_x() const { return extent_x_; }
  double extent_y() const { return extent_y_; }
  double resolution() const { return resolution_; }
  double cell_area() const { return resolution_ * resolution_; }
  double domain_area() const { return extent_x_ * extent_y_; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int num_cells() const { return nx_ * ny_; }
  int num_nodes() const { return (nx_ + 1) * (ny_ + 1); }

  int node_index(int i, int j) const { return j * (nx_ + 1) + i; }
  int cell_index(int i, int j) const { return j * nx_ + i; }

  const Vec2& node(int n) const { return nodes_[n]; }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  const std::array<int, 4>& cell_nodes(int c) const { return cells_[c]; }
  bool is_boundary_node(int n) const { return boundary_[n]; }
  const std::vector<bool>& boundary_mask() const { return boundary_; }

  Vec2 cell_origin(int c) const;
  Vec2 cell_center(int c) const;

  /// Maps reference coordinates of cell c to physical coordinates.
  Vec2 reference_map(int c, const Vec2& local) const;

  bool contains(const Vec2& p) const;

  /// Finds the cell containing p.  Points on shared edges or vertices go to
  /// the lower cell index.  Throws OutOfDomainError outside the closed domain.
  PointLocation locate_point(const Vec2& p) const;

  /// Column (or row) index of the cell containing coordinate s along an axis
  /// with n cells, using the same lower-index tie-break as locate_point.
  int cell_coordinate(double s, int n) const;

 private:
  double extent_x_;
  double extent_y_;
  double resolution_;
  int nx_;
  int ny_;
  std::vector<Vec2> nodes_;
  std::vector<std::array<int, 4>> cells_;
  std::vector<bool> boundary_;
};

Mesh build_uniform_mesh(const Vec2& extent, double resolution);

}  // namespace fastice
