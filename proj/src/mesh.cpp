#include "fastice/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "fastice/errors.hpp"

namespace fastice {

ShapeValues basis_eval(const Vec2& local) {
  const double xi = local.x();
  const double eta = local.y();
  ShapeValues s;
  s.value = {(1 - xi) * (1 - eta), xi * (1 - eta), xi * eta, (1 - xi) * eta};
  s.grad = {Vec2(-(1 - eta), -(1 - xi)), Vec2(1 - eta, -xi), Vec2(eta, xi), Vec2(-eta, 1 - xi)};
  return s;
}

namespace {

// Legendre polynomial P_n(x) and its derivative.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int m = 2; m <= n; ++m) {
    const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  const double pn = p1;
  const double pnm1 = n == 1 ? 1.0 : p0;
  return {pn, n * (x * pn - pnm1) / (x * x - 1.0)};
}

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ConfigError("quadrature order must be at least 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [pn, dp] = legendre(n, x);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    // Standard weight 2/((1-x^2) P_n'^2), halved for the [0,1] interval.
    nodes[n - 1 - k] = 0.5 * (x + 1.0);
    weights[n - 1 - k] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule QuadratureRule::gauss(int points_per_direction) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre_01(points_per_direction, x, w);
  QuadratureRule rule;
  for (int j = 0; j < points_per_direction; ++j) {
    for (int i = 0; i < points_per_direction; ++i) {
      rule.points_.emplace_back(x[i], x[j]);
      rule.weights_.push_back(w[i] * w[j]);
    }
  }
  return rule;
}

namespace {

int cell_count(double extent, double resolution, const char* axis) {
  const double ratio = extent / resolution;
  const double n = std::round(ratio);
  if (n < 1 || std::abs(n * resolution - extent) > 1e-12 * extent) {
    std::ostringstream os;
    os << "resolution " << resolution << " m does not divide the " << axis << " extent " << extent
       << " m";
    throw ConfigError(os.str());
  }
  return static_cast<int>(n);
}

}  // namespace

Mesh::Mesh(double extent_x, double extent_y, double resolution)
    : extent_x_(extent_x), extent_y_(extent_y), resolution_(resolution) {
  if (!(extent_x > 0) || !(extent_y > 0) || !(resolution > 0)) {
    throw ConfigError("mesh extents and resolution must be positive");
  }
  nx_ = cell_count(extent_x, resolution, "x");
  ny_ = cell_count(extent_y, resolution, "y");

  nodes_.reserve(num_nodes());
  boundary_.reserve(num_nodes());
  for (int j = 0; j <= ny_; ++j) {
    for (int i = 0; i <= nx_; ++i) {
      nodes_.emplace_back(i * resolution_, j * resolution_);
      boundary_.push_back(i == 0 || j == 0 || i == nx_ || j == ny_);
    }
  }
  cells_.reserve(num_cells());
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      cells_.push_back({node_index(i, j), node_index(i + 1, j), node_index(i + 1, j + 1),
                        node_index(i, j + 1)});
    }
  }
}

Vec2 Mesh::cell_origin(int c) const { return nodes_[cells_[c][0]]; }

Vec2 Mesh::cell_center(int c) const {
  return cell_origin(c) + Vec2(0.5 * resolution_, 0.5 * resolution_);
}

Vec2 Mesh::reference_map(int c, const Vec2& local) const {
  return cell_origin(c) + resolution_ * local;
}

bool Mesh::contains(const Vec2& p) const {
  return p.x() >= 0 && p.x() <= extent_x_ && p.y() >= 0 && p.y() <= extent_y_;
}

int Mesh::cell_coordinate(double s, int n) const {
  const int k = static_cast<int>(std::ceil(s / resolution_)) - 1;
  return std::clamp(k, 0, n - 1);
}

PointLocation Mesh::locate_point(const Vec2& p) const {
  if (!contains(p)) throw OutOfDomainError(p);
  PointLocation loc;
  loc.i = cell_coordinate(p.x(), nx_);
  loc.j = cell_coordinate(p.y(), ny_);
  loc.cell = cell_index(loc.i, loc.j);
  loc.local = Vec2(p.x() / resolution_ - loc.i, p.y() / resolution_ - loc.j);
  return loc;
}

Mesh build_uniform_mesh(const Vec2& extent, double resolution) {
  return Mesh(extent.x(), extent.y(), resolution);
}

}  // namespace fastice
