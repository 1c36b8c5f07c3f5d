#include "fastice/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fastice/errors.hpp"

namespace fastice {

namespace {

Vec2 node_velocity(const NodalField& v, int n) { return {v[2 * n], v[2 * n + 1]}; }

}  // namespace

DiskStencil disk_stencil(const Vec2& center, double radius) {
  std::vector<double> nodes, weights;
  gauss_legendre_01(2, nodes, weights);
  constexpr int kAngles = 8;
  const double dtheta = 2.0 * std::numbers::pi / kAngles;
  DiskStencil s;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    const double rho = radius * nodes[q];
    const double w = radius * weights[q] * rho * dtheta;
    for (int k = 0; k < kAngles; ++k) {
      const double theta = (k + 0.5) * dtheta;
      s.points.push_back(center + rho * Vec2(std::cos(theta), std::sin(theta)));
      s.weights.push_back(w);
    }
  }
  return s;
}

double disk_velocity_norm_squared(const Mesh& mesh, const NodalField& v, const Vec2& center,
                                  double radius) {
  const DiskStencil s = disk_stencil(center, radius);
  double sum = 0.0;
  for (std::size_t q = 0; q < s.points.size(); ++q) {
    if (!mesh.contains(s.points[q])) continue;
    sum += s.weights[q] * interp_node_field(mesh, v, s.points[q]).squaredNorm();
  }
  return sum;
}

double phi_increment(const Mesh& mesh, const SeaIceState& state,
                     std::span<const IcebergParticle> bergs, const DragParams& drag,
                     FunctionalMode mode) {
  double phi = 0.0;
  for (const auto& berg : bergs) {
    if (!berg.grounded || berg.exited) continue;
    const double a = sample_cell_field(mesh, state.a, berg.position);
    const double coeff = a * drag.ice_resistance_coeff * drag.berg_density;
    if (mode == FunctionalMode::discrete_point) {
      const double speed = interp_node_field(mesh, state.v, berg.position).norm();
      phi += coeff * std::numbers::pi * berg.radius * berg.radius * speed * speed * speed;
    } else {
      const double n2 = disk_velocity_norm_squared(mesh, state.v, berg.position, berg.radius);
      phi += coeff * std::pow(n2, 1.5);
    }
  }
  return phi;
}

double stability_bound_increment(const Forcing& forcing, const DragParams& drag,
                                 double domain_area, double thickness) {
  const double c_bar = drag.linear_drag_velocity;
  if (!(c_bar > 0.0)) throw ConfigError("linear ocean drag velocity must be positive");
  Vec2 R = drag.ocean_density * c_bar * forcing.ocean_velocity +
           drag.air_density * drag.air_drag_coeff * forcing.wind_velocity.norm() *
               forcing.wind_velocity;
  if (forcing.coriolis_enabled) {
    R += drag.ice_density * thickness * forcing.coriolis_parameter *
         cross_k(forcing.ocean_velocity);
  }
  return R.squaredNorm() * domain_area / (2.0 * drag.ocean_density * c_bar);
}

double stability_bound_increment(const Mesh& mesh, const SeaIceState& state,
                                 const Forcing& forcing, const DragParams& drag) {
  if (!forcing.coriolis_enabled) {
    return stability_bound_increment(forcing, drag, mesh.domain_area());
  }
  double sum = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    sum += stability_bound_increment(forcing, drag, mesh.cell_area(), state.h[c]);
  }
  return sum;
}

double initial_energy(const Mesh& mesh, const SeaIceState& state, double ice_density) {
  const QuadratureRule rule = QuadratureRule::gauss(2);
  double sum = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& nodes = mesh.cell_nodes(c);
    const double rh = ice_density * state.h[c];
    for (int q = 0; q < rule.size(); ++q) {
      const ShapeValues shape = basis_eval(rule.points()[q]);
      Vec2 v = Vec2::Zero();
      for (int k = 0; k < 4; ++k) v += shape.value[k] * node_velocity(state.v, nodes[k]);
      sum += rule.weights()[q] * mesh.cell_area() * rh * rh * v.squaredNorm();
    }
  }
  return sum;
}

std::vector<SectionPoint> cross_section(const Mesh& mesh, const Eigen::VectorXd& field,
                                        FieldLocation location, double y) {
  if (!(y >= 0.0 && y <= mesh.extent_y())) throw OutOfDomainError(Vec2(0.0, y));
  std::vector<SectionPoint> out;
  const double res = mesh.resolution();
  if (location == FieldLocation::cells) {
    if (field.size() != mesh.num_cells()) throw ConfigError("cell field has the wrong size");
    const int j = mesh.cell_coordinate(y, mesh.ny());
    for (int i = 0; i < mesh.nx(); ++i) {
      out.push_back({(i + 0.5) * res, field[mesh.cell_index(i, j)]});
    }
  } else {
    if (field.size() != mesh.num_nodes()) throw ConfigError("node field has the wrong size");
    const int j = std::clamp(static_cast<int>(std::ceil(y / res - 0.5)), 0, mesh.ny());
    for (int i = 0; i <= mesh.nx(); ++i) out.push_back({i * res, field[mesh.node_index(i, j)]});
  }
  return out;
}

double region_integral(const Mesh& mesh, const CellField& field, const Rect& rect) {
  if (!(rect.width() > 0.0 && rect.height() > 0.0)) throw ConfigError("region is empty");
  if (!mesh.contains(rect.lower_left)) throw OutOfDomainError(rect.lower_left);
  if (!mesh.contains(rect.upper_right)) throw OutOfDomainError(rect.upper_right);
  const double res = mesh.resolution();
  auto overlap = [res](int k, double lo, double hi) {
    return std::max(0.0, std::min(hi, (k + 1) * res) - std::max(lo, k * res));
  };
  const int i0 = std::max(0, static_cast<int>(std::floor(rect.lower_left.x() / res)));
  const int i1 = std::min(mesh.nx() - 1, static_cast<int>(std::floor(rect.upper_right.x() / res)));
  const int j0 = std::max(0, static_cast<int>(std::floor(rect.lower_left.y() / res)));
  const int j1 = std::min(mesh.ny() - 1, static_cast<int>(std::floor(rect.upper_right.y() / res)));
  double sum = 0.0;
  for (int j = j0; j <= j1; ++j) {
    const double oy = overlap(j, rect.lower_left.y(), rect.upper_right.y());
    if (oy <= 0.0) continue;
    for (int i = i0; i <= i1; ++i) {
      const double ox = overlap(i, rect.lower_left.x(), rect.upper_right.x());
      sum += field[mesh.cell_index(i, j)] * ox * oy;
    }
  }
  return sum;
}

DiagnosticsAccumulator::DiagnosticsAccumulator(FunctionalMode mode, double initial_energy)
    : mode_(mode), initial_energy_(initial_energy) {}

DiagnosticsRecord DiagnosticsAccumulator::record(double t, double phi_discrete,
                                                 double phi_continuous, double bound_increment,
                                                 int newton_iters,
                                                 std::vector<double> region_values) {
  DiagnosticsRecord r;
  r.t = t;
  r.region_values = std::move(region_values);
  r.newton_iters = newton_iters;
  r.phi_inc_discrete = phi_discrete;
  r.phi_inc_continuous = phi_continuous;
  if (!history_.empty()) {
    const DiagnosticsRecord& prev = history_.back();
    const double dt = t - prev.t;
    r.phi_cum_discrete = prev.phi_cum_discrete + dt * prev.phi_inc_discrete;
    r.phi_cum_continuous = prev.phi_cum_continuous + dt * prev.phi_inc_continuous;
    bound_cum_ += dt * last_bound_increment_;
  }
  last_bound_increment_ = bound_increment;
  r.bound_rhs = initial_energy_ + bound_cum_;
  const bool discrete = mode_ == FunctionalMode::discrete_point;
  r.phi_inc = discrete ? r.phi_inc_discrete : r.phi_inc_continuous;
  r.phi_cum = discrete ? r.phi_cum_discrete : r.phi_cum_continuous;
  history_.push_back(r);
  return r;
}

}  // namespace fastice
