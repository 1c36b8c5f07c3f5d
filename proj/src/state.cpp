#include "fastice/state.hpp"

#include <cmath>

#include "fastice/errors.hpp"

namespace fastice {

SeaIceState init_state(const Mesh& mesh, double a0, double h0) {
  if (!(a0 >= 0.0 && a0 <= 1.0)) throw ConfigError("initial concentration must lie in [0, 1]");
  if (!(h0 >= 0.0) || !std::isfinite(h0)) throw ConfigError("initial thickness must be >= 0");
  SeaIceState s;
  s.v = NodalField::Zero(2 * mesh.num_nodes());
  s.a = CellField::Constant(mesh.num_cells(), a0);
  s.h = CellField::Constant(mesh.num_cells(), h0);
  s.t = 0.0;
  return s;
}

Vec2 interp_node_field(const Mesh& mesh, const NodalField& v, const Vec2& p) {
  const PointLocation loc = mesh.locate_point(p);
  const ShapeValues shape = basis_eval(loc.local);
  const auto& nodes = mesh.cell_nodes(loc.cell);
  Vec2 out = Vec2::Zero();
  for (int k = 0; k < 4; ++k) {
    out += shape.value[k] * Vec2(v[2 * nodes[k]], v[2 * nodes[k] + 1]);
  }
  return out;
}

double sample_cell_field(const Mesh& mesh, const CellField& field, const Vec2& p) {
  return field[mesh.locate_point(p).cell];
}

void apply_dirichlet(const Mesh& mesh, NodalField& v) {
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    if (mesh.is_boundary_node(n)) {
      v[2 * n] = 0.0;
      v[2 * n + 1] = 0.0;
    }
  }
}

NodalField uniform_velocity(const Mesh& mesh, const Vec2& value) {
  NodalField v(2 * mesh.num_nodes());
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    v[2 * n] = value.x();
    v[2 * n + 1] = value.y();
  }
  return v;
}

Eigen::VectorXd velocity_component(const NodalField& v, int component) {
  const Eigen::Index n = v.size() / 2;
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = v[2 * k + component];
  return out;
}

}  // namespace fastice
