#pragma once

#include "fastice/mesh.hpp"
#include "fastice/types.hpp"

namespace fastice {

/// Discrete sea-ice fields: velocity at nodes, concentration and thickness per cell.
struct SeaIceState {
  NodalField v;  // m/s, interleaved
  CellField a;   // concentration in [0, 1]
  CellField h;   // mean thickness, m
  double t = 0.0;

  Vec2 velocity(int node) const { return {v[2 * node], v[2 * node + 1]}; }
};

/// External forcing.  Ocean and wind velocities are uniform in space.
struct Forcing {
  Vec2 ocean_velocity = Vec2::Zero();
  Vec2 wind_velocity = Vec2::Zero();
  bool coriolis_enabled = false;
  double coriolis_parameter = 1.46e-4;  // 1/s
};

/// Tracer values carried in through inflow boundary faces.
struct BoundaryData {
  double a_in = 0.5;
  double h_in = 1.0;
};

SeaIceState init_state(const Mesh& mesh, double a0, double h0);

/// Bilinear interpolation of the nodal field at p.
Vec2 interp_node_field(const Mesh& mesh, const NodalField& v, const Vec2& p);

/// Value of a cell field in the cell containing p.
double sample_cell_field(const Mesh& mesh, const CellField& field, const Vec2& p);

/// Sets v = 0 on all boundary nodes.
void apply_dirichlet(const Mesh& mesh, NodalField& v);

NodalField uniform_velocity(const Mesh& mesh, const Vec2& value);

/// Extracts one velocity component as a scalar node field.
Eigen::VectorXd velocity_component(const NodalField& v, int component);

}  // namespace fastice
