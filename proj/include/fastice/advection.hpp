#pragma once

#include <string>
#include <vector>

#include "fastice/mesh.hpp"
#include "fastice/state.hpp"

namespace fastice {

/// A cell face of the uniform grid.
///
/// A vertical face (i, j) lies on x = i * res between cells (i-1, j) and
/// (i, j); its normal points in +x.  A horizontal face (i, j) lies on
/// y = j * res between cells (i, j-1) and (i, j); its normal points in +y.
struct Face {
  enum class Orientation { vertical, horizontal };
  Orientation orientation = Orientation::vertical;
  int i = 0;
  int j = 0;

  std::string describe(const Mesh& mesh) const;
};

/// Normal velocity and upwinded tracer fluxes (tracer * m^2/s) across one face,
/// positive in the direction of the face normal.
struct FaceFlux {
  Face face;
  double velocity = 0.0;
  double flux_a = 0.0;
  double flux_h = 0.0;
  bool boundary = false;
};

/// Mean of the normal velocity components at the two end nodes of the face.
double face_normal_velocity(const Mesh& mesh, const NodalField& v, const Face& face);

/// All faces, vertical ones first, each in row-major order.
std::vector<Face> all_faces(const Mesh& mesh);

std::vector<FaceFlux> face_fluxes(const Mesh& mesh, const SeaIceState& state, const NodalField& v,
                                  const BoundaryData& boundary);

/// Largest |u_face| * dt / res over all faces.
double max_cfl(const Mesh& mesh, const NodalField& v, double dt);

struct AdvectionResult {
  CellField a;
  CellField h;
  /// Net amount carried out through the domain boundary during the step
  /// (tracer * m^2); negative for net inflow.
  double boundary_outflow_a = 0.0;
  double boundary_outflow_h = 0.0;
  double cfl = 0.0;
};

/// One donor-cell upwind step of the concentration and thickness.
AdvectionResult upwind_step(const Mesh& mesh, const SeaIceState& state, const NodalField& v,
                            double dt, const BoundaryData& boundary);

/// Sum of field * cell area.
double cell_integral(const Mesh& mesh, const CellField& field);

}  // namespace fastice
