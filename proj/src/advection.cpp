#include "fastice/advection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fastice/errors.hpp"

namespace fastice {

namespace {

constexpr double kNegativeTolerance = 1e-12;

std::pair<int, int> face_nodes(const Mesh& mesh, const Face& f) {
  if (f.orientation == Face::Orientation::vertical) {
    return {mesh.node_index(f.i, f.j), mesh.node_index(f.i, f.j + 1)};
  }
  return {mesh.node_index(f.i, f.j), mesh.node_index(f.i + 1, f.j)};
}

/// Cells behind and ahead of the face normal; -1 outside the domain.
std::pair<int, int> face_cells(const Mesh& mesh, const Face& f) {
  if (f.orientation == Face::Orientation::vertical) {
    const int left = f.i > 0 ? mesh.cell_index(f.i - 1, f.j) : -1;
    const int right = f.i < mesh.nx() ? mesh.cell_index(f.i, f.j) : -1;
    return {left, right};
  }
  const int below = f.j > 0 ? mesh.cell_index(f.i, f.j - 1) : -1;
  const int above = f.j < mesh.ny() ? mesh.cell_index(f.i, f.j) : -1;
  return {below, above};
}

}  // namespace

std::string Face::describe(const Mesh& mesh) const {
  std::ostringstream os;
  const double res = mesh.resolution();
  if (orientation == Orientation::vertical) {
    os << "vertical face (" << i << ", " << j << ") at x = " << i * res << " m, y in ["
       << j * res << ", " << (j + 1) * res << "] m";
  } else {
    os << "horizontal face (" << i << ", " << j << ") at y = " << j * res << " m, x in ["
       << i * res << ", " << (i + 1) * res << "] m";
  }
  return os.str();
}

double face_normal_velocity(const Mesh& mesh, const NodalField& v, const Face& face) {
  const auto [n0, n1] = face_nodes(mesh, face);
  const int c = face.orientation == Face::Orientation::vertical ? 0 : 1;
  return 0.5 * (v[2 * n0 + c] + v[2 * n1 + c]);
}

std::vector<Face> all_faces(const Mesh& mesh) {
  std::vector<Face> faces;
  faces.reserve(static_cast<std::size_t>((mesh.nx() + 1) * mesh.ny() + mesh.nx() * (mesh.ny() + 1)));
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i <= mesh.nx(); ++i) faces.push_back({Face::Orientation::vertical, i, j});
  }
  for (int j = 0; j <= mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) faces.push_back({Face::Orientation::horizontal, i, j});
  }
  return faces;
}

std::vector<FaceFlux> face_fluxes(const Mesh& mesh, const SeaIceState& state, const NodalField& v,
                                  const BoundaryData& boundary) {
  std::vector<FaceFlux> fluxes;
  const double res = mesh.resolution();
  for (const Face& face : all_faces(mesh)) {
    FaceFlux ff;
    ff.face = face;
    ff.velocity = face_normal_velocity(mesh, v, face);
    const auto [behind, ahead] = face_cells(mesh, face);
    ff.boundary = behind < 0 || ahead < 0;
    const int donor = ff.velocity >= 0.0 ? behind : ahead;
    const double a_up = donor >= 0 ? state.a[donor] : boundary.a_in;
    const double h_up = donor >= 0 ? state.h[donor] : boundary.h_in;
    ff.flux_a = ff.velocity * res * a_up;
    ff.flux_h = ff.velocity * res * h_up;
    fluxes.push_back(ff);
  }
  return fluxes;
}

double max_cfl(const Mesh& mesh, const NodalField& v, double dt) {
  double cfl = 0.0;
  for (const Face& face : all_faces(mesh)) {
    cfl = std::max(cfl, std::abs(face_normal_velocity(mesh, v, face)) * dt / mesh.resolution());
  }
  return cfl;
}

AdvectionResult upwind_step(const Mesh& mesh, const SeaIceState& state, const NodalField& v,
                            double dt, const BoundaryData& boundary) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (!v.allFinite()) throw PoisonedStateError("v");
  if (!state.a.allFinite()) throw PoisonedStateError("a");
  if (!state.h.allFinite()) throw PoisonedStateError("h");

  const double res = mesh.resolution();
  const double area = mesh.cell_area();
  const std::vector<FaceFlux> fluxes = face_fluxes(mesh, state, v, boundary);

  AdvectionResult out;
  for (const FaceFlux& ff : fluxes) {
    const double cfl = std::abs(ff.velocity) * dt / res;
    if (cfl > 1.0) throw CflError(ff.face.describe(mesh), cfl, res / std::abs(ff.velocity));
    out.cfl = std::max(out.cfl, cfl);
  }

  out.a = state.a;
  out.h = state.h;
  const double scale = dt / area;
  for (const FaceFlux& ff : fluxes) {
    const auto [behind, ahead] = face_cells(mesh, ff.face);
    if (behind >= 0) {
      out.a[behind] -= scale * ff.flux_a;
      out.h[behind] -= scale * ff.flux_h;
    } else {
      out.boundary_outflow_a -= dt * ff.flux_a;
      out.boundary_outflow_h -= dt * ff.flux_h;
    }
    if (ahead >= 0) {
      out.a[ahead] += scale * ff.flux_a;
      out.h[ahead] += scale * ff.flux_h;
    } else {
      out.boundary_outflow_a += dt * ff.flux_a;
      out.boundary_outflow_h += dt * ff.flux_h;
    }
  }

  for (int c = 0; c < mesh.num_cells(); ++c) {
    if (out.a[c] < -kNegativeTolerance || out.h[c] < -kNegativeTolerance) {
      std::ostringstream os;
      os << "negative tracer after advection in cell " << c << " (a = " << out.a[c]
         << ", h = " << out.h[c] << ")";
      throw ConsistencyError(os.str());
    }
    out.a[c] = std::clamp(out.a[c], 0.0, 1.0);
    out.h[c] = std::max(out.h[c], 0.0);
  }
  return out;
}

double cell_integral(const Mesh& mesh, const CellField& field) {
  return field.sum() * mesh.cell_area();
}

}  // namespace fastice
