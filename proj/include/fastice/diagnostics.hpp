#pragma once

#include <span>
#include <string>
#include <vector>

#include "fastice/icebergs.hpp"
#include "fastice/mesh.hpp"
#include "fastice/params.hpp"
#include "fastice/state.hpp"

namespace fastice {

/// How the drag-dissipation functional samples the velocity around a berg.
enum class FunctionalMode {
  /// a C_i rho_b pi r^2 |v_h(x_p)|^3, consistent with the point drag.
  discrete_point,
  /// a C_i rho_b (integral of |v|^2 over the berg disk)^(3/2).
  continuous_norm,
};

/// Integrand of the functional at one time level: sum over grounded bergs.
double phi_increment(const Mesh& mesh, const SeaIceState& state,
                     std::span<const IcebergParticle> bergs, const DragParams& drag,
                     FunctionalMode mode);

/// Fixed 16-point polar rule on a disk (2 radial Gauss points x 8 angles).
/// Weights sum to pi r^2.
struct DiskStencil {
  std::vector<Vec2> points;
  std::vector<double> weights;
};
DiskStencil disk_stencil(const Vec2& center, double radius);

/// Integral of |v|^2 over the disk; samples outside the domain count as zero.
double disk_velocity_norm_squared(const Mesh& mesh, const NodalField& v, const Vec2& center,
                                  double radius);

/// Rate of the bound's time integral: ||R||^2 / (2 rho_o C_bar_o) with
/// R = f_sh + f_a + rho_o C_bar_o v_o, for uniform thickness h.
double stability_bound_increment(const Forcing& forcing, const DragParams& drag,
                                 double domain_area, double thickness = 1.0);

/// Same as above with the cell thickness field entering f_sh.
double stability_bound_increment(const Mesh& mesh, const SeaIceState& state,
                                 const Forcing& forcing, const DragParams& drag);

/// ||rho h v||^2 over the domain.
double initial_energy(const Mesh& mesh, const SeaIceState& state, double ice_density);

enum class FieldLocation { cells, nodes };

struct SectionPoint {
  double x = 0.0;
  double value = 0.0;
};

/// Samples a scalar field along the horizontal line through y.  Cell fields
/// use the cell row containing y (lower row on ties); node fields use the
/// nearest node row (lower row on ties).
std::vector<SectionPoint> cross_section(const Mesh& mesh, const Eigen::VectorXd& field,
                                        FieldLocation location, double y);

/// Sum over cells of field * overlap area with rect.
double region_integral(const Mesh& mesh, const CellField& field, const Rect& rect);

struct NamedRegion {
  std::string name;
  Rect rect;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double phi_inc = 0.0;  // in the configured mode
  double phi_cum = 0.0;
  double bound_rhs = 0.0;
  int newton_iters = 0;
  double phi_inc_discrete = 0.0;
  double phi_cum_discrete = 0.0;
  double phi_inc_continuous = 0.0;
  double phi_cum_continuous = 0.0;
  std::vector<double> region_values;  // matches the configured region list
};

/// Left-endpoint time integration of the functional and of the bound.
class DiagnosticsAccumulator {
 public:
  DiagnosticsAccumulator(FunctionalMode mode, double initial_energy);

  /// Records time level t.  The cumulative values integrate the increments of
  /// earlier records only.
  DiagnosticsRecord record(double t, double phi_discrete, double phi_continuous,
                           double bound_increment, int newton_iters,
                           std::vector<double> region_values = {});

  const std::vector<DiagnosticsRecord>& history() const { return history_; }

 private:
  FunctionalMode mode_;
  double initial_energy_;
  std::vector<DiagnosticsRecord> history_;
  double last_bound_increment_ = 0.0;
  double bound_cum_ = 0.0;
};

}  // namespace fastice
