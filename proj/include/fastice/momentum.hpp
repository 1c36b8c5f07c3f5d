#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "fastice/icebergs.hpp"
#include "fastice/linear_solver.hpp"
#include "fastice/mesh.hpp"
#include "fastice/params.hpp"
#include "fastice/rheology.hpp"
#include "fastice/state.hpp"

namespace fastice {

/// Time level at which the iceberg point drag samples the sea-ice velocity.
enum class BergDragTreatment {
  lagged,         // previous time level (explicit in time)
  semi_implicit,  // current Newton iterate
};

enum class Linearization { picard, newton };

struct MomentumParams {
  RheologyParams rheology;
  DragParams drag;
  BergDragTreatment berg_drag = BergDragTreatment::lagged;
  int quadrature_order = 2;
  /// Thickness floor for the inertial (rho h) terms only.
  double min_thickness = 1e-6;
};

/// Iceberg point force and its bilinear distribution onto the four nodes of
/// the containing cell.
struct PointForce {
  int cell = 0;
  std::array<int, 4> nodes{};
  std::array<double, 4> weights{};
  Vec2 relative_velocity = Vec2::Zero();  // v_b - v_h(x_p)
  Vec2 force = Vec2::Zero();              // total force on the sea ice, N
  bool oversized = false;                 // diameter >= cell size

  Vec2 nodal_force(int k) const { return weights[k] * force; }
};

/// Drag coefficient C_i rho_b pi r^2 (times a when configured).
double point_drag_coefficient(const IcebergParticle& berg, const DragParams& drag,
                              double concentration);

PointForce point_drag(const IcebergParticle& berg, const NodalField& v_eval, const Mesh& mesh,
                      const DragParams& drag, double concentration = 1.0);

struct NonlinearSolveReport {
  int iterations = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  double tolerance = 0.0;
  bool converged = false;
  std::vector<int> linear_iterations;
  int factorizations = 0;
  int oversized_bergs = 0;
};

struct SolverConfig {
  int picard_iterations = 5;
  int max_iterations = 100;
  double relative_tolerance = 1e-8;
  /// Absolute tolerance per unit cell area (N/m^2), multiplied by the cell area.
  double absolute_tolerance_density = 1e-12;
  int max_line_search_halvings = 8;
  /// Upper bound of the relative linear-solve tolerance.  Each iteration asks
  /// for ||R_k|| / ||R_0|| clipped to [linear.relative_tolerance, this].
  double max_linear_tolerance = 1e-1;
  LinearSolverConfig linear;
};

/// Residual and Jacobian of one implicit-Euler step of the momentum equation
/// on a fixed mesh.  The sparsity pattern and cell-to-storage maps are built
/// once and reused.
class MomentumAssembler {
 public:
  MomentumAssembler(const Mesh& mesh, MomentumParams params);

  const Mesh& mesh() const { return mesh_; }
  const MomentumParams& params() const { return params_; }

  /// Nodal residual (N).  Tracers are taken from `state`; `state.v` is unused.
  Eigen::VectorXd residual(const SeaIceState& state, const NodalField& v_trial,
                           const NodalField& v_old, double dt, const Forcing& forcing,
                           std::span<const IcebergParticle> bergs) const;

  /// Jacobian of residual() at v_trial.  Boundary rows are identity; with
  /// eliminate_boundary_columns the boundary columns of interior rows are
  /// dropped as well, which keeps the operator symmetric.
  const SparseMatrix& jacobian(const SeaIceState& state, const NodalField& v_trial,
                               const NodalField& v_old, double dt, const Forcing& forcing,
                               std::span<const IcebergParticle> bergs, Linearization mode,
                               bool eliminate_boundary_columns = false);

  /// Point forces of all active bergs evaluated on v_eval.
  std::vector<PointForce> point_forces(const SeaIceState& state, const NodalField& v_eval,
                                       std::span<const IcebergParticle> bergs) const;

 private:
  /// Per-quadrature-point operators acting on the 8 local velocity dofs
  /// (node-major, x before y): N u is the velocity and B u the column-major
  /// vectorized velocity gradient.
  struct QuadPoint {
    double weight;  // includes the cell area
    Eigen::Matrix<double, 2, 8> N;
    Eigen::Matrix<double, 4, 8> B;
  };

  double rho_h(double h) const;

  const Mesh& mesh_;
  MomentumParams params_;
  std::vector<QuadPoint> quad_;
  SparseMatrix matrix_;
  std::vector<int> value_index_;  // num_cells * 64, row-major local (8 x 8)
  std::vector<int> diagonal_index_;
};

Eigen::VectorXd assemble_residual(const Mesh& mesh, const SeaIceState& state,
                                  const NodalField& v_trial, const NodalField& v_old, double dt,
                                  const Forcing& forcing, std::span<const IcebergParticle> bergs,
                                  const MomentumParams& params);

SparseMatrix assemble_jacobian(const Mesh& mesh, const SeaIceState& state,
                               const NodalField& v_trial, const NodalField& v_old, double dt,
                               const Forcing& forcing, std::span<const IcebergParticle> bergs,
                               const MomentumParams& params, Linearization mode);

/// Picard-then-Newton solver for one implicit momentum step.  Keeps the
/// assembler and any reusable factorization across calls.
class MomentumSolver {
 public:
  MomentumSolver(const Mesh& mesh, MomentumParams params, SolverConfig config);

  std::pair<NodalField, NonlinearSolveReport> solve(const SeaIceState& state,
                                                    const NodalField& v_old, double dt,
                                                    const Forcing& forcing,
                                                    std::span<const IcebergParticle> bergs);

  MomentumAssembler& assembler() { return assembler_; }
  const SolverConfig& config() const { return config_; }

 private:
  MomentumAssembler assembler_;
  LinearSolver linear_;
  SolverConfig config_;
};

std::pair<NodalField, NonlinearSolveReport> solve_momentum(
    const Mesh& mesh, const SeaIceState& state, const NodalField& v_old, double dt,
    const Forcing& forcing, std::span<const IcebergParticle> bergs, const MomentumParams& params,
    const SolverConfig& config);

}  // namespace fastice
