#include "fastice/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "fastice/errors.hpp"

namespace fastice {

namespace {

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

void check_finite(const Eigen::VectorXd& field, const char* name) {
  if (!field.allFinite()) throw PoisonedStateError(name);
}

/// d(|w| w)/dw, or its frozen-magnitude part |w| I.
Mat2 quadratic_drag_derivative(const Vec2& w, Linearization mode) {
  const double speed = w.norm();
  Mat2 d = speed * Mat2::Identity();
  if (mode == Linearization::newton && speed > 0.0) d += w * w.transpose() / speed;
  return d;
}

/// Sum of the external forcing terms at one quadrature point.
Vec2 external_force(const Vec2& v, double rho_h, const Forcing& forcing, const DragParams& drag) {
  Vec2 f = Vec2::Zero();
  if (forcing.coriolis_enabled) {
    const double rhf = rho_h * forcing.coriolis_parameter;
    f += -rhf * cross_k(v) + rhf * cross_k(forcing.ocean_velocity);
  }
  const Vec2 w = forcing.ocean_velocity - v;
  if (drag.ocean_drag_mode == OceanDragMode::quadratic) {
    f += drag.ocean_density * drag.ocean_drag_coeff * w.norm() * w;
  } else {
    f += drag.ocean_density * drag.linear_drag_velocity * w;
  }
  const Vec2& wind = forcing.wind_velocity;
  f += drag.air_density * drag.air_drag_coeff * wind.norm() * wind;
  return f;
}

}  // namespace

double point_drag_coefficient(const IcebergParticle& berg, const DragParams& drag,
                              double concentration) {
  double c = drag.ice_resistance_coeff * drag.berg_density * std::numbers::pi * berg.radius *
             berg.radius;
  if (drag.drag_includes_concentration) c *= concentration;
  return c;
}

PointForce point_drag(const IcebergParticle& berg, const NodalField& v_eval, const Mesh& mesh,
                      const DragParams& drag, double concentration) {
  const PointLocation loc = mesh.locate_point(berg.position);
  const ShapeValues shape = basis_eval(loc.local);
  PointForce pf;
  pf.cell = loc.cell;
  pf.nodes = mesh.cell_nodes(loc.cell);
  Vec2 v_ice = Vec2::Zero();
  for (int k = 0; k < 4; ++k) {
    pf.weights[k] = shape.value[k];
    v_ice += shape.value[k] * v_eval.segment<2>(2 * pf.nodes[k]);
  }
  pf.relative_velocity = berg.velocity - v_ice;
  pf.force = point_drag_coefficient(berg, drag, concentration) * pf.relative_velocity.norm() *
             pf.relative_velocity;
  pf.oversized = 2.0 * berg.radius >= mesh.resolution();
  return pf;
}

MomentumAssembler::MomentumAssembler(const Mesh& mesh, MomentumParams params)
    : mesh_(mesh), params_(params) {
  if (params_.quadrature_order < 1) throw ConfigError("quadrature order must be at least 1");
  const QuadratureRule rule = QuadratureRule::gauss(params_.quadrature_order);
  const double res = mesh_.resolution();
  for (int q = 0; q < rule.size(); ++q) {
    const ShapeValues shape = basis_eval(rule.points()[q]);
    QuadPoint qp;
    qp.weight = rule.weights()[q] * mesh_.cell_area();
    qp.N.setZero();
    qp.B.setZero();
    for (int k = 0; k < 4; ++k) {
      const Vec2 grad = shape.grad[k] / res;
      for (int e = 0; e < 2; ++e) {
        qp.N(e, 2 * k + e) = shape.value[k];
        for (int d = 0; d < 2; ++d) qp.B(e + 2 * d, 2 * k + e) = grad[d];
      }
    }
    quad_.push_back(qp);
  }

  const int ndof = 2 * mesh_.num_nodes();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh_.num_cells()) * 64);
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const auto& nodes = mesh_.cell_nodes(c);
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        triplets.emplace_back(2 * nodes[a / 2] + a % 2, 2 * nodes[b / 2] + b % 2, 0.0);
      }
    }
  }
  matrix_.resize(ndof, ndof);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();

  auto storage_index = [&](int row, int col) {
    const int* begin = matrix_.innerIndexPtr() + matrix_.outerIndexPtr()[col];
    const int* end = matrix_.innerIndexPtr() + matrix_.outerIndexPtr()[col + 1];
    const int* it = std::lower_bound(begin, end, row);
    return static_cast<int>(it - matrix_.innerIndexPtr());
  };
  value_index_.resize(static_cast<std::size_t>(mesh_.num_cells()) * 64);
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const auto& nodes = mesh_.cell_nodes(c);
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        value_index_[64 * c + 8 * a + b] =
            storage_index(2 * nodes[a / 2] + a % 2, 2 * nodes[b / 2] + b % 2);
      }
    }
  }
  diagonal_index_.resize(ndof);
  for (int d = 0; d < ndof; ++d) diagonal_index_[d] = storage_index(d, d);
}

double MomentumAssembler::rho_h(double h) const {
  return params_.drag.ice_density * std::max(h, params_.min_thickness);
}

std::vector<PointForce> MomentumAssembler::point_forces(
    const SeaIceState& state, const NodalField& v_eval,
    std::span<const IcebergParticle> bergs) const {
  std::vector<PointForce> forces;
  for (const auto& berg : bergs) {
    if (!berg.active()) continue;
    const double a = sample_cell_field(mesh_, state.a, berg.position);
    forces.push_back(point_drag(berg, v_eval, mesh_, params_.drag, a));
  }
  return forces;
}

Eigen::VectorXd MomentumAssembler::residual(const SeaIceState& state, const NodalField& v_trial,
                                            const NodalField& v_old, double dt,
                                            const Forcing& forcing,
                                            std::span<const IcebergParticle> bergs) const {
  check_finite(v_trial, "v");
  check_finite(v_old, "v_old");
  check_finite(state.a, "a");
  check_finite(state.h, "h");

  const int ndof = 2 * mesh_.num_nodes();
  Eigen::VectorXd R = Eigen::VectorXd::Zero(ndof);
  const double dmin = params_.rheology.delta_min;

  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const auto& nodes = mesh_.cell_nodes(c);
    const double rh = rho_h(state.h[c]);
    const double P = ice_strength(state.h[c], state.a[c], params_.rheology);
    Vec8 u, u_old;
    for (int k = 0; k < 4; ++k) {
      u.segment<2>(2 * k) = v_trial.segment<2>(2 * nodes[k]);
      u_old.segment<2>(2 * k) = v_old.segment<2>(2 * nodes[k]);
    }
    Vec8 local = Vec8::Zero();
    for (const auto& qp : quad_) {
      const Vec2 v = qp.N * u;
      const Vec2 vo = qp.N * u_old;
      const Eigen::Vector4d g = qp.B * u;
      const Mat2 G = Eigen::Map<const Mat2>(g.data());
      const Vec2 body = rh * (v - vo) / dt - external_force(v, rh, forcing, params_.drag);
      const Mat2 sigma = stress_from_gradient(G, P, dmin);
      local += qp.weight * (qp.N.transpose() * body +
                            qp.B.transpose() * Eigen::Map<const Eigen::Vector4d>(sigma.data()));
    }
    for (int k = 0; k < 4; ++k) R.segment<2>(2 * nodes[k]) += local.segment<2>(2 * k);
  }

  const NodalField& v_berg =
      params_.berg_drag == BergDragTreatment::semi_implicit ? v_trial : v_old;
  for (const auto& pf : point_forces(state, v_berg, bergs)) {
    for (int k = 0; k < 4; ++k) R.segment<2>(2 * pf.nodes[k]) -= pf.nodal_force(k);
  }

  for (int n = 0; n < mesh_.num_nodes(); ++n) {
    if (mesh_.is_boundary_node(n)) R.segment<2>(2 * n) = v_trial.segment<2>(2 * n);
  }
  return R;
}

const SparseMatrix& MomentumAssembler::jacobian(const SeaIceState& state,
                                                const NodalField& v_trial,
                                                const NodalField& /*v_old*/, double dt,
                                                const Forcing& forcing,
                                                std::span<const IcebergParticle> bergs,
                                                Linearization mode,
                                                bool eliminate_boundary_columns) {
  check_finite(v_trial, "v");
  check_finite(state.a, "a");
  check_finite(state.h, "h");

  const DragParams& drag = params_.drag;
  const double dmin = params_.rheology.delta_min;
  const bool newton = mode == Linearization::newton;
  double* values = matrix_.valuePtr();
  std::fill(values, values + matrix_.nonZeros(), 0.0);
  const auto& boundary = mesh_.boundary_mask();

  auto scatter = [&](int c, const Mat8& Ke) {
    const auto& nodes = mesh_.cell_nodes(c);
    for (int a = 0; a < 8; ++a) {
      if (boundary[nodes[a / 2]]) continue;
      for (int b = 0; b < 8; ++b) {
        if (eliminate_boundary_columns && boundary[nodes[b / 2]]) continue;
        values[value_index_[64 * c + 8 * a + b]] += Ke(a, b);
      }
    }
  };

  for (int c = 0; c < mesh_.num_cells(); ++c) {
    const auto& nodes = mesh_.cell_nodes(c);
    const double rh = rho_h(state.h[c]);
    const double P = ice_strength(state.h[c], state.a[c], params_.rheology);
    Vec8 u;
    for (int k = 0; k < 4; ++k) u.segment<2>(2 * k) = v_trial.segment<2>(2 * nodes[k]);

    Mat8 Ke = Mat8::Zero();
    for (const auto& qp : quad_) {
      const Vec2 v = qp.N * u;
      const Eigen::Vector4d g = qp.B * u;
      const Mat2 G = Eigen::Map<const Mat2>(g.data());

      Mat2 D = (rh / dt) * Mat2::Identity();
      if (drag.ocean_drag_mode == OceanDragMode::quadratic) {
        D += drag.ocean_density * drag.ocean_drag_coeff *
             quadratic_drag_derivative(forcing.ocean_velocity - v, mode);
      } else {
        D += drag.ocean_density * drag.linear_drag_velocity * Mat2::Identity();
      }
      if (forcing.coriolis_enabled) {
        const double rhf = rh * forcing.coriolis_parameter;
        D(0, 1) -= rhf;
        D(1, 0) += rhf;
      }
      const Eigen::Matrix4d T = stress_tangent(G, P, dmin, newton);
      const Eigen::Matrix<double, 2, 8> DN = (qp.weight * D).lazyProduct(qp.N);
      const Eigen::Matrix<double, 4, 8> TB = (qp.weight * T).lazyProduct(qp.B);
      Ke.noalias() += qp.N.transpose().lazyProduct(DN);
      Ke.noalias() += qp.B.transpose().lazyProduct(TB);
    }
    scatter(c, Ke);
  }

  if (params_.berg_drag == BergDragTreatment::semi_implicit) {
    for (const auto& berg : bergs) {
      if (!berg.active()) continue;
      const double a = sample_cell_field(mesh_, state.a, berg.position);
      const PointForce pf = point_drag(berg, v_trial, mesh_, drag, a);
      const Mat2 D = point_drag_coefficient(berg, drag, a) *
                     quadratic_drag_derivative(pf.relative_velocity, mode);
      Mat8 Ke = Mat8::Zero();
      for (int k = 0; k < 4; ++k) {
        for (int m = 0; m < 4; ++m) {
          Ke.block<2, 2>(2 * k, 2 * m) = pf.weights[k] * pf.weights[m] * D;
        }
      }
      scatter(pf.cell, Ke);
    }
  }

  for (int n = 0; n < mesh_.num_nodes(); ++n) {
    if (!boundary[n]) continue;
    values[diagonal_index_[2 * n]] = 1.0;
    values[diagonal_index_[2 * n + 1]] = 1.0;
  }
  return matrix_;
}

Eigen::VectorXd assemble_residual(const Mesh& mesh, const SeaIceState& state,
                                  const NodalField& v_trial, const NodalField& v_old, double dt,
                                  const Forcing& forcing, std::span<const IcebergParticle> bergs,
                                  const MomentumParams& params) {
  return MomentumAssembler(mesh, params).residual(state, v_trial, v_old, dt, forcing, bergs);
}

SparseMatrix assemble_jacobian(const Mesh& mesh, const SeaIceState& state,
                               const NodalField& v_trial, const NodalField& v_old, double dt,
                               const Forcing& forcing, std::span<const IcebergParticle> bergs,
                               const MomentumParams& params, Linearization mode) {
  MomentumAssembler assembler(mesh, params);
  return assembler.jacobian(state, v_trial, v_old, dt, forcing, bergs, mode);
}

MomentumSolver::MomentumSolver(const Mesh& mesh, MomentumParams params, SolverConfig config)
    : assembler_(mesh, params), linear_(config.linear), config_(config) {}

std::pair<NodalField, NonlinearSolveReport> MomentumSolver::solve(
    const SeaIceState& state, const NodalField& v_old, double dt, const Forcing& forcing,
    std::span<const IcebergParticle> bergs) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const Mesh& mesh = assembler_.mesh();
  const bool symmetric = !forcing.coriolis_enabled;
  const int factorizations_before = linear_.factorizations();

  NonlinearSolveReport report;
  for (const auto& pf : assembler_.point_forces(state, v_old, bergs)) {
    if (pf.oversized) ++report.oversized_bergs;
  }

  NodalField v = v_old;
  apply_dirichlet(mesh, v);
  Eigen::VectorXd R = assembler_.residual(state, v, v_old, dt, forcing, bergs);
  double rnorm = R.norm();
  report.initial_residual = rnorm;
  report.tolerance = config_.absolute_tolerance_density * mesh.cell_area() +
                     config_.relative_tolerance * rnorm;

  NodalField best = v;
  double best_norm = rnorm;
  Eigen::VectorXd delta;
  int it = 0;
  for (; rnorm > report.tolerance && it < config_.max_iterations; ++it) {
    const Linearization mode =
        it < config_.picard_iterations ? Linearization::picard : Linearization::newton;
    const SparseMatrix& J =
        assembler_.jacobian(state, v, v_old, dt, forcing, bergs, mode, true);
    const double linear_tol =
        std::clamp(rnorm / report.initial_residual, config_.linear.relative_tolerance,
                   std::max(config_.linear.relative_tolerance, config_.max_linear_tolerance));
    const LinearSolveStats stats = linear_.solve(J, symmetric, -R, delta, linear_tol);
    report.linear_iterations.push_back(stats.iterations);
    if (!delta.allFinite()) throw SolverError("linear solve produced a non-finite update");

    if (mode == Linearization::picard) {
      v += delta;
      R = assembler_.residual(state, v, v_old, dt, forcing, bergs);
    } else {
      double step = 1.0;
      for (int halvings = 0;; ++halvings) {
        NodalField trial = v + step * delta;
        Eigen::VectorXd R_trial = assembler_.residual(state, trial, v_old, dt, forcing, bergs);
        if (R_trial.norm() < rnorm || halvings == config_.max_line_search_halvings) {
          v = std::move(trial);
          R = std::move(R_trial);
          break;
        }
        step *= 0.5;
      }
    }
    rnorm = R.norm();
    if (rnorm < best_norm) {
      best_norm = rnorm;
      best = v;
    }
  }

  report.iterations = it;
  report.converged = rnorm <= report.tolerance;
  report.factorizations = linear_.factorizations() - factorizations_before;
  if (!report.converged) {
    v = best;
    rnorm = best_norm;
  }
  report.final_residual = rnorm;
  return {v, report};
}

std::pair<NodalField, NonlinearSolveReport> solve_momentum(
    const Mesh& mesh, const SeaIceState& state, const NodalField& v_old, double dt,
    const Forcing& forcing, std::span<const IcebergParticle> bergs, const MomentumParams& params,
    const SolverConfig& config) {
  MomentumSolver solver(mesh, params, config);
  return solver.solve(state, v_old, dt, forcing, bergs);
}

}  // namespace fastice
