#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "fastice/icebergs.hpp"
#include "fastice/mesh.hpp"
#include "fastice/momentum.hpp"
#include "fastice/state.hpp"

namespace fastice::testing {

/// Global tent function of node n and its gradient, evaluated without any
/// reference to cells.
struct Hat {
  double value;
  Vec2 grad;
};

inline Hat global_hat(const Mesh& mesh, int n, const Vec2& x) {
  const double res = mesh.resolution();
  const Vec2 d = (x - mesh.node(n)) / res;
  const double fx = 1.0 - std::abs(d.x());
  const double fy = 1.0 - std::abs(d.y());
  if (fx <= 0.0 || fy <= 0.0) return {0.0, Vec2::Zero()};
  const double sx = d.x() > 0 ? -1.0 : 1.0;
  const double sy = d.y() > 0 ? -1.0 : 1.0;
  return {fx * fy, Vec2(sx * fy, sy * fx) / res};
}

inline Vec2 dense_velocity(const Mesh& mesh, const NodalField& v, const Vec2& x) {
  Vec2 out = Vec2::Zero();
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    out += global_hat(mesh, n, x).value * Vec2(v[2 * n], v[2 * n + 1]);
  }
  return out;
}

/// grad(c, d) = d v_c / d x_d summed over every node of the mesh.
inline Mat2 dense_gradient(const Mesh& mesh, const NodalField& v, const Vec2& x) {
  Mat2 g = Mat2::Zero();
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const Vec2 dphi = global_hat(mesh, n, x).grad;
    g += Vec2(v[2 * n], v[2 * n + 1]) * dphi.transpose();
  }
  return g;
}

inline Mat2 oracle_stress(const Mat2& g, double P, double dmin) {
  const double e11 = g(0, 0);
  const double e22 = g(1, 1);
  const double e12 = 0.5 * (g(0, 1) + g(1, 0));
  const double tr = e11 + e22;
  const double d11 = e11 - 0.5 * tr;
  const double d22 = e22 - 0.5 * tr;
  const double Delta =
      std::sqrt(0.5 * (d11 * d11 + d22 * d22 + 2.0 * e12 * e12) + tr * tr + dmin * dmin);
  const double zeta = P / (2.0 * Delta);
  Mat2 s;
  s << 0.5 * zeta * d11 + zeta * tr - 0.5 * P, 0.5 * zeta * e12,  //
      0.5 * zeta * e12, 0.5 * zeta * d22 + zeta * tr - 0.5 * P;
  return s;
}

/// Residual of one implicit step assembled by looping over every test
/// function and every quadrature point of the whole domain (tensor Gauss
/// rule with two points per direction in each cell).
inline Eigen::VectorXd dense_residual(const Mesh& mesh, const SeaIceState& state,
                                      const NodalField& v, const NodalField& v_old, double dt,
                                      const Forcing& forcing,
                                      std::span<const IcebergParticle> bergs,
                                      const MomentumParams& params) {
  const DragParams& dp = params.drag;
  const RheologyParams& rp = params.rheology;
  const double res = mesh.resolution();
  const double g0 = 0.5 - 0.5 / std::sqrt(3.0);
  const double g1 = 0.5 + 0.5 / std::sqrt(3.0);
  const double w = 0.25 * res * res;

  Eigen::VectorXd R = Eigen::VectorXd::Zero(2 * mesh.num_nodes());
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const int c = j * mesh.nx() + i;
      const double h = state.h[c];
      const double rh = dp.ice_density * std::max(h, params.min_thickness);
      const double P = h * rp.ice_strength_param *
                       std::exp((rp.strength_sign == StrengthSign::hibler ? -1.0 : 1.0) *
                                rp.concentration_param * (1.0 - state.a[c]));
      for (double qy : {g0, g1}) {
        for (double qx : {g0, g1}) {
          const Vec2 x((i + qx) * res, (j + qy) * res);
          const Vec2 vq = dense_velocity(mesh, v, x);
          const Vec2 vq_old = dense_velocity(mesh, v_old, x);
          const Mat2 sigma = oracle_stress(dense_gradient(mesh, v, x), P, rp.delta_min);
          const Vec2 rel = forcing.ocean_velocity - vq;
          Vec2 f = dp.ocean_drag_mode == OceanDragMode::quadratic
                       ? Vec2(dp.ocean_density * dp.ocean_drag_coeff * rel.norm() * rel)
                       : Vec2(dp.ocean_density * dp.linear_drag_velocity * rel);
          f += dp.air_density * dp.air_drag_coeff * forcing.wind_velocity.norm() *
               forcing.wind_velocity;
          if (forcing.coriolis_enabled) {
            const double rhf = rh * forcing.coriolis_parameter;
            f += rhf * Vec2(vq.y(), -vq.x());
            f += rhf * Vec2(-forcing.ocean_velocity.y(), forcing.ocean_velocity.x());
          }
          const Vec2 body = rh * (vq - vq_old) / dt - f;
          for (int n = 0; n < mesh.num_nodes(); ++n) {
            const Hat phi = global_hat(mesh, n, x);
            if (phi.value == 0.0 && phi.grad.isZero()) continue;
            for (int e = 0; e < 2; ++e) {
              R[2 * n + e] += w * (body[e] * phi.value + sigma.row(e).dot(phi.grad));
            }
          }
        }
      }
    }
  }

  const NodalField& v_berg = params.berg_drag == BergDragTreatment::semi_implicit ? v : v_old;
  for (const auto& b : bergs) {
    if (b.exited) continue;
    const Vec2 rel = b.velocity - dense_velocity(mesh, v_berg, b.position);
    double coeff = dp.ice_resistance_coeff * dp.berg_density * std::numbers::pi * b.radius *
                   b.radius;
    if (dp.drag_includes_concentration) {
      coeff *= sample_cell_field(mesh, state.a, b.position);
    }
    const Vec2 F = coeff * rel.norm() * rel;
    for (int n = 0; n < mesh.num_nodes(); ++n) {
      const double phi = global_hat(mesh, n, b.position).value;
      R.segment<2>(2 * n) -= phi * F;
    }
  }

  for (int n = 0; n < mesh.num_nodes(); ++n) {
    if (mesh.is_boundary_node(n)) R.segment<2>(2 * n) = v.segment<2>(2 * n);
  }
  return R;
}

/// Random interior velocity of typical magnitude `scale` (boundary nodes 0).
inline NodalField random_velocity(const Mesh& mesh, std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  NodalField v(2 * mesh.num_nodes());
  for (int k = 0; k < v.size(); ++k) v[k] = u(rng);
  apply_dirichlet(mesh, v);
  return v;
}

inline SeaIceState random_state(const Mesh& mesh, std::mt19937& rng) {
  std::uniform_real_distribution<double> ua(0.3, 1.0);
  std::uniform_real_distribution<double> uh(0.5, 2.0);
  SeaIceState s = init_state(mesh, 0.5, 1.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    s.a[c] = ua(rng);
    s.h[c] = uh(rng);
  }
  return s;
}

}  // namespace fastice::testing
