#include "fastice/rheology.hpp"

#include <cmath>

namespace fastice {

namespace {

double double_dot(const Mat2& a, const Mat2& b) { return (a.array() * b.array()).sum(); }

}  // namespace

StrainRate strain_rate(const Mat2& grad_v) {
  StrainRate eps;
  eps.full = 0.5 * (grad_v + grad_v.transpose());
  eps.trace = eps.full.trace();
  eps.deviatoric = eps.full - 0.5 * eps.trace * Mat2::Identity();
  return eps;
}

double delta_p(const StrainRate& eps) {
  return std::sqrt(0.5 * double_dot(eps.deviatoric, eps.deviatoric) + eps.trace * eps.trace);
}

double delta(const StrainRate& eps, double delta_min) {
  const double dp2 = 0.5 * double_dot(eps.deviatoric, eps.deviatoric) + eps.trace * eps.trace;
  return std::sqrt(dp2 + delta_min * delta_min);
}

double ice_strength(double h, double a, const RheologyParams& params) {
  const double sign = params.strength_sign == StrengthSign::hibler ? -1.0 : 1.0;
  return h * params.ice_strength_param * std::exp(sign * params.concentration_param * (1.0 - a));
}

double viscosity(double strength, double Delta) { return strength / (2.0 * Delta); }

Mat2 stress(const StrainRate& eps, double zeta, double strength) {
  return 0.5 * zeta * eps.deviatoric +
         (zeta * eps.trace - 0.5 * strength) * Mat2::Identity();
}

Mat2 stress_from_gradient(const Mat2& grad_v, double strength, double delta_min) {
  const StrainRate eps = strain_rate(grad_v);
  return stress(eps, viscosity(strength, delta(eps, delta_min)), strength);
}

Mat2 stress_derivative(const Mat2& grad_v, const Mat2& d_grad_v, double strength,
                       double delta_min, bool include_viscosity_derivative) {
  const StrainRate eps = strain_rate(grad_v);
  const StrainRate deps = strain_rate(d_grad_v);
  const double Delta = delta(eps, delta_min);
  const double zeta = viscosity(strength, Delta);

  Mat2 out = 0.5 * zeta * deps.deviatoric + zeta * deps.trace * Mat2::Identity();
  if (include_viscosity_derivative) {
    const double d_delta =
        (double_dot(eps.deviatoric, deps.deviatoric) + 2.0 * eps.trace * deps.trace) / (2.0 * Delta);
    const double d_zeta = -zeta * d_delta / Delta;
    out += d_zeta * (0.5 * eps.deviatoric + eps.trace * Mat2::Identity());
  }
  return out;
}

Eigen::Matrix4d stress_tangent(const Mat2& grad_v, double strength, double delta_min,
                               bool include_viscosity_derivative) {
  const StrainRate eps = strain_rate(grad_v);
  const double Delta = delta(eps, delta_min);
  const double zeta = viscosity(strength, Delta);

  Eigen::Matrix4d T = Eigen::Matrix4d::Zero();
  T(0, 0) = T(3, 3) = 1.25 * zeta;
  T(0, 3) = T(3, 0) = 0.75 * zeta;
  T.block<2, 2>(1, 1).setConstant(0.25 * zeta);
  if (include_viscosity_derivative) {
    const Mat2 S = 0.5 * eps.deviatoric + eps.trace * Mat2::Identity();
    const Eigen::Map<const Eigen::Vector4d> s(S.data());
    T -= (zeta / (Delta * Delta)) * s * s.transpose();
  }
  return T;
}

}  // namespace fastice
