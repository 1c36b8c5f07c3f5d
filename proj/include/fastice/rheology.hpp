#pragma once

#include "fastice/types.hpp"

namespace fastice {

/// Symmetric strain-rate tensor with its deviatoric/trace split.
struct StrainRate {
  Mat2 full = Mat2::Zero();
  Mat2 deviatoric = Mat2::Zero();
  double trace = 0.0;
};

/// Which exponent sign to use in the ice-strength law.
///   hibler:  P = h P* exp(-C (1 - a))   (strength grows with concentration)
///   printed: P = h P* exp(+C (1 - a))
enum class StrengthSign { hibler, printed };

struct RheologyParams {
  double ice_strength_param = 27.5e3;  // P*, N/m^2
  double concentration_param = 20.0;   // C
  double delta_min = 2e-9;             // 1/s
  StrengthSign strength_sign = StrengthSign::hibler;
};

/// eps = (grad_v + grad_v^T) / 2 with grad_v(c, d) = d v_c / d x_d.
StrainRate strain_rate(const Mat2& grad_v);

/// Unregularized deformation rate sqrt(eps':eps'/2 + tr(eps)^2).
double delta_p(const StrainRate& eps);

/// Smoothly regularized deformation rate sqrt(delta_p^2 + delta_min^2).
double delta(const StrainRate& eps, double delta_min);

double ice_strength(double h, double a, const RheologyParams& params);

/// zeta = P / (2 Delta).
double viscosity(double strength, double Delta);

/// sigma = zeta/2 eps' + zeta tr(eps) I - P/2 I.
Mat2 stress(const StrainRate& eps, double zeta, double strength);

/// Convenience: full viscous-plastic stress for a velocity gradient.
Mat2 stress_from_gradient(const Mat2& grad_v, double strength, double delta_min);

/// Directional derivative of sigma(grad_v) along d_grad_v.
///
/// With include_viscosity_derivative = false, zeta is frozen at grad_v (the
/// Picard linearization); otherwise the derivative of zeta(Delta) is included.
Mat2 stress_derivative(const Mat2& grad_v, const Mat2& d_grad_v, double strength,
                       double delta_min, bool include_viscosity_derivative);

/// Matrix form of stress_derivative: maps the column-major vectorized
/// d_grad_v (entries 00, 10, 01, 11) to the vectorized stress increment.
/// The result is symmetric.
Eigen::Matrix4d stress_tangent(const Mat2& grad_v, double strength, double delta_min,
                               bool include_viscosity_derivative);

}  // namespace fastice
