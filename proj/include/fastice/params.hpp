#pragma once

namespace fastice {

enum class OceanDragMode { quadratic, linearized };

/// Drag coefficients and densities shared by the sea-ice and iceberg models.
struct DragParams {
  double ocean_drag_coeff = 5e-4;      // C_o
  double air_drag_coeff = 2.5e-4;      // C_a
  double ocean_density = 1025.0;       // rho_o, kg/m^3
  double air_density = 1.3;            // rho_a, kg/m^3
  double ice_density = 900.0;          // rho, kg/m^3
  double berg_density = 900.0;         // rho_b, kg/m^3
  double ice_resistance_coeff = 1.0;   // C_i
  OceanDragMode ocean_drag_mode = OceanDragMode::quadratic;
  double linear_drag_velocity = 2.5e-5;  // C_o_bar = C_o * |v_o|, m/s
  /// Multiply the discrete iceberg point drag by the local concentration.
  bool drag_includes_concentration = false;
};

/// Form-drag coefficients on the submerged / emerged iceberg flanks.
struct BodyDragParams {
  double ocean_body_coeff = 0.85;  // C_vo
  double air_body_coeff = 0.4;     // C_va
};

}  // namespace fastice
