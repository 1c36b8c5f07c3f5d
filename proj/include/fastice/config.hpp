#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fastice/diagnostics.hpp"
#include "fastice/icebergs.hpp"
#include "fastice/momentum.hpp"
#include "fastice/params.hpp"
#include "fastice/rheology.hpp"
#include "fastice/state.hpp"

namespace fastice {

struct BergSpec {
  Vec2 position = Vec2::Zero();
  double radius = 1000.0;
  double height = 200.0;
  bool grounded = false;
};

/// Everything needed to reproduce one run.
struct ScenarioConfig {
  std::string name = "custom";
  Vec2 extent{512e3, 512e3};
  double resolution = 8e3;
  int quadrature_order = 2;
  double dt = 600.0;
  double duration = 0.0;
  /// Field snapshots every this many steps (0: initial and final only).
  int output_every = 0;

  double a0 = 0.5;
  double h0 = 1.0;
  /// Inflow tracer values; unset means the initial values.
  std::optional<double> a_in;
  std::optional<double> h_in;

  Forcing forcing;
  RheologyParams rheology;
  DragParams drag;
  BodyDragParams body;
  BergDragTreatment berg_drag = BergDragTreatment::lagged;
  double min_thickness = 1e-6;
  bool advection = true;
  FunctionalMode phi_mode = FunctionalMode::discrete_point;
  SolverConfig solver;

  std::vector<BergSpec> bergs;
  std::optional<GroundingRegion> grounding;
  std::vector<NamedRegion> regions;

  BoundaryData boundary_data() const { return {a_in.value_or(a0), h_in.value_or(h0)}; }
  MomentumParams momentum_params() const;
  /// Number of time steps covering the duration.
  int num_steps() const;
};

/// Parses the flat key = value format (see docs/config.md).  Throws ConfigError
/// with the offending line number.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_string(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Writes a config that parses back to an identical ScenarioConfig.
std::string serialize_config(const ScenarioConfig& config);

/// Pre-flight checks: positive lengths and times, mesh divisibility, roster
/// inside the domain, advective CFL for the ocean velocity.  Throws ConfigError.
void validate_config(const ScenarioConfig& config);

}  // namespace fastice
