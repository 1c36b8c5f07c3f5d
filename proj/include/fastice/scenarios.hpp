#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fastice/config.hpp"

namespace fastice {

/// Names accepted by builtin_scenario().
std::vector<std::string> scenario_names();

/// Built-in experiment setups on the 512 km square with a uniform eastward
/// ocean current.  Throws ConfigError for an unknown name.
///
///   stability   advection off, linearized ocean drag, two grounded bergs
///   refinement  two grounded bergs near (158 km, 158 km), 10 days
///   radius      two grounded bergs on the 8 km mesh, radius adjustable
///   dynamic     19 drifting bergs and a shallow grounding rectangle, 3 days, dt 300 s
ScenarioConfig builtin_scenario(const std::string& name);

/// Time step matching a resolution: 600 s per 8 km.
double default_dt(double resolution);

/// Changes the mesh resolution.  dt scales with it; a daily snapshot cadence stays daily.
void set_resolution(ScenarioConfig& config, double resolution);

/// Sets the radius of every berg.
void set_berg_radius(ScenarioConfig& config, double radius);

/// Sets the duration; must be a whole number of steps.
void set_duration(ScenarioConfig& config, double duration);

}  // namespace fastice
