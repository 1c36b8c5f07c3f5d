#include "fastice/scenarios.hpp"

#include <cmath>

#include "fastice/errors.hpp"

namespace fastice {

namespace {

constexpr double kKm = 1000.0;
constexpr double kDay = 86400.0;

int steps_per_day(double dt) { return static_cast<int>(std::llround(kDay / dt)); }

ScenarioConfig common_base(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  c.extent = Vec2(512 * kKm, 512 * kKm);
  c.resolution = 8 * kKm;
  c.dt = default_dt(c.resolution);
  c.output_every = steps_per_day(c.dt);
  c.a0 = 0.5;
  c.h0 = 1.0;
  c.forcing.ocean_velocity = Vec2(0.05, 0.0);
  c.forcing.wind_velocity = Vec2::Zero();
  c.forcing.coriolis_enabled = false;
  return c;
}

BergSpec berg_at(double x_km, double y_km, bool grounded) {
  BergSpec b;
  b.position = Vec2(x_km * kKm, y_km * kKm);
  b.radius = 1 * kKm;
  b.height = 200.0;
  b.grounded = grounded;
  return b;
}

std::vector<NamedRegion> upstream_downstream_regions() {
  return {
      {"before", Rect{Vec2(144 * kKm, 144 * kKm), Vec2(160 * kKm, 160 * kKm)}},
      {"after", Rect{Vec2(160 * kKm, 144 * kKm), Vec2(176 * kKm, 160 * kKm)}},
  };
}

}  // namespace

std::vector<std::string> scenario_names() { return {"stability", "refinement", "radius", "dynamic"}; }

double default_dt(double resolution) { return 600.0 * resolution / (8 * kKm); }

ScenarioConfig builtin_scenario(const std::string& name) {
  ScenarioConfig c = common_base(name);
  if (name == "stability") {
    c.advection = false;
    c.drag.ocean_drag_mode = OceanDragMode::linearized;
    c.duration = 5 * kDay;
    c.bergs = {berg_at(159, 159, true), berg_at(159, 157, true)};
  } else if (name == "refinement") {
    c.duration = 10 * kDay;
    c.bergs = {berg_at(158, 158, true), berg_at(158, 154, true)};
    c.regions = upstream_downstream_regions();
  } else if (name == "radius") {
    c.duration = 3 * kDay;
    c.bergs = {berg_at(158, 158, true), berg_at(158, 154, true)};
    c.regions = upstream_downstream_regions();
  } else if (name == "dynamic") {
    c.duration = 3 * kDay;
    const double roster[][2] = {
        {110, 108}, {110, 118}, {110, 122}, {110, 125}, {123, 143}, {132, 156}, {40, 64},
        {133, 167}, {133, 171}, {133, 187}, {199, 256}, {200, 250}, {200, 259}, {201, 253},
        {203, 261}, {223, 417}, {293, 201}, {310, 345}, {334, 25},
    };
    for (const auto& p : roster) c.bergs.push_back(berg_at(p[0], p[1], false));
    c.grounding = GroundingRegion{Vec2(111 * kKm, 100 * kKm), Vec2(200 * kKm, 165 * kKm)};
    c.dt = 0.5 * default_dt(c.resolution);
    c.output_every = steps_per_day(c.dt);
  } else {
    std::string valid;
    for (const auto& n : scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ConfigError("unknown scenario '" + name + "'; valid names: " + valid);
  }
  return c;
}

void set_resolution(ScenarioConfig& config, double resolution) {
  if (!(resolution > 0.0)) throw ConfigError("resolution must be positive");
  const bool daily = config.output_every == steps_per_day(config.dt);
  config.dt *= resolution / config.resolution;
  config.resolution = resolution;
  if (daily) config.output_every = steps_per_day(config.dt);
}

void set_berg_radius(ScenarioConfig& config, double radius) {
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  for (auto& b : config.bergs) b.radius = radius;
}

void set_duration(ScenarioConfig& config, double duration) {
  if (!(duration >= 0.0)) throw ConfigError("duration must be non-negative");
  config.duration = duration;
}

}  // namespace fastice
