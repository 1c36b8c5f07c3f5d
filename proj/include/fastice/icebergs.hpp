#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fastice/params.hpp"
#include "fastice/state.hpp"
#include "fastice/types.hpp"

namespace fastice {

/// Disk-shaped Lagrangian iceberg.
struct IcebergParticle {
  int id = 0;
  Vec2 position = Vec2::Zero();  // m
  Vec2 velocity = Vec2::Zero();  // m/s
  double radius = 1000.0;        // m
  double height = 200.0;         // m
  bool grounded = false;
  bool exited = false;  // left the domain; no longer interacts

  bool active() const { return !exited; }
};

/// Shallow-seafloor rectangle: bergs whose center enters it ground for good.
struct GroundingRegion {
  Vec2 lower_left = Vec2::Zero();
  Vec2 upper_right = Vec2::Zero();

  bool contains(const Vec2& p) const {
    return p.x() >= lower_left.x() && p.x() <= upper_right.x() && p.y() >= lower_left.y() &&
           p.y() <= upper_right.y();
  }
};

double iceberg_mass(const IcebergParticle& berg, double berg_density);

/// Per-term breakdown of the iceberg momentum balance.
struct IcebergForces {
  Vec2 coriolis = Vec2::Zero();
  Vec2 surface_slope = Vec2::Zero();
  Vec2 ocean = Vec2::Zero();
  Vec2 air = Vec2::Zero();
  Vec2 sea_ice = Vec2::Zero();

  Vec2 total() const { return coriolis + surface_slope + ocean + air + sea_ice; }
};

IcebergForces iceberg_forces(const IcebergParticle& berg, const Vec2& ice_velocity,
                             double ice_concentration, const Forcing& forcing,
                             const DragParams& drag, const BodyDragParams& body);

struct SeaIceSample {
  Vec2 velocity = Vec2::Zero();
  double concentration = 0.0;
};

using SeaIceSampler = std::function<SeaIceSample(const Vec2&)>;

struct BergEvent {
  enum class Kind { grounded, exited };
  Kind kind = Kind::grounded;
  int id = 0;
  Vec2 position = Vec2::Zero();
};

/// One explicit-Euler step: velocity from the force balance, then position,
/// then the grounding and domain-exit checks.  Returns the events raised.
std::vector<BergEvent> step_icebergs(std::vector<IcebergParticle>& bergs, double dt,
                                     const SeaIceSampler& sample, const Forcing& forcing,
                                     const std::optional<GroundingRegion>& region,
                                     const DragParams& drag, const BodyDragParams& body,
                                     const Rect& domain);

}  // namespace fastice
