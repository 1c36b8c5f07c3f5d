#include "fastice/icebergs.hpp"

#include <numbers>

namespace fastice {

double iceberg_mass(const IcebergParticle& berg, double berg_density) {
  return berg_density * berg.height * std::numbers::pi * berg.radius * berg.radius;
}

IcebergForces iceberg_forces(const IcebergParticle& berg, const Vec2& ice_velocity,
                             double ice_concentration, const Forcing& forcing,
                             const DragParams& drag, const BodyDragParams& body) {
  IcebergForces f;
  const double area = std::numbers::pi * berg.radius * berg.radius;
  const double aspect = berg.height / berg.radius;

  if (forcing.coriolis_enabled) {
    const double mf = iceberg_mass(berg, drag.berg_density) * forcing.coriolis_parameter;
    f.coriolis = mf * cross_k(berg.velocity);
    f.surface_slope = mf * cross_k(forcing.ocean_velocity);
  }

  const Vec2 rel_ocean = forcing.ocean_velocity - berg.velocity;
  f.ocean = area * drag.ocean_density * (drag.ocean_drag_coeff + aspect * body.ocean_body_coeff) *
            rel_ocean.norm() * rel_ocean;

  const Vec2& wind = forcing.wind_velocity;
  f.air = area * drag.air_density * (drag.air_drag_coeff + aspect * body.air_body_coeff) *
          wind.norm() * wind;

  const Vec2 rel_ice = ice_velocity - berg.velocity;
  f.sea_ice = ice_concentration * drag.ice_density * drag.ice_resistance_coeff * berg.radius *
              berg.height * rel_ice.norm() * rel_ice;
  return f;
}

std::vector<BergEvent> step_icebergs(std::vector<IcebergParticle>& bergs, double dt,
                                     const SeaIceSampler& sample, const Forcing& forcing,
                                     const std::optional<GroundingRegion>& region,
                                     const DragParams& drag, const BodyDragParams& body,
                                     const Rect& domain) {
  std::vector<BergEvent> events;
  for (auto& berg : bergs) {
    if (berg.exited || berg.grounded) continue;

    const SeaIceSample ice = sample(berg.position);
    const Vec2 force =
        iceberg_forces(berg, ice.velocity, ice.concentration, forcing, drag, body).total();
    berg.velocity += (dt / iceberg_mass(berg, drag.berg_density)) * force;
    berg.position += dt * berg.velocity;

    if (!domain.contains(berg.position)) {
      berg.exited = true;
      berg.velocity.setZero();
      events.push_back({BergEvent::Kind::exited, berg.id, berg.position});
      continue;
    }
    if (region && region->contains(berg.position)) {
      berg.grounded = true;
      berg.velocity.setZero();
      events.push_back({BergEvent::Kind::grounded, berg.id, berg.position});
    }
  }
  return events;
}

}  // namespace fastice
