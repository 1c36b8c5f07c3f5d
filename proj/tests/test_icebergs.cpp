#include <doctest.h>

#include <numbers>

#include "fastice/icebergs.hpp"

using namespace fastice;

namespace {

const Rect kDomain{{0.0, 0.0}, {512e3, 512e3}};

IcebergParticle make_berg(double x, double y) {
  IcebergParticle b;
  b.position = {x, y};
  return b;
}

SeaIceSampler constant_ice(const Vec2& v, double a) {
  return [v, a](const Vec2&) { return SeaIceSample{v, a}; };
}

}  // namespace

TEST_CASE("iceberg mass") {
  IcebergParticle b;
  CHECK(iceberg_mass(b, 900.0) == doctest::Approx(5.6549e11).epsilon(1e-4));
  b.radius *= 2;
  CHECK(iceberg_mass(b, 900.0) ==
        doctest::Approx(4 * 900.0 * 200.0 * std::numbers::pi * 1e6));
  b.height = 0.0;
  CHECK(iceberg_mass(b, 900.0) == 0.0);
}

TEST_CASE("ocean form drag on a berg at rest") {
  Forcing f;
  f.ocean_velocity = {0.05, 0.0};
  const IcebergForces F =
      iceberg_forces(IcebergParticle{}, Vec2::Zero(), 0.0, f, DragParams{}, BodyDragParams{});
  CHECK(F.ocean.x() == doctest::Approx(1.3726e6).epsilon(1e-4));
  CHECK(F.ocean.x() ==
        doctest::Approx(std::numbers::pi * 1e6 * 1025 * (5e-4 + 0.2 * 0.85) * 0.0025));
  CHECK(F.ocean.y() == 0.0);
  CHECK(F.air.norm() == 0.0);
  CHECK(F.coriolis.norm() == 0.0);
  CHECK(F.surface_slope.norm() == 0.0);
  CHECK(F.sea_ice.norm() == 0.0);
}

TEST_CASE("forces vanish when everything moves together") {
  Forcing f;
  f.ocean_velocity = {0.05, 0.01};
  IcebergParticle b;
  b.velocity = f.ocean_velocity;
  const IcebergForces F = iceberg_forces(b, b.velocity, 0.7, f, DragParams{}, BodyDragParams{});
  CHECK(F.total().norm() == 0.0);
}

TEST_CASE("sea-ice drag scales with concentration") {
  const Forcing f;
  const Vec2 ice(0.1, 0.0);
  const IcebergParticle b;
  CHECK(iceberg_forces(b, ice, 0.0, f, DragParams{}, BodyDragParams{}).sea_ice.norm() == 0.0);
  const IcebergForces F = iceberg_forces(b, ice, 0.5, f, DragParams{}, BodyDragParams{});
  CHECK(F.sea_ice.x() == doctest::Approx(0.5 * 900 * 1.0 * 1000 * 200 * 0.1 * 0.1));
}

TEST_CASE("coriolis and wind terms") {
  Forcing f;
  f.coriolis_enabled = true;
  f.ocean_velocity = {0.05, 0.0};
  f.wind_velocity = {0.0, 10.0};
  IcebergParticle b;
  b.velocity = {0.0, 0.02};
  const DragParams d;
  const IcebergForces F = iceberg_forces(b, Vec2::Zero(), 0.0, f, d, BodyDragParams{});
  const double mf = iceberg_mass(b, d.berg_density) * f.coriolis_parameter;
  CHECK(F.coriolis.x() == doctest::Approx(-mf * 0.02));
  CHECK(F.surface_slope.y() == doctest::Approx(mf * 0.05));
  CHECK(F.air.y() ==
        doctest::Approx(std::numbers::pi * 1e6 * 1.3 * (2.5e-4 + 0.2 * 0.4) * 100.0));
}

TEST_CASE("explicit Euler update") {
  Forcing f;
  f.ocean_velocity = {0.05, 0.0};
  std::vector<IcebergParticle> bergs = {make_berg(100e3, 100e3)};
  const IcebergForces F =
      iceberg_forces(bergs[0], Vec2::Zero(), 0.0, f, DragParams{}, BodyDragParams{});
  const double dt = 600.0;
  const double M = iceberg_mass(bergs[0], 900.0);
  step_icebergs(bergs, dt, constant_ice(Vec2::Zero(), 0.0), f, std::nullopt, DragParams{},
                BodyDragParams{}, kDomain);
  CHECK(bergs[0].velocity.x() == doctest::Approx(dt * F.total().x() / M).epsilon(1e-15));
  CHECK(bergs[0].position.x() == doctest::Approx(100e3 + dt * bergs[0].velocity.x()));
}

TEST_CASE("grounded bergs never move") {
  Forcing f;
  f.ocean_velocity = {0.05, 0.02};
  std::vector<IcebergParticle> bergs = {make_berg(200e3, 200e3)};
  bergs[0].grounded = true;
  for (int k = 0; k < 100; ++k) {
    step_icebergs(bergs, 600.0, constant_ice({0.1, 0.1}, 1.0), f, std::nullopt, DragParams{},
                  BodyDragParams{}, kDomain);
  }
  CHECK(bergs[0].position == Vec2(200e3, 200e3));
  CHECK(bergs[0].velocity.norm() == 0.0);
}

TEST_CASE("grounding is permanent and zeroes the velocity") {
  Forcing f;
  f.ocean_velocity = {0.05, 0.0};
  const GroundingRegion shallow{{111e3, 100e3}, {200e3, 165e3}};
  std::vector<IcebergParticle> bergs = {make_berg(110.9e3, 120e3)};
  bergs[0].velocity = {0.05, 0.0};
  int grounded_events = 0;
  Vec2 where = Vec2::Zero();
  for (int k = 0; k < 50; ++k) {
    for (const auto& e :
         step_icebergs(bergs, 600.0, constant_ice(Vec2::Zero(), 0.0), f, shallow, DragParams{},
                       BodyDragParams{}, kDomain)) {
      CHECK(e.kind == BergEvent::Kind::grounded);
      ++grounded_events;
      where = bergs[0].position;
    }
    if (grounded_events > 0) {
      CHECK(bergs[0].grounded);
      CHECK(bergs[0].velocity.norm() == 0.0);
      CHECK(bergs[0].position == where);
    }
  }
  CHECK(grounded_events == 1);
}

TEST_CASE("bergs leaving the domain are marked exited") {
  Forcing f;
  f.ocean_velocity = {0.05, 0.0};
  std::vector<IcebergParticle> bergs = {make_berg(511.99e3, 50e3)};
  bergs[0].velocity = {0.05, 0.0};
  const auto events = step_icebergs(bergs, 600.0, constant_ice(Vec2::Zero(), 0.0), f,
                                    std::nullopt, DragParams{}, BodyDragParams{}, kDomain);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == BergEvent::Kind::exited);
  CHECK(bergs[0].exited);
  const Vec2 frozen = bergs[0].position;
  step_icebergs(bergs, 600.0, constant_ice(Vec2::Zero(), 0.0), f, std::nullopt, DragParams{},
                BodyDragParams{}, kDomain);
  CHECK(bergs[0].position == frozen);
}

TEST_CASE("free berg relaxes monotonically toward the ocean velocity") {
  Forcing f;
  f.ocean_velocity = {0.05, 0.0};
  std::vector<IcebergParticle> bergs = {make_berg(1.0, 256e3)};
  const Rect huge{{-1e12, -1e12}, {1e12, 1e12}};
  double previous = (bergs[0].velocity - f.ocean_velocity).norm();
  for (int k = 0; k < 10000; ++k) {
    step_icebergs(bergs, 600.0, constant_ice(Vec2::Zero(), 0.0), f, std::nullopt, DragParams{},
                  BodyDragParams{}, huge);
    const double gap = (bergs[0].velocity - f.ocean_velocity).norm();
    CHECK(gap <= previous);
    previous = gap;
  }
  // quadratic drag: gap(t) = gap0 / (1 + k gap0 t)
  const IcebergForces F0 =
      iceberg_forces(make_berg(1.0, 256e3), Vec2::Zero(), 0.0, f, DragParams{}, BodyDragParams{});
  const double k = F0.total().norm() / (iceberg_mass(IcebergParticle{}, 900.0) * 0.05 * 0.05);
  CHECK(previous == doctest::Approx(0.05 / (1.0 + k * 0.05 * 6e6)).epsilon(0.02));
}

TEST_CASE("trajectories commute with translation") {
  Forcing f;
  f.ocean_velocity = {0.04, 0.03};
  const Vec2 shift(12345.0, -2345.0);
  std::vector<IcebergParticle> a = {make_berg(100e3, 200e3)};
  std::vector<IcebergParticle> b = {make_berg(100e3 + shift.x(), 200e3 + shift.y())};
  for (int k = 0; k < 100; ++k) {
    step_icebergs(a, 600.0, constant_ice({0.01, 0.0}, 0.5), f, std::nullopt, DragParams{},
                  BodyDragParams{}, kDomain);
    step_icebergs(b, 600.0, constant_ice({0.01, 0.0}, 0.5), f, std::nullopt, DragParams{},
                  BodyDragParams{}, kDomain);
  }
  CHECK((b[0].position - a[0].position - shift).norm() <= 1e-6);
  CHECK(b[0].velocity == a[0].velocity);
}
