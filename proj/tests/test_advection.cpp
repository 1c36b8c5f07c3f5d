#include <doctest.h>

#include <random>

#include "fastice/advection.hpp"
#include "fastice/errors.hpp"

using namespace fastice;

namespace {

Face vertical(int i, int j) { return {Face::Orientation::vertical, i, j}; }
Face horizontal(int i, int j) { return {Face::Orientation::horizontal, i, j}; }

}  // namespace

TEST_CASE("face normal velocity") {
  const Mesh m(4e3, 4e3, 1e3);
  const NodalField u = uniform_velocity(m, {0.05, 0.0});
  CHECK(face_normal_velocity(m, u, vertical(2, 1)) == doctest::Approx(0.05));
  CHECK(face_normal_velocity(m, u, horizontal(2, 1)) == 0.0);

  NodalField v = NodalField::Zero(2 * m.num_nodes());
  v[2 * m.node_index(2, 2)] = 0.1;
  CHECK(face_normal_velocity(m, v, vertical(2, 1)) == doctest::Approx(0.05));
  CHECK(face_normal_velocity(m, v, vertical(2, 2)) == doctest::Approx(0.05));
  CHECK(face_normal_velocity(m, v, vertical(1, 1)) == 0.0);
}

TEST_CASE("face enumeration") {
  const Mesh m(3.0, 2.0, 1.0);
  const auto faces = all_faces(m);
  CHECK(faces.size() == static_cast<std::size_t>(4 * 2 + 3 * 3));
  CHECK(faces.front().orientation == Face::Orientation::vertical);
  CHECK(faces.back().orientation == Face::Orientation::horizontal);
  CHECK(faces.back().i == 2);
  CHECK(faces.back().j == 2);
}

TEST_CASE("zero velocity leaves tracers unchanged") {
  const Mesh m(8e3, 8e3, 1e3);
  SeaIceState s = init_state(m, 0.5, 1.0);
  s.a[5] = 0.9;
  s.h[7] = 2.0;
  const AdvectionResult r = upwind_step(m, s, NodalField::Zero(2 * m.num_nodes()), 600.0, {});
  CHECK(r.a == s.a);
  CHECK(r.h == s.h);
  CHECK(r.cfl == 0.0);
}

TEST_CASE("uniform state is preserved by uniform flow") {
  const Mesh m(16e3, 16e3, 1e3);
  const SeaIceState s = init_state(m, 0.5, 1.0);
  const BoundaryData inflow{0.5, 1.0};
  const NodalField u = uniform_velocity(m, {0.05, 0.02});
  const AdvectionResult r = upwind_step(m, s, u, 600.0, inflow);
  CHECK((r.a.array() - 0.5).abs().maxCoeff() <= 1e-15);
  CHECK((r.h.array() - 1.0).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("donor-cell pulse") {
  const double res = 1024.0;
  const Mesh m(8 * res, 8 * res, res);
  SeaIceState s = init_state(m, 0.0, 0.0);
  const int src = m.cell_index(3, 4);
  const int dst = m.cell_index(4, 4);
  s.h[src] = 1.0;
  s.a[src] = 1.0;
  const NodalField u = uniform_velocity(m, {0.25, 0.0});
  const double dt = 2048.0;  // CFL 0.5
  const AdvectionResult r = upwind_step(m, s, u, dt, {0.0, 0.0});
  CHECK(r.cfl == 0.5);
  CHECK(r.h[src] == 0.5);
  CHECK(r.h[dst] == 0.5);
  CHECK(r.a[src] == 0.5);
  CHECK(r.a[dst] == 0.5);
  for (int c = 0; c < m.num_cells(); ++c) {
    if (c != src && c != dst) CHECK(r.h[c] == 0.0);
  }
}

TEST_CASE("inflow boundary carries the boundary values") {
  const double res = 1024.0;
  const Mesh m(4 * res, 4 * res, res);
  const SeaIceState s = init_state(m, 0.0, 0.0);
  const NodalField u = uniform_velocity(m, {0.25, 0.0});
  const AdvectionResult r = upwind_step(m, s, u, 2048.0, {0.5, 2.0});
  for (int j = 0; j < 4; ++j) {
    CHECK(r.h[m.cell_index(0, j)] == 1.0);
    CHECK(r.a[m.cell_index(0, j)] == 0.25);
    CHECK(r.h[m.cell_index(1, j)] == 0.0);
  }
  CHECK(r.boundary_outflow_h == doctest::Approx(-4 * 0.25 * res * 2.0 * 2048.0));
}

TEST_CASE("thickness is conserved up to the boundary flux") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> uh(0.2, 2.0);
  std::uniform_real_distribution<double> uv(-0.3, 0.3);
  const Mesh m(32e3, 32e3, 2e3);
  SeaIceState s = init_state(m, 0.5, 1.0);
  for (int c = 0; c < m.num_cells(); ++c) s.h[c] = uh(rng);
  NodalField v(2 * m.num_nodes());
  for (int k = 0; k < v.size(); ++k) v[k] = uv(rng);
  for (int step = 0; step < 20; ++step) {
    const AdvectionResult r = upwind_step(m, s, v, 1000.0, {0.5, 1.0});
    const double before = cell_integral(m, s.h);
    const double after = cell_integral(m, r.h);
    CHECK(std::abs(after - (before - r.boundary_outflow_h)) <= 1e-10 * before);
    s.a = r.a;
    s.h = r.h;
  }
}

TEST_CASE("cfl violation names the face") {
  const Mesh m(8e3, 8e3, 1e3);
  const SeaIceState s = init_state(m, 0.5, 1.0);
  NodalField v = NodalField::Zero(2 * m.num_nodes());
  v[2 * m.node_index(3, 3)] = 4.0;
  try {
    (void)upwind_step(m, s, v, 600.0, {});
    FAIL("expected CflError");
  } catch (const CflError& e) {
    CHECK(e.cfl() == doctest::Approx(1.2));
    CHECK(e.suggested_dt() == doctest::Approx(500.0));
    CHECK(std::string(e.what()).find("face") != std::string::npos);
  }
  CHECK(max_cfl(m, v, 600.0) == doctest::Approx(1.2));
}

TEST_CASE("tracers stay in range") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  std::uniform_real_distribution<double> uv(-0.4, 0.4);
  const Mesh m(16e3, 16e3, 2e3);
  SeaIceState s = init_state(m, 0.5, 1.0);
  for (int c = 0; c < m.num_cells(); ++c) s.a[c] = ua(rng);
  NodalField v(2 * m.num_nodes());
  for (int k = 0; k < v.size(); ++k) v[k] = uv(rng);
  for (int step = 0; step < 50; ++step) {
    const AdvectionResult r = upwind_step(m, s, v, 1200.0, {1.0, 1.0});
    CHECK(r.a.minCoeff() >= 0.0);
    CHECK(r.a.maxCoeff() <= 1.0);
    CHECK(r.h.minCoeff() >= 0.0);
    s.a = r.a;
    s.h = r.h;
  }
}
