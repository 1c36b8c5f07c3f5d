#include <doctest.h>

#include "fastice/errors.hpp"
#include "fastice/state.hpp"

using namespace fastice;

TEST_CASE("init_state fills uniform tracers and rest velocity") {
  const Mesh m(64e3, 32e3, 16e3);
  const SeaIceState s = init_state(m, 0.5, 1.0);
  CHECK(s.a.size() == m.num_cells());
  CHECK(s.h.size() == m.num_cells());
  CHECK(s.v.size() == 2 * m.num_nodes());
  CHECK(s.a.minCoeff() == 0.5);
  CHECK(s.a.maxCoeff() == 0.5);
  CHECK(s.h.minCoeff() == 1.0);
  CHECK(s.v.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.t == 0.0);
}

TEST_CASE("init_state rejects concentrations outside [0,1]") {
  const Mesh m(2.0, 2.0, 1.0);
  CHECK_THROWS_AS(init_state(m, 1.2, 1.0), ConfigError);
  CHECK_THROWS_AS(init_state(m, -0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(init_state(m, 0.5, -1.0), ConfigError);
  CHECK_NOTHROW(init_state(m, 0.0, 0.0));
}

TEST_CASE("bilinear interpolation") {
  const Mesh m(1.0, 1.0, 1.0);
  NodalField v = NodalField::Zero(8);
  // x-component 0 at (0,0), 1 at (1,0), 0 at (0,1), 1 at (1,1)
  v[2 * 1] = 1.0;
  v[2 * 3] = 1.0;
  CHECK(interp_node_field(m, v, {0.5, 0.5}).x() == doctest::Approx(0.5));
  CHECK(interp_node_field(m, v, {1.0, 0.0}).x() == 1.0);
  CHECK(interp_node_field(m, v, {0.0, 1.0}).x() == 0.0);
  CHECK(interp_node_field(m, v, {0.25, 0.9}).x() == doctest::Approx(0.25));

  const Mesh big(64e3, 64e3, 8e3);
  const NodalField u = uniform_velocity(big, {0.05, 0.0});
  for (const Vec2 p : {Vec2(1.0, 2.0), Vec2(33e3, 17e3), Vec2(64e3, 64e3)}) {
    const Vec2 w = interp_node_field(big, u, p);
    CHECK(w.x() == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(w.y() == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(interp_node_field(big, u, {-1.0, 0.0}), OutOfDomainError);
}

TEST_CASE("dirichlet and component helpers") {
  const Mesh m(3.0, 3.0, 1.0);
  NodalField v = uniform_velocity(m, {1.0, -2.0});
  apply_dirichlet(m, v);
  for (int n = 0; n < m.num_nodes(); ++n) {
    const Vec2 expected = m.is_boundary_node(n) ? Vec2(0, 0) : Vec2(1, -2);
    CHECK(Vec2(v[2 * n], v[2 * n + 1]) == expected);
  }
  const Eigen::VectorXd vy = velocity_component(v, 1);
  CHECK(vy.size() == m.num_nodes());
  CHECK(vy[m.node_index(1, 1)] == -2.0);
  CHECK(sample_cell_field(m, CellField::LinSpaced(9, 0, 8), {1.5, 2.5}) == 7.0);
}
