#include <doctest.h>

#include <cmath>

#include "egvi/errors.hpp"
#include "egvi/sets.hpp"
#include "support.hpp"

using namespace egvi;
using egvi::testing::Rng;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

Halfspace row(std::initializer_list<double> a, double b) { return {vec(a), b}; }

// A polyhedral cone with 1..3 random rows through a random vertex.
FeasibleSet random_cone(Rng& rng, int n, Vector* vertex) {
  std::uniform_int_distribution<int> count(1, 3);
  *vertex = egvi::testing::random_vector(rng, n);
  std::vector<Halfspace> rows;
  for (int i = count(rng); i > 0; --i) {
    Vector a = egvi::testing::random_vector(rng, n);
    rows.push_back({a, a.dot(*vertex)});
  }
  return FeasibleSet::halfspaces(n, rows);
}

std::vector<FeasibleSet> sample_sets(Rng& rng, int n) {
  Vector vertex;
  return {FeasibleSet::whole_space(n), FeasibleSet::orthant(n), egvi::testing::random_box(rng, n),
          FeasibleSet::ball(egvi::testing::random_vector(rng, n), 1.5), random_cone(rng, n, &vertex)};
}

}  // namespace

TEST_SUITE("sets") {

TEST_CASE("projection examples") {
  CHECK(project(FeasibleSet::box(vec({0, 0}), vec({1, 1})), vec({2, -1})) == vec({1, 0}));
  CHECK(project(FeasibleSet::orthant(2), vec({-1, 2})) == vec({0, 2}));

  std::vector<Halfspace> rows = {row({1, 0}, 0), row({1, 1}, 0)};
  Vector p = vec({-2, 1});
  Vector got = project(FeasibleSet::halfspaces(2, rows), p);
  Vector oracle = egvi::testing::brute_force_polyhedron_projection(rows, p);
  CHECK((got - oracle).norm() <= 1e-12);
}

TEST_CASE("polyhedron projection matches brute force") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + trial % 4;
    std::vector<Halfspace> rows;
    Vector anchor = egvi::testing::random_vector(rng, n);
    for (int i = 0; i < 1 + trial % 4; ++i) {
      Vector a = egvi::testing::random_vector(rng, n);
      rows.push_back({a, a.dot(anchor) - std::abs(egvi::testing::random_vector(rng, 1)(0))});
    }
    Vector p = egvi::testing::random_vector(rng, n, 3.0);
    Vector got = project(FeasibleSet::halfspaces(n, rows), p);
    Vector oracle = egvi::testing::brute_force_polyhedron_projection(rows, p);
    CHECK((got - oracle).norm() <= 1e-9);
  }
}

TEST_CASE("halfspace sets validate their rows") {
  CHECK_THROWS_AS(FeasibleSet::halfspaces(1, {row({1}, 1), row({-1}, 0)}), EmptySetError);
  CHECK_THROWS_AS(FeasibleSet::halfspaces(2, {row({0, 0}, 0)}), InvalidArgumentError);
  std::vector<Halfspace> many(9, row({1, 0}, 0));
  CHECK_THROWS_AS(FeasibleSet::halfspaces(2, many), InvalidArgumentError);
  CHECK_THROWS_AS(FeasibleSet::box(vec({1}), vec({0})), InvalidArgumentError);
  CHECK_THROWS_AS(FeasibleSet::ball(vec({0}), 0.0), InvalidArgumentError);
}

TEST_CASE("cone activity uses the relative tolerance") {
  HalfspaceIntersection h{2, {row({1, 0}, 0), row({0, 1}, 100)}};
  auto act = cone_activity(h, vec({0, 100 + 5e-8}));
  CHECK(act.active_rows == std::vector<int>{0, 1});
  act = cone_activity(h, vec({2e-9, 100.001}));
  CHECK(act.active_rows.empty());
}

TEST_CASE("tangent and normal cone examples") {
  auto orthant = FeasibleSet::orthant(2);
  CHECK(project_tangent_cone(orthant, vec({0, 1}), vec({-3, -1})) == vec({0, -1}));
  CHECK(project_normal_cone(orthant, vec({0, 1}), vec({-3, -1})) == vec({-3, 0}));

  auto box = FeasibleSet::box(vec({0, 0}), vec({10, 10}));
  CHECK(project_tangent_cone(box, vec({5, 5}), vec({1, -2})) == vec({1, -2}));
  CHECK(project_normal_cone(box, vec({5, 5}), vec({1, -2})) == Vector::Zero(2));
  CHECK(project_tangent_cone(box, vec({10, 0}), vec({1, -2})) == vec({0, 0}));

  auto cone = FeasibleSet::halfspaces(2, {row({1, 0}, 0), row({1, 1}, 0)});
  Vector got = project_tangent_cone(cone, Vector::Zero(2), vec({-1, -1}));
  // At the apex the tangent cone is the set itself.
  Vector oracle = egvi::testing::brute_force_polyhedron_projection({row({1, 0}, 0), row({1, 1}, 0)}, vec({-1, -1}));
  CHECK((got - oracle).norm() <= 1e-12);

  auto ball = FeasibleSet::ball(vec({0, 0}), 1.0);
  CHECK((project_tangent_cone(ball, vec({1, 0}), vec({2, 3})) - vec({0, 3})).norm() <= 1e-15);
  CHECK((project_tangent_cone(ball, vec({1, 0}), vec({-2, 3})) - vec({-2, 3})).norm() <= 1e-15);

  CHECK_THROWS_AS(project_tangent_cone(orthant, vec({-1, 0}), vec({1, 1})), InfeasiblePointError);
}

TEST_CASE("projection properties on every set kind") {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 5;
    for (const auto& set : sample_sets(rng, n)) {
      Vector p = egvi::testing::random_vector(rng, n, 3.0), p2 = egvi::testing::random_vector(rng, n, 3.0);
      Vector z = project(set, p);
      CHECK(infeasibility(set, z) <= 1e-12);
      CHECK((project(set, z) - z).norm() <= 1e-12);
      CHECK((project(set, p) - project(set, p2)).norm() <= (p - p2).norm() + 1e-12);
      for (int s = 0; s < 5; ++s) {
        Vector y = project(set, egvi::testing::random_vector(rng, n, 3.0));
        CHECK((p - z).dot(y - z) <= 1e-10);
      }
    }
  }
}

TEST_CASE("Moreau decomposition at random feasible points") {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 5;
    std::vector<std::pair<FeasibleSet, Vector>> cases;
    for (const auto& set : sample_sets(rng, n)) cases.push_back({set, egvi::testing::random_feasible_point(rng, set)});
    Vector vertex;
    FeasibleSet cone = random_cone(rng, n, &vertex);
    cases.push_back({cone, vertex});  // apex: every row active
    for (const auto& [set, z] : cases) {
      Vector v = egvi::testing::random_vector(rng, n, 2.0);
      Vector t = project_tangent_cone(set, z, v), nrm = project_normal_cone(set, z, v);
      CHECK((t + nrm - v).norm() <= 1e-10);
      CHECK(std::abs(t.dot(nrm)) <= 1e-10);
      CHECK(t.norm() <= v.norm() + 1e-12);
      for (int s = 0; s < 3; ++s) {
        Vector y = project(set, egvi::testing::random_vector(rng, n, 3.0));
        CHECK(nrm.dot(y - z) <= 1e-10 * (1.0 + nrm.norm() * (y - z).norm()));
      }
    }
  }
}

TEST_CASE("linear minimization over set and ball") {
  Vector z = vec({1, 2, 3}), cost = vec({3, 0, -4});
  auto r = linear_min_over_set_ball(FeasibleSet::whole_space(3), z, 2.0, cost);
  CHECK(r.value == doctest::Approx(cost.dot(z) - 2.0 * cost.norm()).epsilon(1e-14));
  r = linear_min_over_set_ball(FeasibleSet::whole_space(3), z, 2.0, Vector::Zero(3));
  CHECK(r.minimizer == z);
  CHECK(r.value == 0.0);
  CHECK_THROWS_AS(linear_min_over_set_ball(FeasibleSet::ball(z, 1.0), z, 1.0, cost), UnsupportedSetError);
  CHECK_THROWS_AS(linear_min_over_set_ball(FeasibleSet::whole_space(3), z, -1.0, cost), InvalidArgumentError);
}

TEST_CASE("box and ball linear minimization matches projected gradient") {
  Rng rng(12);
  const Vector lower = Vector::Zero(4), upper = Vector::Constant(4, 10.0);
  auto box = FeasibleSet::box(lower, upper);
  for (int trial = 0; trial < 4; ++trial) {
    Vector center = egvi::testing::random_feasible_point(rng, box, 0.5);
    Vector cost = egvi::testing::random_vector(rng, 4);
    auto r = linear_min_over_set_ball(box, center, 1.0, cost);
    CHECK(infeasibility(box, r.minimizer) <= 1e-12);
    CHECK((r.minimizer - center).norm() <= 1.0 + 1e-9);
    CHECK(std::abs(r.value - cost.dot(r.minimizer)) <= 1e-12);
    double oracle = egvi::testing::projected_gradient_linear_min(lower, upper, center, 1.0, cost);
    CHECK(std::abs(r.value - oracle) <= 1e-6);
  }
}

TEST_CASE("orthant linear minimization matches projected gradient") {
  Rng rng(13);
  const Vector lower = Vector::Zero(3), upper = Vector::Constant(3, INFINITY);
  for (int trial = 0; trial < 3; ++trial) {
    Vector center = egvi::testing::random_feasible_point(rng, FeasibleSet::orthant(3), 0.5);
    Vector cost = egvi::testing::random_vector(rng, 3);
    auto r = linear_min_over_set_ball(FeasibleSet::orthant(3), center, 0.7, cost);
    double oracle = egvi::testing::projected_gradient_linear_min(lower, upper, center, 0.7, cost);
    CHECK(std::abs(r.value - oracle) <= 1e-6);
  }
}

}  // TEST_SUITE
