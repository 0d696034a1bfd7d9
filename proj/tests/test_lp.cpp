#include <doctest.h>

#include <random>

#include "bcproof/errors.hpp"
#include "bcproof/lp.hpp"

using namespace bcproof;

namespace {

Polyhedron box(std::size_t dim, long lo, long hi) {
  Polyhedron p(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    p.add(greater_equal(unit_vector(dim, i), lo));
    p.add(less_equal(unit_vector(dim, i), hi));
  }
  return p;
}

Polyhedron jeroslow_polytope(std::size_t n) {
  Polyhedron p(n, 0);
  Vector twos = zeros(n);
  twos.setConstant(Rational(2));
  p.add(less_equal(twos, static_cast<long>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    p.add(greater_equal(unit_vector(n, i), 0));
    p.add(less_equal(unit_vector(n, i), 1));
  }
  return p;
}

Vector ones(std::size_t n) {
  Vector v = zeros(n);
  v.setConstant(Rational(1));
  return v;
}

}  // namespace

TEST_CASE("rational text form") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-4/2")) == "-2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2/-3"), std::invalid_argument);
  CHECK(floor(parse_rational("-3/2")) == -2);
  CHECK(ceil(parse_rational("-3/2")) == -1);
  CHECK(floor(parse_rational("5/2")) == 2);
}

TEST_CASE("primitive form") {
  Vector v(3);
  v << Rational(1, 2), Rational(0), Rational(3, 4);
  auto pf = primitive_form(v);
  CHECK(pf.scale == Rational(1, 4));
  CHECK(pf.primitive[0] == 2);
  CHECK(pf.primitive[2] == 3);
}

TEST_CASE("jeroslow polytope LP value is n/2") {
  const auto p = jeroslow_polytope(5);
  const auto res = solve_lp(p, ones(5));
  REQUIRE(res.optimal());
  CHECK(res.value == Rational(5, 2));
  CHECK(check_lp_certificate(p, ones(5), res).ok);
  // The optimum is a vertex: exactly one fractional coordinate.
  std::size_t fractional = 0;
  for (Eigen::Index i = 0; i < 5; ++i) fractional += is_integer(res.point[i]) ? 0 : 1;
  CHECK(fractional == 1);
}

TEST_CASE("box maximum") {
  const auto p = box(3, 0, 1);
  const auto res = solve_lp(p, ones(3));
  REQUIRE(res.optimal());
  CHECK(res.value == 3);
  CHECK(equal(res.point, ones(3)));
}

TEST_CASE("infeasible LP yields a Farkas certificate") {
  Polyhedron p(2, 0);
  p.add(less_equal(from_integers({1, 1}), 1));
  p.add(greater_equal(from_integers({1, 1}), 2));
  const auto res = solve_lp(p, from_integers({1, 0}));
  CHECK(res.status == LpStatus::Infeasible);
  CHECK(check_lp_certificate(p, from_integers({1, 0}), res).ok);
  CHECK_FALSE(is_feasible(p));
}

TEST_CASE("unbounded LP is a status, not an error") {
  Polyhedron p(2, 0);
  p.add(greater_equal(from_integers({1, 0}), 0));
  p.add(greater_equal(from_integers({0, 1}), 0));
  CHECK(solve_lp(p, from_integers({1, 1})).status == LpStatus::Unbounded);
  CHECK_FALSE(is_bounded(p));
  CHECK_THROWS_AS(enumerate_vertices(p), UnboundedPolyhedron);
}

TEST_CASE("lineality space orthogonal to the objective") {
  // Slab 0 <= x1 + x2 <= 1 with objective along the normal.
  Polyhedron p(2, 0);
  p.add(less_equal(from_integers({1, 1}), 1));
  p.add(greater_equal(from_integers({1, 1}), 0));
  const auto res = solve_lp(p, from_integers({2, 2}));
  REQUIRE(res.optimal());
  CHECK(res.value == 2);
  CHECK(check_lp_certificate(p, from_integers({2, 2}), res).ok);
  CHECK(solve_lp(p, from_integers({1, 0})).status == LpStatus::Unbounded);
}

TEST_CASE("equality constraints and free variables") {
  Polyhedron p(1, 2);
  p.add(equal_to(from_integers({1, 1, 1}), 3));
  p.add(greater_equal(from_integers({1, 0, 0}), 0));
  p.add(greater_equal(from_integers({0, 1, 0}), 0));
  p.add(greater_equal(from_integers({0, 0, 1}), 0));
  const Vector c = from_integers({1, 2, -1});
  const auto res = solve_lp(p, c);
  REQUIRE(res.optimal());
  CHECK(res.value == 6);
  CHECK(check_lp_certificate(p, c, res).ok);
}

TEST_CASE("is_integral checks only the integer block") {
  Vector a(3);
  a << Rational(1), Rational(2), Rational(1, 2);
  CHECK(is_integral(a, 2));
  Vector b(3);
  b << Rational(1), Rational(1, 2), Rational(0);
  CHECK_FALSE(is_integral(b, 2));
  Vector c(2);
  c << Rational(3, 3), Rational(4, 2);
  CHECK(is_integral(c, 2));
}

TEST_CASE("vertex enumeration") {
  SUBCASE("unit square") {
    const auto v = enumerate_vertices(box(2, 0, 1));
    REQUIRE(v.size() == 4);
    CHECK(equal(v[0], from_integers({0, 0})));
    CHECK(equal(v[1], from_integers({0, 1})));
    CHECK(equal(v[2], from_integers({1, 0})));
    CHECK(equal(v[3], from_integers({1, 1})));
  }
  SUBCASE("triangle with a fractional apex") {
    Polyhedron p(2, 0);
    p.add(greater_equal(from_integers({0, 1}), 0));
    p.add(greater_equal(from_integers({8, -1}), 0));
    p.add(less_equal(from_integers({8, 1}), 8));
    const auto v = enumerate_vertices(p);
    REQUIRE(v.size() == 3);
    Vector apex(2);
    apex << Rational(1, 2), Rational(4);
    CHECK(equal(v[0], from_integers({0, 0})));
    CHECK(equal(v[1], apex));
    CHECK(equal(v[2], from_integers({1, 0})));
  }
  SUBCASE("optimal vertices of the jeroslow polytope, n = 3") {
    auto p = jeroslow_polytope(3);
    p.add(equal_to(ones(3), Rational(3, 2)));
    // 3 * C(2, 1)
    CHECK(enumerate_vertices(p).size() == 6);
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(enumerate_vertices(box(4, 0, 1), 3), BudgetExceeded);
  }
  SUBCASE("empty polyhedron") {
    Polyhedron p(1, 0);
    p.add(greater_equal(from_integers({1}), 2));
    p.add(less_equal(from_integers({1}), 1));
    CHECK(enumerate_vertices(p).empty());
  }
}

TEST_CASE("solve_lp matches the vertex maximum on random boxed polytopes") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::uniform_int_distribution<int> dim_dist(1, 4);
  std::uniform_int_distribution<int> extra_dist(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const auto dim = static_cast<std::size_t>(dim_dist(rng));
    Polyhedron p(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      p.add(greater_equal(unit_vector(dim, i), coeff(rng) - 5));
      p.add(less_equal(unit_vector(dim, i), coeff(rng) + 5));
    }
    const int extra = extra_dist(rng);
    for (int k = 0; k < extra; ++k) {
      Vector a = zeros(dim);
      for (std::size_t i = 0; i < dim; ++i) a[static_cast<Eigen::Index>(i)] = coeff(rng);
      p.add(less_equal(a, coeff(rng)));
    }
    Vector c = zeros(dim);
    for (std::size_t i = 0; i < dim; ++i) c[static_cast<Eigen::Index>(i)] = coeff(rng);
    const auto res = solve_lp(p, c);
    const auto vertices = enumerate_vertices(p);
    if (vertices.empty()) {
      CHECK(res.status == LpStatus::Infeasible);
      CHECK(check_lp_certificate(p, c, res).ok);
      continue;
    }
    REQUIRE(res.optimal());
    Rational best = c.dot(vertices.front());
    for (const auto& v : vertices) best = std::max(best, Rational(c.dot(v)));
    CHECK(res.value == best);
    CHECK(check_lp_certificate(p, c, res).ok);
    // deterministic
    CHECK(equal(solve_lp(p, c).point, res.point));
  }
}
