#include <doctest.h>

#include <random>

#include "bcproof/cuts.hpp"
#include "bcproof/lp.hpp"
#include "bcproof/zoo.hpp"

using namespace bcproof;

namespace {

Vector jeroslow_lambda(std::size_t n, const Rational& value) {
  Vector lambda = zeros(1 + 2 * n);
  lambda[0] = value;
  return lambda;
}

// Calls `f` on every integer point of the box [lo, hi]^dim.
template <typename F>
void for_each_box_point(std::size_t dim, long lo, long hi, F&& f) {
  std::vector<long> x(dim, lo);
  while (true) {
    f(from_integers(x));
    std::size_t i = 0;
    while (i < dim && x[i] == hi) x[i++] = lo;
    if (i == dim) return;
    ++x[i];
  }
}

}  // namespace

TEST_CASE("split construction") {
  const auto var = make_split(from_integers({1, 0, 0}), 0, 3, 0);
  CHECK(var.kind() == DisjunctionKind::Variable);
  CHECK(var.variable() == 0);
  REQUIRE(var.term_count() == 2);
  CHECK(var.terms()[0][0] == less_equal(from_integers({1, 0, 0}), 0));
  CHECK(var.terms()[1][0] == greater_equal(from_integers({1, 0, 0}), 1));
  CHECK(var.sparsity() == 1);

  const auto two = make_split(from_integers({1, 0, 1}), 0, 3, 0);
  CHECK(two.kind() == DisjunctionKind::Split);
  CHECK(two.sparsity() == 2);

  CHECK_THROWS_AS(make_split(from_integers({1, 0, 1}), 0, 2, 1), std::invalid_argument);
  Vector frac(2);
  frac << Rational(1, 2), Rational(1);
  CHECK_THROWS_AS(make_split(frac, 0, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_split(from_integers({1, 1}), 0, 3, 0), std::invalid_argument);
}

TEST_CASE("canonical sign of a split") {
  const auto s = make_split(from_integers({-1, 2}), 3, 2, 0);
  const auto c = canonical_split(s);
  CHECK(c.pi()[0] == 1);
  CHECK(c.pi0() == -4);
  CHECK(c.terms()[0][0] == less_equal(from_integers({1, -2}), -4));
  CHECK(c.terms()[1][0] == greater_equal(from_integers({1, -2}), -3));
  // Same halfspaces, swapped order.
  for_each_box_point(2, -6, 6, [&](const Vector& x) {
    CHECK(s.terms()[0][0].satisfied_by(x) == c.terms()[1][0].satisfied_by(x));
    CHECK(s.terms()[1][0].satisfied_by(x) == c.terms()[0][0].satisfied_by(x));
  });
}

TEST_CASE("dense split closes jeroslow n = 3 in one step") {
  const auto inst = jeroslow_inequality(3);
  const auto d = make_split(from_integers({1, 1, 1}), 1, 3, 0);
  const auto low = solve_lp(inst.polyhedron.with(d.terms()[0]), inst.objective);
  REQUIRE(low.optimal());
  CHECK(low.value == 1);
  CHECK(solve_lp(inst.polyhedron.with(d.terms()[1]), inst.objective).infeasible());
}

TEST_CASE("splits cover every integer point") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coeff(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long> pi{coeff(rng), coeff(rng), coeff(rng)};
    const auto d = make_split(from_integers(pi), Integer(coeff(rng)), 3, 0);
    for_each_box_point(3, -2, 2, [&](const Vector& x) { CHECK(d.contains(x)); });
  }
  // Fractional points between the two halfspaces are not covered.
  const auto d = make_split(from_integers({1, 1}), 0, 2, 0);
  Vector mid(2);
  mid << Rational(1, 4), Rational(1, 4);
  CHECK_FALSE(d.contains(mid));
}

TEST_CASE("interval partitions") {
  std::vector<Interval> parts{{std::nullopt, Integer(0)}, {Integer(1), Integer(2)}, {Integer(3), std::nullopt}};
  const auto d = make_interval_partition(1, parts, 2, 0);
  CHECK(d.kind() == DisjunctionKind::Generic);
  CHECK(d.term_count() == 3);
  CHECK(d.sparsity() == 1);
  for_each_box_point(2, -4, 6, [&](const Vector& x) { CHECK(d.contains(x)); });

  std::vector<Interval> gap{{std::nullopt, Integer(0)}, {Integer(2), std::nullopt}};
  CHECK_THROWS_AS(make_interval_partition(0, gap, 2, 0), std::invalid_argument);
  std::vector<Interval> open_low{{Integer(0), Integer(3)}, {Integer(4), std::nullopt}};
  CHECK_THROWS_AS(make_interval_partition(0, open_low, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_interval_partition(1, parts, 1, 1), std::invalid_argument);
}

TEST_CASE("chvatal-gomory cut on the jeroslow polytope") {
  const auto p = jeroslow_polytope(5);
  const auto cut = generate_cg_cut(p, jeroslow_lambda(5, Rational(1, 2)));
  CHECK(cut.halfspace == less_equal(from_integers({1, 1, 1, 1, 1}), 2));
  CHECK(cut.is_cg());
  CHECK(verify_cut(p, cut));

  auto weaker = cut;
  weaker.halfspace.rhs = 3;
  CHECK(verify_cut(p, weaker));
  auto tampered = cut;
  tampered.halfspace.rhs = 1;
  const auto check = verify_cut(p, tampered);
  CHECK_FALSE(check.ok);
  CHECK(check.reason.find("rounded") != std::string::npos);
}

TEST_CASE("cg cut edge cases") {
  const auto p = jeroslow_polytope(3);
  const auto zero = generate_cg_cut(p, zeros(7));
  CHECK(zero.halfspace == less_equal(zeros(3), 0));
  CHECK(verify_cut(p, zero));

  CHECK_THROWS_AS(generate_cg_cut(p, jeroslow_lambda(3, Rational(1, 3))), std::invalid_argument);
  CHECK_THROWS_AS(generate_cg_cut(p, jeroslow_lambda(3, Rational(-1))), std::invalid_argument);
  CHECK_THROWS_AS(generate_cg_cut(p, zeros(3)), std::invalid_argument);

  // Continuous coordinates must cancel.
  Polyhedron mixed(1, 1);
  mixed.add(less_equal(from_integers({1, 1}), 3));
  CHECK_THROWS_AS(generate_cg_cut(mixed, from_integers({1})), std::invalid_argument);
}

TEST_CASE("cg cuts are reduced to primitive form") {
  Polyhedron p(2, 0);
  p.add(less_equal(from_integers({2, 2}), 3));
  const auto cut = generate_cg_cut(p, from_integers({1}));
  CHECK(cut.halfspace == less_equal(from_integers({1, 1}), 1));
  CHECK(verify_cut(p, cut));
}

TEST_CASE("cg cuts add nothing on integral combinations") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> mult(0, 3);
  const auto p = jeroslow_polytope(5);
  for (int trial = 0; trial < 50; ++trial) {
    Vector lambda = zeros(11);
    for (Eigen::Index r = 1; r < 11; ++r) lambda[r] = mult(rng);
    const OrientedRows rows = p.oriented();
    const Vector combo = rows.a.transpose() * lambda;
    const auto cut = generate_cg_cut(p, lambda);
    const auto pf = primitive_form(combo);
    if (nonzeros(combo) == 0) continue;
    // Every multiplier and row is integral, so only the content division can
    // change the inequality.
    CHECK(equal(cut.halfspace.coeffs, pf.primitive));
    CHECK(cut.halfspace.rhs == Rational(floor(Rational(lambda.dot(rows.b) / pf.scale))));
    if (pf.scale == 1) CHECK(cut.halfspace.rhs == lambda.dot(rows.b));
  }
}

TEST_CASE("disjunctive cut on jeroslow n = 3") {
  const auto inst = jeroslow_inequality(3);
  const auto& p = inst.polyhedron;
  const auto d = make_split(from_integers({1, 1, 1}), 1, 3, 0);
  const auto x = solve_lp(p, inst.objective);
  REQUIRE(x.optimal());
  const auto cut = generate_disjunctive_cut(p, d, x.point);
  REQUIRE(cut.has_value());
  CHECK(cut->halfspace.lhs(x.point) > cut->halfspace.rhs);
  CHECK(verify_cut(p, *cut));
  CHECK(is_integral(cut->halfspace.coeffs));
  // Valid on both sides of the split, hence for every integer point.
  for (const auto& term : d.terms()) {
    const auto side = solve_lp(p.with(term), cut->halfspace.coeffs);
    if (side.optimal()) CHECK(side.value <= cut->halfspace.rhs);
  }
  // The textbook split cut sum x <= 1 has a certificate of the same shape.
  DisjunctiveCertificate cert{d, {}};
  Vector low = zeros(8);
  low[7] = 1;  // the term row itself
  cert.witnesses.push_back({low});
  const auto empty = solve_lp(p.with(d.terms()[1]), zeros(3));
  REQUIRE(empty.infeasible());
  std::vector<LinearConstraint> all = p.constraints();
  all.push_back(d.terms()[1][0]);
  cert.witnesses.push_back({oriented_multipliers(all, empty.farkas)});
  CHECK(verify_cut(p, CuttingPlane{less_equal(from_integers({1, 1, 1}), 1), cert}));
}

TEST_CASE("disjunctive cut preconditions and tampering") {
  const auto p = jeroslow_polytope(3);
  const auto d = make_variable_split(0, 0, 3, 0);
  CHECK_THROWS_AS(generate_disjunctive_cut(p, d, from_integers({0, 0, 0})), std::invalid_argument);

  Polyhedron square(2, 0);
  for (std::size_t i = 0; i < 2; ++i) {
    square.add(greater_equal(unit_vector(2, i), 0));
    square.add(less_equal(unit_vector(2, i), 1));
  }
  Vector x(2);
  x << Rational(1, 2), Rational(1);
  const auto cut = generate_disjunctive_cut(square, make_variable_split(0, 0, 2, 0), x);
  // (1/2, 1) is a convex combination of (0,1) and (1,1), both in the hull
  // of the disjunction, so nothing separates it.
  CHECK_FALSE(cut.has_value());

  Vector y(2);
  y << Rational(1, 2), Rational(1);
  const Polyhedron tri = triangle_T(1).polyhedron;
  const auto d0 = make_variable_split(0, 0, 2, 0);
  const auto c2 = generate_disjunctive_cut(tri, d0, y);
  REQUIRE(c2.has_value());
  CHECK(verify_cut(tri, *c2));
  CHECK(c2->halfspace.lhs(y) > c2->halfspace.rhs);
  for (const auto& term : d0.terms()) {
    const auto side = solve_lp(tri.with(term), c2->halfspace.coeffs);
    REQUIRE(side.optimal());
    CHECK(side.value <= c2->halfspace.rhs);
  }
  auto bad = *c2;
  bad.halfspace.rhs -= 1;
  CHECK_FALSE(verify_cut(tri, bad).ok);
  auto short_cert = *c2;
  std::get<DisjunctiveCertificate>(short_cert.certificate).witnesses.pop_back();
  CHECK_FALSE(verify_cut(tri, short_cert).ok);
}

TEST_CASE("verified cuts hold at every integer point") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coeff(-1, 1);
  int produced = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Polyhedron p(3, 0);
    for (std::size_t i = 0; i < 3; ++i) {
      p.add(greater_equal(unit_vector(3, i), 0));
      p.add(less_equal(unit_vector(3, i), 2));
    }
    Vector a = zeros(3);
    for (Eigen::Index i = 0; i < 3; ++i) a[i] = 2 * coeff(rng) + 1;
    p.add(less_equal(a, Rational(2 * coeff(rng) + 3, 2)));
    const Vector c = from_integers({coeff(rng) + 2, coeff(rng) + 2, 1});
    const auto opt = solve_lp(p, c);
    if (!opt.optimal()) continue;
    std::vector<long> pi{coeff(rng), coeff(rng), coeff(rng)};
    if (pi == std::vector<long>{0, 0, 0}) continue;
    const Integer pi0 = floor(Rational(from_integers(pi).dot(opt.point)));
    const auto d = make_split(from_integers(pi), pi0, 3, 0);
    if (d.contains(opt.point)) continue;
    const auto cut = generate_disjunctive_cut(p, d, opt.point);
    if (!cut) continue;
    ++produced;
    CHECK(verify_cut(p, *cut));
    CHECK(cut->halfspace.lhs(opt.point) > cut->halfspace.rhs);
    for_each_box_point(3, 0, 2, [&](const Vector& x) {
      if (p.contains(x)) CHECK(cut->halfspace.satisfied_by(x));
    });
  }
  CHECK(produced > 5);
}

TEST_CASE("sparsity filter") {
  const auto f1 = sparsity_filter(3, 1);
  std::size_t admitted = 0;
  std::size_t variables = 0;
  for (long a = -1; a <= 1; ++a) {
    for (long b = -1; b <= 1; ++b) {
      for (long c = -1; c <= 1; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const auto d = canonical_split(make_split(from_integers({a, b, c}), 0, 3, 0));
        if (f1.admits(d)) {
          ++admitted;
          CHECK(d.kind() == DisjunctionKind::Variable);
        }
        variables += d.kind() == DisjunctionKind::Variable ? 1 : 0;
      }
    }
  }
  CHECK(admitted == variables);
  CHECK(admitted == 6);  // each unit vector twice (pi = +e_i and the flipped -e_i)
  const auto full = sparsity_filter(3, 3);
  CHECK(full.admits(make_split(from_integers({1, 1, 1}), 1, 3, 0)));
  CHECK_THROWS_AS(sparsity_filter(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(sparsity_filter(3, 4), std::invalid_argument);
}
