#include <doctest.h>

#include <algorithm>

#include "bcproof/analysis.hpp"
#include "bcproof/constructions.hpp"
#include "bcproof/driver.hpp"
#include "bcproof/verify.hpp"
#include "bcproof/zoo.hpp"

using namespace bcproof;

namespace {

std::vector<Vector> optimal_vertices(std::size_t n) {
  const auto inst = jeroslow_inequality(n);
  const Rational target(static_cast<long>(n), 2);
  std::vector<Vector> out;
  for (const auto& v : enumerate_vertices(inst.polyhedron)) {
    if (inst.objective.dot(v) == target) out.push_back(v);
  }
  return out;
}

// Oracle for count_vertices_in_split: the vertex enumeration routine plus an
// exact rational comparison.
std::size_t vertices_on_midline(const std::vector<Vector>& vertices, const Vector& pi, long pi0) {
  const Rational mid = Rational(pi0) + Rational(1, 2);
  return static_cast<std::size_t>(
      std::count_if(vertices.begin(), vertices.end(), [&](const Vector& v) { return pi.dot(v) == mid; }));
}

}  // namespace

TEST_CASE("jeroslow generators") {
  const auto five = jeroslow_inequality(5);
  CHECK(solve_lp(five.polyhedron, five.objective).value == Rational(5, 2));
  CHECK(five.bound == 2);

  std::size_t feasible = 0;
  const auto three = jeroslow_inequality(3);
  for (unsigned m = 0; m < 8; ++m) {
    Vector x = zeros(3);
    for (std::size_t i = 0; i < 3; ++i) x[static_cast<Eigen::Index>(i)] = (m >> i) & 1u;
    feasible += three.polyhedron.contains(x) ? 1 : 0;
  }
  CHECK(feasible == 4);

  const auto partial = jeroslow_partial_objective(5);
  CHECK(solve_lp(partial.polyhedron, partial.objective).value == Rational(5, 2));
  const auto fixed = partial.polyhedron.with({equal_to(unit_vector(5, 0), 0)});
  CHECK(solve_lp(fixed, partial.objective).value == 2);

  CHECK_THROWS_AS(jeroslow_inequality(4), std::invalid_argument);
  CHECK_THROWS_AS(jeroslow_equality(6), std::invalid_argument);
}

TEST_CASE("dense split proves jeroslow equality n = 3 in three nodes") {
  ProofTree tree(jeroslow_equality(3), ProofMode::Restricted);
  const auto kids = tree.branch(tree.ensure_root(), make_split(from_integers({1, 1, 1}), 1, 3, 0));
  for (auto k : kids) tree.leaf(k, LeafReason::LpInfeasible);
  CHECK(verify_proof(tree).accepted());
  CHECK(tree.size() == 3);
}

TEST_CASE("optimal vertex totals") {
  for (std::size_t n : {3u, 5u, 7u}) {
    CAPTURE(n);
    CHECK(Integer(static_cast<unsigned long>(optimal_vertices(n).size())) == jeroslow_optimal_vertex_count(n));
  }
  CHECK(jeroslow_optimal_vertex_count(5) == 30);
  CHECK(jeroslow_optimal_vertex_count(7) == 140);
}

TEST_CASE("count_vertices_in_split matches vertex enumeration") {
  const auto verts = optimal_vertices(5);
  CHECK(count_vertices_in_split(5, make_variable_split(0, 0, 5, 0)) == 6);
  CHECK(count_vertices_in_split(5, make_split(from_integers({1, 1, 1, 1, 1}), 2, 5, 0)) == 30);
  // Every split with coefficients in {-1, 0, 1} and pi0 in [-3, 3].
  std::vector<long> pi(5);
  for (int code = 1; code < 243; ++code) {
    int c = code;
    for (auto& p : pi) {
      p = c % 3 - 1;
      c /= 3;
    }
    if (std::all_of(pi.begin(), pi.end(), [](long x) { return x == 0; })) continue;
    const Vector v = from_integers(pi);
    for (long pi0 = -3; pi0 <= 3; ++pi0) {
      CHECK(count_vertices_in_split(5, pi, pi0) == vertices_on_midline(verts, v, pi0));
    }
  }
}

TEST_CASE("p_bound values") {
  CHECK(p_bound(7, 1) == 20);
  CHECK(p_bound(7, 2) == 20);
  // 3 * C(2, 1) * C(4, 2)
  CHECK(p_bound(7, 3) == 36);
  CHECK(p_bound(5, 1) == 6);
  // p(t+1) / p(t) for odd t is 1.
  for (std::size_t n : {5u, 7u, 9u, 11u}) {
    for (std::size_t t = 1; t + 1 <= n / 2; t += 2) CHECK(p_bound(n, t + 1) == p_bound(n, t));
  }
  CHECK_THROWS_AS(p_bound(7, 0), std::invalid_argument);
  CHECK_THROWS_AS(p_bound(7, 4), std::invalid_argument);
}

TEST_CASE("vertex counts respect p_bound on small splits") {
  for (std::size_t n : {5u, 7u}) {
    std::vector<long> pi(n, 0);
    // Supports of size t <= floor(n/2) with coefficients in {-2..2} \ {0}.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      const auto t = static_cast<std::size_t>(__builtin_popcount(mask));
      if (t > n / 2) continue;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) idx.push_back(i);
      }
      std::size_t combos = 1;
      for (std::size_t j = 0; j < t; ++j) combos *= 4;
      for (std::size_t code = 0; code < combos; ++code) {
        std::fill(pi.begin(), pi.end(), 0);
        std::size_t c = code;
        for (auto i : idx) {
          const long vals[4] = {-2, -1, 1, 2};
          pi[i] = vals[c % 4];
          c /= 4;
        }
        const Integer bound = p_bound(n, t);
        for (long pi0 = -static_cast<long>(n); pi0 <= static_cast<long>(n); ++pi0) {
          if (Integer(static_cast<unsigned long>(count_vertices_in_split(n, pi, pi0))) > bound) {
            FAIL("bound exceeded at n=" << n << " t=" << t << " pi0=" << pi0);
          }
        }
      }
    }
  }
}

TEST_CASE("sperner counts") {
  CHECK(sperner_count({1, 1}, 1) == 2);
  CHECK(sperner_count({1, 1, 1, 1}, 2) == 6);
  CHECK(sperner_count({2, -1, 3}, 2) == 2);  // {x1} and {x2, x3}
  CHECK_THROWS_AS(sperner_count({1, 0}, 1), std::invalid_argument);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto cap = binomial(k, k / 2);
    std::vector<long> w(k);
    std::size_t combos = 1;
    for (std::size_t j = 0; j < k; ++j) combos *= 6;
    for (std::size_t code = 0; code < combos; ++code) {
      std::size_t c = code;
      long lo = 0;
      long hi = 0;
      for (auto& x : w) {
        const long vals[6] = {-3, -2, -1, 1, 2, 3};
        x = vals[c % 6];
        c /= 6;
        (x < 0 ? lo : hi) += x;
      }
      for (long target = lo; target <= hi; ++target) CHECK(Integer(sperner_count(w, target)) <= cap);
    }
  }
}

TEST_CASE("sparse cut triviality") {
  CHECK(sparse_cut_is_trivial(5, less_equal(from_integers({1, 1, 0, 0, 0}), 2)));
  CHECK_FALSE(sparse_cut_is_trivial(5, less_equal(from_integers({1, 1, 1, 1, 1}), 2)));
  // x1 + x2 <= 1 cuts (1,1,0,0,0), which lies in H for n = 5.
  CHECK_THROWS_AS(sparse_cut_is_trivial(5, less_equal(from_integers({1, 1, 0, 0, 0}), 1)), std::invalid_argument);
  // For n = 3 the same cut is valid on H and not trivial; support 2 > floor(3/2).
  CHECK_FALSE(sparse_cut_is_trivial(3, less_equal(from_integers({1, 1, 0}), 1)));
  CHECK(sparse_cut_is_trivial(5, greater_equal(from_integers({1, -1, 0, 0, 0}), -1)));
}

TEST_CASE("split classification on the chain tree") {
  const auto tree = build_chain_branching_tree(5);
  const auto cls = classify_splits(tree);
  CHECK(cls.generation_set[0].empty());
  CHECK(cls.true_split[0] == true);
  CHECK(cls.generation[1] == 1);
  CHECK(cls.generation_set[1] == std::vector<std::size_t>{0});
  CHECK(count_generation_nodes(tree, cls, 0) == 1);
  CHECK(count_generation_nodes(tree, cls, 1) == 2);
  // The last node is empty of integer points.
  CHECK(cls.integer_points.back() == 0);

  ProofTree fake(jeroslow_inequality(5), ProofMode::Unrestricted);
  const auto kids = fake.branch(fake.ensure_root(), make_variable_split(0, -1, 5, 0));
  fake.leaf(kids[0], LeafReason::LpInfeasible);
  fake.leaf(kids[1], LeafReason::BoundCertified);
  const auto fcls = classify_splits(fake);
  CHECK(fcls.true_split[0] == false);
  CHECK(fcls.generation[kids[1]] == 0);
  CHECK(fcls.integer_points[kids[0]] == 0);

  CHECK_THROWS_AS(classify_splits(single_cg_cut_proof(5)), std::invalid_argument);
  CHECK_THROWS_AS(classify_splits(ProofTree(triangle_T(3), ProofMode::Unrestricted)), std::invalid_argument);
}

TEST_CASE("generation law and half value on driver proofs") {
  for (std::size_t n : {5u, 7u}) {
    CAPTURE(n);
    const auto tree = run_branch_and_cut(jeroslow_inequality(n), named_strategy("variable"));
    REQUIRE(verify_proof(tree).accepted());
    const auto cls = classify_splits(tree);
    const std::size_t s = 1;
    for (std::size_t m = 0; m + 1 <= (n / 2) / s; ++m) {
      CHECK(count_generation_nodes(tree, cls, m) >= (std::size_t{1} << m));
    }
    CHECK(half_value_violations(tree, cls, s).empty());
  }
}

TEST_CASE("triangle family") {
  for (long h : {2l, 4l, 8l}) {
    CAPTURE(h);
    const auto inst = triangle_T(h);
    ProofTree tree(inst, ProofMode::Restricted);
    const auto kids = tree.branch(tree.ensure_root(), make_variable_split(0, 0, 2, 0));
    for (auto k : kids) {
      const auto lp = solve_lp(tree.relaxation(k), inst.objective);
      CHECK(lp.value == 0);
      tree.leaf(k, LeafReason::IntegralOptimum);
    }
    CHECK(verify_proof(tree).accepted());
    CHECK_FALSE(find_single_cg_proof(inst, 2 * h).has_value());
  }
  // Vertices of T(4).
  auto verts = enumerate_vertices(triangle_T(4).polyhedron);
  std::sort(verts.begin(), verts.end(), lex_less);
  REQUIRE(verts.size() == 3);
  CHECK(verts[0] == from_integers({0, 0}));
  CHECK(verts[1] == (Vector(2) << Rational(1, 2), Rational(4)).finished());
  CHECK(verts[2] == from_integers({1, 0}));
}

TEST_CASE("one-round search finds the jeroslow cut") {
  const auto cut = find_single_cg_proof(jeroslow_inequality(3), 2);
  REQUIRE(cut.has_value());
  CHECK(verify_cut(jeroslow_inequality(3).polyhedron, *cut));
}

TEST_CASE("cks tetrahedron") {
  for (long h : {1l, 4l, 10l}) {
    CAPTURE(h);
    const auto inst = cks_tetrahedron(h);
    for (const auto& v : cks_vertices(h)) CHECK(inst.polyhedron.contains(v));
    auto verts = enumerate_vertices(inst.polyhedron);
    CHECK(verts.size() == 4);
  }
  const auto cont = cks_tetrahedron(4, false);
  CHECK(cont.n_int() == 2);
  CHECK(cont.n_cont() == 1);
  CHECK_THROWS_AS(cks_tetrahedron(0), std::invalid_argument);
}
