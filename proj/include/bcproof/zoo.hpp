// Instance families used throughout the experiments.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bcproof/polyhedron.hpp"

namespace bcproof {

/// {2 sum x <= n} intersected with [0,1]^n, all variables integer.
/// Constraint order: the knapsack row first, then x_i >= 0, x_i <= 1 for
/// each i in turn.
Polyhedron jeroslow_polytope(std::size_t n);

/// max sum x over the Jeroslow polytope, claim sum x <= floor(n/2).
/// Throws std::invalid_argument unless n is odd and >= 3.
Instance jeroslow_inequality(std::size_t n);

/// 2 sum x = n over [0,1]^n: LP-feasible, integer-infeasible.
Instance jeroslow_equality(std::size_t n);

/// Jeroslow polytope with objective x_1 + ... + x_ceil(n/2), claim
/// <= floor(n/2).
Instance jeroslow_partial_objective(std::size_t n);

/// conv{(0,0,0), (2,0,0), (0,2,0), (1/2,1/2,h)} with objective x_3 and
/// claim x_3 <= 0. With `x3_integer` false the third coordinate is
/// continuous. Facets are derived from the vertex list.
Instance cks_tetrahedron(long h, bool x3_integer = true);

/// The four vertices of the tetrahedron above (exact).
std::vector<Vector> cks_vertices(long h);

/// conv{(0,0), (1,0), (1/2,h)} with objective x_2 and claim x_2 <= 0.
/// Constraint order: x_2 >= 0, 2h x_1 - x_2 >= 0, 2h x_1 + x_2 <= 2h.
Instance triangle_T(long h);

/// Facets {a x <= b} (primitive integer a) of the convex hull of the given
/// full-dimensional point set in R^3, found by testing every triple.
std::vector<LinearConstraint> hull_facets_3d(const std::vector<Vector>& points);

/// A random bounded polyhedron with 1 <= n+d <= max_dim, box bounds and a few
/// extra rows with integer coefficients in [-5, 5], plus a random objective.
/// Fully determined by the generator state.
struct RandomLp {
  Polyhedron polyhedron;
  Vector objective;
};
RandomLp random_bounded_lp(std::mt19937_64& rng, std::size_t max_dim = 4);

/// The fixed test corpus: `count` instances from seed `seed`.
std::vector<RandomLp> random_lp_corpus(std::uint64_t seed, std::size_t count, std::size_t max_dim = 4);

}  // namespace bcproof
