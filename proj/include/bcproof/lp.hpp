// Exact linear programming over H-polyhedra.
//
// `solve_lp` maximizes <c, x> over a Polyhedron with free variables. It runs
// the simplex method on the dual problem
//
//     min <b, y>  s.t.  A^T y = c,  y >= 0
//
// where A x <= b are the oriented rows. A dual basis is a set of n+d linearly
// independent rows of A, so the primal point it induces is a vertex whenever
// the polyhedron is pointed, and the optimal dual vector is directly the
// certificate <lambda, A> = c, <lambda, b> = value. Lineality directions are
// pinned with extra equalities first (they cannot change the optimum when c is
// orthogonal to them), which makes the row matrix full column rank.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bcproof/polyhedron.hpp"

namespace bcproof {

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;  // optimal only
  Vector point;    // optimal only

  // One entry per constraint of the polyhedron. Sign convention: >= 0 on
  // `<=` constraints, <= 0 on `>=` constraints, free on equalities.
  //   optimal:    sum duals_i a_i = c,  sum duals_i b_i = value
  //   infeasible: sum farkas_i a_i = 0, sum farkas_i b_i < 0
  Vector duals;
  Vector farkas;

  bool optimal() const { return status == LpStatus::Optimal; }
  bool infeasible() const { return status == LpStatus::Infeasible; }
};

/// sup {<c, x> : x in P}; deterministic, terminates (Bland's rule).
LpResult solve_lp(const Polyhedron& polyhedron, const Vector& objective);

/// True when P has at least one point.
bool is_feasible(const Polyhedron& polyhedron);

/// True when the first `n` coordinates are integers.
bool is_integral(const Vector& point, std::size_t n);

struct CertificateCheck {
  bool ok = false;
  std::string reason;
};

/// Re-derives the optimality (or infeasibility) claim of `result` from its
/// multipliers using exact arithmetic only.
CertificateCheck check_lp_certificate(const Polyhedron& polyhedron, const Vector& objective,
                                      const LpResult& result);

/// Empty polyhedra count as bounded.
bool is_bounded(const Polyhedron& polyhedron);

inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

/// Vertex set of a bounded polyhedron, lexicographically sorted, each vertex
/// once. Tries every (n+d)-subset of constraints as a defining system, so it
/// refuses (BudgetExceeded) when there are more than `budget` subsets.
/// Throws UnboundedPolyhedron on unbounded input.
std::vector<Vector> enumerate_vertices(const Polyhedron& polyhedron,
                                       std::size_t budget = kDefaultVertexBudget);

/// Binomial coefficient saturating at SIZE_MAX.
std::size_t binomial_saturating(std::size_t n, std::size_t k);

}  // namespace bcproof
