// Exhaustive search for smallest branch-and-bound proofs over a finite
// family of split disjunctions.
//
// Minima are minima within the enumerated family (sparsity s, coefficient
// bound B, right-hand-side range); larger coefficients are never tried.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bcproof/proof_tree.hpp"

namespace bcproof {

struct SearchSpace {
  std::size_t sparsity = 1;      // s: nonzeros of pi
  long coefficient_bound = 1;    // B: |pi_i| <= B
  /// Inclusive pi0 range. When absent, pi0 runs over the values for which
  /// both sides of the split meet the integer box of the instance (the 0/1
  /// box unless another box is passed to enumerate_splits).
  std::optional<std::pair<long, long>> pi0_range;
  std::size_t node_budget = 2'000'000;    // distinct subproblem expansions
  std::optional<std::size_t> max_depth;   // branching depth limit
};

/// Integer bounds [lo_i, hi_i] per coordinate.
using IntegerBox = std::vector<std::pair<long, long>>;

/// All splits with 1 <= nnz(pi) <= s, |pi_i| <= B, gcd(pi) = 1 and the first
/// nonzero of pi positive, pi0 in range. Sign canonicalization removes the
/// duplicate (-pi, -pi0 - 1) of each split; non-primitive pi are dominated by
/// their primitive version and left out. Ordered by pi lexicographically
/// (descending), then by pi0. Throws std::invalid_argument when s = 0,
/// s > n, B < 1 or the explicit range is empty.
/// An empty `box` means {0,1}^n.
std::vector<Disjunction> enumerate_splits(std::size_t n, const SearchSpace& space, const IntegerBox& box = {});

/// Integer bounds implied by the LP over the instance polyhedron. Throws
/// UnboundedPolyhedron if some coordinate is unbounded.
IntegerBox integer_box(const Instance& instance);

struct SearchResult {
  /// No proof within the family has fewer than `lower` nodes.
  std::size_t lower = 1;
  /// Size of the best proof found, if any.
  std::optional<std::size_t> upper;
  /// A verified proof of size `upper` (unrestricted mode).
  std::optional<ProofTree> witness;
  std::size_t expansions = 0;
  bool budget_exhausted = false;

  bool exact() const { return upper && *upper == lower; }
};

/// Iterative deepening over the size cap with a memo table keyed by the set
/// of path constraints of a node. When the instance is invariant under every
/// permutation of its coordinates, root splits are reduced to one per orbit.
/// Requires a bounded pure-integer instance. Stops
/// with a bracket when the node budget runs out.
SearchResult min_bb_tree_size(const Instance& instance, const SearchSpace& space);

/// Like min_bb_tree_size but only looks for proofs of at most `cap` nodes.
/// If none exists, `lower` is the next achievable size above the cap and
/// `upper` comes from variable branching when that tree stays inside the
/// family.
SearchResult min_proof_bracket(const Instance& instance, const SearchSpace& space, std::size_t cap);

/// True when permuting the coordinates of the instance in any way leaves its
/// constraint set and objective unchanged.
bool is_fully_symmetric(const Instance& instance);

}  // namespace bcproof
