// Counting and classification tools for the Jeroslow lower-bound arguments,
// plus the one-round Chvatal-Gomory search used on the triangle family.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bcproof/cuts.hpp"
#include "bcproof/proof_tree.hpp"

namespace bcproof {

/// Per-node data for a pure branch-and-bound tree on a 0/1 instance.
///
/// A branch node's split is "true" when both of its halfspaces contain an
/// integer point of that node; otherwise it is "false". A node's generation
/// set is the union of the supports of the true splits on its root path, and
/// its generation is the number of those true splits.
struct SplitClassification {
  std::vector<std::optional<bool>> true_split;         // set on branch nodes
  std::vector<std::vector<std::size_t>> generation_set;  // sorted indices
  std::vector<std::size_t> generation;
  std::vector<std::size_t> integer_points;  // 0/1 points of each relaxation
};

/// Throws std::invalid_argument unless the instance is pure-integer, every
/// coordinate is bounded to [0, 1] by the LP, n <= 20, and every branch node
/// uses a split. Cut nodes are rejected as well.
SplitClassification classify_splits(const ProofTree& tree);

/// Nodes that contain at least one integer point and have generation m.
std::size_t count_generation_nodes(const ProofTree& tree, const SplitClassification& cls, std::size_t m);

/// Nodes containing an integer point whose generation set has at most
/// floor(n/2) - s elements but whose LP value differs from n/2. Intended for
/// proofs of jeroslow_inequality(n), where the list should come back empty.
std::vector<NodeId> half_value_violations(const ProofTree& tree, const SplitClassification& cls, std::size_t s);

/// Number of optimal LP vertices of jeroslow_inequality(n) (floor(n/2) ones,
/// one coordinate 1/2, zeros elsewhere) with <pi, x> = pi0 + 1/2.
std::size_t count_vertices_in_split(std::size_t n, const Disjunction& split);
/// Same count from raw integer data; cheaper inside sweeps.
std::size_t count_vertices_in_split(std::size_t n, const std::vector<long>& pi, long pi0);

/// Number of optimal LP vertices of jeroslow_inequality(n): n * C(n-1, floor(n/2)).
Integer jeroslow_optimal_vertex_count(std::size_t n);

/// t * C(t-1, floor(t/2)) * C(n-t, floor(n/2) - floor(t/2)) for
/// 1 <= t <= floor(n/2); std::invalid_argument otherwise.
Integer p_bound(std::size_t n, std::size_t t);

Integer binomial(std::size_t n, std::size_t k);

/// Number of 0/1 solutions of <w, x> = target. Entries of w must be nonzero.
std::uint64_t sperner_count(const std::vector<long>& w, long target);

/// For a cut valid on H n {0,1}^n (H = {2 sum x <= n}), reports whether it is
/// valid on all of {0,1}^n by checking every 0/1 pattern on its support.
/// Throws std::invalid_argument if the cut is not valid on H n {0,1}^n.
bool sparse_cut_is_trivial(std::size_t n, const LinearConstraint& cut);

/// Whether some Chvatal-Gomory cut from multipliers in [0, 1) on the oriented
/// rows, every denominator at most `max_denominator`, proves the instance's
/// bound on its own (the LP over P plus the cut is infeasible or at most the
/// bound). Integer parts of multipliers only add valid rows, so [0, 1) loses
/// nothing. Intended for instances with a handful of rows.
std::optional<CuttingPlane> find_single_cg_proof(const Instance& instance, long max_denominator);

}  // namespace bcproof
