// Hand-built proofs for the Jeroslow family.

#pragma once

#include <cstddef>

#include "bcproof/proof_tree.hpp"

namespace bcproof {

/// Variable-branching proof for jeroslow_partial_objective(n): branch on x_1
/// at 0, then keep branching on the next variable on the x_j >= 1 side.
/// Every x_j <= 0 child is a bound-certified leaf and the last x_j >= 1 child
/// (ceil(n/2) ones) is LP-infeasible, so the tree has n + 2 nodes. The tree
/// is unrestricted because the root LP optimum need not be fractional in the
/// branching variable. Throws std::invalid_argument unless n is odd, n >= 3.
ProofTree build_chain_branching_tree(std::size_t n);

/// Two-node cutting-plane proof for jeroslow_inequality(n): the
/// Chvatal-Gomory cut with multiplier 1/2 on the knapsack row, then a
/// bound-certified leaf.
ProofTree single_cg_cut_proof(std::size_t n);

}  // namespace bcproof
