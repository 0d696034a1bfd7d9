#include "bcproof/constructions.hpp"

#include "bcproof/zoo.hpp"

namespace bcproof {

ProofTree build_chain_branching_tree(std::size_t n) {
  ProofTree tree(jeroslow_partial_objective(n), ProofMode::Unrestricted);
  NodeId open = tree.ensure_root();
  const std::size_t levels = (n + 1) / 2;
  for (std::size_t j = 0; j < levels; ++j) {
    const auto children = tree.branch(open, make_variable_split(j, 0, n, 0));
    tree.leaf(children[0], LeafReason::BoundCertified);
    open = children[1];
  }
  tree.leaf(open, LeafReason::LpInfeasible);
  return tree;
}

ProofTree single_cg_cut_proof(std::size_t n) {
  Instance inst = jeroslow_inequality(n);
  Vector lambda = zeros(oriented_row_count(inst.polyhedron.constraints()));
  lambda[0] = Rational(1, 2);
  CuttingPlane cut = generate_cg_cut(inst.polyhedron, lambda);
  ProofTree tree(std::move(inst), ProofMode::Restricted);
  const NodeId child = tree.cut(tree.ensure_root(), std::move(cut));
  tree.leaf(child, LeafReason::BoundCertified);
  return tree;
}

}  // namespace bcproof
