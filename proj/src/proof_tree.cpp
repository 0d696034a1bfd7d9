#include "bcproof/proof_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcproof {

std::string to_string(ProofMode mode) {
  return mode == ProofMode::Restricted ? "restricted" : "unrestricted";
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Branch: return "branch";
    case NodeKind::Cut: return "cut";
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Pending: return "pending";
  }
  return "?";
}

std::string to_string(LeafReason reason) {
  switch (reason) {
    case LeafReason::LpInfeasible: return "lp-infeasible";
    case LeafReason::BoundCertified: return "bound-certified";
    case LeafReason::IntegralOptimum: return "integral-optimum";
  }
  return "?";
}

ProofMode parse_proof_mode(const std::string& text) {
  if (text == "restricted") return ProofMode::Restricted;
  if (text == "unrestricted") return ProofMode::Unrestricted;
  throw std::invalid_argument("unknown proof mode '" + text + "'");
}

NodeKind parse_node_kind(const std::string& text) {
  if (text == "branch") return NodeKind::Branch;
  if (text == "cut") return NodeKind::Cut;
  if (text == "leaf") return NodeKind::Leaf;
  if (text == "pending") return NodeKind::Pending;
  throw std::invalid_argument("unknown node kind '" + text + "'");
}

LeafReason parse_leaf_reason(const std::string& text) {
  if (text == "lp-infeasible") return LeafReason::LpInfeasible;
  if (text == "bound-certified") return LeafReason::BoundCertified;
  if (text == "integral-optimum") return LeafReason::IntegralOptimum;
  throw std::invalid_argument("unknown leaf reason '" + text + "'");
}

ProofTree::ProofTree(Instance instance, ProofMode mode) : instance_(std::move(instance)), mode_(mode) {}

NodeId ProofTree::add_node(std::optional<NodeId> parent, std::vector<LinearConstraint> added) {
  if (nodes_.empty() && parent) throw std::logic_error("the first node must be the root");
  if (!nodes_.empty() && !parent) throw std::logic_error("a tree has a single root");
  if (parent && *parent >= nodes_.size()) throw std::out_of_range("unknown parent node");
  for (const auto& c : added) {
    if (c.dimension() != instance_.dimension()) throw std::invalid_argument("added constraint has the wrong dimension");
  }
  ProofNode n;
  n.id = nodes_.size();
  n.parent = parent;
  n.added = std::move(added);
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

NodeId ProofTree::ensure_root() {
  if (nodes_.empty()) add_node(std::nullopt, {});
  return 0;
}

void ProofTree::require_pending(NodeId id) const {
  if (node(id).kind != NodeKind::Pending) {
    throw std::logic_error("node " + std::to_string(id) + " is already " + to_string(node(id).kind));
  }
}

std::vector<NodeId> ProofTree::branch(NodeId id, Disjunction disjunction) {
  require_pending(id);
  std::vector<NodeId> children;
  for (const auto& term : disjunction.terms()) children.push_back(add_node(id, term));
  ProofNode& n = node(id);
  n.kind = NodeKind::Branch;
  n.children = children;
  n.disjunction = std::move(disjunction);
  return children;
}

NodeId ProofTree::cut(NodeId id, CuttingPlane cut) {
  require_pending(id);
  const NodeId child = add_node(id, {cut.halfspace});
  ProofNode& n = node(id);
  n.kind = NodeKind::Cut;
  n.children = {child};
  n.cut = std::move(cut);
  return child;
}

void ProofTree::leaf(NodeId id, LeafReason reason) {
  require_pending(id);
  node(id).kind = NodeKind::Leaf;
  node(id).reason = reason;
}

std::vector<LinearConstraint> ProofTree::path_constraints(NodeId id) const {
  std::vector<NodeId> chain;
  std::optional<NodeId> cur = id;
  while (cur) {
    if (chain.size() > nodes_.size()) throw std::logic_error("parent links form a cycle");
    chain.push_back(*cur);
    cur = node(*cur).parent;
  }
  std::vector<LinearConstraint> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const auto& added = node(*it).added;
    out.insert(out.end(), added.begin(), added.end());
  }
  return out;
}

Polyhedron ProofTree::relaxation(NodeId id) const {
  return instance_.polyhedron.with(path_constraints(id));
}

std::size_t ProofTree::depth(NodeId id) const {
  std::size_t d = 0;
  for (std::optional<NodeId> cur = node(id).parent; cur; cur = node(*cur).parent) {
    if (++d > nodes_.size()) throw std::logic_error("parent links form a cycle");
  }
  return d;
}

void ProofTree::push_raw(ProofNode n) {
  if (n.id != nodes_.size()) throw std::invalid_argument("node ids must be consecutive from 0");
  nodes_.push_back(std::move(n));
}

TreeStats tree_stats(const ProofTree& tree) {
  TreeStats s;
  s.size = tree.size();
  for (const auto& n : tree.nodes()) {
    s.depth = std::max(s.depth, tree.depth(n.id));
    switch (n.kind) {
      case NodeKind::Leaf: ++s.leaf_count; break;
      case NodeKind::Branch:
        ++s.branch_count;
        if (n.disjunction) s.max_sparsity = std::max(s.max_sparsity, n.disjunction->sparsity());
        break;
      case NodeKind::Cut:
        ++s.cut_count;
        if (n.cut) s.max_sparsity = std::max(s.max_sparsity, n.cut->sparsity());
        break;
      case NodeKind::Pending: break;
    }
  }
  return s;
}

}  // namespace bcproof
