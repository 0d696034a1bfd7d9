// Branch-and-cut proof trees.
//
// Each node stores only the constraints it adds to its parent's relaxation;
// `relaxation(id)` materializes the full polyhedron by walking to the root.
// Nodes are numbered 0..size()-1 in creation order and the root is node 0.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bcproof/cuts.hpp"
#include "bcproof/disjunction.hpp"
#include "bcproof/lp.hpp"
#include "bcproof/polyhedron.hpp"

namespace bcproof {

using NodeId = std::size_t;

enum class ProofMode { Restricted, Unrestricted };
enum class NodeKind { Branch, Cut, Leaf, Pending };
enum class LeafReason { LpInfeasible, BoundCertified, IntegralOptimum };

std::string to_string(ProofMode mode);
std::string to_string(NodeKind kind);
std::string to_string(LeafReason reason);
ProofMode parse_proof_mode(const std::string& text);
NodeKind parse_node_kind(const std::string& text);
LeafReason parse_leaf_reason(const std::string& text);

struct ProofNode {
  NodeId id = 0;
  std::optional<NodeId> parent;
  std::vector<LinearConstraint> added;
  NodeKind kind = NodeKind::Pending;

  std::optional<Disjunction> disjunction;  // Branch
  std::optional<CuttingPlane> cut;         // Cut
  std::vector<NodeId> children;            // Branch: one per term; Cut: exactly one
  LeafReason reason = LeafReason::LpInfeasible;  // Leaf

  std::optional<LpResult> cached_lp;  // never trusted by the verifier
};

class ProofTree {
 public:
  ProofTree() = default;
  ProofTree(Instance instance, ProofMode mode);

  const Instance& instance() const { return instance_; }
  ProofMode mode() const { return mode_; }
  void set_mode(ProofMode mode) { mode_ = mode; }

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  NodeId root() const { return 0; }
  const ProofNode& node(NodeId id) const { return nodes_.at(id); }
  ProofNode& node(NodeId id) { return nodes_.at(id); }
  const std::vector<ProofNode>& nodes() const { return nodes_; }

  /// Appends a pending node. The first node created must be the root.
  NodeId add_node(std::optional<NodeId> parent, std::vector<LinearConstraint> added);
  /// Creates the root if the tree is empty and returns it.
  NodeId ensure_root();

  /// Turns a pending node into a branch node with one pending child per
  /// term (child k adds exactly term k). Returns the children.
  std::vector<NodeId> branch(NodeId id, Disjunction disjunction);
  /// Turns a pending node into a cut node whose pending child adds the cut.
  NodeId cut(NodeId id, CuttingPlane cut);
  void leaf(NodeId id, LeafReason reason);

  /// Added constraints from the root down to `id`, root first.
  std::vector<LinearConstraint> path_constraints(NodeId id) const;
  Polyhedron relaxation(NodeId id) const;
  std::size_t depth(NodeId id) const;

  /// Raw insertion used by deserialization; no checks beyond id order.
  void push_raw(ProofNode node);

 private:
  void require_pending(NodeId id) const;

  Instance instance_;
  ProofMode mode_ = ProofMode::Restricted;
  std::vector<ProofNode> nodes_;
};

struct TreeStats {
  std::size_t size = 0;
  std::size_t depth = 0;
  std::size_t leaf_count = 0;
  std::size_t max_sparsity = 0;  // over disjunction inequalities and cuts
  std::size_t cut_count = 0;
  std::size_t branch_count = 0;
};

TreeStats tree_stats(const ProofTree& tree);

}  // namespace bcproof
