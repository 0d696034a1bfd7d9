#include "bcproof/verify.hpp"

#include <algorithm>
#include <vector>

namespace bcproof {

std::string to_string(Condition condition) {
  switch (condition) {
    case Condition::Structure: return "structure";
    case Condition::BranchChildren: return "branch-children";
    case Condition::DisjunctionShape: return "disjunction-shape";
    case Condition::CutCertificate: return "cut-certificate";
    case Condition::CutChild: return "cut-child";
    case Condition::NotSeparating: return "not-separating";
    case Condition::NoLpOptimum: return "no-lp-optimum";
    case Condition::LeafInfeasible: return "leaf-infeasible";
    case Condition::LeafBound: return "leaf-bound";
    case Condition::LeafIntegral: return "leaf-integral";
    case Condition::LeafGoal: return "leaf-goal";
    case Condition::Unbounded: return "unbounded";
    case Condition::InstanceInvalid: return "instance-invalid";
    case Condition::Pending: return "pending";
  }
  return "?";
}

namespace {

using Issue = std::optional<VerifyIssue>;

Issue fail(NodeId id, Condition c, std::string message) {
  return VerifyIssue{id, c, std::move(message)};
}

Issue check_structure(const ProofTree& tree) {
  const auto& nodes = tree.nodes();
  if (nodes.empty()) return fail(0, Condition::Structure, "tree has no nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ProofNode& n = nodes[i];
    if (n.id != i) return fail(i, Condition::Structure, "node stored at position " + std::to_string(i) + " has id " + std::to_string(n.id));
    if (i == 0 && n.parent) return fail(i, Condition::Structure, "root has a parent");
    if (i != 0) {
      if (!n.parent) return fail(i, Condition::Structure, "non-root node without a parent");
      if (*n.parent >= nodes.size()) return fail(i, Condition::Structure, "parent id out of range");
      const auto& siblings = nodes[*n.parent].children;
      if (std::count(siblings.begin(), siblings.end(), n.id) != 1) {
        return fail(i, Condition::Structure, "parent does not list this node exactly once");
      }
    }
    for (NodeId c : n.children) {
      if (c >= nodes.size()) return fail(i, Condition::Structure, "child id " + std::to_string(c) + " does not exist");
      if (nodes[c].parent != n.id) return fail(i, Condition::Structure, "child " + std::to_string(c) + " names another parent");
    }
    for (const auto& c : n.added) {
      if (c.dimension() != tree.instance().dimension()) return fail(i, Condition::Structure, "added constraint has the wrong dimension");
    }
    switch (n.kind) {
      case NodeKind::Branch:
        if (!n.disjunction) return fail(i, Condition::Structure, "branch node without a disjunction");
        if (n.children.size() != n.disjunction->term_count()) {
          return fail(i, Condition::Structure, "branch node has " + std::to_string(n.children.size()) +
                                                   " children for " + std::to_string(n.disjunction->term_count()) + " terms");
        }
        break;
      case NodeKind::Cut:
        if (!n.cut) return fail(i, Condition::Structure, "cut node without a cut");
        if (n.children.size() != 1) return fail(i, Condition::Structure, "cut node must have exactly one child");
        break;
      case NodeKind::Leaf:
      case NodeKind::Pending:
        if (!n.children.empty()) return fail(i, Condition::Structure, "leaf node has children");
        break;
    }
  }
  // Every node reachable from the root exactly once.
  std::vector<char> seen(nodes.size(), 0);
  std::vector<NodeId> stack{0};
  std::size_t visited = 0;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) return fail(id, Condition::Structure, "node reached twice");
    seen[id] = 1;
    ++visited;
    for (NodeId c : nodes[id].children) stack.push_back(c);
  }
  if (visited != nodes.size()) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!seen[i]) return fail(i, Condition::Structure, "node not reachable from the root");
    }
  }
  return std::nullopt;
}

bool separates(const Disjunction& d, const Vector& x) { return !d.contains(x); }

Issue check_node(const ProofTree& tree, const ProofNode& n) {
  const Instance& inst = tree.instance();
  const bool bound_goal = inst.goal == Goal::ProveBound;
  const Polyhedron relax = tree.relaxation(n.id);
  const bool restricted = tree.mode() == ProofMode::Restricted;

  auto lp = [&]() { return solve_lp(relax, inst.objective); };

  switch (n.kind) {
    case NodeKind::Pending:
      return fail(n.id, Condition::Pending, "node was never processed");

    case NodeKind::Branch: {
      const Disjunction& d = *n.disjunction;
      if (d.n_int() != inst.n_int() || d.n_cont() != inst.n_cont()) {
        return fail(n.id, Condition::DisjunctionShape, "disjunction is over a different variable split");
      }
      for (std::size_t k = 0; k < d.term_count(); ++k) {
        if (tree.node(n.children[k]).added != d.terms()[k]) {
          return fail(n.id, Condition::BranchChildren, "child " + std::to_string(n.children[k]) +
                                                          " does not add term " + std::to_string(k + 1));
        }
      }
      if (restricted) {
        const LpResult r = lp();
        if (!r.optimal()) return fail(n.id, Condition::NoLpOptimum, "relaxation LP is " + to_string(r.status));
        if (!separates(d, r.point)) {
          return fail(n.id, Condition::NotSeparating, "LP optimum " + to_string(r.point) + " lies in a disjunction term");
        }
      }
      return std::nullopt;
    }

    case NodeKind::Cut: {
      const CuttingPlane& c = *n.cut;
      if (const CutCheck check = verify_cut(relax, c); !check) {
        return fail(n.id, Condition::CutCertificate, check.reason);
      }
      const auto& added = tree.node(n.children[0]).added;
      if (added.size() != 1 || !(added[0] == c.halfspace)) {
        return fail(n.id, Condition::CutChild, "child does not add exactly the cut");
      }
      if (restricted) {
        const LpResult r = lp();
        if (!r.optimal()) return fail(n.id, Condition::NoLpOptimum, "relaxation LP is " + to_string(r.status));
        if (c.halfspace.satisfied_by(r.point)) {
          return fail(n.id, Condition::NotSeparating, "cut does not remove LP optimum " + to_string(r.point));
        }
      }
      return std::nullopt;
    }

    case NodeKind::Leaf: {
      if (!bound_goal && n.reason != LeafReason::LpInfeasible) {
        return fail(n.id, Condition::LeafGoal, "infeasibility proofs need lp-infeasible leaves");
      }
      const LpResult r = lp();
      switch (n.reason) {
        case LeafReason::LpInfeasible:
          if (!r.infeasible()) return fail(n.id, Condition::LeafInfeasible, "relaxation is feasible");
          return std::nullopt;
        case LeafReason::BoundCertified:
          if (r.infeasible()) return std::nullopt;
          if (r.status == LpStatus::Unbounded) return fail(n.id, Condition::Unbounded, "relaxation is unbounded");
          if (r.value > inst.bound) {
            if (is_integral(r.point, inst.n_int())) {
              return fail(n.id, Condition::InstanceInvalid, "integral point " + to_string(r.point) + " has value " +
                                                                to_string(r.value) + " above the bound");
            }
            return fail(n.id, Condition::LeafBound, "LP value " + to_string(r.value) + " exceeds bound " + to_string(inst.bound));
          }
          return std::nullopt;
        case LeafReason::IntegralOptimum:
          if (r.status == LpStatus::Unbounded) return fail(n.id, Condition::Unbounded, "relaxation is unbounded");
          if (!r.optimal()) return fail(n.id, Condition::LeafIntegral, "relaxation has no optimum");
          if (!is_integral(r.point, inst.n_int())) {
            return fail(n.id, Condition::LeafIntegral, "LP optimum " + to_string(r.point) + " is fractional");
          }
          if (r.value > inst.bound) {
            return fail(n.id, Condition::InstanceInvalid, "integral optimum has value " + to_string(r.value) +
                                                              " above the bound " + to_string(inst.bound));
          }
          return std::nullopt;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

VerifyReport verify_proof(const ProofTree& tree) {
  if (Issue s = check_structure(tree)) return {std::move(s)};
  for (const auto& n : tree.nodes()) {
    if (Issue i = check_node(tree, n)) return {std::move(i)};
  }
  return {};
}

}  // namespace bcproof
