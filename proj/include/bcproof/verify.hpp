#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcproof/proof_tree.hpp"

namespace bcproof {

enum class Condition {
  Structure,        // ids, parent/child links, connectivity
  BranchChildren,   // a child does not add exactly its disjunction term
  DisjunctionShape, // the disjunction does not live in the instance's space
  CutCertificate,   // verify_cut rejected the cut at this node
  CutChild,         // the child does not add exactly the cut
  NotSeparating,    // restricted mode: the LP optimum survives the action
  NoLpOptimum,      // restricted mode: the node's LP has no optimum
  LeafInfeasible,   // lp-infeasible leaf whose relaxation is feasible
  LeafBound,        // bound-certified leaf whose LP value exceeds the bound
  LeafIntegral,     // integral-optimum leaf whose LP optimum is fractional
  LeafGoal,         // prove-infeasible proof with a non-infeasibility leaf
  Unbounded,        // leaf relaxation unbounded in the objective direction
  InstanceInvalid,  // an integral LP optimum violates the claimed bound
  Pending,          // unfinished node
};

std::string to_string(Condition condition);

struct VerifyIssue {
  NodeId node = 0;
  Condition condition = Condition::Structure;
  std::string message;
};

struct VerifyReport {
  std::optional<VerifyIssue> issue;  // the first failing node and condition

  bool accepted() const { return !issue.has_value(); }
  explicit operator bool() const { return accepted(); }
};

/// Checks every node-local condition exactly, visiting nodes in id order
/// and stopping at the first failure. LP caches in the tree are ignored.
VerifyReport verify_proof(const ProofTree& tree);

}  // namespace bcproof
