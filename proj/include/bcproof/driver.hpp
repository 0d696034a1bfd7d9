// A deterministic branch-and-cut driver.
//
// The driver keeps a list of open nodes, solves each node's LP exactly and
// either closes it with a statically checkable leaf reason or asks the
// strategy for an action (branch on a disjunction or add a cut). The lower
// bound LB starts at the claimed bound gamma, so a node is pruned exactly
// when its LP value is <= gamma, independently of processing order.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "bcproof/errors.hpp"
#include "bcproof/proof_tree.hpp"

namespace bcproof {

inline constexpr std::size_t kDefaultNodeBudget = 100'000;

/// kDefaultNodeBudget unless BCPROOF_NODE_BUDGET holds a positive integer.
std::size_t default_node_budget();

enum class NodeSelection { Dfs, Bfs, BestBound };

std::string to_string(NodeSelection selection);
NodeSelection parse_node_selection(const std::string& text);

/// What a strategy sees when asked to act on an open node.
struct NodeContext {
  const Instance& instance;
  const Polyhedron& relaxation;
  const LpResult& lp;  // always optimal with a fractional or too-large value
  NodeId id;
  std::size_t depth;
  std::size_t cuts_on_path;  // cut nodes among the strict ancestors
};

struct Action {
  std::optional<Disjunction> disjunction;
  std::optional<CuttingPlane> cut;

  static Action branch(Disjunction d) { return {std::move(d), std::nullopt}; }
  static Action add_cut(CuttingPlane c) { return {std::nullopt, std::move(c)}; }
};

using ActionChooser = std::function<std::optional<Action>(const NodeContext&)>;

struct Strategy {
  std::string name;
  NodeSelection selection = NodeSelection::Dfs;
  ActionChooser choose;
  std::size_t budget = kDefaultNodeBudget;
  ProofMode mode = ProofMode::Restricted;
};

/// Branch on the lowest-index integer variable with a fractional LP value,
/// x_i <= floor(x_i*) or x_i >= floor(x_i*) + 1.
ActionChooser variable_branching();

/// Chvatal-Gomory cut in direction `alpha` (integral on the integer
/// coordinates, zero elsewhere): the LP duals of max <alpha, x> over the
/// node give multipliers lambda with lambda A = alpha, so the cut is
/// <alpha, x> <= floor(max). Returns nothing when that cut would not remove
/// the node's LP optimum. An empty `alpha` means the instance objective.
ActionChooser cg_cut_in_direction(Vector alpha = {});

/// Chvatal-Gomory cut from fixed multipliers on the node's oriented rows
/// (the instance rows come first, so multipliers for the root rows also
/// work at every descendant when padded with zeros).
ActionChooser cg_cut_from_multipliers(Vector lambda);

/// Disjunctive cut from the cut-generating LP on the disjunction produced by
/// `disjunctions` (typically `variable_branching()`).
ActionChooser disjunctive_cuts(ActionChooser disjunctions);

/// Defers to `cuts` only while fewer than `limit` cuts lie on the path.
ActionChooser limit_cuts(ActionChooser cuts, std::size_t limit);

/// First chooser that returns an action wins.
ActionChooser first_of(std::vector<ActionChooser> choosers);

/// Strategy presets by name: "variable" (variable branching), "cg-single"
/// (objective-direction CG cut, then variable branching), "cg-only",
/// "lift-project" (up to two disjunctive cuts on variable splits per path,
/// then variable branching).
Strategy named_strategy(const std::string& name, NodeSelection selection = NodeSelection::Dfs);

/// The strategy chose nothing or, in restricted mode, chose an action that
/// does not remove the LP optimum.
class StrategyError : public std::runtime_error {
 public:
  StrategyError(NodeId node, const std::string& message);
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

/// Budget reached; carries the partial tree (unfinished nodes are Pending).
class TreeBudgetExceeded : public BudgetExceeded {
 public:
  TreeBudgetExceeded(const std::string& message, ProofTree partial);
  const ProofTree& partial() const { return *partial_; }

 private:
  std::shared_ptr<ProofTree> partial_;
};

/// Runs the driver. Throws TreeBudgetExceeded, StrategyError,
/// UnboundedPolyhedron (a node LP is unbounded) or InvalidInstance (an
/// integral LP optimum exceeds the bound, or for a prove-infeasible goal an
/// integer point is found).
ProofTree run_branch_and_cut(const Instance& instance, const Strategy& strategy);

}  // namespace bcproof
