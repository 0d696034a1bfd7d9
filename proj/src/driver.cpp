#include "bcproof/driver.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace bcproof {

std::size_t default_node_budget() {
  if (const char* env = std::getenv("BCPROOF_NODE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultNodeBudget;
}

std::string to_string(NodeSelection selection) {
  switch (selection) {
    case NodeSelection::Dfs: return "dfs";
    case NodeSelection::Bfs: return "bfs";
    case NodeSelection::BestBound: return "best-bound";
  }
  return "?";
}

NodeSelection parse_node_selection(const std::string& text) {
  if (text == "dfs") return NodeSelection::Dfs;
  if (text == "bfs") return NodeSelection::Bfs;
  if (text == "best-bound") return NodeSelection::BestBound;
  throw std::invalid_argument("unknown node selection '" + text + "'");
}

StrategyError::StrategyError(NodeId node, const std::string& message)
    : std::runtime_error("node " + std::to_string(node) + ": " + message), node_(node) {}

TreeBudgetExceeded::TreeBudgetExceeded(const std::string& message, ProofTree partial)
    : BudgetExceeded(message), partial_(std::make_shared<ProofTree>(std::move(partial))) {}

namespace {

bool cg_direction_ok(const Vector& alpha, std::size_t n_int) {
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (static_cast<std::size_t>(i) < n_int ? !is_integer(alpha[i]) : alpha[i] != 0) return false;
  }
  return true;
}

}  // namespace

ActionChooser variable_branching() {
  return [](const NodeContext& ctx) -> std::optional<Action> {
    const std::size_t n = ctx.instance.n_int();
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& v = ctx.lp.point[static_cast<Eigen::Index>(i)];
      if (!is_integer(v)) {
        return Action::branch(make_variable_split(i, floor(v), n, ctx.instance.n_cont()));
      }
    }
    return std::nullopt;
  };
}

ActionChooser cg_cut_in_direction(Vector alpha) {
  return [alpha = std::move(alpha)](const NodeContext& ctx) -> std::optional<Action> {
    const Vector& dir = alpha.size() == 0 ? ctx.instance.objective : alpha;
    if (static_cast<std::size_t>(dir.size()) != ctx.instance.dimension()) return std::nullopt;
    if (!cg_direction_ok(dir, ctx.instance.n_int())) return std::nullopt;
    const LpResult r = solve_lp(ctx.relaxation, dir);
    if (!r.optimal()) return std::nullopt;
    CuttingPlane cut = generate_cg_cut(ctx.relaxation, oriented_multipliers(ctx.relaxation.constraints(), r.duals));
    if (cut.halfspace.satisfied_by(ctx.lp.point)) return std::nullopt;
    return Action::add_cut(std::move(cut));
  };
}

ActionChooser cg_cut_from_multipliers(Vector lambda) {
  return [lambda = std::move(lambda)](const NodeContext& ctx) -> std::optional<Action> {
    const auto rows = static_cast<Eigen::Index>(oriented_row_count(ctx.relaxation.constraints()));
    if (lambda.size() > rows) return std::nullopt;
    Vector padded = zeros(static_cast<std::size_t>(rows));
    padded.head(lambda.size()) = lambda;
    try {
      CuttingPlane cut = generate_cg_cut(ctx.relaxation, padded);
      if (cut.halfspace.satisfied_by(ctx.lp.point)) return std::nullopt;
      return Action::add_cut(std::move(cut));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  };
}

ActionChooser disjunctive_cuts(ActionChooser disjunctions) {
  return [disjunctions = std::move(disjunctions)](const NodeContext& ctx) -> std::optional<Action> {
    const auto proposal = disjunctions(ctx);
    if (!proposal || !proposal->disjunction) return std::nullopt;
    if (proposal->disjunction->contains(ctx.lp.point)) return std::nullopt;
    auto cut = generate_disjunctive_cut(ctx.relaxation, *proposal->disjunction, ctx.lp.point);
    if (!cut) return std::nullopt;
    return Action::add_cut(std::move(*cut));
  };
}

ActionChooser limit_cuts(ActionChooser cuts, std::size_t limit) {
  return [cuts = std::move(cuts), limit](const NodeContext& ctx) -> std::optional<Action> {
    if (ctx.cuts_on_path >= limit) return std::nullopt;
    return cuts(ctx);
  };
}

ActionChooser first_of(std::vector<ActionChooser> choosers) {
  return [choosers = std::move(choosers)](const NodeContext& ctx) -> std::optional<Action> {
    for (const auto& c : choosers) {
      if (auto a = c(ctx)) return a;
    }
    return std::nullopt;
  };
}

Strategy named_strategy(const std::string& name, NodeSelection selection) {
  Strategy s;
  s.name = name;
  s.selection = selection;
  s.budget = default_node_budget();
  if (name == "variable") {
    s.choose = variable_branching();
  } else if (name == "cg-single") {
    s.choose = first_of({cg_cut_in_direction(), variable_branching()});
  } else if (name == "cg-only") {
    s.choose = cg_cut_in_direction();
  } else if (name == "lift-project") {
    s.choose = first_of({limit_cuts(disjunctive_cuts(variable_branching()), 2), variable_branching()});
  } else {
    throw std::invalid_argument("unknown strategy '" + name + "' (variable, cg-single, cg-only, lift-project)");
  }
  return s;
}

ProofTree run_branch_and_cut(const Instance& instance, const Strategy& strategy) {
  if (!strategy.choose) throw std::invalid_argument("strategy has no action chooser");
  if (strategy.budget == 0) throw std::invalid_argument("node budget must be positive");
  ProofTree tree(instance, strategy.mode);
  const bool bound_goal = instance.goal == Goal::ProveBound;

  auto open_node = [&](NodeId id) {
    tree.node(id).cached_lp = solve_lp(tree.relaxation(id), instance.objective);
  };

  std::deque<NodeId> open;
  tree.ensure_root();
  open_node(0);
  open.push_back(0);

  auto pick = [&]() -> NodeId {
    NodeId id = 0;
    switch (strategy.selection) {
      case NodeSelection::Dfs:
        id = open.back();
        open.pop_back();
        return id;
      case NodeSelection::Bfs:
        id = open.front();
        open.pop_front();
        return id;
      case NodeSelection::BestBound: {
        // Highest LP value first (infeasible nodes count as lowest), ties by id.
        auto key_less = [&](NodeId a, NodeId b) {
          const LpResult& la = *tree.node(a).cached_lp;
          const LpResult& lb = *tree.node(b).cached_lp;
          if (la.optimal() != lb.optimal()) return !la.optimal();
          if (la.optimal() && la.value != lb.value) return la.value < lb.value;
          return a > b;
        };
        auto it = std::max_element(open.begin(), open.end(), key_less);
        id = *it;
        open.erase(it);
        return id;
      }
    }
    return id;
  };

  while (!open.empty()) {
    const NodeId id = pick();
    const LpResult lp = *tree.node(id).cached_lp;

    if (lp.infeasible()) {
      tree.leaf(id, LeafReason::LpInfeasible);
      continue;
    }
    if (lp.status == LpStatus::Unbounded) {
      throw UnboundedPolyhedron("relaxation at node " + std::to_string(id) + " is unbounded in the objective direction");
    }
    const bool integral = is_integral(lp.point, instance.n_int());
    if (bound_goal) {
      if (lp.value <= instance.bound) {
        tree.leaf(id, integral ? LeafReason::IntegralOptimum : LeafReason::BoundCertified);
        continue;
      }
      if (integral) {
        throw InvalidInstance("integral point " + to_string(lp.point) + " has value " + to_string(lp.value) +
                              " above the claimed bound " + to_string(instance.bound));
      }
    } else if (integral) {
      throw InvalidInstance("integer-feasible point " + to_string(lp.point) + " found; the instance is feasible");
    }

    const Polyhedron relax = tree.relaxation(id);
    std::size_t cuts_on_path = 0;
    for (auto p = tree.node(id).parent; p; p = tree.node(*p).parent) {
      cuts_on_path += tree.node(*p).kind == NodeKind::Cut ? 1 : 0;
    }
    const NodeContext ctx{instance, relax, lp, id, tree.depth(id), cuts_on_path};
    std::optional<Action> action = strategy.choose(ctx);
    if (!action || (action->disjunction.has_value() == action->cut.has_value())) {
      throw StrategyError(id, "strategy '" + strategy.name + "' chose no action");
    }
    if (strategy.mode == ProofMode::Restricted) {
      const bool separating = action->disjunction ? !action->disjunction->contains(lp.point)
                                                  : !action->cut->halfspace.satisfied_by(lp.point);
      if (!separating) throw StrategyError(id, "action does not remove the LP optimum " + to_string(lp.point));
    }
    const std::size_t new_nodes = action->disjunction ? action->disjunction->term_count() : 1;
    if (tree.size() + new_nodes > strategy.budget) {
      throw TreeBudgetExceeded("node budget " + std::to_string(strategy.budget) + " exhausted", std::move(tree));
    }

    std::vector<NodeId> children;
    if (action->disjunction) {
      children = tree.branch(id, std::move(*action->disjunction));
    } else {
      children = {tree.cut(id, std::move(*action->cut))};
    }
    for (NodeId c : children) open_node(c);
    if (strategy.selection == NodeSelection::Dfs) {
      for (auto it = children.rbegin(); it != children.rend(); ++it) open.push_back(*it);
    } else {
      for (NodeId c : children) open.push_back(c);
    }
  }
  return tree;
}

}  // namespace bcproof
