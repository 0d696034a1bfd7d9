#include <doctest.h>

#include "bcproof/constructions.hpp"
#include "bcproof/driver.hpp"
#include "bcproof/verify.hpp"
#include "bcproof/zoo.hpp"

using namespace bcproof;

namespace {

// Exhaustive check over {0,1}^n (every instance here lives in the unit box).
bool bound_holds_on_box(const Instance& inst) {
  const std::size_t n = inst.dimension();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    Vector x = zeros(n);
    for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] = (mask >> i) & 1ul;
    if (inst.polyhedron.contains(x) && inst.objective.dot(x) > inst.bound) return false;
  }
  return true;
}

void check_monotone(const ProofTree& tree) {
  for (const auto& n : tree.nodes()) {
    if (!n.parent) continue;
    const auto child = solve_lp(tree.relaxation(n.id), tree.instance().objective);
    const auto parent = solve_lp(tree.relaxation(*n.parent), tree.instance().objective);
    if (child.optimal()) {
      REQUIRE(parent.optimal());
      CHECK(child.value <= parent.value);
    }
  }
}

void check_restricted_separation(const ProofTree& tree) {
  for (const auto& n : tree.nodes()) {
    if (n.kind == NodeKind::Leaf) continue;
    const auto lp = solve_lp(tree.relaxation(n.id), tree.instance().objective);
    REQUIRE(lp.optimal());
    if (n.kind == NodeKind::Branch) CHECK_FALSE(n.disjunction->contains(lp.point));
    if (n.kind == NodeKind::Cut) CHECK(n.cut->halfspace.lhs(lp.point) > n.cut->halfspace.rhs);
  }
}

}  // namespace

TEST_CASE("chain branching tree") {
  for (std::size_t n : {3u, 5u, 7u, 9u}) {
    CAPTURE(n);
    const auto tree = build_chain_branching_tree(n);
    const auto report = verify_proof(tree);
    CHECK_MESSAGE(report.accepted(), (report.issue ? report.issue->message : ""));
    const auto stats = tree_stats(tree);
    CHECK(stats.size == n + 2);
    CHECK(stats.max_sparsity == 1);
    CHECK(stats.leaf_count == (n + 1) / 2 + 1);
    CHECK(bound_holds_on_box(tree.instance()));
  }
  // n = 5: the node with x1 = x2 = x3 = 1 is the infeasible leaf.
  const auto tree = build_chain_branching_tree(5);
  const auto& last = tree.node(tree.size() - 1);
  CHECK(last.kind == NodeKind::Leaf);
  CHECK(last.reason == LeafReason::LpInfeasible);
  CHECK(tree.path_constraints(last.id).size() == 3);
  CHECK_THROWS_AS(build_chain_branching_tree(4), std::invalid_argument);
  CHECK_THROWS_AS(build_chain_branching_tree(1), std::invalid_argument);
}

TEST_CASE("root-only bound leaf is rejected on jeroslow") {
  ProofTree tree(jeroslow_inequality(5), ProofMode::Unrestricted);
  tree.leaf(tree.ensure_root(), LeafReason::BoundCertified);
  const auto report = verify_proof(tree);
  REQUIRE_FALSE(report.accepted());
  CHECK(report.issue->node == 0);
  CHECK(report.issue->condition == Condition::LeafBound);
  const auto stats = tree_stats(tree);
  CHECK(stats.size == 1);
  CHECK(stats.depth == 0);
}

TEST_CASE("single cg cut proofs") {
  for (std::size_t n : {3u, 5u, 7u}) {
    CAPTURE(n);
    const auto tree = single_cg_cut_proof(n);
    CHECK(verify_proof(tree).accepted());
    const auto stats = tree_stats(tree);
    CHECK(stats.size == 2);
    CHECK(stats.max_sparsity == n);
    CHECK(tree.node(0).cut->halfspace.rhs == Rational(static_cast<long>(n / 2)));
  }
}

TEST_CASE("tampered proofs are rejected at the right node") {
  SUBCASE("cut rhs lowered") {
    auto tree = single_cg_cut_proof(5);
    tree.node(0).cut->halfspace.rhs -= 1;
    tree.node(1).added[0].rhs -= 1;
    const auto report = verify_proof(tree);
    REQUIRE_FALSE(report.accepted());
    CHECK(report.issue->node == 0);
    CHECK(report.issue->condition == Condition::CutCertificate);
  }
  SUBCASE("child does not match the cut") {
    auto tree = single_cg_cut_proof(5);
    tree.node(1).added[0].rhs = 1;
    const auto report = verify_proof(tree);
    REQUIRE_FALSE(report.accepted());
    CHECK(report.issue->condition == Condition::CutChild);
  }
  SUBCASE("branch child altered") {
    auto tree = build_chain_branching_tree(5);
    tree.node(2).added[0].rhs = 2;
    const auto report = verify_proof(tree);
    REQUIRE_FALSE(report.accepted());
    CHECK(report.issue->node == 0);
    CHECK(report.issue->condition == Condition::BranchChildren);
  }
  SUBCASE("leaf claims infeasibility of a feasible node") {
    auto tree = build_chain_branching_tree(5);
    tree.node(1).reason = LeafReason::LpInfeasible;
    const auto report = verify_proof(tree);
    REQUIRE_FALSE(report.accepted());
    CHECK(report.issue->node == 1);
    CHECK(report.issue->condition == Condition::LeafInfeasible);
  }
  SUBCASE("broken structure") {
    auto tree = build_chain_branching_tree(3);
    tree.node(0).children.push_back(42);
    CHECK(verify_proof(tree).issue->condition == Condition::Structure);
  }
  SUBCASE("restricted mode demands separation") {
    auto tree = build_chain_branching_tree(5);
    tree.set_mode(ProofMode::Restricted);
    const auto report = verify_proof(tree);
    // The chain tree is accepted only as an unrestricted proof unless every
    // LP optimum happens to be fractional in the branching variable.
    if (!report.accepted()) CHECK(report.issue->condition == Condition::NotSeparating);
  }
}

TEST_CASE("goal and instance validity") {
  SUBCASE("infeasibility proof with a bound leaf") {
    ProofTree tree(jeroslow_equality(3), ProofMode::Unrestricted);
    tree.leaf(tree.ensure_root(), LeafReason::BoundCertified);
    CHECK(verify_proof(tree).issue->condition == Condition::LeafGoal);
  }
  SUBCASE("integral optimum above the bound") {
    Instance bad = jeroslow_inequality(5);
    bad.bound = 1;
    ProofTree tree(bad, ProofMode::Unrestricted);
    auto kids = tree.branch(tree.ensure_root(), make_split(from_integers({1, 1, 1, 1, 1}), 2, 5, 0));
    tree.leaf(kids[0], LeafReason::IntegralOptimum);
    tree.leaf(kids[1], LeafReason::LpInfeasible);
    const auto report = verify_proof(tree);
    REQUIRE_FALSE(report.accepted());
    CHECK(report.issue->node == kids[0]);
    const bool expected = report.issue->condition == Condition::InstanceInvalid ||
                          report.issue->condition == Condition::LeafIntegral;
    CHECK(expected);
    CHECK_THROWS_AS(run_branch_and_cut(bad, named_strategy("variable")), InvalidInstance);
  }
}

TEST_CASE("driver: cutting-plane proof of jeroslow n = 5") {
  const auto inst = jeroslow_inequality(5);
  Strategy s;
  s.name = "always-cut";
  Vector lambda = zeros(1);
  lambda[0] = Rational(1, 2);
  s.choose = cg_cut_from_multipliers(lambda);
  const auto tree = run_branch_and_cut(inst, s);
  CHECK(verify_proof(tree).accepted());
  CHECK(tree.size() == 2);
  CHECK(tree.node(0).cut->halfspace == less_equal(from_integers({1, 1, 1, 1, 1}), 2));

  const auto via_duals = run_branch_and_cut(inst, named_strategy("cg-single"));
  CHECK(verify_proof(via_duals).accepted());
  CHECK(via_duals.size() == 2);
}

TEST_CASE("driver: variable branching on jeroslow n = 5") {
  const auto inst = jeroslow_inequality(5);
  for (auto sel : {NodeSelection::Dfs, NodeSelection::Bfs, NodeSelection::BestBound}) {
    CAPTURE(to_string(sel));
    const auto tree = run_branch_and_cut(inst, named_strategy("variable", sel));
    const auto report = verify_proof(tree);
    CHECK(report.accepted());
    CHECK(tree_stats(tree).leaf_count >= 4);
    CHECK(tree_stats(tree).max_sparsity == 1);
    check_monotone(tree);
    check_restricted_separation(tree);
  }
  // Deterministic.
  const auto a = run_branch_and_cut(inst, named_strategy("variable"));
  const auto b = run_branch_and_cut(inst, named_strategy("variable"));
  CHECK(a.size() == b.size());
}

TEST_CASE("driver: lift-and-project cuts") {
  const auto inst = jeroslow_inequality(3);
  const auto tree = run_branch_and_cut(inst, named_strategy("lift-project"));
  CHECK(verify_proof(tree).accepted());
  check_restricted_separation(tree);
}

TEST_CASE("driver: infeasibility proofs") {
  for (std::size_t n : {3u, 5u}) {
    const auto tree = run_branch_and_cut(jeroslow_equality(n), named_strategy("variable"));
    CHECK(verify_proof(tree).accepted());
    for (const auto& node : tree.nodes()) {
      if (node.kind == NodeKind::Leaf) CHECK(node.reason == LeafReason::LpInfeasible);
    }
  }
}

TEST_CASE("driver: cks tetrahedron needs the same tree for every height") {
  const auto small = run_branch_and_cut(cks_tetrahedron(10), named_strategy("variable"));
  const auto large = run_branch_and_cut(cks_tetrahedron(100), named_strategy("variable"));
  CHECK(verify_proof(small).accepted());
  CHECK(verify_proof(large).accepted());
  CHECK(small.size() == large.size());
}

TEST_CASE("driver: budget and strategy errors") {
  auto s = named_strategy("variable");
  s.budget = 3;
  try {
    run_branch_and_cut(jeroslow_inequality(5), s);
    FAIL("expected the budget to run out");
  } catch (const TreeBudgetExceeded& e) {
    CHECK(e.partial().size() <= 3);
    const auto report = verify_proof(e.partial());
    REQUIRE_FALSE(report.accepted());
    CHECK(report.issue->condition == Condition::Pending);
  }

  Strategy lazy;
  lazy.name = "root-split-only";
  lazy.choose = [](const NodeContext& ctx) -> std::optional<Action> {
    // x_1 <= 1 or x_1 >= 2 contains every point of the unit box.
    return Action::branch(make_variable_split(0, 1, ctx.instance.n_int(), 0));
  };
  CHECK_THROWS_AS(run_branch_and_cut(jeroslow_inequality(3), lazy), StrategyError);
  lazy.mode = ProofMode::Unrestricted;
  lazy.budget = 50;
  CHECK_THROWS_AS(run_branch_and_cut(jeroslow_inequality(3), lazy), TreeBudgetExceeded);

  Strategy none;
  none.name = "none";
  none.choose = [](const NodeContext&) { return std::optional<Action>{}; };
  CHECK_THROWS_AS(run_branch_and_cut(jeroslow_inequality(3), none), StrategyError);
}

TEST_CASE("accepted proofs are sound on the unit box") {
  for (std::size_t n : {3u, 5u}) {
    for (const char* name : {"variable", "cg-single", "lift-project"}) {
      const auto inst = jeroslow_inequality(n);
      const auto tree = run_branch_and_cut(inst, named_strategy(name));
      REQUIRE(verify_proof(tree).accepted());
      CHECK(bound_holds_on_box(inst));
    }
  }
}
