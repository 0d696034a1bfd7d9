#include <doctest.h>

#include <set>

#include "bcproof/experiments.hpp"

using namespace bcproof;

TEST_CASE("preset registry") {
  std::set<std::string> names;
  for (const auto& p : experiment_presets()) {
    CHECK(names.insert(p.name).second);
    CHECK(p.columns.back() == "pass");
  }
  CHECK(names.size() == 13);
  CHECK_THROWS_AS(find_preset("nope"), std::invalid_argument);
}

TEST_CASE("vD-bound table layout") {
  ExperimentParams p;
  p.n = {7};
  p.B = {2};
  const Table t = run_experiment("vD-bound", p);
  CHECK(t.columns == std::vector<std::string>{"t", "max_observed", "p_bound", "pass"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "20", "20", "true"});
  CHECK(all_pass(t));

  p.n = {5, 7};
  CHECK_THROWS_AS(run_experiment("vD-bound", p), std::invalid_argument);
}

TEST_CASE("presets are reproducible") {
  ExperimentParams small;
  small.n = {3, 5};
  for (const char* name : {"chain-tree", "cg-one-cut", "cp-to-bb", "generation-law", "vertex-total"}) {
    CAPTURE(name);
    const auto first = run_experiment(name, small).to_csv();
    CHECK(first == run_experiment(name, small).to_csv());
  }
  ExperimentParams lp;
  lp.seed = 7;
  lp.count = 20;
  const Table a = run_experiment("lp-oracle", lp);
  CHECK(a.to_csv() == run_experiment("lp-oracle", lp).to_csv());
  CHECK(a.rows.size() == 20);
  CHECK(all_pass(a));
}

TEST_CASE("rows are sorted by their parameters") {
  ExperimentParams p;
  p.n = {3};
  p.s = {3, 1, 2};
  const Table t = run_experiment("min-tree", p);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][1] == "1");
  CHECK(t.rows[1][1] == "2");
  CHECK(t.rows[2][1] == "3");
  CHECK(t.rows[0][3] == std::to_string(kFrozenSparseMinimumN3));
}

TEST_CASE("failing rows are reported as false") {
  // s = 2 exceeds floor(3 / 2), so no generation level is constrained.
  ExperimentParams p;
  p.n = {3};
  p.s = {2};
  CHECK(run_experiment("generation-law", p).rows.empty());
  CHECK_FALSE(all_pass(Table{{"a"}, {}}));
  Table t{{"x", "pass"}, {}};
  t.add({"1", "true"});
  t.add({"2", "false"});
  CHECK_FALSE(all_pass(t));
}
