#include "cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <string>
#include <vector>

#include "bcproof/analysis.hpp"
#include "bcproof/driver.hpp"
#include "bcproof/experiments.hpp"
#include "bcproof/io.hpp"
#include "bcproof/search.hpp"
#include "bcproof/transforms.hpp"
#include "bcproof/verify.hpp"
#include "bcproof/zoo.hpp"

namespace bcproof {

namespace {

using Json = nlohmann::ordered_json;

// Where results go: the --out file if one was given, the output stream
// otherwise.
struct Sink {
  std::ostream& out;
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      write_file(path, text);
    }
  }
};

void diagnostic(std::ostream& err, const std::string& kind, const std::string& message, const Json& extra = {}) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  if (extra.is_object()) {
    for (const auto& [k, v] : extra.items()) j[k] = v;
  }
  err << j.dump() << "\n";
}

Json rational_array(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
  return out;
}

Instance generate(const std::string& family, long n, long h, bool continuous) {
  const auto size = [&] {
    if (n < 0) throw std::invalid_argument("--n must be non-negative");
    return static_cast<std::size_t>(n);
  };
  if (family == "jeroslow") return jeroslow_inequality(size());
  if (family == "jeroslow-eq") return jeroslow_equality(size());
  if (family == "jeroslow-partial") return jeroslow_partial_objective(size());
  if (family == "cks") return cks_tetrahedron(h, !continuous);
  if (family == "triangle") return triangle_T(h);
  throw std::invalid_argument("unknown family '" + family +
                              "' (jeroslow, jeroslow-eq, jeroslow-partial, cks, triangle)");
}

Json lp_report(const Instance& inst) {
  const auto res = solve_lp(inst.polyhedron, inst.objective);
  const auto check = check_lp_certificate(inst.polyhedron, inst.objective, res);
  Json j;
  j["status"] = to_string(res.status);
  if (res.optimal()) {
    j["value"] = to_string(res.value);
    j["point"] = rational_array(res.point);
    j["duals"] = rational_array(res.duals);
  } else if (res.infeasible()) {
    j["farkas"] = rational_array(res.farkas);
  }
  j["certificate_ok"] = check.ok;
  if (!check.ok) j["certificate_issue"] = check.reason;
  return j;
}

Json search_report(const SearchResult& r) {
  Json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper ? Json(*r.upper) : Json(nullptr);
  j["exact"] = r.exact();
  j["expansions"] = r.expansions;
  j["budget_exhausted"] = r.budget_exhausted;
  if (r.witness) {
    const auto stats = tree_stats(*r.witness);
    j["witness_size"] = stats.size;
    j["witness_leaves"] = stats.leaf_count;
  }
  return j;
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    out.push_back(std::stol(item, &used));
    if (used != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branch-and-cut proofs: generation, verification, transforms and experiments"};
  // --h is a parameter name here, so help is only available as --help.
  app.set_help_flag("--help", "print this help");
  app.fallthrough();
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write the result to this file instead of standard output");

  // gen
  auto* gen = app.add_subcommand("gen", "emit an instance file");
  std::string family;
  long gen_n = 5;
  long gen_h = 4;
  bool continuous = false;
  gen->add_option("family", family, "jeroslow, jeroslow-eq, jeroslow-partial, cks, triangle")->required();
  gen->add_option("--n", gen_n, "dimension (Jeroslow families, odd)");
  gen->add_option("--h", gen_h, "height (cks, triangle)");
  gen->add_flag("--continuous", continuous, "cks: make the third coordinate continuous");

  // lp
  auto* lp = app.add_subcommand("lp", "solve the LP relaxation of an instance");
  std::string lp_file;
  lp->add_option("instance", lp_file)->required();

  // prove
  auto* prove = app.add_subcommand("prove", "run the branch-and-cut driver");
  std::string prove_file;
  std::string strategy_name = "variable";
  std::string selection = "dfs";
  std::optional<std::size_t> budget;
  bool unrestricted = false;
  prove->add_option("instance", prove_file)->required();
  prove->add_option("--strategy", strategy_name, "variable, cg-single, cg-only, lift-project");
  prove->add_option("--selection", selection, "dfs, bfs, best-bound");
  prove->add_option("--budget", budget, "node budget");
  prove->add_flag("--unrestricted", unrestricted, "do not require every step to cut off the LP optimum");

  // verify
  auto* verify = app.add_subcommand("verify", "check a proof file");
  std::string verify_file;
  verify->add_option("proof", verify_file)->required();

  // transform
  auto* transform = app.add_subcommand("transform", "rewrite a proof");
  std::string transform_file;
  std::string op = "cp-to-bb";
  std::size_t extra_int = 0;
  std::size_t extra_cont = 0;
  transform->add_option("proof", transform_file)->required();
  transform->add_option("--op", op, "cp-to-bb, bc-to-bb, embed, objective-variable");
  transform->add_option("--extra-int", extra_int, "embed: added integer coordinates");
  transform->add_option("--extra-cont", extra_cont, "embed: added continuous coordinates");

  // search
  auto* search = app.add_subcommand("search", "minimum split-tree size");
  std::string search_file;
  std::string witness_path;
  SearchSpace space;
  std::optional<std::size_t> cap;
  std::optional<std::size_t> max_depth;
  search->add_option("instance", search_file)->required();
  search->add_option("--s", space.sparsity, "sparsity of the split vectors");
  search->add_option("--B", space.coefficient_bound, "coefficient bound");
  search->add_option("--budget", space.node_budget, "subproblem expansion budget");
  search->add_option("--cap", cap, "only decide whether a proof of at most this size exists");
  search->add_option("--max-depth", max_depth, "branching depth limit");
  search->add_option("--witness", witness_path, "write the smallest proof found to this file");

  // count
  auto* count = app.add_subcommand("count", "counting quantities on the Jeroslow polytope");
  count->require_subcommand(1);
  auto* count_vd = count->add_subcommand("vd", "optimal vertices strictly inside a split set");
  std::size_t vd_n = 5;
  std::string vd_pi;
  long vd_pi0 = 0;
  count_vd->add_option("--n", vd_n)->required();
  count_vd->add_option("--pi", vd_pi, "comma-separated integers")->required();
  count_vd->add_option("--pi0", vd_pi0)->required();
  auto* count_p = count->add_subcommand("p-bound", "the bound p(t)");
  std::size_t p_n = 5;
  std::size_t p_t = 1;
  count_p->add_option("--n", p_n)->required();
  count_p->add_option("--t", p_t)->required();
  auto* count_sperner = count->add_subcommand("sperner", "subsets of the weights summing to a target");
  std::string sperner_w;
  long sperner_target = 0;
  count_sperner->add_option("--w", sperner_w, "comma-separated nonzero integers")->required();
  count_sperner->add_option("--target", sperner_target)->required();
  auto* count_gen = count->add_subcommand("generation", "generation-node counts of a branching proof");
  std::string gen_file;
  std::size_t gen_s = 1;
  count_gen->add_option("proof", gen_file)->required();
  count_gen->add_option("--s", gen_s, "sparsity for the half-value check");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a preset and print its CSV table");
  std::string preset_name;
  ExperimentParams params;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> corpus_size;
  bool list = false;
  experiment->add_option("name", preset_name);
  experiment->add_flag("--list", list, "list the presets");
  experiment->add_option("--n", params.n)->delimiter(',');
  experiment->add_option("--s", params.s)->delimiter(',');
  experiment->add_option("--B", params.B)->delimiter(',');
  experiment->add_option("--h", params.h)->delimiter(',');
  experiment->add_option("--seed", seed, "random corpus seed");
  experiment->add_option("--count", corpus_size, "random corpus size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "usage", e.what());
    return kExitMalformed;
  }

  const Sink sink{out, out_path};
  try {
    if (gen->parsed()) {
      sink.emit(write_instance(generate(family, gen_n, gen_h, continuous)));
      return kExitOk;
    }
    if (lp->parsed()) {
      sink.emit(lp_report(read_instance(read_file(lp_file))).dump(2) + "\n");
      return kExitOk;
    }
    if (prove->parsed()) {
      const Instance inst = read_instance(read_file(prove_file));
      Strategy strategy = named_strategy(strategy_name, parse_node_selection(selection));
      if (budget) strategy.budget = *budget;
      if (unrestricted) strategy.mode = ProofMode::Unrestricted;
      const ProofTree tree = run_branch_and_cut(inst, strategy);
      sink.emit(write_proof(tree));
      Json summary;
      summary["size"] = tree.size();
      summary["strategy"] = strategy_name;
      err << summary.dump() << "\n";
      return kExitOk;
    }
    if (verify->parsed()) {
      const ProofTree tree = read_proof(read_file(verify_file));
      const VerifyReport report = verify_proof(tree);
      Json j = to_json(report);
      j["size"] = tree.size();
      sink.emit(j.dump(2) + "\n");
      return report.accepted() ? kExitOk : kExitRejected;
    }
    if (transform->parsed()) {
      const ProofTree tree = read_proof(read_file(transform_file));
      ProofTree result;
      if (op == "cp-to-bb") {
        result = cp_proof_to_bb(tree);
      } else if (op == "bc-to-bb") {
        result = bc_proof_to_bb(tree, cut_oracle_via_split());
      } else if (op == "embed") {
        result = embed_proof(tree, extra_int, extra_cont);
      } else if (op == "objective-variable") {
        result = lift_proof_to_objective_variable(tree);
      } else {
        throw std::invalid_argument("unknown transform '" + op + "' (cp-to-bb, bc-to-bb, embed, objective-variable)");
      }
      sink.emit(write_proof(result));
      return kExitOk;
    }
    if (search->parsed()) {
      const Instance inst = read_instance(read_file(search_file));
      space.max_depth = max_depth;
      const SearchResult r = cap ? min_proof_bracket(inst, space, *cap) : min_bb_tree_size(inst, space);
      if (!witness_path.empty() && r.witness) write_file(witness_path, write_proof(*r.witness));
      sink.emit(search_report(r).dump(2) + "\n");
      return r.budget_exhausted && !r.exact() ? kExitBudget : kExitOk;
    }
    if (count->parsed()) {
      Json j;
      if (count_vd->parsed()) {
        const auto pi = parse_longs(vd_pi);
        if (pi.size() != vd_n) throw std::invalid_argument("--pi needs exactly n entries");
        j["count"] = count_vertices_in_split(vd_n, pi, vd_pi0);
      } else if (count_p->parsed()) {
        j["p_bound"] = to_string(p_bound(p_n, p_t));
      } else if (count_sperner->parsed()) {
        j["count"] = sperner_count(parse_longs(sperner_w), sperner_target);
      } else {
        const ProofTree tree = read_proof(read_file(gen_file));
        const auto cls = classify_splits(tree);
        Json counts = Json::array();
        const std::size_t max_generation =
            cls.generation.empty() ? 0 : *std::max_element(cls.generation.begin(), cls.generation.end());
        for (std::size_t m = 0; m <= max_generation; ++m) counts.push_back(count_generation_nodes(tree, cls, m));
        j["generation_counts"] = counts;
        j["half_value_violations"] = half_value_violations(tree, cls, gen_s);
      }
      sink.emit(j.dump(2) + "\n");
      return kExitOk;
    }
    if (experiment->parsed()) {
      if (list || preset_name.empty()) {
        std::string text;
        for (const auto& p : experiment_presets()) text += p.name + "\t" + p.description + "\n";
        sink.emit(text);
        return kExitOk;
      }
      params.seed = seed;
      params.count = corpus_size;
      const Table table = run_experiment(preset_name, params);
      sink.emit(table.to_csv());
      return all_pass(table) ? kExitOk : kExitRejected;
    }
  } catch (const SchemaError& e) {
    diagnostic(err, "schema", e.what(), Json{{"where", e.where()}});
    return kExitMalformed;
  } catch (const TreeBudgetExceeded& e) {
    diagnostic(err, "budget", e.what(), Json{{"partial_size", e.partial().size()}});
    return kExitBudget;
  } catch (const BudgetExceeded& e) {
    diagnostic(err, "budget", e.what());
    return kExitBudget;
  } catch (const TransformError& e) {
    diagnostic(err, "rejected", e.what(), Json{{"node", e.node()}});
    return kExitRejected;
  } catch (const StrategyError& e) {
    diagnostic(err, "strategy", e.what(), Json{{"node", e.node()}});
    return kExitMalformed;
  } catch (const std::exception& e) {
    diagnostic(err, "input", e.what());
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace bcproof
