#include "bcproof/experiments.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "bcproof/analysis.hpp"
#include "bcproof/constructions.hpp"
#include "bcproof/driver.hpp"
#include "bcproof/search.hpp"
#include "bcproof/transforms.hpp"
#include "bcproof/verify.hpp"
#include "bcproof/zoo.hpp"

namespace bcproof {

namespace {

std::string cell(bool v) { return v ? "true" : "false"; }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(long v) { return std::to_string(v); }
std::string cell(const Integer& v) { return to_string(v); }
std::string cell(const Rational& v) { return to_string(v); }

std::vector<long> pick(const std::vector<long>& given, std::vector<long> defaults) {
  return given.empty() ? defaults : given;
}

std::size_t as_size(long v, const char* what) {
  if (v < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

long single(const std::vector<long>& given, long fallback, const char* what) {
  if (given.size() > 1) throw std::invalid_argument(std::string("this preset takes a single --") + what);
  return given.empty() ? fallback : given.front();
}

bool accepted(const ProofTree& tree) { return verify_proof(tree).accepted(); }

// Calls f(support) for every t-subset of {0..n-1}, in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t t, F&& f) {
  std::vector<std::size_t> idx(t);
  for (std::size_t i = 0; i < t; ++i) idx[i] = i;
  if (t > n) return;
  while (true) {
    f(idx);
    std::size_t i = t;
    while (i > 0 && idx[i - 1] == n - t + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Calls f(values) for every vector in `alphabet`^k, first entry fastest.
template <typename F>
void for_each_word(std::size_t k, const std::vector<long>& alphabet, F&& f) {
  std::vector<std::size_t> digit(k, 0);
  std::vector<long> word(k, alphabet.front());
  while (true) {
    f(word);
    std::size_t i = 0;
    while (i < k && digit[i] + 1 == alphabet.size()) {
      digit[i] = 0;
      word[i] = alphabet.front();
      ++i;
    }
    if (i == k) return;
    word[i] = alphabet[++digit[i]];
  }
}

std::vector<long> nonzero_range(long bound) {
  std::vector<long> out;
  for (long v = -bound; v <= bound; ++v) {
    if (v != 0) out.push_back(v);
  }
  return out;
}

Table chain_tree(const ExperimentParams& p, Table t) {
  for (long n : pick(p.n, {3, 5, 7, 9})) {
    const auto tree = build_chain_branching_tree(as_size(n, "n"));
    const auto stats = tree_stats(tree);
    const auto target = jeroslow_partial_objective(as_size(n, "n"));
    const bool same_instance = tree.instance().objective == target.objective &&
                               tree.instance().polyhedron.constraints() == target.polyhedron.constraints() &&
                               tree.instance().bound == target.bound;
    const bool ok = same_instance && accepted(tree);
    const std::size_t expected = as_size(n, "n") + 2;
    t.add({cell(n), cell(stats.size), cell(expected), cell(stats.max_sparsity), cell(ok),
           cell(ok && stats.size == expected && stats.max_sparsity == 1)});
  }
  return t;
}

Table cg_one_cut(const ExperimentParams& p, Table t) {
  for (long n : pick(p.n, {3, 5, 7})) {
    const auto tree = single_cg_cut_proof(as_size(n, "n"));
    const auto stats = tree_stats(tree);
    const bool ok = accepted(tree);
    t.add({cell(n), cell(stats.size), cell(stats.cut_count), cell(ok), cell(ok && stats.size == 2)});
  }
  return t;
}

Table cp_to_bb(const ExperimentParams& p, Table t) {
  for (long n : pick(p.n, {3, 5, 7})) {
    const auto input = single_cg_cut_proof(as_size(n, "n"));
    const auto output = cp_proof_to_bb(input);
    const auto in = tree_stats(input);
    const auto out = tree_stats(output);
    const bool ok = accepted(output) && out.cut_count == 0;
    const std::size_t limit = 3 * in.cut_count;
    t.add({cell(n), cell(in.size), cell(in.cut_count), cell(out.size), cell(limit), cell(in.max_sparsity),
           cell(out.max_sparsity), cell(ok), cell(ok && out.size <= limit && out.max_sparsity <= in.max_sparsity)});
  }
  return t;
}

SearchSpace search_space(std::size_t s, long bound) {
  SearchSpace sp;
  sp.sparsity = s;
  sp.coefficient_bound = bound;
  return sp;
}

std::vector<std::pair<long, long>> search_grid(const ExperimentParams& p) {
  if (p.n.empty() && p.s.empty()) return {{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 5}};
  std::vector<std::pair<long, long>> grid;
  for (long n : pick(p.n, {3, 5})) {
    for (long s : pick(p.s, {1, n})) {
      if (s >= 1 && s <= n) grid.emplace_back(n, s);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Table min_tree(const ExperimentParams& p, Table t) {
  for (const auto& [n, s] : search_grid(p)) {
    for (long b : pick(p.B, {1})) {
      const auto nn = as_size(n, "n");
      const auto r = min_bb_tree_size(jeroslow_inequality(nn), search_space(as_size(s, "s"), b));
      const bool has_witness = r.witness.has_value();
      const auto stats = has_witness ? tree_stats(*r.witness) : TreeStats{};
      const bool verified = has_witness && accepted(*r.witness);
      bool pass = !has_witness || verified;
      if (s == n) {
        pass = pass && r.exact() && r.lower == 3;
      } else {
        pass = pass && r.lower > 3 && (!has_witness || stats.leaf_count >= (std::size_t{1} << (nn / 2)));
      }
      t.add({cell(n), cell(s), cell(b), cell(r.lower), r.upper ? cell(*r.upper) : "", cell(r.exact()),
             has_witness ? cell(stats.size) : "", has_witness ? cell(stats.leaf_count) : "", cell(verified),
             cell(r.expansions), cell(pass)});
    }
  }
  return t;
}

Table generation_law(const ExperimentParams& p, Table t) {
  for (long n : pick(p.n, {3, 5})) {
    for (long s : pick(p.s, {1})) {
      const auto nn = as_size(n, "n");
      const auto ss = as_size(s, "s");
      const auto r = min_bb_tree_size(jeroslow_inequality(nn), search_space(ss, 1));
      if (!r.exact() || !r.witness) throw std::runtime_error("search did not produce a minimal witness");
      const auto cls = classify_splits(*r.witness);
      const std::size_t violations = half_value_violations(*r.witness, cls, ss).size();
      for (std::size_t m = 0; ss <= nn / 2 && m + 1 <= (nn / 2) / ss; ++m) {
        const std::size_t count = count_generation_nodes(*r.witness, cls, m);
        const std::size_t required = std::size_t{1} << m;
        t.add({cell(n), cell(s), cell(m), cell(count), cell(required), cell(violations),
               cell(count >= required && violations == 0)});
      }
    }
  }
  return t;
}

Table sperner(const ExperimentParams& p, Table t) {
  const long coeff = single(p.B, 3, "B");
  for (long k : pick(p.n, {1, 2, 3, 4})) {
    const auto kk = as_size(k, "k");
    std::uint64_t best = 0;
    std::size_t vectors = 0;
    for_each_word(kk, nonzero_range(coeff), [&](const std::vector<long>& w) {
      ++vectors;
      long lo = 0;
      long hi = 0;
      for (long x : w) (x < 0 ? lo : hi) += x;
      for (long target = lo; target <= hi; ++target) best = std::max(best, sperner_count(w, target));
    });
    const Integer bound = binomial(kk, kk / 2);
    const bool attained = Integer(sperner_count(std::vector<long>(kk, 1), static_cast<long>(kk / 2))) == bound;
    t.add({cell(k), cell(vectors), cell(static_cast<std::size_t>(best)), cell(bound), cell(attained),
           cell(Integer(best) <= bound && attained)});
  }
  return t;
}

Table vd_bound(const ExperimentParams& p, Table t) {
  const auto n = as_size(single(p.n, 7, "n"), "n");
  const long coeff = single(p.B, 2, "B");
  const auto alphabet = nonzero_range(coeff);
  std::vector<long> pi(n, 0);
  for (std::size_t size = 1; size <= n / 2; ++size) {
    const long reach = std::max(static_cast<long>(n), static_cast<long>(size) * coeff);
    std::size_t best = 0;
    for_each_subset(n, size, [&](const std::vector<std::size_t>& support) {
      for_each_word(size, alphabet, [&](const std::vector<long>& w) {
        std::fill(pi.begin(), pi.end(), 0);
        for (std::size_t i = 0; i < size; ++i) pi[support[i]] = w[i];
        for (long pi0 = -reach; pi0 <= reach; ++pi0) best = std::max(best, count_vertices_in_split(n, pi, pi0));
      });
    });
    const Integer bound = p_bound(n, size);
    t.add({cell(size), cell(best), cell(bound), cell(Integer(static_cast<unsigned long>(best)) <= bound)});
  }
  return t;
}

Table vertex_total(const ExperimentParams& p, Table t) {
  for (long n : pick(p.n, {5, 7})) {
    const auto nn = as_size(n, "n");
    const auto inst = jeroslow_inequality(nn);
    const Rational target(n, 2);
    std::size_t enumerated = 0;
    for (const auto& v : enumerate_vertices(inst.polyhedron)) {
      if (inst.objective.dot(v) == target) ++enumerated;
    }
    const Integer formula = Integer(static_cast<unsigned long>(nn)) * binomial(nn - 1, nn / 2);
    t.add({cell(n), cell(enumerated), cell(formula),
           cell(Integer(static_cast<unsigned long>(enumerated)) == formula &&
                jeroslow_optimal_vertex_count(nn) == formula)});
  }
  return t;
}

Table sparse_triviality(const ExperimentParams& p, Table t) {
  const auto n = as_size(single(p.n, 7, "n"), "n");
  const auto max_support = as_size(single(p.s, 3, "s"), "s");
  const long coeff = single(p.B, 3, "B");
  if (n > 20) throw std::invalid_argument("n must be at most 20");

  // Integer points of the polytope, for the validity pre-check.
  const auto inst = jeroslow_inequality(n);
  std::vector<std::vector<long>> points;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<long> x(n);
    Vector v = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<long>((mask >> i) & 1ul);
      v[static_cast<Eigen::Index>(i)] = x[i];
    }
    if (inst.polyhedron.contains(v)) points.push_back(std::move(x));
  }

  const auto alphabet = nonzero_range(coeff);
  std::vector<long> a(n, 0);
  for (std::size_t size = 1; size <= max_support; ++size) {
    std::size_t checked = 0;
    std::size_t trivial = 0;
    for_each_subset(n, size, [&](const std::vector<std::size_t>& support) {
      for_each_word(size, alphabet, [&](const std::vector<long>& w) {
        std::fill(a.begin(), a.end(), 0);
        for (std::size_t i = 0; i < size; ++i) a[support[i]] = w[i];
        long rhs = std::numeric_limits<long>::min();
        for (const auto& x : points) {
          long lhs = 0;
          for (std::size_t i : support) lhs += a[i] * x[i];
          rhs = std::max(rhs, lhs);
        }
        // The tightest valid right-hand side and one strictly weaker cut.
        for (long r : {rhs, rhs + 1}) {
          ++checked;
          if (sparse_cut_is_trivial(n, less_equal(from_integers(a), r))) ++trivial;
        }
      });
    });
    t.add({cell(size), cell(checked), cell(trivial), cell(checked == trivial)});
  }
  return t;
}

Table cks_branching(const ExperimentParams& p, Table t) {
  std::optional<std::size_t> first;
  for (long h : pick(p.h, {1, 10, 100, 1000})) {
    const auto tree = run_branch_and_cut(cks_tetrahedron(h), named_strategy("variable"));
    const bool ok = accepted(tree);
    if (!first) first = tree.size();
    t.add({cell(h), cell(tree.size()), cell(ok), cell(ok && tree.size() == *first)});
  }
  return t;
}

Table triangle(const ExperimentParams& p, Table t) {
  for (long h : pick(p.h, {2, 4, 8})) {
    const auto inst = triangle_T(h);
    ProofTree tree(inst, ProofMode::Restricted);
    for (auto k : tree.branch(tree.ensure_root(), make_variable_split(0, 0, 2, 0))) {
      tree.leaf(k, LeafReason::IntegralOptimum);
    }
    const bool ok = accepted(tree);
    const bool found = find_single_cg_proof(inst, 2 * h).has_value();
    t.add({cell(h), cell(tree.size()), cell(ok), cell(2 * h), cell(found), cell(ok && tree.size() == 3 && !found)});
  }
  return t;
}

Table composition(const ExperimentParams& p, Table t) {
  constexpr std::size_t kLimit = 11;
  for (long n : pick(p.n, {5})) {
    for (long h : pick(p.h, {4})) {
      const auto a = jeroslow_inequality(as_size(n, "n"));
      const auto b = triangle_T(h);
      const auto g = compose_complementary(a, b);
      const Vector t_dir = unit_vector(g.composed.dimension(), g.t_index);
      const Rational fa = solve_lp(gadget_fiber(g, 0), t_dir).value;
      const Rational fb = solve_lp(gadget_fiber(g, 1), t_dir).value;
      const Rational sa = solve_lp(a.polyhedron, a.objective).value;
      const Rational sb = solve_lp(b.polyhedron, b.objective).value;
      const auto proof = prove_composed(g, gadget_cg_chooser(g, a.objective), variable_branching());
      const bool ok = accepted(proof);
      t.add({cell(n), cell(h), cell(proof.size()), cell(kLimit), cell(fa), cell(sa), cell(fb), cell(sb), cell(ok),
             cell(ok && proof.size() <= kLimit && fa == sa && fb == sb)});
    }
  }
  return t;
}

Table lp_oracle(const ExperimentParams& p, Table t) {
  const auto corpus = random_lp_corpus(p.seed.value_or(1), p.count.value_or(100));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& lp = corpus[i];
    const auto res = solve_lp(lp.polyhedron, lp.objective);
    const auto vertices = enumerate_vertices(lp.polyhedron);
    const bool cert = check_lp_certificate(lp.polyhedron, lp.objective, res).ok;
    std::optional<Rational> best;
    for (const auto& v : vertices) {
      const Rational value = lp.objective.dot(v);
      if (!best || value > *best) best = value;
    }
    const bool agree = best ? (res.optimal() && res.value == *best) : res.infeasible();
    t.add({cell(i), cell(lp.polyhedron.dimension()), cell(lp.polyhedron.size()), to_string(res.status),
           res.optimal() ? cell(res.value) : "", best ? cell(*best) : "", cell(cert), cell(agree && cert)});
  }
  return t;
}

ExperimentPreset preset(std::string name, std::string description, std::vector<std::string> columns,
                        Table (*impl)(const ExperimentParams&, Table)) {
  auto run = [columns, impl](const ExperimentParams& p) { return impl(p, Table{columns, {}}); };
  return {std::move(name), std::move(description), std::move(columns), std::move(run)};
}

std::vector<ExperimentPreset> make_presets() {
  return {
      preset("chain-tree", "chain branching tree on the partial-objective Jeroslow instance (--n)",
             {"n", "size", "expected", "max_sparsity", "verified", "pass"}, chain_tree),
      preset("cg-one-cut", "one Chvatal-Gomory cut proves the Jeroslow bound (--n)",
             {"n", "size", "cuts", "verified", "pass"}, cg_one_cut),
      preset("cp-to-bb", "cutting-plane to branch-and-bound transform of the one-cut proof (--n)",
             {"n", "input_size", "cuts", "output_size", "size_limit", "input_sparsity", "output_sparsity", "verified", "pass"}, cp_to_bb),
      preset("min-tree", "minimum split-tree size on Jeroslow (--n, --s, --B)",
             {"n", "s", "B", "lower", "upper", "exact", "witness_size", "witness_leaves", "witness_verified", "expansions", "pass"}, min_tree),
      preset("generation-law", "generation nodes and half values on minimal witnesses (--n, --s)",
             {"n", "s", "m", "count", "required", "half_value_violations", "pass"}, generation_law),
      preset("sperner", "Sperner counts over all weight vectors (--n as k, --B)",
             {"k", "vectors", "max_observed", "bound", "attained", "pass"}, sperner),
      preset("vD-bound", "optimal vertices inside sparse split sets against p(t) (--n, --B)",
             {"t", "max_observed", "p_bound", "pass"}, vd_bound),
      preset("vertex-total", "number of optimal Jeroslow vertices (--n)",
             {"n", "enumerated", "formula", "pass"}, vertex_total),
      preset("sparse-triviality", "valid sparse cuts are valid for the unit cube (--n, --s, --B)",
             {"support", "cuts_checked", "trivial", "pass"}, sparse_triviality),
      preset("cks-branching", "variable branching on the CKS tetrahedron (--h)",
             {"h", "size", "verified", "pass"}, cks_branching),
      preset("triangle", "triangle family: 3-node branching proof, no single CG proof (--h)",
             {"h", "bb_size", "bb_verified", "max_denominator", "single_cg_found", "pass"}, triangle),
      preset("composition", "composed Jeroslow and triangle instance (--n, --h)",
             {"n", "h", "size", "size_limit", "fiber_a_lp", "standalone_a_lp", "fiber_b_lp", "standalone_b_lp", "verified", "pass"}, composition),
      preset("lp-oracle", "simplex against vertex enumeration on random LPs (--seed, --count)",
             {"index", "dimension", "rows", "status", "lp_value", "vertex_max", "certificate", "pass"}, lp_oracle),
  };
}

}  // namespace

const std::vector<ExperimentPreset>& experiment_presets() {
  static const std::vector<ExperimentPreset> presets = make_presets();
  return presets;
}

const ExperimentPreset& find_preset(const std::string& name) {
  for (const auto& p : experiment_presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : experiment_presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw std::invalid_argument("unknown experiment '" + name + "' (" + known + ")");
}

Table run_experiment(const std::string& name, const ExperimentParams& params) {
  return find_preset(name).run(params);
}

bool all_pass(const Table& table) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), "pass");
  if (it == table.columns.end()) return false;
  const auto col = static_cast<std::size_t>(it - table.columns.begin());
  return std::all_of(table.rows.begin(), table.rows.end(), [&](const auto& row) { return row[col] == "true"; });
}

}  // namespace bcproof
