#include "bcproof/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "bcproof/driver.hpp"
#include "bcproof/errors.hpp"

namespace bcproof {

namespace {

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max() / 4;

// Every integer vector in [-B, B]^n with support size in [1, s] and first
// nonzero positive, in descending lexicographic order.
void canonical_vectors(std::size_t n, std::size_t s, long bound, std::vector<std::vector<long>>& out) {
  std::vector<long> v(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t used, bool seen_nonzero) -> void {
    if (i == n) {
      if (seen_nonzero) out.push_back(v);
      return;
    }
    for (long c = bound; c >= -bound; --c) {
      if (c != 0 && used == s) continue;
      if (c < 0 && !seen_nonzero) continue;
      v[i] = c;
      self(self, i + 1, used + (c != 0 ? 1 : 0), seen_nonzero || c != 0);
    }
    v[i] = 0;
  };
  rec(rec, 0, 0, false);
}

std::string constraint_key(const LinearConstraint& c) { return to_string(c); }

struct NodeInfo {
  std::vector<LinearConstraint> path;
  bool leaf = false;
  LeafReason reason = LeafReason::LpInfeasible;
  std::size_t lower = 1;            // no subtree smaller than this
  std::optional<std::size_t> best;  // exact minimum once known
  std::optional<Disjunction> split;
};

struct Exhausted {};

class Searcher {
 public:
  Searcher(const Instance& inst, const SearchSpace& space)
      : inst_(inst), space_(space) {
    if (inst.n_cont() != 0) throw std::invalid_argument("search needs a pure-integer instance");
    splits_ = enumerate_splits(inst.n_int(), space, integer_box(inst));
    root_splits_ = is_fully_symmetric(inst) ? orbit_representatives(splits_) : splits_;
  }

  std::size_t expansions() const { return expansions_; }

  // Exact minimum if it is at most cap.
  std::optional<std::size_t> solve_root(std::size_t cap) { return solve({}, 0, cap); }

  ProofTree witness() {
    ProofTree tree(inst_, ProofMode::Unrestricted);
    build(tree, tree.ensure_root(), {}, 0);
    return tree;
  }

 private:
  static std::vector<Disjunction> orbit_representatives(const std::vector<Disjunction>& splits) {
    std::set<std::string> seen;
    std::vector<Disjunction> reps;
    for (const auto& d : splits) {
      std::vector<long> pi;
      for (Eigen::Index i = 0; i < d.pi().size(); ++i) pi.push_back(d.pi()[i].convert_to<long>());
      const long pi0 = d.pi0().convert_to<long>();
      std::vector<long> up = pi;
      std::sort(up.begin(), up.end(), std::greater<>());
      std::vector<long> down(pi.size());
      std::transform(pi.begin(), pi.end(), down.begin(), [](long x) { return -x; });
      std::sort(down.begin(), down.end(), std::greater<>());
      std::vector<std::pair<std::vector<long>, long>> candidates;
      if (up.front() > 0) candidates.emplace_back(up, pi0);
      if (down.front() > 0) candidates.emplace_back(down, -pi0 - 1);
      const auto rep = *std::min_element(candidates.begin(), candidates.end());
      std::string key = std::to_string(rep.second);
      for (long x : rep.first) key += "," + std::to_string(x);
      if (seen.insert(key).second) reps.push_back(d);
    }
    return reps;
  }

  std::string key_of(std::vector<LinearConstraint>& path, std::size_t depth) const {
    std::vector<std::string> parts;
    parts.reserve(path.size());
    for (const auto& c : path) parts.push_back(constraint_key(c));
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    std::string key;
    for (const auto& p : parts) key += p + ";";
    if (space_.max_depth) key += "@" + std::to_string(depth);
    return key;
  }

  NodeInfo& info(std::vector<LinearConstraint> path, std::size_t depth, std::string* key_out = nullptr) {
    std::string key = key_of(path, depth);
    if (key_out) *key_out = key;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    NodeInfo ni;
    const LpResult lp = solve_lp(inst_.polyhedron.with(path), inst_.objective);
    ni.path = std::move(path);
    if (lp.infeasible()) {
      ni.leaf = true;
    } else if (lp.status == LpStatus::Unbounded) {
      throw UnboundedPolyhedron("search relaxation is unbounded");
    } else {
      const bool integral = is_integral(lp.point, inst_.n_int());
      if (inst_.goal == Goal::ProveBound && lp.value <= inst_.bound) {
        ni.leaf = true;
        ni.reason = integral ? LeafReason::IntegralOptimum : LeafReason::BoundCertified;
      } else if (integral) {
        throw InvalidInstance("integer point " + to_string(lp.point) + " violates the claim");
      }
    }
    if (ni.leaf) {
      ni.best = 1;
    } else {
      ni.lower = 3;
      if (space_.max_depth && depth >= *space_.max_depth) ni.lower = kNever;
    }
    return memo_.emplace(std::move(key), std::move(ni)).first->second;
  }

  static std::size_t lower_of(const NodeInfo& ni) { return ni.best ? *ni.best : ni.lower; }

  std::optional<std::size_t> solve(std::vector<LinearConstraint> path, std::size_t depth, std::size_t cap) {
    std::string key;
    NodeInfo* ni = &info(path, depth, &key);
    if (ni->best) return *ni->best <= cap ? ni->best : std::nullopt;
    if (ni->lower > cap) return std::nullopt;
    if (++expansions_ > space_.node_budget) throw Exhausted{};

    std::optional<std::size_t> best;
    std::optional<Disjunction> best_split;
    std::size_t limit = cap;
    const auto& candidates = depth == 0 ? root_splits_ : splits_;
    for (const auto& d : candidates) {
      if (limit < 3) break;
      std::vector<LinearConstraint> p0 = path;
      p0.push_back(d.terms()[0][0]);
      std::vector<LinearConstraint> p1 = path;
      p1.push_back(d.terms()[1][0]);
      std::string k0;
      std::string k1;
      const std::size_t l0 = lower_of(info(p0, depth + 1, &k0));
      const std::size_t l1 = lower_of(info(p1, depth + 1, &k1));
      if (!space_.max_depth && (k0 == key || k1 == key)) continue;  // one side is the node itself
      if (1 + l0 + l1 > limit) continue;
      const auto s0 = solve(std::move(p0), depth + 1, limit - 1 - l1);
      if (!s0) continue;
      const auto s1 = solve(std::move(p1), depth + 1, limit - 1 - *s0);
      if (!s1) continue;
      best = 1 + *s0 + *s1;
      best_split = d;
      limit = *best - 1;
    }
    ni = &memo_.at(key);
    if (best) {
      ni->best = best;
      ni->split = std::move(best_split);
      return best;
    }
    ni->lower = std::max(ni->lower, cap + 1);
    return std::nullopt;
  }

  void build(ProofTree& tree, NodeId id, std::vector<LinearConstraint> path, std::size_t depth) {
    const NodeInfo& ni = info(path, depth);
    if (ni.leaf) {
      tree.leaf(id, ni.reason);
      return;
    }
    const Disjunction d = *ni.split;
    const auto kids = tree.branch(id, d);
    for (std::size_t k = 0; k < kids.size(); ++k) {
      std::vector<LinearConstraint> child = path;
      child.push_back(d.terms()[k][0]);
      build(tree, kids[k], std::move(child), depth + 1);
    }
  }

  const Instance& inst_;
  const SearchSpace& space_;
  std::vector<Disjunction> splits_;
  std::vector<Disjunction> root_splits_;
  std::unordered_map<std::string, NodeInfo> memo_;
  std::size_t expansions_ = 0;
};

// Variable branching, kept only when every split it uses is in the family.
void fill_upper_from_driver(const Instance& inst, const SearchSpace& space, SearchResult& result) {
  std::set<std::string> family;
  for (const auto& d : enumerate_splits(inst.n_int(), space, integer_box(inst))) family.insert(to_string(d));
  Strategy s = named_strategy("variable");
  s.mode = ProofMode::Unrestricted;
  s.budget = default_node_budget();
  try {
    ProofTree tree = run_branch_and_cut(inst, s);
    for (const auto& n : tree.nodes()) {
      if (n.kind != NodeKind::Branch) continue;
      if (!family.count(to_string(canonical_split(*n.disjunction)))) return;
      if (space.max_depth && tree.depth(n.id) >= *space.max_depth) return;
    }
    if (!result.upper || tree.size() < *result.upper) {
      result.upper = tree.size();
      result.witness = std::move(tree);
    }
  } catch (const std::exception&) {
    // No upper bound from this heuristic.
  }
}

SearchResult deepen(const Instance& inst, const SearchSpace& space, std::size_t cap) {
  Searcher searcher(inst, space);
  SearchResult result;
  try {
    for (std::size_t c = 1; c <= cap; c += 2) {
      if (const auto found = searcher.solve_root(c)) {
        result.lower = *found;
        result.upper = *found;
        result.witness = searcher.witness();
        result.expansions = searcher.expansions();
        return result;
      }
      result.lower = c + 2;
    }
  } catch (const Exhausted&) {
    result.budget_exhausted = true;
  }
  result.expansions = searcher.expansions();
  fill_upper_from_driver(inst, space, result);
  return result;
}

}  // namespace

IntegerBox integer_box(const Instance& instance) {
  const std::size_t dim = instance.dimension();
  IntegerBox box;
  for (std::size_t i = 0; i < instance.n_int(); ++i) {
    const Vector e = unit_vector(dim, i);
    const LpResult hi = solve_lp(instance.polyhedron, e);
    const LpResult lo = solve_lp(instance.polyhedron, -e);
    if (hi.status == LpStatus::Unbounded || lo.status == LpStatus::Unbounded) {
      throw UnboundedPolyhedron("coordinate x" + std::to_string(i + 1) + " is unbounded");
    }
    if (!hi.optimal()) {
      box.emplace_back(0, -1);
      continue;
    }
    box.emplace_back(ceil(Rational(-lo.value)).convert_to<long>(), floor(hi.value).convert_to<long>());
  }
  return box;
}

std::vector<Disjunction> enumerate_splits(std::size_t n, const SearchSpace& space, const IntegerBox& box) {
  if (!box.empty() && box.size() != n) throw std::invalid_argument("box dimension does not match n");
  if (space.sparsity == 0 || space.sparsity > n) throw std::invalid_argument("sparsity must lie in [1, n]");
  if (space.coefficient_bound < 1) throw std::invalid_argument("coefficient bound must be at least 1");
  if (space.pi0_range && space.pi0_range->first > space.pi0_range->second) {
    throw std::invalid_argument("empty pi0 range");
  }
  std::vector<std::vector<long>> vectors;
  canonical_vectors(n, space.sparsity, space.coefficient_bound, vectors);
  std::vector<Disjunction> out;
  for (const auto& pi : vectors) {
    long g = 0;
    long min_value = 0;
    long max_value = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long c = pi[i];
      g = std::gcd(g, c);
      const long lo_i = box.empty() ? 0 : box[i].first;
      const long hi_i = box.empty() ? 1 : box[i].second;
      min_value += std::min(c * lo_i, c * hi_i);
      max_value += std::max(c * lo_i, c * hi_i);
    }
    if (g != 1) continue;
    const long lo = space.pi0_range ? space.pi0_range->first : min_value;
    const long hi = space.pi0_range ? space.pi0_range->second : max_value - 1;
    std::vector<long> copy = pi;
    const Vector v = from_integers(copy);
    for (long pi0 = lo; pi0 <= hi; ++pi0) out.push_back(make_split(v, pi0, n, 0));
  }
  return out;
}

bool is_fully_symmetric(const Instance& instance) {
  const std::size_t n = instance.dimension();
  if (instance.n_cont() != 0 || n < 2) return n < 2;
  for (Eigen::Index i = 1; i < instance.objective.size(); ++i) {
    if (instance.objective[i] != instance.objective[0]) return false;
  }
  auto keys = [](const std::vector<LinearConstraint>& cs) {
    std::multiset<std::string> out;
    for (const auto& c : cs) out.insert(to_string(c));
    return out;
  };
  const auto base = keys(instance.polyhedron.constraints());
  // A transposition and an n-cycle generate every permutation.
  for (int which = 0; which < 2; ++which) {
    std::vector<LinearConstraint> moved;
    for (const auto& c : instance.polyhedron.constraints()) {
      Vector a = zeros(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = which == 0 ? (i == 0 ? 1 : i == 1 ? 0 : i) : (i + 1) % n;
        a[static_cast<Eigen::Index>(j)] = c.coeffs[static_cast<Eigen::Index>(i)];
      }
      moved.push_back({a, c.relation, c.rhs});
    }
    if (keys(moved) != base) return false;
  }
  return true;
}

SearchResult min_bb_tree_size(const Instance& instance, const SearchSpace& space) {
  return deepen(instance, space, kNever);
}

SearchResult min_proof_bracket(const Instance& instance, const SearchSpace& space, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("cap must be at least 1");
  return deepen(instance, space, cap);
}

}  // namespace bcproof
