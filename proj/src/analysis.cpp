#include "bcproof/analysis.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bcproof/errors.hpp"

namespace bcproof {

namespace {

using Mask = std::uint32_t;

Vector point_of(Mask mask, std::size_t n) {
  Vector x = zeros(n);
  for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] = (mask >> i) & 1u;
  return x;
}

bool satisfies_all(const std::vector<LinearConstraint>& cs, const Vector& x) {
  return std::all_of(cs.begin(), cs.end(), [&](const LinearConstraint& c) { return c.satisfied_by(x); });
}

void require_unit_box(const Polyhedron& p) {
  const std::size_t n = p.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector e = unit_vector(n, i);
    const LpResult hi = solve_lp(p, e);
    const LpResult lo = solve_lp(p, -e);
    if (!hi.optimal() || !lo.optimal() || hi.value > 1 || -lo.value < 0) {
      throw std::invalid_argument("coordinate x" + std::to_string(i + 1) + " is not confined to [0, 1]");
    }
  }
}

long to_long(const Rational& v, const char* what) {
  if (!is_integer(v)) throw std::invalid_argument(std::string(what) + " must be integral");
  return floor(v).convert_to<long>();
}

}  // namespace

SplitClassification classify_splits(const ProofTree& tree) {
  const Instance& inst = tree.instance();
  const std::size_t n = inst.n_int();
  if (inst.n_cont() != 0) throw std::invalid_argument("split classification needs a pure-integer instance");
  if (n > 20) throw std::invalid_argument("split classification enumerates {0,1}^n and is limited to n <= 20");
  if (tree.empty()) throw std::invalid_argument("empty tree");
  require_unit_box(inst.polyhedron);

  const std::size_t size = tree.size();
  SplitClassification cls;
  cls.true_split.assign(size, std::nullopt);
  cls.generation_set.assign(size, {});
  cls.generation.assign(size, 0);
  cls.integer_points.assign(size, 0);

  std::vector<std::vector<Mask>> points(size);
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    if (inst.polyhedron.contains(point_of(m, n))) points[0].push_back(m);
  }
  // Ids are assigned in creation order, so parents precede children.
  for (const auto& node : tree.nodes()) {
    if (node.parent) {
      for (Mask m : points[*node.parent]) {
        if (satisfies_all(node.added, point_of(m, n))) points[node.id].push_back(m);
      }
    }
    cls.integer_points[node.id] = points[node.id].size();
  }
  for (const auto& node : tree.nodes()) {
    if (node.kind == NodeKind::Cut) throw std::invalid_argument("node " + std::to_string(node.id) + " is a cut node");
    if (node.kind != NodeKind::Branch) continue;
    if (node.disjunction->kind() == DisjunctionKind::Generic) {
      throw std::invalid_argument("node " + std::to_string(node.id) + " does not branch on a split");
    }
    bool is_true = true;
    for (NodeId c : node.children) is_true = is_true && !points[c].empty();
    cls.true_split[node.id] = is_true;

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (node.disjunction->pi()[static_cast<Eigen::Index>(i)] != 0) support.push_back(i);
    }
    for (NodeId c : node.children) {
      auto& set = cls.generation_set[c];
      set = cls.generation_set[node.id];
      cls.generation[c] = cls.generation[node.id];
      if (is_true) {
        set.insert(set.end(), support.begin(), support.end());
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        ++cls.generation[c];
      }
    }
  }
  return cls;
}

std::size_t count_generation_nodes(const ProofTree& tree, const SplitClassification& cls, std::size_t m) {
  std::size_t count = 0;
  for (std::size_t id = 0; id < tree.size(); ++id) {
    if (cls.integer_points[id] > 0 && cls.generation[id] == m) ++count;
  }
  return count;
}

std::vector<NodeId> half_value_violations(const ProofTree& tree, const SplitClassification& cls, std::size_t s) {
  const std::size_t n = tree.instance().n_int();
  std::vector<NodeId> bad;
  if (n / 2 < s) return bad;
  const Rational half_n(static_cast<long>(n), 2);
  for (std::size_t id = 0; id < tree.size(); ++id) {
    if (cls.integer_points[id] == 0 || cls.generation_set[id].size() > n / 2 - s) continue;
    const LpResult lp = solve_lp(tree.relaxation(id), tree.instance().objective);
    if (!lp.optimal() || lp.value != half_n) bad.push_back(id);
  }
  return bad;
}

std::size_t count_vertices_in_split(std::size_t n, const std::vector<long>& pi, long pi0) {
  if (pi.size() != n) throw std::invalid_argument("split dimension does not match n");
  if (n > 24) throw std::invalid_argument("vertex counting is limited to n <= 24");
  const int k = static_cast<int>(n / 2);
  // Doubled: 2 <pi, x> = 2 * (sum over ones) + pi_h must equal 2 pi0 + 1.
  const long target = 2 * pi0 + 1;
  std::size_t count = 0;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    if (std::popcount(m) != k) continue;
    long ones = 0;
    for (std::size_t i = 0; i < n; ++i) ones += ((m >> i) & 1u) ? pi[i] : 0;
    for (std::size_t h = 0; h < n; ++h) {
      if (!((m >> h) & 1u) && 2 * ones + pi[h] == target) ++count;
    }
  }
  return count;
}

std::size_t count_vertices_in_split(std::size_t n, const Disjunction& split) {
  if (split.kind() == DisjunctionKind::Generic || split.n_cont() != 0 || split.dimension() != n) {
    throw std::invalid_argument("expected a pure-integer split in dimension " + std::to_string(n));
  }
  std::vector<long> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = to_long(split.pi()[static_cast<Eigen::Index>(i)], "pi");
  return count_vertices_in_split(n, pi, split.pi0().convert_to<long>());
}

Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(n - k + i);
    r /= static_cast<unsigned long>(i);
  }
  return r;
}

Integer jeroslow_optimal_vertex_count(std::size_t n) {
  return Integer(static_cast<unsigned long>(n)) * binomial(n - 1, n / 2);
}

Integer p_bound(std::size_t n, std::size_t t) {
  if (t < 1 || t > n / 2) {
    throw std::invalid_argument("t must lie in [1, floor(n/2)] (n = " + std::to_string(n) + ", t = " + std::to_string(t) + ")");
  }
  return Integer(static_cast<unsigned long>(t)) * binomial(t - 1, t / 2) * binomial(n - t, n / 2 - t / 2);
}

std::uint64_t sperner_count(const std::vector<long>& w, long target) {
  if (w.size() > 30) throw std::invalid_argument("sperner_count enumerates {0,1}^k and is limited to k <= 30");
  for (long v : w) {
    if (v == 0) throw std::invalid_argument("weights must be nonzero");
  }
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << w.size()); ++m) {
    long sum = 0;
    for (std::size_t j = 0; j < w.size(); ++j) sum += ((m >> j) & 1u) ? w[j] : 0;
    count += sum == target ? 1 : 0;
  }
  return count;
}

bool sparse_cut_is_trivial(std::size_t n, const LinearConstraint& cut) {
  if (cut.dimension() != n) throw std::invalid_argument("cut dimension does not match n");
  // Written as a list of <= inequalities; validity on H n {0,1}^n is checked
  // in closed form: the best point takes the floor(n/2) largest positive
  // coefficients.
  std::vector<std::pair<Vector, Rational>> rows;
  if (cut.relation != Relation::GreaterEqual) rows.emplace_back(cut.coeffs, cut.rhs);
  if (cut.relation != Relation::LessEqual) rows.emplace_back(-cut.coeffs, -cut.rhs);
  for (const auto& [a, b] : rows) {
    std::vector<Rational> positive;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] > 0) positive.push_back(a[i]);
    }
    std::sort(positive.begin(), positive.end(), std::greater<>());
    Rational best = 0;
    for (std::size_t i = 0; i < std::min(positive.size(), n / 2); ++i) best += positive[i];
    if (best > b) throw std::invalid_argument("cut " + to_string(a) + " <= " + to_string(b) + " is not valid on the 0/1 points of H");
  }

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    if (cut.coeffs[static_cast<Eigen::Index>(i)] != 0) support.push_back(i);
  }
  if (support.size() > 24) throw std::invalid_argument("support too large to enumerate");
  for (Mask m = 0; m < (Mask{1} << support.size()); ++m) {
    Vector x = zeros(n);
    for (std::size_t j = 0; j < support.size(); ++j) x[static_cast<Eigen::Index>(support[j])] = (m >> j) & 1u;
    if (!cut.satisfied_by(x)) return false;
  }
  return true;
}

std::optional<CuttingPlane> find_single_cg_proof(const Instance& instance, long max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be positive");
  const Polyhedron& p = instance.polyhedron;
  const OrientedRows rows = p.oriented();
  const auto m = static_cast<std::size_t>(rows.a.rows());
  for (Eigen::Index r = 0; r < rows.a.rows(); ++r) {
    if (!is_integer(rows.b[r]) || !is_integral(Vector(rows.a.row(r).transpose()))) {
      throw std::invalid_argument("one-round search needs integral constraint data");
    }
  }

  std::vector<Rational> fractions{Rational(0)};
  for (long q = 2; q <= max_denominator; ++q) {
    for (long num = 1; num < q; ++num) {
      if (std::gcd(num, q) == 1) fractions.emplace_back(num, q);
    }
  }
  double tuples = 1;
  for (std::size_t i = 0; i < m; ++i) tuples *= static_cast<double>(fractions.size());
  if (tuples > 5e7) throw BudgetExceeded("one-round search space too large (" + std::to_string(tuples) + " tuples)");

  const std::size_t n_int = p.n_int();
  std::map<std::pair<std::string, std::string>, bool> tried;
  std::vector<std::size_t> idx(m, 0);
  Vector lambda = zeros(m);
  while (true) {
    for (std::size_t i = 0; i < m; ++i) lambda[static_cast<Eigen::Index>(i)] = fractions[idx[i]];
    const Vector alpha = rows.a.transpose() * lambda;
    bool integral = nonzeros(lambda) > 0;
    for (Eigen::Index i = 0; integral && i < alpha.size(); ++i) {
      integral = static_cast<std::size_t>(i) < n_int ? is_integer(alpha[i]) : alpha[i] == 0;
    }
    if (integral) {
      const Rational beta(floor(Rational(lambda.dot(rows.b))));
      auto [it, fresh] = tried.try_emplace({to_string(alpha), to_string(beta)}, false);
      if (fresh) {
        const LpResult lp = solve_lp(p.with({less_equal(alpha, beta)}), instance.objective);
        it->second = lp.infeasible() ||
                     (instance.goal == Goal::ProveBound && lp.optimal() && lp.value <= instance.bound);
      }
      if (it->second) return generate_cg_cut(p, lambda);
    }
    std::size_t i = 0;
    while (i < m && ++idx[i] == fractions.size()) idx[i++] = 0;
    if (i == m) break;
  }
  return std::nullopt;
}

}  // namespace bcproof
