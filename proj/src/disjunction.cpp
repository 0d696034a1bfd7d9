#include "bcproof/disjunction.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcproof {

std::string to_string(DisjunctionKind kind) {
  switch (kind) {
    case DisjunctionKind::Split: return "split";
    case DisjunctionKind::Variable: return "variable";
    case DisjunctionKind::Generic: return "generic";
  }
  return "?";
}

DisjunctionKind parse_disjunction_kind(const std::string& text) {
  if (text == "split") return DisjunctionKind::Split;
  if (text == "variable") return DisjunctionKind::Variable;
  if (text == "generic") return DisjunctionKind::Generic;
  throw std::invalid_argument("unknown disjunction kind '" + text + "'");
}

std::size_t Disjunction::sparsity() const {
  std::size_t s = 0;
  for (const auto& term : terms_) {
    for (const auto& c : term) s = std::max(s, c.sparsity());
  }
  return s;
}

bool Disjunction::contains(const Vector& point) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& term) {
    return std::all_of(term.begin(), term.end(),
                       [&](const LinearConstraint& c) { return c.satisfied_by(point); });
  });
}

bool operator==(const Disjunction& a, const Disjunction& b) {
  if (a.kind_ != b.kind_ || a.n_int_ != b.n_int_ || a.n_cont_ != b.n_cont_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k] != b.terms_[k]) return false;
  }
  return true;
}

namespace {

bool is_unit(const Vector& v, std::size_t* index) {
  std::size_t found = 0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] != 1) return false;
    found = static_cast<std::size_t>(i);
    ++count;
  }
  if (count != 1) return false;
  *index = found;
  return true;
}

}  // namespace

Disjunction make_split(const Vector& pi, const Integer& pi0, std::size_t n_int, std::size_t n_cont) {
  const std::size_t dim = n_int + n_cont;
  if (static_cast<std::size_t>(pi.size()) != dim) {
    throw std::invalid_argument("split vector has " + std::to_string(pi.size()) +
                                " entries, expected " + std::to_string(dim));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const Rational& v = pi[static_cast<Eigen::Index>(i)];
    if (!is_integer(v)) throw std::invalid_argument("split vector must be integral");
    if (i >= n_int && v != 0) {
      throw std::invalid_argument("split vector touches continuous coordinate " + std::to_string(i + 1));
    }
  }
  Disjunction d;
  d.n_int_ = n_int;
  d.n_cont_ = n_cont;
  d.pi_ = pi;
  d.pi0_ = pi0;
  d.kind_ = is_unit(pi, &d.variable_) ? DisjunctionKind::Variable : DisjunctionKind::Split;
  d.terms_.push_back({less_equal(pi, Rational(pi0))});
  d.terms_.push_back({greater_equal(pi, Rational(pi0 + 1))});
  return d;
}

Disjunction make_variable_split(std::size_t index, const Integer& pi0, std::size_t n_int,
                                std::size_t n_cont) {
  if (index >= n_int) throw std::invalid_argument("variable disjunction on a non-integer coordinate");
  return make_split(unit_vector(n_int + n_cont, index), pi0, n_int, n_cont);
}

Disjunction make_interval_partition(std::size_t index, std::vector<Interval> intervals,
                                    std::size_t n_int, std::size_t n_cont) {
  if (index >= n_int) throw std::invalid_argument("interval partition on a non-integer coordinate");
  if (intervals.empty()) throw std::invalid_argument("interval partition needs at least one interval");
  for (const auto& iv : intervals) {
    if (iv.lower && iv.upper && *iv.lower > *iv.upper) {
      throw std::invalid_argument("empty interval in partition");
    }
  }
  std::stable_sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    if (!a.lower) return b.lower.has_value();
    if (!b.lower) return false;
    return *a.lower < *b.lower;
  });
  if (intervals.front().lower) throw std::invalid_argument("partition does not cover the integers below");
  if (intervals.back().upper) throw std::invalid_argument("partition does not cover the integers above");
  for (std::size_t k = 0; k + 1 < intervals.size(); ++k) {
    const auto& cur = intervals[k];
    const auto& next = intervals[k + 1];
    if (!cur.upper || !next.lower || *cur.upper + 1 != *next.lower) {
      throw std::invalid_argument("partition intervals " + std::to_string(k + 1) + " and " +
                                  std::to_string(k + 2) + " are not adjacent");
    }
  }

  Disjunction d;
  d.kind_ = DisjunctionKind::Generic;
  d.n_int_ = n_int;
  d.n_cont_ = n_cont;
  d.variable_ = index;
  const Vector e = unit_vector(n_int + n_cont, index);
  for (const auto& iv : intervals) {
    Term term;
    if (iv.lower) term.push_back(greater_equal(e, Rational(*iv.lower)));
    if (iv.upper) term.push_back(less_equal(e, Rational(*iv.upper)));
    d.terms_.push_back(std::move(term));
  }
  d.intervals_ = std::move(intervals);
  return d;
}

Disjunction flipped(const Disjunction& split) {
  if (split.kind() == DisjunctionKind::Generic) throw std::invalid_argument("only splits can be flipped");
  return make_split(Vector(-split.pi()), Integer(-split.pi0() - 1), split.n_int(), split.n_cont());
}

Disjunction canonical_split(const Disjunction& split) {
  if (split.kind() == DisjunctionKind::Generic) throw std::invalid_argument("only splits have a canonical sign");
  for (Eigen::Index i = 0; i < split.pi().size(); ++i) {
    if (split.pi()[i] == 0) continue;
    return split.pi()[i] > 0 ? split : flipped(split);
  }
  return split;
}

std::string to_string(const Disjunction& disjunction) {
  std::string out;
  for (std::size_t k = 0; k < disjunction.terms().size(); ++k) {
    if (k > 0) out += " OR ";
    out += "{";
    const auto& term = disjunction.terms()[k];
    for (std::size_t j = 0; j < term.size(); ++j) {
      if (j > 0) out += ", ";
      out += to_string(term[j]);
    }
    out += "}";
  }
  return out;
}

}  // namespace bcproof
