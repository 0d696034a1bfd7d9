// Disjunctions: finite unions of polyhedral terms that cover Z^n x R^d.
//
// Three shapes are supported. A split on (pi, pi0) has the two terms
// <pi, x> <= pi0 and <pi, x> >= pi0 + 1. A variable disjunction is a split
// whose pi is a unit vector. A generic disjunction is accepted only as an
// interval partition of one integer variable, because that is the one
// k-term shape whose coverage of the integers can be checked exactly.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bcproof/polyhedron.hpp"

namespace bcproof {

enum class DisjunctionKind { Split, Variable, Generic };

std::string to_string(DisjunctionKind kind);
DisjunctionKind parse_disjunction_kind(const std::string& text);

/// Closed integer interval; a missing end is unbounded on that side.
struct Interval {
  std::optional<Integer> lower;
  std::optional<Integer> upper;
};

using Term = std::vector<LinearConstraint>;

class Disjunction {
 public:
  Disjunction() = default;

  DisjunctionKind kind() const { return kind_; }
  std::size_t n_int() const { return n_int_; }
  std::size_t n_cont() const { return n_cont_; }
  std::size_t dimension() const { return n_int_ + n_cont_; }

  /// Split and variable disjunctions only.
  const Vector& pi() const { return pi_; }
  const Integer& pi0() const { return pi0_; }
  /// Variable and generic disjunctions: the branching coordinate.
  std::size_t variable() const { return variable_; }
  /// Generic disjunctions: the partition, sorted by lower end.
  const std::vector<Interval>& intervals() const { return intervals_; }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Largest number of nonzero coefficients in any term inequality.
  std::size_t sparsity() const;

  /// True when the point lies in at least one term.
  bool contains(const Vector& point) const;

  friend bool operator==(const Disjunction& a, const Disjunction& b);

  friend Disjunction make_split(const Vector&, const Integer&, std::size_t, std::size_t);
  friend Disjunction make_interval_partition(std::size_t, std::vector<Interval>, std::size_t,
                                             std::size_t);

 private:
  DisjunctionKind kind_ = DisjunctionKind::Split;
  std::size_t n_int_ = 0;
  std::size_t n_cont_ = 0;
  Vector pi_;
  Integer pi0_;
  std::size_t variable_ = 0;
  std::vector<Interval> intervals_;
  std::vector<Term> terms_;
};

/// {<pi, x> <= pi0} u {<pi, x> >= pi0 + 1}. `pi` must be integral and zero on
/// the d continuous coordinates (std::invalid_argument otherwise). A unit
/// vector produces a Variable disjunction.
Disjunction make_split(const Vector& pi, const Integer& pi0, std::size_t n_int, std::size_t n_cont);

/// {x_i <= pi0} u {x_i >= pi0 + 1}.
Disjunction make_variable_split(std::size_t index, const Integer& pi0, std::size_t n_int,
                                std::size_t n_cont);

/// One term per interval, each bounding integer coordinate `index`. The
/// intervals must tile Z: the first is unbounded below, the last unbounded
/// above, and each starts right after its predecessor ends.
Disjunction make_interval_partition(std::size_t index, std::vector<Interval> intervals,
                                    std::size_t n_int, std::size_t n_cont);

/// The same split written with the opposite sign: (-pi, -pi0 - 1). It has the
/// same two halfspaces in swapped order.
Disjunction flipped(const Disjunction& split);

/// Canonical representative of a split: the first nonzero of pi is positive.
Disjunction canonical_split(const Disjunction& split);

std::string to_string(const Disjunction& disjunction);

}  // namespace bcproof
