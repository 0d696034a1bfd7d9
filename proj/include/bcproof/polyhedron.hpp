// H-represented polyhedra over Z^n x R^d and the instances built on them.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bcproof/rational.hpp"

namespace bcproof {

enum class Relation { LessEqual, Equal, GreaterEqual };

std::string to_string(Relation relation);
Relation parse_relation(const std::string& text);

struct LinearConstraint {
  Vector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;

  LinearConstraint() = default;
  LinearConstraint(Vector coeffs_, Relation relation_, Rational rhs_)
      : coeffs(std::move(coeffs_)), relation(relation_), rhs(std::move(rhs_)) {}

  std::size_t dimension() const { return static_cast<std::size_t>(coeffs.size()); }
  std::size_t sparsity() const { return nonzeros(coeffs); }
  Rational lhs(const Vector& point) const { return coeffs.dot(point); }
  bool satisfied_by(const Vector& point) const;

  friend bool operator==(const LinearConstraint& a, const LinearConstraint& b) {
    return a.relation == b.relation && a.rhs == b.rhs && equal(a.coeffs, b.coeffs);
  }
};

std::string to_string(const LinearConstraint& constraint);

/// `<a, x> <= b` and `<a, x> >= b` in one call.
LinearConstraint less_equal(Vector coeffs, Rational rhs);
LinearConstraint greater_equal(Vector coeffs, Rational rhs);
LinearConstraint equal_to(Vector coeffs, Rational rhs);

/// Every constraint rewritten in `<=` form: `>=` rows are negated and
/// equalities contribute two rows (the constraint itself, then its negation).
/// Multiplier certificates (Chvatal-Gomory, Farkas) index these rows.
struct OrientedRows {
  Matrix a;
  Vector b;
  std::vector<std::size_t> source;  // originating constraint
  std::vector<int> sign;            // +1 if copied, -1 if negated
};

OrientedRows orient(const std::vector<LinearConstraint>& constraints, std::size_t dimension);
std::size_t oriented_row_count(const std::vector<LinearConstraint>& constraints);

/// Converts signed per-constraint multipliers (>= 0 on `<=`, <= 0 on `>=`,
/// free on `=`) into nonnegative multipliers on the oriented rows.
Vector oriented_multipliers(const std::vector<LinearConstraint>& constraints, const Vector& signed_multipliers);

/// {x in R^(n+d) : every constraint holds}; the first n coordinates are the
/// integer-constrained ones. Variable bounds are ordinary constraints.
class Polyhedron {
 public:
  Polyhedron() = default;
  Polyhedron(std::size_t n_int, std::size_t n_cont, std::vector<LinearConstraint> constraints = {});

  std::size_t n_int() const { return n_int_; }
  std::size_t n_cont() const { return n_cont_; }
  std::size_t dimension() const { return n_int_ + n_cont_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  void add(LinearConstraint constraint);
  Polyhedron with(const std::vector<LinearConstraint>& extra) const;

  bool contains(const Vector& point) const;
  OrientedRows oriented() const { return orient(constraints_, dimension()); }

 private:
  std::size_t n_int_ = 0;
  std::size_t n_cont_ = 0;
  std::vector<LinearConstraint> constraints_;
};

enum class Goal { ProveBound, ProveInfeasible };

std::string to_string(Goal goal);
Goal parse_goal(const std::string& text);

/// (C, c, gamma): the claim `<c, x> <= gamma` over C intersected with
/// Z^n x R^d, or the claim that this set is empty.
struct Instance {
  Polyhedron polyhedron;
  Vector objective;
  Rational bound;
  Goal goal = Goal::ProveBound;

  Instance() = default;
  Instance(Polyhedron polyhedron_, Vector objective_, Rational bound_, Goal goal_);

  std::size_t n_int() const { return polyhedron.n_int(); }
  std::size_t n_cont() const { return polyhedron.n_cont(); }
  std::size_t dimension() const { return polyhedron.dimension(); }
};

}  // namespace bcproof
