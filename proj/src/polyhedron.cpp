#include "bcproof/polyhedron.hpp"

#include <stdexcept>

namespace bcproof {

std::string to_string(Relation relation) {
  switch (relation) {
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

Relation parse_relation(const std::string& text) {
  if (text == "<=") return Relation::LessEqual;
  if (text == "=" || text == "==") return Relation::Equal;
  if (text == ">=") return Relation::GreaterEqual;
  throw std::invalid_argument("unknown relation '" + text + "'");
}

bool LinearConstraint::satisfied_by(const Vector& point) const {
  const Rational value = lhs(point);
  switch (relation) {
    case Relation::LessEqual: return value <= rhs;
    case Relation::Equal: return value == rhs;
    case Relation::GreaterEqual: return value >= rhs;
  }
  return false;
}

std::string to_string(const LinearConstraint& constraint) {
  std::string out;
  bool first = true;
  for (Eigen::Index i = 0; i < constraint.coeffs.size(); ++i) {
    const Rational& a = constraint.coeffs[i];
    if (a == 0) continue;
    if (!first) out += a < 0 ? " - " : " + ";
    else if (a < 0) out += "-";
    const Rational mag = abs(a);
    if (mag != 1) out += to_string(mag) + "*";
    out += "x" + std::to_string(i + 1);
    first = false;
  }
  if (first) out = "0";
  return out + " " + to_string(constraint.relation) + " " + to_string(constraint.rhs);
}

LinearConstraint less_equal(Vector coeffs, Rational rhs) {
  return {std::move(coeffs), Relation::LessEqual, std::move(rhs)};
}

LinearConstraint greater_equal(Vector coeffs, Rational rhs) {
  return {std::move(coeffs), Relation::GreaterEqual, std::move(rhs)};
}

LinearConstraint equal_to(Vector coeffs, Rational rhs) {
  return {std::move(coeffs), Relation::Equal, std::move(rhs)};
}

std::size_t oriented_row_count(const std::vector<LinearConstraint>& constraints) {
  std::size_t rows = 0;
  for (const auto& c : constraints) rows += c.relation == Relation::Equal ? 2 : 1;
  return rows;
}

OrientedRows orient(const std::vector<LinearConstraint>& constraints, std::size_t dimension) {
  const auto rows = static_cast<Eigen::Index>(oriented_row_count(constraints));
  const auto dim = static_cast<Eigen::Index>(dimension);
  OrientedRows out;
  out.a.resize(rows, dim);
  out.b.resize(rows);
  Eigen::Index r = 0;
  auto push = [&](const LinearConstraint& c, std::size_t index, int sign) {
    if (sign > 0) {
      out.a.row(r) = c.coeffs.transpose();
      out.b[r] = c.rhs;
    } else {
      out.a.row(r) = -c.coeffs.transpose();
      out.b[r] = -c.rhs;
    }
    out.source.push_back(index);
    out.sign.push_back(sign);
    ++r;
  };
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.dimension() != dimension) {
      throw std::invalid_argument("constraint has " + std::to_string(c.dimension()) +
                                  " coefficients, expected " + std::to_string(dimension));
    }
    switch (c.relation) {
      case Relation::LessEqual: push(c, i, +1); break;
      case Relation::GreaterEqual: push(c, i, -1); break;
      case Relation::Equal:
        push(c, i, +1);
        push(c, i, -1);
        break;
    }
  }
  return out;
}

Vector oriented_multipliers(const std::vector<LinearConstraint>& constraints, const Vector& signed_multipliers) {
  if (static_cast<std::size_t>(signed_multipliers.size()) != constraints.size()) {
    throw std::invalid_argument("one multiplier per constraint expected");
  }
  Vector out = zeros(oriented_row_count(constraints));
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Rational& v = signed_multipliers[static_cast<Eigen::Index>(i)];
    switch (constraints[i].relation) {
      case Relation::LessEqual:
        if (v < 0) throw std::invalid_argument("negative multiplier on a <= constraint");
        out[r++] = v;
        break;
      case Relation::GreaterEqual:
        if (v > 0) throw std::invalid_argument("positive multiplier on a >= constraint");
        out[r++] = -v;
        break;
      case Relation::Equal:
        if (v >= 0) out[r] = v;
        else out[r + 1] = -v;
        r += 2;
        break;
    }
  }
  return out;
}

Polyhedron::Polyhedron(std::size_t n_int, std::size_t n_cont, std::vector<LinearConstraint> constraints)
    : n_int_(n_int), n_cont_(n_cont) {
  for (auto& c : constraints) add(std::move(c));
}

void Polyhedron::add(LinearConstraint constraint) {
  if (constraint.dimension() != dimension()) {
    throw std::invalid_argument("constraint dimension " + std::to_string(constraint.dimension()) +
                                " does not match ambient dimension " + std::to_string(dimension()));
  }
  constraints_.push_back(std::move(constraint));
}

Polyhedron Polyhedron::with(const std::vector<LinearConstraint>& extra) const {
  Polyhedron out = *this;
  for (const auto& c : extra) out.add(c);
  return out;
}

bool Polyhedron::contains(const Vector& point) const {
  if (static_cast<std::size_t>(point.size()) != dimension()) return false;
  for (const auto& c : constraints_) {
    if (!c.satisfied_by(point)) return false;
  }
  return true;
}

std::string to_string(Goal goal) {
  return goal == Goal::ProveBound ? "prove-bound" : "prove-infeasible";
}

Goal parse_goal(const std::string& text) {
  if (text == "prove-bound") return Goal::ProveBound;
  if (text == "prove-infeasible") return Goal::ProveInfeasible;
  throw std::invalid_argument("unknown goal '" + text + "'");
}

Instance::Instance(Polyhedron polyhedron_, Vector objective_, Rational bound_, Goal goal_)
    : polyhedron(std::move(polyhedron_)),
      objective(std::move(objective_)),
      bound(std::move(bound_)),
      goal(goal_) {
  if (static_cast<std::size_t>(objective.size()) != polyhedron.dimension()) {
    throw std::invalid_argument("objective length does not match the polyhedron dimension");
  }
}

}  // namespace bcproof
