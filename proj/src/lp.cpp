#include "bcproof/lp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "bcproof/errors.hpp"
#include "bcproof/linalg.hpp"

namespace bcproof {

namespace {

using StdResult = linalg::StandardFormResult<Rational>;

// Oriented rows plus equalities that pin every lineality direction.
struct PointedSystem {
  OrientedRows rows;
  Matrix a;  // rows.a followed by the pinning rows
  Vector b;
  Matrix lineality;  // columns span {x : rows.a x = 0}
};

PointedSystem make_pointed(const Polyhedron& p) {
  PointedSystem sys;
  sys.rows = p.oriented();
  const auto dim = static_cast<Eigen::Index>(p.dimension());
  const Eigen::Index m = sys.rows.a.rows();
  if (m == 0) {
    sys.lineality = Matrix::Identity(dim, dim);
  } else {
    sys.lineality = linalg::nullspace<Rational>(sys.rows.a);
  }
  const Eigen::Index extra = 2 * sys.lineality.cols();
  sys.a.resize(m + extra, dim);
  sys.b.resize(m + extra);
  if (m > 0) {
    sys.a.topRows(m) = sys.rows.a;
    sys.b.head(m) = sys.rows.b;
  }
  for (Eigen::Index k = 0; k < sys.lineality.cols(); ++k) {
    sys.a.row(m + 2 * k) = sys.lineality.col(k).transpose();
    sys.a.row(m + 2 * k + 1) = -sys.lineality.col(k).transpose();
    sys.b[m + 2 * k] = 0;
    sys.b[m + 2 * k + 1] = 0;
  }
  return sys;
}

// Folds multipliers on oriented rows back onto the original constraints.
Vector fold_multipliers(const OrientedRows& rows, const Vector& y, std::size_t constraint_count) {
  Vector out = zeros(constraint_count);
  for (std::size_t r = 0; r < rows.source.size(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    if (y[ri] == 0) continue;
    const auto src = static_cast<Eigen::Index>(rows.source[r]);
    if (rows.sign[r] > 0) out[src] += y[ri];
    else out[src] -= y[ri];
  }
  return out;
}

// Runs the dual simplex with objective `c` on the pointed system.
StdResult run_dual(const PointedSystem& sys, const Vector& c) {
  const Matrix m = sys.a.transpose();
  return linalg::minimize_standard_form<Rational>(m, c, sys.b);
}

// Infeasible result carrying a Farkas certificate, or Unbounded/Optimal
// marker when the system is feasible.
bool feasibility(const PointedSystem& sys, std::size_t constraint_count, Vector* farkas) {
  const auto dim = sys.a.cols();
  Vector zero(dim);
  zero.setConstant(Rational(0));
  const StdResult res = run_dual(sys, zero);
  if (res.status == StdResult::Status::Unbounded) {
    if (farkas != nullptr) {
      const Eigen::Index m = sys.rows.a.rows();
      *farkas = fold_multipliers(sys.rows, res.ray.head(m), constraint_count);
    }
    return false;
  }
  return true;
}

}  // namespace

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

LpResult solve_lp(const Polyhedron& polyhedron, const Vector& objective) {
  if (static_cast<std::size_t>(objective.size()) != polyhedron.dimension()) {
    throw std::invalid_argument("objective has " + std::to_string(objective.size()) +
                                " entries, polyhedron dimension is " +
                                std::to_string(polyhedron.dimension()));
  }
  const std::size_t count = polyhedron.size();
  LpResult result;
  const PointedSystem sys = make_pointed(polyhedron);

  bool orthogonal = true;
  for (Eigen::Index k = 0; k < sys.lineality.cols(); ++k) {
    if (objective.dot(sys.lineality.col(k)) != 0) {
      orthogonal = false;
      break;
    }
  }
  if (!orthogonal) {
    Vector farkas;
    if (feasibility(sys, count, &farkas)) {
      result.status = LpStatus::Unbounded;
    } else {
      result.status = LpStatus::Infeasible;
      result.farkas = std::move(farkas);
    }
    return result;
  }

  const StdResult dual = run_dual(sys, objective);
  const Eigen::Index m = sys.rows.a.rows();
  if (dual.status == StdResult::Status::Unbounded) {
    result.status = LpStatus::Infeasible;
    result.farkas = fold_multipliers(sys.rows, dual.ray.head(m), count);
    return result;
  }
  if (dual.status == StdResult::Status::Infeasible) {
    Vector farkas;
    if (feasibility(sys, count, &farkas)) {
      result.status = LpStatus::Unbounded;
    } else {
      result.status = LpStatus::Infeasible;
      result.farkas = std::move(farkas);
    }
    return result;
  }

  const auto dim = static_cast<Eigen::Index>(polyhedron.dimension());
  if (static_cast<Eigen::Index>(dual.basis.size()) != dim) {
    throw std::logic_error("dual simplex basis does not match the dimension");
  }
  Matrix tight(dim, dim);
  Vector rhs(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Eigen::Index row = dual.basis[static_cast<std::size_t>(i)];
    tight.row(i) = sys.a.row(row);
    rhs[i] = sys.b[row];
  }
  auto point = linalg::solve_unique<Rational>(tight, rhs);
  if (!point) throw std::logic_error("dual simplex basis is singular");

  result.status = LpStatus::Optimal;
  result.point = std::move(*point);
  result.value = dual.value;
  result.duals = fold_multipliers(sys.rows, dual.solution.head(m), count);
  return result;
}

bool is_feasible(const Polyhedron& polyhedron) {
  if (polyhedron.size() == 0) return true;
  return feasibility(make_pointed(polyhedron), polyhedron.size(), nullptr);
}

bool is_integral(const Vector& point, std::size_t n) {
  if (static_cast<std::size_t>(point.size()) < n) {
    throw std::invalid_argument("point shorter than the integer block");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integer(point[static_cast<Eigen::Index>(i)])) return false;
  }
  return true;
}

CertificateCheck check_lp_certificate(const Polyhedron& polyhedron, const Vector& objective,
                                      const LpResult& result) {
  const auto& cons = polyhedron.constraints();
  const auto dim = static_cast<Eigen::Index>(polyhedron.dimension());
  auto signs_ok = [&](const Vector& mult) -> bool {
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const Rational& v = mult[static_cast<Eigen::Index>(i)];
      if (cons[i].relation == Relation::LessEqual && v < 0) return false;
      if (cons[i].relation == Relation::GreaterEqual && v > 0) return false;
    }
    return true;
  };
  auto combine = [&](const Vector& mult, Vector& lhs, Rational& rhs) {
    lhs = zeros(static_cast<std::size_t>(dim));
    rhs = 0;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const Rational& v = mult[static_cast<Eigen::Index>(i)];
      if (v == 0) continue;
      lhs += v * cons[i].coeffs;
      rhs += v * cons[i].rhs;
    }
  };

  switch (result.status) {
    case LpStatus::Optimal: {
      if (static_cast<std::size_t>(result.duals.size()) != cons.size()) return {false, "dual length"};
      if (!signs_ok(result.duals)) return {false, "dual multiplier has the wrong sign"};
      if (!polyhedron.contains(result.point)) return {false, "optimal point violates a constraint"};
      if (objective.dot(result.point) != result.value) return {false, "objective value mismatch"};
      Vector lhs;
      Rational rhs;
      combine(result.duals, lhs, rhs);
      if (!equal(lhs, objective)) return {false, "dual combination differs from the objective"};
      if (rhs != result.value) return {false, "dual bound differs from the optimal value"};
      return {true, ""};
    }
    case LpStatus::Infeasible: {
      if (static_cast<std::size_t>(result.farkas.size()) != cons.size()) return {false, "farkas length"};
      if (!signs_ok(result.farkas)) return {false, "farkas multiplier has the wrong sign"};
      Vector lhs;
      Rational rhs;
      combine(result.farkas, lhs, rhs);
      if (!equal(lhs, zeros(static_cast<std::size_t>(dim)))) return {false, "farkas combination is not zero"};
      if (rhs >= 0) return {false, "farkas right-hand side is not negative"};
      return {true, ""};
    }
    case LpStatus::Unbounded:
      return {false, "unbounded results carry no certificate"};
  }
  return {false, "unknown status"};
}

bool is_bounded(const Polyhedron& polyhedron) {
  if (!is_feasible(polyhedron)) return true;
  const std::size_t dim = polyhedron.dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    const Vector e = unit_vector(dim, i);
    if (solve_lp(polyhedron, e).status == LpStatus::Unbounded) return false;
    if (solve_lp(polyhedron, Vector(-e)).status == LpStatus::Unbounded) return false;
  }
  return true;
}

std::size_t binomial_saturating(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t factor = n - k + i;
    if (result > std::numeric_limits<std::size_t>::max() / factor) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

std::vector<Vector> enumerate_vertices(const Polyhedron& polyhedron, std::size_t budget) {
  const std::size_t dim = polyhedron.dimension();
  const auto& cons = polyhedron.constraints();
  if (!is_feasible(polyhedron)) return {};
  if (!is_bounded(polyhedron)) throw UnboundedPolyhedron("vertex enumeration needs a bounded polyhedron");
  if (dim == 0) return {Vector(0)};
  if (cons.size() < dim) return {};
  const std::size_t subsets = binomial_saturating(cons.size(), dim);
  if (subsets > budget) {
    throw BudgetExceeded("vertex enumeration would try " + std::to_string(subsets) +
                         " constraint subsets (budget " + std::to_string(budget) + ")");
  }

  std::vector<Vector> vertices;
  std::vector<std::size_t> pick(dim);
  for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix a(d, d);
  Vector b(d);
  while (true) {
    for (std::size_t i = 0; i < dim; ++i) {
      a.row(static_cast<Eigen::Index>(i)) = cons[pick[i]].coeffs.transpose();
      b[static_cast<Eigen::Index>(i)] = cons[pick[i]].rhs;
    }
    if (auto x = linalg::solve_unique<Rational>(a, b); x && polyhedron.contains(*x)) {
      vertices.push_back(std::move(*x));
    }
    // next combination
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == cons.size() - dim + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(vertices.begin(), vertices.end(), lex_less);
  vertices.erase(std::unique(vertices.begin(), vertices.end(), equal), vertices.end());
  return vertices;
}

}  // namespace bcproof
