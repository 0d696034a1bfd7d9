#include "bcproof/cuts.hpp"

#include <stdexcept>

#include "bcproof/lp.hpp"

namespace bcproof {

namespace {

bool all_nonnegative(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] < 0) return false;
  }
  return true;
}

// Gcd of an integer vector's entries, 0 for the zero vector.
Integer content(const Vector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, numerator(v[i]));
  return boost::multiprecision::abs(g);
}

std::vector<LinearConstraint> joined(const Polyhedron& n, const Term& term) {
  std::vector<LinearConstraint> out = n.constraints();
  out.insert(out.end(), term.begin(), term.end());
  return out;
}

CutCheck check_cg(const Polyhedron& n, const LinearConstraint& h, const CgCertificate& cert) {
  const OrientedRows rows = n.oriented();
  if (cert.multipliers.size() != rows.a.rows()) {
    return {false, "cg multiplier count " + std::to_string(cert.multipliers.size()) + " != " +
                       std::to_string(rows.a.rows()) + " oriented rows"};
  }
  if (!all_nonnegative(cert.multipliers)) return {false, "cg multiplier is negative"};
  const Vector combo = rows.a.transpose() * cert.multipliers;
  if (!equal(combo, h.coeffs)) return {false, "cg combination differs from the cut coefficients"};
  for (std::size_t i = 0; i < n.dimension(); ++i) {
    const Rational& v = combo[static_cast<Eigen::Index>(i)];
    if (i < n.n_int() && !is_integer(v)) return {false, "cg coefficient on x" + std::to_string(i + 1) + " is fractional"};
    if (i >= n.n_int() && v != 0) return {false, "cg coefficient on continuous x" + std::to_string(i + 1) + " is nonzero"};
  }
  const Integer bound = floor(Rational(cert.multipliers.dot(rows.b)));
  if (Rational(bound) > h.rhs) {
    return {false, "cut rhs " + to_string(h.rhs) + " is below the rounded bound " + to_string(bound)};
  }
  return {true, ""};
}

CutCheck check_disjunctive(const Polyhedron& n, const LinearConstraint& h,
                           const DisjunctiveCertificate& cert) {
  const Disjunction& d = cert.disjunction;
  if (d.dimension() != n.dimension() || d.n_int() != n.n_int()) {
    return {false, "disjunction dimension does not match the relaxation"};
  }
  if (cert.witnesses.size() != d.term_count()) {
    return {false, "expected " + std::to_string(d.term_count()) + " witnesses, got " +
                       std::to_string(cert.witnesses.size())};
  }
  const Vector zero = zeros(n.dimension());
  for (std::size_t k = 0; k < d.term_count(); ++k) {
    const std::string tag = "term " + std::to_string(k + 1) + ": ";
    const OrientedRows rows = orient(joined(n, d.terms()[k]), n.dimension());
    const Vector& mu = cert.witnesses[k].multipliers;
    if (mu.size() != rows.a.rows()) return {false, tag + "witness length mismatch"};
    if (!all_nonnegative(mu)) return {false, tag + "witness multiplier is negative"};
    const Vector combo = rows.a.transpose() * mu;
    const Rational rhs = mu.dot(rows.b);
    if (equal(combo, h.coeffs) && rhs <= h.rhs) continue;
    if (equal(combo, zero) && rhs < 0) continue;
    return {false, tag + "witness neither implies the cut nor proves the term empty"};
  }
  return {true, ""};
}

}  // namespace

CuttingPlane generate_cg_cut(const Polyhedron& p, const Vector& lambda) {
  const OrientedRows rows = p.oriented();
  if (lambda.size() != rows.a.rows()) {
    throw std::invalid_argument("expected " + std::to_string(rows.a.rows()) +
                                " multipliers (one per oriented row), got " + std::to_string(lambda.size()));
  }
  if (!all_nonnegative(lambda)) throw std::invalid_argument("cg multipliers must be nonnegative");
  Vector alpha = rows.a.transpose() * lambda;
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    const Rational& v = alpha[static_cast<Eigen::Index>(i)];
    if (i < p.n_int() && !is_integer(v)) {
      throw std::invalid_argument("combined coefficient of x" + std::to_string(i + 1) + " is " + to_string(v));
    }
    if (i >= p.n_int() && v != 0) {
      throw std::invalid_argument("combined coefficient of continuous x" + std::to_string(i + 1) + " is nonzero");
    }
  }
  Vector mult = lambda;
  Rational rhs_raw = lambda.dot(rows.b);
  const Integer g = content(alpha);
  if (g > 1) {
    const Rational inv(Integer(1), g);
    alpha *= inv;
    mult *= inv;
    rhs_raw *= inv;
  }
  return {less_equal(std::move(alpha), Rational(floor(rhs_raw))), CgCertificate{std::move(mult)}};
}

std::optional<CuttingPlane> generate_disjunctive_cut(const Polyhedron& p, const Disjunction& d,
                                                     const Vector& x_star) {
  const std::size_t dim = p.dimension();
  if (d.dimension() != dim) throw std::invalid_argument("disjunction dimension does not match the polyhedron");
  if (static_cast<std::size_t>(x_star.size()) != dim) throw std::invalid_argument("point dimension mismatch");
  if (d.contains(x_star)) throw std::invalid_argument("point to separate lies in a disjunction term");

  const std::size_t terms = d.term_count();
  std::vector<std::vector<LinearConstraint>> systems(terms);
  std::vector<OrientedRows> rows(terms);
  std::vector<std::optional<Vector>> farkas(terms);
  std::vector<Eigen::Index> offset(terms, -1);
  Eigen::Index nvars = static_cast<Eigen::Index>(dim) + 1;
  for (std::size_t k = 0; k < terms; ++k) {
    systems[k] = joined(p, d.terms()[k]);
    const Polyhedron term_poly(p.n_int(), p.n_cont(), systems[k]);
    const LpResult probe = solve_lp(term_poly, zeros(dim));
    if (probe.infeasible()) {
      farkas[k] = oriented_multipliers(systems[k], probe.farkas);
      continue;
    }
    rows[k] = orient(systems[k], dim);
    offset[k] = nvars;
    nvars += rows[k].a.rows();
  }

  const auto d_idx = static_cast<Eigen::Index>(dim);
  std::vector<FarkasWitness> witnesses(terms);
  Vector alpha = zeros(dim);
  Rational beta = -1;

  if (nvars > d_idx + 1) {
    // alpha occupies [0, dim), beta is at dim, then each term's w_k.
    Polyhedron cglp(0, static_cast<std::size_t>(nvars));
    const auto nv = static_cast<std::size_t>(nvars);
    Vector normalization = zeros(nv);
    for (std::size_t k = 0; k < terms; ++k) {
      if (offset[k] < 0) continue;
      const Matrix& a = rows[k].a;
      for (Eigen::Index j = 0; j < d_idx; ++j) {
        Vector row = zeros(nv);
        row[j] = 1;
        for (Eigen::Index r = 0; r < a.rows(); ++r) row[offset[k] + r] = -a(r, j);
        cglp.add(equal_to(std::move(row), 0));
      }
      Vector row = zeros(nv);
      row[d_idx] = 1;
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        row[offset[k] + r] = -rows[k].b[r];
        normalization[offset[k] + r] = 1;
        cglp.add(greater_equal(unit_vector(nv, static_cast<std::size_t>(offset[k] + r)), 0));
      }
      cglp.add(greater_equal(std::move(row), 0));
    }
    cglp.add(equal_to(std::move(normalization), 1));

    Vector objective = zeros(nv);
    objective.head(d_idx) = x_star;
    objective[d_idx] = -1;
    const LpResult res = solve_lp(cglp, objective);
    if (!res.optimal() || res.value <= 0) return std::nullopt;

    alpha = res.point.head(d_idx);
    beta = res.point[d_idx];
    for (std::size_t k = 0; k < terms; ++k) {
      if (offset[k] < 0) continue;
      witnesses[k].multipliers = res.point.segment(offset[k], rows[k].a.rows());
    }
  }
  for (std::size_t k = 0; k < terms; ++k) {
    if (farkas[k]) witnesses[k].multipliers = *farkas[k];
  }

  CuttingPlane cut{less_equal(std::move(alpha), std::move(beta)),
                   DisjunctiveCertificate{d, std::move(witnesses)}};
  return normalized(cut);
}

CutCheck verify_cut(const Polyhedron& n, const CuttingPlane& cut) {
  const LinearConstraint& h = cut.halfspace;
  if (h.relation != Relation::LessEqual) return {false, "cut must be stored as a <= inequality"};
  if (h.dimension() != n.dimension()) return {false, "cut dimension does not match the relaxation"};
  if (const auto* cg = std::get_if<CgCertificate>(&cut.certificate)) return check_cg(n, h, *cg);
  return check_disjunctive(n, h, std::get<DisjunctiveCertificate>(cut.certificate));
}

CuttingPlane normalized(const CuttingPlane& cut) {
  const PrimitiveForm pf = primitive_form(cut.halfspace.coeffs);
  if (pf.scale == 1 && equal(pf.primitive, cut.halfspace.coeffs)) return cut;
  if (nonzeros(cut.halfspace.coeffs) == 0) return cut;
  const Rational inv = 1 / pf.scale;
  CuttingPlane out = cut;
  out.halfspace.coeffs = pf.primitive;
  out.halfspace.rhs = cut.halfspace.rhs * inv;
  if (auto* cg = std::get_if<CgCertificate>(&out.certificate)) {
    cg->multipliers *= inv;
  } else {
    for (auto& w : std::get<DisjunctiveCertificate>(out.certificate).witnesses) {
      if (w.multipliers.size() > 0) w.multipliers *= inv;
    }
  }
  return out;
}

SparsityFilter sparsity_filter(std::size_t dimension, std::size_t s) {
  if (s < 1 || s > dimension) {
    throw std::invalid_argument("sparsity limit " + std::to_string(s) + " outside [1, " +
                                std::to_string(dimension) + "]");
  }
  return SparsityFilter{s};
}

}  // namespace bcproof
