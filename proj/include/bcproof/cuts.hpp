// Cutting planes with checkable validity certificates.
//
// A cut is always stored as `<alpha, x> <= delta`. Two certificate forms
// exist:
//
//  * Chvatal-Gomory: multipliers lambda >= 0 on the oriented rows of the
//    relaxation N (see `orient`). lambda*A must equal alpha, be integral on
//    the integer coordinates and vanish on the continuous ones, and
//    floor(lambda*b) <= delta.
//
//  * Disjunctive: a disjunction D plus, for every term Q_k, multipliers on the
//    oriented rows of `N.constraints ++ Q_k`. The combination must either be
//    exactly `<alpha, x> <= r` with r <= delta, or `0 <= r` with r < 0 (the
//    term is empty inside N).

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bcproof/disjunction.hpp"
#include "bcproof/polyhedron.hpp"

namespace bcproof {

struct FarkasWitness {
  Vector multipliers;
};

struct CgCertificate {
  Vector multipliers;
};

struct DisjunctiveCertificate {
  Disjunction disjunction;
  std::vector<FarkasWitness> witnesses;  // one per term
};

struct CuttingPlane {
  LinearConstraint halfspace;  // relation is always <=
  std::variant<CgCertificate, DisjunctiveCertificate> certificate;

  bool is_cg() const { return std::holds_alternative<CgCertificate>(certificate); }
  /// Nonzeros of the coefficient vector (invariant under positive scaling).
  std::size_t sparsity() const { return halfspace.sparsity(); }
};

/// `<lambda A, x> <= floor(lambda b)` for multipliers on the oriented rows of
/// P. When the coefficients share a factor g > 1 the cut is divided by g
/// (rhs floor(lambda b / g), certificate lambda / g), which yields the
/// primitive form and can only strengthen it.
/// Throws std::invalid_argument on negative multipliers or when lambda A is
/// not integral on integer coordinates / zero on continuous ones.
CuttingPlane generate_cg_cut(const Polyhedron& p, const Vector& lambda);

/// Separates x* (which must lie outside every term of D, std::invalid_argument
/// otherwise) with the cut-generating LP
///
///   max <alpha, x*> - beta
///   s.t. alpha = w_k A_k, beta >= w_k b_k, w_k >= 0  for each nonempty term,
///        sum of all w = 1
///
/// where A_k x <= b_k is P intersected with term k. Empty terms are dropped
/// from the LP and witnessed by a Farkas certificate instead. Returns nothing
/// when the optimum is not positive. The returned cut has primitive integer
/// coefficients.
std::optional<CuttingPlane> generate_disjunctive_cut(const Polyhedron& p, const Disjunction& d,
                                                     const Vector& x_star);

struct CutCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Checks the certificate algebra exactly against the relaxation N.
CutCheck verify_cut(const Polyhedron& n, const CuttingPlane& cut);

/// Rewrites the cut so its coefficients are a primitive integer vector,
/// scaling the certificate along with it. Cuts with a zero coefficient
/// vector are returned unchanged.
CuttingPlane normalized(const CuttingPlane& cut);

/// Restriction of a cut or disjunction family to at most `limit` nonzero
/// coefficients per inequality.
struct SparsityFilter {
  std::size_t limit = 0;

  bool admits(const Disjunction& d) const { return d.sparsity() <= limit; }
  bool admits(const CuttingPlane& c) const { return c.sparsity() <= limit; }
  bool admits(const LinearConstraint& c) const { return c.sparsity() <= limit; }
};

/// Throws std::invalid_argument unless 1 <= s <= dimension.
SparsityFilter sparsity_filter(std::size_t dimension, std::size_t s);

}  // namespace bcproof
