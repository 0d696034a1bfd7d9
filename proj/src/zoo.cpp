#include "bcproof/zoo.hpp"

#include <stdexcept>

namespace bcproof {

namespace {

void require_odd(std::size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("n must be odd and at least 3, got " + std::to_string(n));
  }
}

void require_height(long h) {
  if (h < 1) throw std::invalid_argument("h must be at least 1, got " + std::to_string(h));
}

Vector ones(std::size_t n) {
  Vector v = zeros(n);
  v.setConstant(Rational(1));
  return v;
}

Vector cross(const Vector& a, const Vector& b) {
  Vector c(3);
  c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
  return c;
}

}  // namespace

Polyhedron jeroslow_polytope(std::size_t n) {
  Polyhedron p(n, 0);
  p.add(less_equal(Vector(2 * ones(n)), Rational(static_cast<long>(n))));
  for (std::size_t i = 0; i < n; ++i) {
    p.add(greater_equal(unit_vector(n, i), 0));
    p.add(less_equal(unit_vector(n, i), 1));
  }
  return p;
}

Instance jeroslow_inequality(std::size_t n) {
  require_odd(n);
  return Instance(jeroslow_polytope(n), ones(n), Rational(static_cast<long>(n / 2)), Goal::ProveBound);
}

Instance jeroslow_equality(std::size_t n) {
  require_odd(n);
  Polyhedron p(n, 0);
  p.add(equal_to(Vector(2 * ones(n)), Rational(static_cast<long>(n))));
  for (std::size_t i = 0; i < n; ++i) {
    p.add(greater_equal(unit_vector(n, i), 0));
    p.add(less_equal(unit_vector(n, i), 1));
  }
  return Instance(std::move(p), zeros(n), Rational(0), Goal::ProveInfeasible);
}

Instance jeroslow_partial_objective(std::size_t n) {
  require_odd(n);
  Vector c = zeros(n);
  c.head(static_cast<Eigen::Index>((n + 1) / 2)).setConstant(Rational(1));
  return Instance(jeroslow_polytope(n), std::move(c), Rational(static_cast<long>(n / 2)),
                  Goal::ProveBound);
}

std::vector<Vector> cks_vertices(long h) {
  require_height(h);
  Vector apex(3);
  apex << Rational(1, 2), Rational(1, 2), Rational(h);
  return {from_integers({0, 0, 0}), from_integers({2, 0, 0}), from_integers({0, 2, 0}), apex};
}

std::vector<LinearConstraint> hull_facets_3d(const std::vector<Vector>& points) {
  std::vector<LinearConstraint> facets;
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        Vector normal = cross(Vector(points[j] - points[i]), Vector(points[k] - points[i]));
        if (nonzeros(normal) == 0) continue;
        normal = primitive_form(normal).primitive;
        const Rational level = normal.dot(points[i]);
        bool below = false;
        bool above = false;
        for (const auto& q : points) {
          const Rational v = normal.dot(q);
          below = below || v < level;
          above = above || v > level;
        }
        if (below && above) continue;
        LinearConstraint facet = above ? less_equal(Vector(-normal), -level) : less_equal(normal, level);
        bool seen = false;
        for (const auto& f : facets) seen = seen || f == facet;
        if (!seen) facets.push_back(std::move(facet));
      }
    }
  }
  return facets;
}

Instance cks_tetrahedron(long h, bool x3_integer) {
  const auto facets = hull_facets_3d(cks_vertices(h));
  if (facets.size() != 4) throw std::logic_error("tetrahedron must have four facets");
  Polyhedron p(x3_integer ? 3 : 2, x3_integer ? 0 : 1, facets);
  return Instance(std::move(p), from_integers({0, 0, 1}), Rational(0), Goal::ProveBound);
}

Instance triangle_T(long h) {
  require_height(h);
  Polyhedron p(2, 0);
  p.add(greater_equal(from_integers({0, 1}), 0));
  p.add(greater_equal(from_integers({2 * h, -1}), 0));
  p.add(less_equal(from_integers({2 * h, 1}), Rational(2 * h)));
  return Instance(std::move(p), from_integers({0, 1}), Rational(0), Goal::ProveBound);
}

RandomLp random_bounded_lp(std::mt19937_64& rng, std::size_t max_dim) {
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::uniform_int_distribution<std::size_t> dim_dist(1, max_dim);
  const std::size_t dim = dim_dist(rng);
  std::uniform_int_distribution<std::size_t> int_dist(0, dim);
  const std::size_t n_int = int_dist(rng);
  Polyhedron p(n_int, dim - n_int);
  for (std::size_t i = 0; i < dim; ++i) {
    const long lo = coeff(rng);
    const long width = std::uniform_int_distribution<long>(0, 5)(rng);
    p.add(greater_equal(unit_vector(dim, i), lo));
    p.add(less_equal(unit_vector(dim, i), lo + width));
  }
  const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  for (std::size_t k = 0; k < extra; ++k) {
    Vector a = zeros(dim);
    for (std::size_t i = 0; i < dim; ++i) a[static_cast<Eigen::Index>(i)] = coeff(rng);
    p.add(less_equal(std::move(a), coeff(rng)));
  }
  Vector c = zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) c[static_cast<Eigen::Index>(i)] = coeff(rng);
  return {std::move(p), std::move(c)};
}

std::vector<RandomLp> random_lp_corpus(std::uint64_t seed, std::size_t count, std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  std::vector<RandomLp> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_bounded_lp(rng, max_dim));
  return out;
}

}  // namespace bcproof
