// Exact scalar and dense vector types shared by every module.
//
// All arithmetic is carried out over GMP rationals; nothing in this library
// ever rounds. Dense vectors and matrices are plain Eigen containers with a
// rational scalar, so the usual Eigen expressions (dot, row/col blocks,
// products) work unchanged.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

namespace bcproof {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<Rational>;
using Matrix = MatrixX<Rational>;

/// Parses "p", "-p" or "p/q" (q != 0). Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Canonical "p/q" form, with "/q" omitted when q == 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);
bool is_integer(const Rational& value);
bool is_integral(const Vector& values);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Number of nonzero entries.
std::size_t nonzeros(const Vector& values);

/// A vector written as `scale * primitive` where `primitive` is an integer
/// vector whose entries have gcd 1 and `scale > 0`. The zero vector maps to
/// itself with scale 1.
struct PrimitiveForm {
  Vector primitive;
  Rational scale;
};
PrimitiveForm primitive_form(const Vector& values);

Vector zeros(std::size_t size);
Vector unit_vector(std::size_t size, std::size_t index);
Vector from_integers(const std::vector<long>& values);

/// Lexicographic comparison, used wherever a deterministic order is needed.
bool lex_less(const Vector& a, const Vector& b);
bool equal(const Vector& a, const Vector& b);

std::string to_string(const Vector& values);

}  // namespace bcproof
