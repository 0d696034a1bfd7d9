#include "bcproof/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bcproof {

namespace {

bool valid_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

Integer integer_from_literal(std::string_view text) {
  if (!valid_integer_literal(text)) {
    throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text));
}

}  // namespace

Integer parse_integer(std::string_view text) { return integer_from_literal(text); }

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(integer_from_literal(text));
  Integer num = integer_from_literal(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw std::invalid_argument("denominator must be unsigned in '" + std::string(text) + "'");
  }
  Integer den = integer_from_literal(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Integer num = numerator(value);
  const Integer den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer floor(const Rational& value) {
  Integer num = numerator(value);
  Integer den = denominator(value);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Integer ceil(const Rational& value) { return -floor(-value); }

bool is_integer(const Rational& value) { return denominator(value) == 1; }

bool is_integral(const Vector& values) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!is_integer(values[i])) return false;
  }
  return true;
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

std::size_t nonzeros(const Vector& values) {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] != 0) ++count;
  }
  return count;
}

PrimitiveForm primitive_form(const Vector& values) {
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] == 0) continue;
    den_lcm = lcm(den_lcm, denominator(values[i]));
    num_gcd = gcd(num_gcd, abs(Integer(numerator(values[i]))));
  }
  if (num_gcd == 0) return {values, Rational(1)};
  // values = (num_gcd / den_lcm) * primitive
  Rational scale(num_gcd, den_lcm);
  Vector primitive = values;
  for (Eigen::Index i = 0; i < primitive.size(); ++i) primitive[i] /= scale;
  return {primitive, scale};
}

Vector zeros(std::size_t size) {
  Vector v(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 0;
  return v;
}

Vector unit_vector(std::size_t size, std::size_t index) {
  Vector v = zeros(size);
  v[static_cast<Eigen::Index>(index)] = 1;
  return v;
}

Vector from_integers(const std::vector<long>& values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return v;
}

bool lex_less(const Vector& a, const Vector& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

bool equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

std::string to_string(const Vector& values) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(values[i]);
  }
  return out + ")";
}

}  // namespace bcproof
