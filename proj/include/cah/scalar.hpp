#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cah {

// Fixed-width integer that throws std::overflow_error instead of wrapping.
using Integer = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<Integer>;

std::string to_string(const Integer& n);
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

// Comparing boost::rational with int recurses under C++20 rewritten operators.
inline bool is_zero(const Rational& r) { return r.numerator() == 0; }
inline bool is_one(const Rational& r) { return r.numerator() == 1 && r.denominator() == 1; }

/// Element of Z[v, v^-1]; q denotes v^2.
///
/// Stored as (exponent, coefficient) pairs sorted by exponent with no zero
/// coefficients, so equality is structural.
class LaurentScalar {
 public:
  using Term = std::pair<int, Integer>;

  LaurentScalar() = default;
  LaurentScalar(long long c);  // NOLINT(google-explicit-constructor)
  static LaurentScalar monomial(int exponent, Integer coeff = 1);
  static LaurentScalar v(int exponent = 1) { return monomial(exponent); }
  static LaurentScalar q(int exponent = 1) { return monomial(2 * exponent); }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  Integer coeff(int exponent) const;
  int min_exponent() const;
  int max_exponent() const;
  // Value at v = 1 (graded rank -> ungraded rank).
  Integer at_one() const;

  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  LaurentScalar& operator*=(const LaurentScalar& o);
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
  LaurentScalar operator-() const;
  // Multiply by v^k.
  LaurentScalar shifted(int k) const;

  friend bool operator==(const LaurentScalar&, const LaurentScalar&) = default;

  // Canonical text, e.g. "v^-2-3+v^4"; "0" for zero.
  std::string str() const;

 private:
  void add_term(int e, const Integer& c);
  std::vector<Term> terms_;
};


}  // namespace cah
