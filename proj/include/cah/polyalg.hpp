#pragma once

#include "cah/affweyl.hpp"
#include "cah/scalar.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cah {

// Element of Q[x_1, x_2, u]; x_i is the simple coroot α̌_i (a linear
// function on h*), u the deformation coordinate. Every generator has
// degree 2. Rank-1 data leave x_2 unused.
class Polynomial {
 public:
  static constexpr int kVars = 3;
  static constexpr int kU = 2;

  // Packed exponents: total degree in bits 24-31, then u, x_2, x_1 in 8-bit
  // fields, so integer order is graded-lex with x_1 < x_2 < u.
  using Monomial = std::uint32_t;
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(long long c);                 // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& c);           // NOLINT(google-explicit-constructor)
  static Polynomial variable(int j);
  static Polynomial x(int i) { return variable(i); }
  static Polynomial u() { return variable(kU); }
  static Polynomial term(Monomial m, const Rational& c);

  static Monomial make_monomial(const std::array<int, kVars>& e);
  static int exponent(Monomial m, int j) { return static_cast<int>((m >> (8 * j)) & 0xffu); }
  static int total(Monomial m) { return static_cast<int>(m >> 24); }
  static Monomial multiply(Monomial a, Monomial b) {
    return a + b;  // fields never overflow at the degrees used here
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  Rational constant_term() const;
  Rational coeff(Monomial m) const;
  // Internal degree (twice the polynomial degree); -1 for zero.
  int degree() const;
  bool is_homogeneous() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Algebra homomorphism sending variable j to images[j].
  Polynomial substitute(const std::array<Polynomial, kVars>& images) const;
  // Sets u = 0.
  Polynomial at_u_zero() const;
  Polynomial pow(int k) const;

  std::string str() const;

 private:
  void add_term(Monomial m, const Rational& c);
  std::vector<Term> terms_;
};

// Exact quotient f / ℓ by a nonzero linear form; throws if not divisible.
Polynomial divide_by_linear(const Polynomial& f, const Polynomial& linear);

// φ_g for g = t_λ w: w acts on h by the natural action, t_λ sends x to
// x + <x, λ>u, and u is fixed. g ↦ φ_g is a homomorphism.
std::array<Polynomial, Polynomial::kVars> action_images(const RootDatum& d, const AffineWeylElement& g);
Polynomial act(const RootDatum& d, const AffineWeylElement& g, const Polynomial& f);

// α_i for an affine simple index: x_{i} for finite nodes (1-based), u + θ̌ for
// affine nodes.
Polynomial alpha_elt(const RootDatum& d, int i);
Polynomial reflect(const RootDatum& d, int i, const Polynomial& f);
Polynomial demazure(const RootDatum& d, const Polynomial& f, int i);
// f = P + Q·α_i with P, Q invariant under s_i.
std::pair<Polynomial, Polynomial> invariant_split(const RootDatum& d, const Polynomial& f, int i);
bool is_invariant(const RootDatum& d, const Polynomial& f, int i);

// Generators of A^{W_fin} ∩ Q[x]: power sums over the orbit of a fundamental
// coweight at the fundamental degrees (one orbit per component for A1xA1).
std::vector<Polynomial> finite_invariants(const RootDatum& d);

// Linear form Σ c_k x_k for a coroot given in the simple-coroot basis.
Polynomial coroot_form(const Weight& coroot);

}  // namespace cah

namespace Eigen {

template <>
struct NumTraits<cah::Polynomial> : GenericNumTraits<cah::Polynomial> {
  using Real = cah::Polynomial;
  using NonInteger = cah::Polynomial;
  using Nested = cah::Polynomial;
  using Literal = cah::Polynomial;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace cah {

using PolyMatrix = Eigen::Matrix<Polynomial, Eigen::Dynamic, Eigen::Dynamic>;

PolyMatrix poly_zero(int rows, int cols);
PolyMatrix poly_identity(int n);
// Product skipping zero entries.
PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b);
bool poly_equal(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_at_u_zero(const PolyMatrix& a);

}  // namespace cah
