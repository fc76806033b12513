#pragma once

#include "cah/affweyl.hpp"
#include "cah/scalar.hpp"

#include <map>
#include <utility>

namespace cah {

// Σ c_λ e^λ in Z[v^±][X].
using CharacterElement = std::map<Weight, LaurentScalar, WeightLess>;

void add_to(CharacterElement& a, const Weight& lambda, const LaurentScalar& c);
CharacterElement character_act(const RootDatum& d, FiniteWeylElement w, const CharacterElement& f);

// (e^μ − e^{sμ}) / (1 − e^{−α_s}) by the telescoping sum; s is a finite
// simple index (0-based).
CharacterElement demazure_lusztig_kernel(const RootDatum& d, const Weight& mu, int s);

struct HeckeKeyLess {
  bool operator()(const std::pair<Weight, FiniteWeylElement>& a,
                  const std::pair<Weight, FiniteWeylElement>& b) const {
    if (WeightLess{}(a.first, b.first)) return true;
    if (WeightLess{}(b.first, a.first)) return false;
    return a.second < b.second;
  }
};

// Σ c·e^λ T_w in the Bernstein basis. Weyl ids are enumerated in
// (length, lex word) order, so iteration order is the canonical output order.
class HeckeElement {
 public:
  using Key = std::pair<Weight, FiniteWeylElement>;
  using Terms = std::map<Key, LaurentScalar, HeckeKeyLess>;

  HeckeElement() = default;
  static HeckeElement scalar(const RootDatum& d, const LaurentScalar& c);
  static HeckeElement basis(const Weight& lambda, FiniteWeylElement w, const LaurentScalar& c = 1);
  static HeckeElement theta(const Weight& lambda) { return basis(lambda, {}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentScalar coeff(const Weight& lambda, FiniteWeylElement w) const;
  void add(const Weight& lambda, FiniteWeylElement w, const LaurentScalar& c);

  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  HeckeElement scaled(const LaurentScalar& c) const;
  HeckeElement operator-() const { return scaled(-1); }
  bool operator==(const HeckeElement& o) const;

 private:
  Terms terms_;
};

// T_s for a finite simple index s (0-based).
HeckeElement hecke_Ts(const RootDatum& d, int s);
HeckeElement hecke_Tw(const RootDatum& d, FiniteWeylElement w);
HeckeElement hecke_inverse_Ts(const RootDatum& d, int s);
HeckeElement hecke_multiply(const RootDatum& d, const HeckeElement& a, const HeckeElement& b);
// T_s·h.
HeckeElement hecke_left_Ts(const RootDatum& d, int s, const HeckeElement& h);
// Rewrites Σ c T_w e^λ (given as (λ, w) ↦ c pairs) into the Bernstein basis.
HeckeElement from_T_first(const RootDatum& d, const HeckeElement::Terms& t_first);
// Inverse of from_T_first.
HeckeElement::Terms to_T_first(const RootDatum& d, const HeckeElement& h);

// Sign representation used to form M_asp = H ⊗_{H_fin} sgn.
enum class SignConvention { sign, trivial };

// Coordinates in the basis e^λ ⊗ sgn.
using AspElement = CharacterElement;

AspElement asp_generator(const RootDatum& d);
AspElement asp_act(const RootDatum& d, const HeckeElement& h, const AspElement& m,
                   SignConvention conv = SignConvention::sign);

// Ts(i) ↦ v⁻¹T_{s_i} (finite i), Theta(λ) ↦ e^λ, Omega(t_λ w) ↦ e^λ·T̂_{w⁻¹}⁻¹,
// Ts(0) ↦ e^θ·T̂_{s_θ}⁻¹ where T̂_w = v^{−ℓ(w)}T_w.
HeckeElement braid_image(const RootDatum& d, const BraidWord& w);

}  // namespace cah
