#pragma once

#include "cah/rootdata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cah {

// t_λ·w in the extended affine Weyl group W ⋉ X.
struct AffineWeylElement {
  Weight translation;
  FiniteWeylElement finite;
  bool operator==(const AffineWeylElement& o) const {
    return same_weight(translation, o.translation) && finite == o.finite;
  }
};

AffineWeylElement weyl_identity(const RootDatum& d);
AffineWeylElement translation_element(const RootDatum& d, const Weight& lambda);
AffineWeylElement finite_element(const RootDatum& d, FiniteWeylElement w);
// Affine simple index convention of RootDatum: 0 = α_0, i ∈ 1..n finite.
AffineWeylElement affine_simple_reflection(const RootDatum& d, int i);
AffineWeylElement omega_element(const RootDatum& d, int k);

AffineWeylElement weyl_multiply(const RootDatum& d, const AffineWeylElement& a, const AffineWeylElement& b);
AffineWeylElement weyl_inverse(const RootDatum& d, const AffineWeylElement& a);

// Number of affine root hyperplanes separating the fundamental alcove from
// its image; Ω contributes 0.
int coxeter_length(const RootDatum& d, const AffineWeylElement& a);
// Index of the Ω-component: a ∈ W_aff·ω_k.
int omega_component(const RootDatum& d, const AffineWeylElement& a);
int omega_inverse_index(const RootDatum& d, int k);

// All t_λ w with ‖λ‖_1 ≤ radius in lattice coordinates.
std::vector<AffineWeylElement> affine_ball(const RootDatum& d, int radius);

std::string format_affine(const RootDatum& d, const AffineWeylElement& a);

struct BraidLetter {
  enum class Kind { Ts, Theta, Omega };
  Kind kind = Kind::Ts;
  int index = 0;   // affine simple index for Ts, Ω index for Omega
  int power = 1;   // ±1, Ts only
  Weight weight;   // Theta only

  static BraidLetter ts(int i, int power = 1) { return {Kind::Ts, i, power, {}}; }
  static BraidLetter theta(const Weight& lambda) { return {Kind::Theta, 0, 1, lambda}; }
  static BraidLetter omega(int k) { return {Kind::Omega, k, 1, {}}; }

  bool operator==(const BraidLetter& o) const {
    return kind == o.kind && index == o.index && power == o.power &&
           (kind != Kind::Theta || same_weight(weight, o.weight));
  }
};

using BraidWord = std::vector<BraidLetter>;

BraidWord braid_inverse(const RootDatum& d, const BraidWord& w);
BraidWord braid_concat(BraidWord a, const BraidWord& b);
// Image in W'_aff under s_i² = 1.
AffineWeylElement braid_to_weyl(const RootDatum& d, const BraidWord& w);

// Lex-least reduced word in the Ts(i) followed by one Omega letter (omitted
// when trivial).
BraidWord positive_lift(const RootDatum& d, const AffineWeylElement& a);
// (positive_lift(a⁻¹))⁻¹.
BraidWord negative_lift(const RootDatum& d, const AffineWeylElement& a);

// Rewrites Ts(i) for affine nodes as θ_{θ_i}·T_{s_θ_i}⁻¹ and Omega(t_λ w) as
// θ_λ·T_{w⁻¹}⁻¹, leaving a word in finite Ts letters and Theta letters.
BraidWord expand_to_bernstein(const RootDatum& d, const BraidWord& w);

struct ThetaNormalForm {
  enum class Status { ok, budget_exhausted, stuck };
  Status status = Status::ok;
  Weight lambda;
  BraidWord residue;  // finite Ts letters only
  int steps = 0;
};

// Bounded rewriting toward θ_λ·(finite braid word). Anything but ok is a
// failure to find the form, not a proof that it does not exist.
ThetaNormalForm theta_normal_form(const RootDatum& d, const BraidWord& w, int budget = 10000);

struct ConjugationWitness {
  BraidWord b;
  int alpha = 0;  // affine index of a finite simple root
};

// First x in (length, lex word) BFS order with x⁻¹ s_α x = s_target and
// ℓ(s_α x) > ℓ(x); then T_x⁻¹ T_α T_x = T_target holds in the braid group.
// Throws if nothing is found up to `bound`.
ConjugationWitness conjugation_witness(const RootDatum& d, int target = 0, int bound = 8);

std::string format_braid(const RootDatum& d, const BraidWord& w);

}  // namespace cah
