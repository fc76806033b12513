#pragma once

#include "cah/hecke.hpp"
#include "cah/homotopy.hpp"

#include <string>
#include <vector>

namespace cah {

// H̃_w = (−v)^{−ℓ(w)}·braid_image(negative_lift(w)): the class of J_w.
HeckeElement standard_class(const RootDatum& d, const AffineWeylElement& w);
// H̃_w·m₀.
AspElement asp_standard_class(const RootDatum& d, const AffineWeylElement& w,
                              SignConvention conv = SignConvention::sign);

// Every element of length ≤ max_length, in all Ω-components.
std::vector<AffineWeylElement> length_ball(const RootDatum& d, int max_length);

struct DecatClass {
  bool ok = false;
  std::string failure;
  std::string source;
  HeckeElement hecke;  // full modules and complexes
  AspElement asp;      // asp modules
};

DecatClass decat_filtration(const RootDatum& d, const Filtration& f, BimoduleKind kind,
                            SignConvention conv = SignConvention::sign);
// With no candidates, every element of length at most half the degree spread,
// which suffices for summands of Bott-Samelson bimodules twisted by Ω.
DecatClass decat_bimodule(const RootDatum& d, const GradedBimodule& m,
                          const std::vector<AffineWeylElement>& candidates = {},
                          SignConvention conv = SignConvention::sign);
// Σ (−1)^i [C^i].
DecatClass decat_complex(const RootDatum& d, const BimoduleComplex& c);

struct CrossCheck {
  bool equal = false;
  std::string failure;
  AspElement bimodule_side;
  AspElement hecke_side;
};

// [R_{i_1}⋯R_{i_n}(J_ω ⊗ A)] against (1 + v²H̃_{s_{i_1}})⋯(1 + v²H̃_{s_{i_n}})·H̃_ω·m₀.
CrossCheck cross_check_asp(const RootDatum& d, const std::vector<int>& word, int omega = 0,
                           SignConvention conv = SignConvention::sign);

}  // namespace cah
