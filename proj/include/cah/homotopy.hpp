#pragma once

#include "cah/bimod.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cah {

// Bounded complex of graded bimodules. Each term is a list of blocks (a
// direct sum); diffs[i][c][b] is the component from block b of term i to
// block c of term i+1, of internal degree 0.
struct BimoduleComplex {
  int lowest = 0;
  std::vector<std::vector<GradedBimodule>> terms;
  std::vector<std::vector<std::vector<PolyMatrix>>> diffs;

  int highest() const { return lowest + static_cast<int>(terms.size()) - 1; }
  bool empty() const;
  int total_rank() const;
};

BimoduleComplex single_term(const GradedBimodule& m, int homological_degree = 0);
BimoduleComplex unit_complex(const RootDatum& d);
// sign −1: [R_i → J_Id] in degrees −1, 0; sign +1: [J_Id → R_i(2)] in 0, 1.
BimoduleComplex rouquier(const RootDatum& d, int i, int sign);

GradedBimodule term_module(const BimoduleComplex& c, int homological_degree);
PolyMatrix differential(const BimoduleComplex& c, int homological_degree);
bool is_complex(const BimoduleComplex& c);
// Per homological degree, the graded rank of the term (from a common minimum degree).
std::string complex_ranks(const BimoduleComplex& c);

// Total complex of C ⊗ D, with sign (−1)^i on id ⊗ d_D.
BimoduleComplex convolve(const RootDatum& d, const BimoduleComplex& c, const BimoduleComplex& e);

struct MinimizeStats {
  int eliminations = 0;
  int splits = 0;
  int hom_solves = 0;
};
// Gaussian elimination of contractible summands. A component between blocks
// that contains a split isomorphism (detected through Hom^0 and a Fitting
// idempotent) is split off and cancelled; stops when no component has one.
BimoduleComplex minimize(const RootDatum& d, const BimoduleComplex& c, MinimizeStats* stats = nullptr);

// f[i]: term_module(C, i) → term_module(D, i), for i in C's range.
struct ChainMap {
  int lowest = 0;
  std::vector<PolyMatrix> f;
};
bool is_chain_map(const BimoduleComplex& c, const BimoduleComplex& e, const ChainMap& f);
bool is_chain_isomorphism(const BimoduleComplex& c, const BimoduleComplex& e, const ChainMap& f);
std::optional<ChainMap> complexes_isomorphic(const RootDatum& d, const BimoduleComplex& c, const BimoduleComplex& e);
// dim Hom_{K^b}(C, C) in internal and homological degree 0.
int endomorphism_dimension(const RootDatum& d, const BimoduleComplex& c);

// Ts(i)^{±1} ↦ rouquier(i, ±1), Omega(k) ↦ [J_ω], Theta(λ) ↦ the complex of
// pos_lift(t_μ)·pos_lift(t_ν)⁻¹ with λ = μ − ν and μ, ν dominant. Convolved
// letter by letter and minimized after each step.
BimoduleComplex braid_complex(const RootDatum& d, const BraidWord& w, MinimizeStats* stats = nullptr);

struct BraidReport {
  bool isomorphic = false;
  int end_lhs = 0;
  int end_rhs = 0;
  std::string ranks_lhs;
  std::string ranks_rhs;
  std::string witness_hash;
  double seconds = 0;
  bool strict() const { return isomorphic && end_lhs == 1 && end_rhs == 1; }
};
BraidReport verify_braid_relation(const RootDatum& d, const BraidWord& lhs, const BraidWord& rhs,
                                  bool with_end = true);

}  // namespace cah
