#pragma once

#include "cah/affweyl.hpp"
#include "cah/linalg.hpp"
#include "cah/polyalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cah {

// full: an A–A bimodule, right action given on x_1..x_r, u.
// asp: a right A^{W_fin}[u]-module, right action given on the fundamental
// invariants and u.
enum class BimoduleKind { full, asp };

// Free graded left A-module with basis b_0..b_{m-1} in degrees `degrees`,
// and right action b_l·g = Σ_k action[j](k, l) b_k for g = generators[j].
struct GradedBimodule {
  BimoduleKind kind = BimoduleKind::full;
  std::vector<int> degrees;
  std::vector<Polynomial> generators;
  std::vector<PolyMatrix> action;
  std::string label;

  int rank() const { return static_cast<int>(degrees.size()); }
};

std::vector<Polynomial> right_generators(const RootDatum& d, BimoduleKind kind);
// Variables acting on the left: x_1..x_r, u.
std::vector<int> left_variables(const RootDatum& d);

GradedBimodule build_graph(const RootDatum& d, const AffineWeylElement& w);
GradedBimodule build_identity(const RootDatum& d);
GradedBimodule build_R(const RootDatum& d, int i);
// M(n): generator degrees lowered by n.
GradedBimodule shift(GradedBimodule m, int n);
GradedBimodule direct_sum(const GradedBimodule& a, const GradedBimodule& b);
// M ⊗_A N. M must be full; the result has N's kind. Basis b_l ⊗ c_k sits at
// index k·rank(M) + l.
GradedBimodule tensor(const RootDatum& d, const GradedBimodule& m, const GradedBimodule& n);
// Bott–Samelson object R_{i_1} ⊗ ... ⊗ R_{i_k} ⊗ J_{ω_k}.
GradedBimodule bott_samelson(const RootDatum& d, const std::vector<int>& word, int omega = 0);

// The identity module A of M_asp and its twist J_ω ⊗ A.
GradedBimodule asp_identity(const RootDatum& d, int omega = 0);
GradedBimodule asp_apply_R(const RootDatum& d, int i, const GradedBimodule& m);

// ρ_M(p) for an arbitrary polynomial p (full modules only).
class ActionEvaluator {
 public:
  explicit ActionEvaluator(const GradedBimodule& m);
  PolyMatrix operator()(const Polynomial& p);

 private:
  const PolyMatrix& monomial(Polynomial::Monomial mono);
  const GradedBimodule& m_;
  std::vector<int> slot_;  // variable -> generator index, or -1
  std::map<Polynomial::Monomial, PolyMatrix> cache_;
};

// Commuting actions, homogeneity of entries, and ρ(g) = g-scalar on u.
bool is_well_formed(const GradedBimodule& m);
bool bimodule_equal(const GradedBimodule& a, const GradedBimodule& b);
std::vector<int> graded_rank(const GradedBimodule& m);  // counts per degree, from min degree
int min_degree(const GradedBimodule& m);
int max_degree(const GradedBimodule& m);

// Bimodule maps F: M → N of degree δ: F(b_l) = Σ_k F(k,l) c_k, F(k,l) homogeneous
// of degree deg_M(l) − deg_N(k) + δ, and F·ρ_M(g) = ρ_N(g)·F.
bool is_bimodule_map(const GradedBimodule& src, const GradedBimodule& tgt, const PolyMatrix& f, int degree = 0);
// J_Id → R_i(2): 1 ↦ α_i⊗1 + 1⊗α_i.
PolyMatrix unit_map(const RootDatum& d, int i);
// R_i → J_Id: multiplication.
PolyMatrix counit_map(const RootDatum& d, int i);
// F ⊗ id_Y and id_X ⊗ H.
PolyMatrix tensor_map_left(const PolyMatrix& f, int rank_y);
PolyMatrix tensor_map_right(const GradedBimodule& x, const PolyMatrix& h);

// Basis of the degree-δ maps M → N.
std::vector<PolyMatrix> hom_basis(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt,
                                  int degree = 0);
// dim Hom^δ(M, N) for δ = 0..cutoff: bimodule maps of internal degree δ.
std::vector<int> hom_degree_zero(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt, int cutoff = 12);

// Degree-zero part of a map: constant entries between equal degrees.
QMatrix constant_part(const PolyMatrix& f);
bool is_isomorphism(const PolyMatrix& f);
// Inverse of a degree-zero isomorphism of free graded modules.
PolyMatrix invert_isomorphism(const PolyMatrix& f);
// An explicit isomorphism M → N if one exists.
std::optional<PolyMatrix> find_isomorphism(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt);

// Kernel of a map of free modules, when that kernel is free with generators
// in degrees ≤ max_degree(src) + 2. Returns the sub-bimodule and its
// inclusion matrix.
struct Submodule {
  GradedBimodule module;
  PolyMatrix inclusion;
};
std::optional<Submodule> kernel_module(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt,
                                       const PolyMatrix& f);

// Multiset of graph subquotients: for a full module, w ↦ Σ_n m_n v^n counts
// J_w(−n); for an asp module candidates are translations t_λ standing for the
// cosets t_λW_fin.
struct Filtration {
  bool ok = false;
  std::string failure;
  std::vector<std::pair<AffineWeylElement, LaurentScalar>> entries;
};
Filtration standard_filtration(const RootDatum& d, const GradedBimodule& m,
                               const std::vector<AffineWeylElement>& candidates);
// Products of subwords of R_{i_1}...R_{i_k}, times ω.
std::vector<AffineWeylElement> subword_candidates(const RootDatum& d, const std::vector<int>& word, int omega = 0);
// Distinct cosets t_λ W_fin among the given elements, as translations.
std::vector<AffineWeylElement> coset_candidates(const RootDatum& d, const std::vector<AffineWeylElement>& elements);

// Reflection bimodule over Q[x] (no deformation parameter) for the
// reflection in a positive root, given by its index in positive_roots().
// Built from closed formulas for linear generators.
GradedBimodule finite_R(const RootDatum& d, int positive_root_index);
// Undeformed counterpart of build_R(i): s_0 degenerates to s_θ.
GradedBimodule finite_reflection_bimodule(const RootDatum& d, int i);
GradedBimodule finite_bott_samelson(const RootDatum& d, const std::vector<int>& word);
// Drops the u-generator and sets u = 0 in all entries.
GradedBimodule specialize_u_zero(const GradedBimodule& m);

std::string format_bimodule(const GradedBimodule& m);

}  // namespace cah
