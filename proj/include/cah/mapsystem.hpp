#pragma once

#include "cah/linalg.hpp"
#include "cah/polyalg.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace cah {

// Homogeneous monomials of internal degree `degree` in the given variables.
std::vector<Polynomial::Monomial> monomials_of_degree(const std::vector<int>& vars, int degree);

// Linear systems whose unknowns are the coefficients of several graded
// matrices F_h (one per registered map) and whose equations are
// Σ ± L·F_h·R = 0, entrywise and monomial by monomial.
class MapSystem {
 public:
  explicit MapSystem(std::vector<int> vars) : vars_(std::move(vars)) {}

  // Unknown matrix with F(k, l) homogeneous of degree src[l] − tgt[k] + degree.
  int add_map(const std::vector<int>& src_degrees, const std::vector<int>& tgt_degrees, int degree);
  int new_family() { return families_++; }
  // Adds sign·L·F_h·R to equation family `family`; null L or R is the identity.
  void add_term(int family, int handle, const PolyMatrix* left, const PolyMatrix* right, int sign);

  int unknowns() const { return unknowns_; }
  const SparseSystem& system();
  std::vector<SparseVector> solve() { return nullspace(system()); }
  PolyMatrix realize(int handle, const SparseVector& x) const;
  // Coordinates of a concrete matrix in the unknowns of `handle`.
  SparseVector coordinates(int handle, const PolyMatrix& f) const;

 private:
  struct Layout {
    int rows = 0, cols = 0;
    // Per entry (k * cols + l): first unknown and the monomials.
    std::vector<int> offset;
    std::vector<std::vector<Polynomial::Monomial>> monos;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };

  std::vector<int> vars_;
  std::vector<Layout> maps_;
  int unknowns_ = 0;
  int families_ = 0;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, int, KeyHash> row_index_;
  std::vector<std::vector<std::pair<int, Rational>>> rows_;
  SparseSystem system_;
  bool dirty_ = true;
};

}  // namespace cah
