#pragma once

#include "cah/scalar.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<cah::Rational> : GenericNumTraits<cah::Rational> {
  using Real = cah::Rational;
  using NonInteger = cah::Rational;
  using Nested = cah::Rational;
  using Literal = cah::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace cah {

using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// Sorted by column, no zero entries.
using SparseVector = std::vector<std::pair<int, Rational>>;

struct SparseSystem {
  int cols = 0;
  std::vector<SparseVector> rows;
};

// Basis of {x : Ax = 0} in reduced form: each vector has a distinct free
// column with coefficient 1 and is zero on the other free columns.
// Elimination runs modulo a 61-bit prime; the reconstructed basis is checked
// against A over Q, with an exact elimination as fallback.
std::vector<SparseVector> nullspace(const SparseSystem& a);
int rank(const SparseSystem& a);
// Rank of a set of vectors in Q^cols.
int span_rank(const std::vector<SparseVector>& vectors, int cols);

QMatrix q_zero(int rows, int cols);
QMatrix q_identity(int n);
QMatrix q_mul(const QMatrix& a, const QMatrix& b);
// Empty optional-like result: returns false when singular.
bool q_inverse(const QMatrix& a, QMatrix& inverse);
int q_rank(const QMatrix& a);
// Columns spanning the column space, chosen greedily left to right.
std::vector<int> q_pivot_columns(const QMatrix& a);

Rational dot(const SparseVector& a, const SparseVector& b);

}  // namespace cah
