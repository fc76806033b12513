#include <doctest.h>

#include "cah/linalg.hpp"

#include <random>

using namespace cah;

namespace {

SparseSystem random_system(std::mt19937& rng, int rows, int cols, int rank_cap, int range) {
  // Rows drawn from the span of rank_cap random vectors.
  std::uniform_int_distribution<int> c(-range, range), pick(0, 3);
  std::vector<std::vector<long long>> gens(rank_cap, std::vector<long long>(cols));
  for (auto& g : gens)
    for (auto& x : g) x = pick(rng) == 0 ? c(rng) : 0;
  SparseSystem s;
  s.cols = cols;
  for (int r = 0; r < rows; ++r) {
    std::vector<long long> row(cols, 0);
    for (auto& g : gens) {
      long long k = c(rng);
      for (int j = 0; j < cols; ++j) row[j] += k * g[j];
    }
    SparseVector v;
    for (int j = 0; j < cols; ++j)
      if (row[j]) v.emplace_back(j, Rational(Integer(row[j])));
    s.rows.push_back(v);
  }
  return s;
}

QMatrix dense(const SparseSystem& s) {
  QMatrix m = q_zero(static_cast<int>(s.rows.size()), s.cols);
  for (int r = 0; r < static_cast<int>(s.rows.size()); ++r)
    for (const auto& [c, x] : s.rows[r]) m(r, c) = x;
  return m;
}

}  // namespace

TEST_CASE("sparse nullspace agrees with dense elimination") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + trial % 9, cols = 2 + (trial * 7) % 13;
    SparseSystem s = random_system(rng, rows, cols, 1 + trial % 5, 1 + trial % 6);
    auto ker = nullspace(s);
    int r = q_rank(dense(s));
    CHECK(static_cast<int>(ker.size()) == cols - r);
    CHECK(rank(s) == r);
    for (const auto& v : ker)
      for (const auto& row : s.rows) CHECK(cah::is_zero(dot(row, v)));
  }
}

TEST_CASE("nullspace with large coefficients falls back to exact arithmetic") {
  // Kernel vector (1, -p/q) with p, q beyond the reconstruction bound.
  Rational big(Integer(1) << 40, Integer(3));
  SparseSystem s;
  s.cols = 2;
  s.rows.push_back({{0, big}, {1, Rational(Integer(7))}});
  auto ker = nullspace(s);
  REQUIRE(ker.size() == 1);
  CHECK(cah::is_zero(dot(s.rows[0], ker[0])));
}

TEST_CASE("dense inverse and rank") {
  QMatrix a = q_zero(3, 3);
  a(0, 0) = Rational(2);
  a(0, 1) = Rational(1);
  a(1, 1) = Rational(3);
  a(2, 0) = Rational(1);
  a(2, 2) = Rational(-1);
  QMatrix inv;
  REQUIRE(q_inverse(a, inv));
  QMatrix prod = q_mul(a, inv);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(prod(i, j) == Rational(i == j ? 1 : 0));
  QMatrix s = q_zero(2, 3);
  s(0, 1) = Rational(1);
  s(1, 1) = Rational(2);
  CHECK(q_rank(s) == 1);
  CHECK_FALSE(q_inverse(q_zero(2, 2), inv));
  CHECK(q_pivot_columns(s) == std::vector<int>{1});
}
