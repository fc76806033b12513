#include "cah/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace cah {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

struct ModP {
  std::uint64_t x = 0;

  static ModP from(const Rational& r) {
    const Integer p(kPrime);
    Integer n = r.numerator() % p;
    if (n < 0) n += p;
    Integer d = r.denominator() % p;
    if (d < 0) d += p;
    ModP a{static_cast<std::uint64_t>(n.convert_to<long long>())};
    ModP b{static_cast<std::uint64_t>(d.convert_to<long long>())};
    return a * b.inverse();
  }
  bool zero() const { return x == 0; }
  friend ModP operator+(ModP a, ModP b) {
    std::uint64_t s = a.x + b.x;
    return {s >= kPrime ? s - kPrime : s};
  }
  friend ModP operator-(ModP a, ModP b) { return {a.x >= b.x ? a.x - b.x : a.x + kPrime - b.x}; }
  friend ModP operator*(ModP a, ModP b) {
    unsigned __int128 t = static_cast<unsigned __int128>(a.x) * b.x;
    std::uint64_t lo = static_cast<std::uint64_t>(t & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
    std::uint64_t s = lo + hi;
    return {s >= kPrime ? s - kPrime : s};
  }
  ModP operator-() const { return {x == 0 ? 0 : kPrime - x}; }
  ModP inverse() const {
    if (x == 0) throw std::domain_error("inverse of zero mod p");
    ModP r{1}, b = *this;
    std::uint64_t e = kPrime - 2;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
};

using BigQ = boost::multiprecision::cpp_rational;

struct ExactQ {
  BigQ x;
  static ExactQ from(const Rational& r) {
    return {BigQ(boost::multiprecision::cpp_int(r.numerator().str())) /
            BigQ(boost::multiprecision::cpp_int(r.denominator().str()))};
  }
  bool zero() const { return x == 0; }
  friend ExactQ operator+(const ExactQ& a, const ExactQ& b) { return {a.x + b.x}; }
  friend ExactQ operator-(const ExactQ& a, const ExactQ& b) { return {a.x - b.x}; }
  friend ExactQ operator*(const ExactQ& a, const ExactQ& b) { return {a.x * b.x}; }
  ExactQ operator-() const { return {-x}; }
  ExactQ inverse() const { return {1 / x}; }
};

template <class F>
using Row = std::vector<std::pair<int, F>>;

// r ← r − c·p, both sorted by column.
template <class F>
Row<F> axpy(const Row<F>& r, const F& c, const Row<F>& p) {
  Row<F> out;
  out.reserve(r.size() + p.size());
  auto a = r.begin(), b = p.begin();
  while (a != r.end() || b != p.end()) {
    if (b == p.end() || (a != r.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == r.end() || b->first < a->first) {
      out.emplace_back(b->first, -(c * b->second));
      ++b;
    } else {
      F v = a->second - c * b->second;
      if (!v.zero()) out.emplace_back(a->first, v);
      ++a;
      ++b;
    }
  }
  return out;
}

// Reduced row echelon form: pivot rows keyed by leading column.
template <class F>
struct Echelon {
  std::vector<int> pivot_row;  // column -> index into rows, or -1
  std::vector<Row<F>> rows;

  explicit Echelon(int cols) : pivot_row(cols, -1) {}

  void insert(Row<F> r) {
    std::size_t pos = 0;
    while (pos < r.size()) {
      int c = r[pos].first;
      int pr = pivot_row[c];
      if (pr < 0) {
        ++pos;
        continue;
      }
      F coef = r[pos].second;
      r = axpy(r, coef, rows[pr]);
      // Entries before pos are unchanged; the pivot column is gone.
      pos = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, int col) { return e.first < col; }) -
            r.begin();
    }
    if (r.empty()) return;
    F inv = r[0].second.inverse();
    for (auto& e : r) e.second = e.second * inv;
    pivot_row[r[0].first] = static_cast<int>(rows.size());
    rows.push_back(std::move(r));
  }

  void back_substitute() {
    std::vector<int> order;
    for (int c = static_cast<int>(pivot_row.size()) - 1; c >= 0; --c)
      if (pivot_row[c] >= 0) order.push_back(c);
    for (int c : order) {
      Row<F>& r = rows[pivot_row[c]];
      std::size_t pos = 1;
      while (pos < r.size()) {
        int col = r[pos].first;
        int pr = pivot_row[col];
        if (pr < 0) {
          ++pos;
          continue;
        }
        F coef = r[pos].second;
        r = axpy(r, coef, rows[pr]);
        pos = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int cc) { return e.first < cc; }) -
              r.begin();
      }
    }
  }

  int rank() const { return static_cast<int>(rows.size()); }

  std::vector<Row<F>> kernel() const {
    const int cols = static_cast<int>(pivot_row.size());
    std::vector<int> index(cols, -1);
    std::vector<Row<F>> out;
    for (int c = 0; c < cols; ++c)
      if (pivot_row[c] < 0) {
        index[c] = static_cast<int>(out.size());
        out.push_back({{c, F{1}}});
      }
    for (int c = 0; c < cols; ++c) {
      if (pivot_row[c] < 0) continue;
      for (const auto& [f, val] : rows[pivot_row[c]])
        if (f != c) out[index[f]].emplace_back(c, -val);
    }
    for (auto& v : out) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
};

template <class F>
Echelon<F> echelon(const SparseSystem& a) {
  Echelon<F> e(a.cols);
  for (const SparseVector& row : a.rows) {
    Row<F> r;
    r.reserve(row.size());
    for (const auto& [c, x] : row) {
      F v = F::from(x);
      if (!v.zero()) r.emplace_back(c, v);
    }
    e.insert(std::move(r));
  }
  return e;
}

bool reconstruct(std::uint64_t a, Rational& out) {
  // Extended Euclid on (p, a) until the remainder drops below sqrt(p/2).
  constexpr long long bound = 1LL << 30;
  __int128 r0 = kPrime, r1 = a, t0 = 0, t1 = 1;
  while (r1 >= bound) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1;
    __int128 t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || t1 >= bound || -t1 >= bound) return false;
  long long num = static_cast<long long>(r1), den = static_cast<long long>(t1);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  out = Rational(Integer(num), Integer(den));
  ModP check = ModP::from(out);
  return check.x == a;
}

bool in_kernel(const SparseSystem& a, const std::vector<SparseVector>& basis) {
  // Column-indexed view of the basis.
  std::vector<std::vector<std::pair<int, Rational>>> by_col(a.cols);
  for (int k = 0; k < static_cast<int>(basis.size()); ++k)
    for (const auto& [c, x] : basis[k]) by_col[c].emplace_back(k, x);
  std::vector<Rational> acc(basis.size());
  std::vector<int> touched;
  for (const SparseVector& row : a.rows) {
    touched.clear();
    for (const auto& [c, x] : row)
      for (const auto& [k, y] : by_col[c]) {
        if (cah::is_zero(acc[k])) touched.push_back(k);
        acc[k] += x * y;
      }
    bool ok = true;
    for (int k : touched) {
      if (!cah::is_zero(acc[k])) ok = false;
      acc[k] = 0;
    }
    if (!ok) return false;
  }
  return true;
}

Rational to_rational(const BigQ& x) {
  using boost::multiprecision::cpp_int;
  cpp_int n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  return Rational(Integer(n.str()), Integer(d.str()));
}

}  // namespace

std::vector<SparseVector> nullspace(const SparseSystem& a) {
  if (a.cols == 0) return {};
  Echelon<ModP> e = echelon<ModP>(a);
  e.back_substitute();
  std::vector<SparseVector> basis;
  bool ok = true;
  for (const auto& v : e.kernel()) {
    SparseVector out;
    for (const auto& [c, x] : v) {
      Rational r;
      if (!reconstruct(x.x, r)) {
        ok = false;
        break;
      }
      out.emplace_back(c, r);
    }
    if (!ok) break;
    basis.push_back(std::move(out));
  }
  if (ok) {
    try {
      if (in_kernel(a, basis)) return basis;
    } catch (const std::exception&) {
    }
  }
  Echelon<ExactQ> x = echelon<ExactQ>(a);
  x.back_substitute();
  basis.clear();
  for (const auto& v : x.kernel()) {
    SparseVector out;
    for (const auto& [c, y] : v) out.emplace_back(c, to_rational(y.x));
    basis.push_back(std::move(out));
  }
  return basis;
}

int rank(const SparseSystem& a) {
  // Exact through the verified kernel of whichever side is narrower.
  int rows = static_cast<int>(a.rows.size());
  if (rows == 0 || a.cols == 0) return 0;
  if (a.cols <= rows) return a.cols - static_cast<int>(nullspace(a).size());
  SparseSystem t;
  t.cols = rows;
  std::vector<SparseVector> cols(a.cols);
  for (int r = 0; r < rows; ++r)
    for (const auto& [c, x] : a.rows[r]) cols[c].emplace_back(r, x);
  for (auto& c : cols)
    if (!c.empty()) t.rows.push_back(std::move(c));
  return rows - static_cast<int>(nullspace(t).size());
}

int span_rank(const std::vector<SparseVector>& vectors, int cols) {
  SparseSystem s;
  s.cols = cols;
  s.rows = vectors;
  return rank(s);
}

QMatrix q_zero(int rows, int cols) {
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Rational(0);
  return m;
}

QMatrix q_identity(int n) {
  QMatrix m = q_zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

QMatrix q_mul(const QMatrix& a, const QMatrix& b) {
  QMatrix m = q_zero(static_cast<int>(a.rows()), static_cast<int>(b.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (cah::is_zero(a(i, k))) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (!cah::is_zero(b(k, j))) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

namespace {

// Row-reduces m in place; returns pivot columns.
std::vector<int> gauss_jordan(QMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!cah::is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.row(r).swap(m.row(p));
    Rational inv = Rational(1) / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || cah::is_zero(m(i, c))) continue;
      Rational f = m(i, c);
      for (int j = 0; j < m.cols(); ++j)
        if (!cah::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

bool q_inverse(const QMatrix& a, QMatrix& inverse) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) return false;
  QMatrix aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = q_identity(n);
  std::vector<int> piv = gauss_jordan(aug);
  if (static_cast<int>(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1)) return false;
  inverse = aug.rightCols(n);
  return true;
}

int q_rank(const QMatrix& a) {
  QMatrix m = a;
  return static_cast<int>(gauss_jordan(m).size());
}

std::vector<int> q_pivot_columns(const QMatrix& a) {
  QMatrix m = a;
  return gauss_jordan(m);
}

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational s(0);
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

}  // namespace cah
