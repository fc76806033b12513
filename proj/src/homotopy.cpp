#include "cah/homotopy.hpp"

#include "cah/mapsystem.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace cah {

namespace {

bool is_zero_matrix(const PolyMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool has_constant_entry(const PolyMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!cah::is_zero(m(i, j).constant_term())) return true;
  return false;
}

PolyMatrix sub(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix m = a;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!b(i, j).is_zero()) m(i, j) -= b(i, j);
  return m;
}

PolyMatrix scaled(const PolyMatrix& a, const Rational& c) {
  PolyMatrix m = a;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) m(i, j) = m(i, j).scaled(c);
  return m;
}

const std::vector<Polynomial>* any_generators(const BimoduleComplex& c) {
  for (const auto& t : c.terms)
    for (const auto& b : t) return &b.generators;
  return nullptr;
}

}  // namespace

bool BimoduleComplex::empty() const {
  for (const auto& t : terms)
    if (!t.empty()) return false;
  return true;
}

int BimoduleComplex::total_rank() const {
  int r = 0;
  for (const auto& t : terms)
    for (const auto& b : t) r += b.rank();
  return r;
}

BimoduleComplex single_term(const GradedBimodule& m, int homological_degree) {
  BimoduleComplex c;
  c.lowest = homological_degree;
  c.terms = {{m}};
  return c;
}

BimoduleComplex unit_complex(const RootDatum& d) { return single_term(build_identity(d), 0); }

BimoduleComplex rouquier(const RootDatum& d, int i, int sign) {
  BimoduleComplex c;
  if (sign < 0) {
    c.lowest = -1;
    c.terms = {{build_R(d, i)}, {build_identity(d)}};
    c.diffs = {{{counit_map(d, i)}}};
  } else {
    c.lowest = 0;
    c.terms = {{build_identity(d)}, {shift(build_R(d, i), 2)}};
    c.diffs = {{{unit_map(d, i)}}};
  }
  return c;
}

GradedBimodule term_module(const BimoduleComplex& c, int homological_degree) {
  int t = homological_degree - c.lowest;
  GradedBimodule m;
  if (const auto* g = any_generators(c)) m.generators = *g;
  if (t < 0 || t >= static_cast<int>(c.terms.size()) || c.terms[t].empty()) {
    m.action.assign(m.generators.size(), poly_zero(0, 0));
    return m;
  }
  m = c.terms[t][0];
  for (std::size_t b = 1; b < c.terms[t].size(); ++b) m = direct_sum(m, c.terms[t][b]);
  return m;
}

PolyMatrix differential(const BimoduleComplex& c, int homological_degree) {
  const int t = homological_degree - c.lowest;
  auto ranks = [&](int k) {
    std::vector<int> r;
    if (k >= 0 && k < static_cast<int>(c.terms.size()))
      for (const auto& b : c.terms[k]) r.push_back(b.rank());
    return r;
  };
  std::vector<int> src = ranks(t), tgt = ranks(t + 1);
  int ns = 0, nt = 0;
  for (int x : src) ns += x;
  for (int x : tgt) nt += x;
  PolyMatrix m = poly_zero(nt, ns);
  if (t < 0 || t + 1 >= static_cast<int>(c.terms.size())) return m;
  int row = 0;
  for (std::size_t cb = 0; cb < tgt.size(); ++cb) {
    int col = 0;
    for (std::size_t b = 0; b < src.size(); ++b) {
      m.block(row, col, tgt[cb], src[b]) = c.diffs[t][cb][b];
      col += src[b];
    }
    row += tgt[cb];
  }
  return m;
}

bool is_complex(const BimoduleComplex& c) {
  for (int i = c.lowest; i + 1 < c.highest(); ++i)
    if (!is_zero_matrix(poly_mul(differential(c, i + 1), differential(c, i)))) return false;
  for (int i = c.lowest; i < c.highest(); ++i) {
    GradedBimodule s = term_module(c, i), t = term_module(c, i + 1);
    if (s.rank() && t.rank() && !is_bimodule_map(s, t, differential(c, i), 0)) return false;
  }
  return true;
}

std::string complex_ranks(const BimoduleComplex& c) {
  std::string s;
  for (int i = c.lowest; i <= c.highest(); ++i) {
    LaurentScalar r;
    for (const auto& b : c.terms[i - c.lowest])
      for (int x : b.degrees) r += LaurentScalar::v(x);
    if (!s.empty()) s += " ; ";
    s += "[" + std::to_string(i) + "] " + r.str();
  }
  return s.empty() ? "0" : s;
}

BimoduleComplex convolve(const RootDatum& d, const BimoduleComplex& c, const BimoduleComplex& e) {
  BimoduleComplex out;
  if (c.terms.empty() || e.terms.empty()) return out;
  out.lowest = c.lowest + e.lowest;
  const int nc = static_cast<int>(c.terms.size()), ne = static_cast<int>(e.terms.size());
  const int n = nc + ne - 1;
  struct Index {
    int i, b, j, b2;
  };
  std::vector<std::vector<Index>> index(n);
  out.terms.resize(n);
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < nc; ++i) {
      int j = t - i;
      if (j < 0 || j >= ne) continue;
      for (int b = 0; b < static_cast<int>(c.terms[i].size()); ++b)
        for (int b2 = 0; b2 < static_cast<int>(e.terms[j].size()); ++b2) {
          index[t].push_back({i, b, j, b2});
          out.terms[t].push_back(tensor(d, c.terms[i][b], e.terms[j][b2]));
        }
    }
  out.diffs.resize(n > 0 ? n - 1 : 0);
  for (int t = 0; t + 1 < n; ++t) {
    auto& dt = out.diffs[t];
    dt.resize(index[t + 1].size());
    for (std::size_t r = 0; r < index[t + 1].size(); ++r) {
      const Index& to = index[t + 1][r];
      const GradedBimodule& tgt = out.terms[t + 1][r];
      for (std::size_t s = 0; s < index[t].size(); ++s) {
        const Index& from = index[t][s];
        const GradedBimodule& src = out.terms[t][s];
        PolyMatrix m;
        if (to.i == from.i + 1 && to.j == from.j && to.b2 == from.b2) {
          m = tensor_map_left(c.diffs[from.i][to.b][from.b], e.terms[from.j][from.b2].rank());
        } else if (to.i == from.i && to.j == from.j + 1 && to.b == from.b) {
          m = tensor_map_right(c.terms[from.i][from.b], e.diffs[from.j][to.b2][from.b2]);
          if ((c.lowest + from.i) % 2) m = scaled(m, Rational(-1));
        } else {
          m = poly_zero(tgt.rank(), src.rank());
        }
        dt[r].push_back(std::move(m));
      }
    }
  }
  return out;
}

namespace {

// Univariate polynomials over Q, coefficients from low to high degree.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && cah::is_zero(p.back())) p.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly usub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// a = q·b + r.
std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly& b) {
  trim(a);
  UPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

// Inverse of a modulo m (coprime).
UPoly uinverse_mod(const UPoly& a, const UPoly& m) {
  UPoly r0 = m, r1 = udivmod(a, m).second, s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r2] = udivmod(r0, r1);
    UPoly s2 = usub(s0, umul(q, s1));
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0.size() != 1) throw std::logic_error("polynomials are not coprime");
  Rational inv = Rational(1) / r0[0];
  for (auto& x : s0) x *= inv;
  return udivmod(s0, m).second;
}

UPoly minimal_polynomial(const QMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<QMatrix> powers{q_identity(n)};
  for (int k = 1; k <= n; ++k) {
    powers.push_back(q_mul(powers.back(), a));
    SparseSystem s;
    s.cols = k + 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        SparseVector row;
        for (int p = 0; p <= k; ++p)
          if (!cah::is_zero(powers[p](i, j))) row.emplace_back(p, powers[p](i, j));
        if (!row.empty()) s.rows.push_back(row);
      }
    auto ker = nullspace(s);
    if (ker.empty()) continue;
    UPoly mu(k + 1, Rational(0));
    for (const auto& [p, x] : ker[0]) mu[p] = x;
    trim(mu);
    Rational lead = mu.back();
    for (auto& x : mu) x /= lead;
    return mu;
  }
  throw std::logic_error("minimal polynomial exceeds the dimension");
}

PolyMatrix evaluate(const UPoly& p, const PolyMatrix& a) {
  const int n = static_cast<int>(a.rows());
  PolyMatrix r = poly_zero(n, n);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    r = poly_mul(r, a);
    if (!cah::is_zero(*it))
      for (int i = 0; i < n; ++i) r(i, i) += Polynomial(*it);
  }
  return r;
}

PolyMatrix identity_minus(const PolyMatrix& e) { return sub(poly_identity(static_cast<int>(e.rows())), e); }

class Minimizer {
 public:
  Minimizer(const RootDatum& d, BimoduleComplex c, MinimizeStats* stats)
      : d_(d), c_(std::move(c)), stats_(stats), rng_(2024) {
    for (const auto& t : c_.terms) {
      ids_.emplace_back();
      for (std::size_t b = 0; b < t.size(); ++b) ids_.back().push_back(next_id_++);
    }
  }

  BimoduleComplex run() {
    while (step()) {
    }
    trim_ends();
    return std::move(c_);
  }

 private:
  bool step() {
    for (int t = 0; t + 1 < static_cast<int>(c_.terms.size()); ++t)
      for (int c = 0; c < static_cast<int>(c_.terms[t + 1].size()); ++c)
        for (int b = 0; b < static_cast<int>(c_.terms[t].size()); ++b) {
          const PolyMatrix& phi = c_.diffs[t][c][b];
          if (!has_constant_entry(phi)) continue;
          if (is_isomorphism(phi)) {
            eliminate(t, b, c);
            return true;
          }
          auto key = std::make_pair(ids_[t][b], ids_[t + 1][c]);
          auto it = no_split_.find(key);
          if (it != no_split_.end() && poly_equal(it->second, phi)) continue;
          if (try_split(t, b, c)) return true;
          no_split_[key] = c_.diffs[t][c][b];
        }
    return false;
  }

  void eliminate(int t, int b, int c) {
    if (stats_) ++stats_->eliminations;
    auto& dt = c_.diffs[t];
    const PolyMatrix inv = invert_isomorphism(dt[c][b]);
    for (int c2 = 0; c2 < static_cast<int>(dt.size()); ++c2) {
      if (c2 == c || is_zero_matrix(dt[c2][b])) continue;
      const PolyMatrix left = poly_mul(dt[c2][b], inv);
      for (int a = 0; a < static_cast<int>(dt[c].size()); ++a) {
        if (a == b || is_zero_matrix(dt[c][a])) continue;
        dt[c2][a] = sub(dt[c2][a], poly_mul(left, dt[c][a]));
      }
    }
    remove_block(t + 1, c);
    remove_block(t, b);
  }

  void remove_block(int t, int b) {
    c_.terms[t].erase(c_.terms[t].begin() + b);
    ids_[t].erase(ids_[t].begin() + b);
    if (t > 0) c_.diffs[t - 1].erase(c_.diffs[t - 1].begin() + b);
    if (t < static_cast<int>(c_.diffs.size()))
      for (auto& row : c_.diffs[t]) row.erase(row.begin() + b);
  }

  // Replaces block b of term t by e·X and (1 − e)·X, at b and b + 1.
  void split_block(int t, int b, const PolyMatrix& e) {
    const GradedBimodule x = c_.terms[t][b];
    const PolyMatrix ie = identity_minus(e);
    std::vector<int> cols1 = q_pivot_columns(constant_part(e));
    std::vector<int> cols0 = q_pivot_columns(constant_part(ie));
    const int n = x.rank(), r1 = static_cast<int>(cols1.size()), r0 = static_cast<int>(cols0.size());
    if (r1 + r0 != n) throw std::logic_error("idempotent does not split the block");
    PolyMatrix p(n, n);
    GradedBimodule x1, x0;
    x1.kind = x0.kind = x.kind;
    x1.generators = x0.generators = x.generators;
    x1.label = x.label + "|1";
    x0.label = x.label + "|0";
    for (int k = 0; k < r1; ++k) {
      p.col(k) = e.col(cols1[k]);
      x1.degrees.push_back(x.degrees[cols1[k]]);
    }
    for (int k = 0; k < r0; ++k) {
      p.col(r1 + k) = ie.col(cols0[k]);
      x0.degrees.push_back(x.degrees[cols0[k]]);
    }
    const PolyMatrix pinv = invert_isomorphism(p);
    for (const PolyMatrix& a : x.action) {
      PolyMatrix conj = poly_mul(pinv, poly_mul(a, p));
      if (!is_zero_matrix(conj.topRightCorner(r1, r0)) || !is_zero_matrix(conj.bottomLeftCorner(r0, r1)))
        throw std::logic_error("split is not a bimodule decomposition");
      x1.action.push_back(conj.topLeftCorner(r1, r1));
      x0.action.push_back(conj.bottomRightCorner(r0, r0));
    }
    c_.terms[t][b] = x1;
    c_.terms[t].insert(c_.terms[t].begin() + b + 1, x0);
    ids_[t][b] = next_id_++;
    ids_[t].insert(ids_[t].begin() + b + 1, next_id_++);
    if (t > 0) {
      auto& rows = c_.diffs[t - 1];
      std::vector<PolyMatrix> top, bottom;
      for (const PolyMatrix& m : rows[b]) {
        PolyMatrix q = poly_mul(pinv, m);
        top.push_back(q.topRows(r1));
        bottom.push_back(q.bottomRows(r0));
      }
      rows[b] = top;
      rows.insert(rows.begin() + b + 1, bottom);
    }
    if (t < static_cast<int>(c_.diffs.size()))
      for (auto& row : c_.diffs[t]) {
        PolyMatrix q = poly_mul(row[b], p);
        row[b] = q.leftCols(r1);
        row.insert(row.begin() + b + 1, q.rightCols(r0));
      }
  }

  bool try_split(int t, int b, int c) {
    const GradedBimodule& x = c_.terms[t][b];
    const GradedBimodule& y = c_.terms[t + 1][c];
    const PolyMatrix phi = c_.diffs[t][c][b];
    if (stats_) ++stats_->hom_solves;
    auto basis = hom_basis(d_, y, x, 0);
    if (basis.empty()) return false;
    std::uniform_int_distribution<int> coef(1, 1000);
    const int n = x.rank();
    for (int attempt = 0; attempt < 2; ++attempt) {
      PolyMatrix h = poly_zero(n, y.rank());
      for (const PolyMatrix& bm : basis) {
        Rational r(Integer(coef(rng_)));
        for (int i = 0; i < h.rows(); ++i)
          for (int j = 0; j < h.cols(); ++j)
            if (!bm(i, j).is_zero()) h(i, j) += bm(i, j).scaled(r);
      }
      const PolyMatrix a = poly_mul(h, phi);
      const QMatrix a0 = constant_part(a);
      UPoly mu = minimal_polynomial(a0);
      int m = 0;
      while (m < static_cast<int>(mu.size()) && cah::is_zero(mu[m])) ++m;
      if (m + 1 == static_cast<int>(mu.size())) continue;  // a0 nilpotent
      PolyMatrix e;
      if (m == 0) {
        e = poly_identity(n);
      } else {
        UPoly q(mu.begin() + m, mu.end());
        UPoly tm(m + 1, Rational(0));
        tm[m] = Rational(1);
        UPoly pcrt = umul(tm, uinverse_mod(tm, q));
        e = evaluate(pcrt, a);
        for (int it = 0;; ++it) {
          PolyMatrix e2 = poly_mul(e, e);
          if (poly_equal(e2, e)) break;
          if (it > 16) throw std::logic_error("idempotent lifting did not converge");
          PolyMatrix e3 = poly_mul(e2, e);
          e = sub(scaled(e2, Rational(3)), scaled(e3, Rational(2)));
        }
      }
      // h' = (ae + 1 − e)⁻¹ e h gives h'φ = e, so f = φh' is idempotent on Y.
      const PolyMatrix bmat = sub(poly_mul(a, e), sub(e, poly_identity(n)));
      const PolyMatrix hp = poly_mul(invert_isomorphism(bmat), poly_mul(e, h));
      const PolyMatrix f = poly_mul(phi, hp);
      if (stats_) ++stats_->splits;
      const bool split_x = !poly_equal(e, poly_identity(n));
      const bool split_y = !poly_equal(f, poly_identity(y.rank()));
      if (split_y) split_block(t + 1, c, f);
      if (split_x) split_block(t, b, e);
      if (!is_isomorphism(c_.diffs[t][c][b])) throw std::logic_error("split component is not invertible");
      eliminate(t, b, c);
      return true;
    }
    return false;
  }

  void trim_ends() {
    while (!c_.terms.empty() && c_.terms.back().empty()) {
      c_.terms.pop_back();
      if (!c_.diffs.empty()) c_.diffs.pop_back();
    }
    while (!c_.terms.empty() && c_.terms.front().empty()) {
      c_.terms.erase(c_.terms.begin());
      if (!c_.diffs.empty()) c_.diffs.erase(c_.diffs.begin());
      ++c_.lowest;
    }
    if (c_.terms.empty()) c_.lowest = 0;
  }

  const RootDatum& d_;
  BimoduleComplex c_;
  MinimizeStats* stats_;
  std::mt19937 rng_;
  std::vector<std::vector<int>> ids_;
  int next_id_ = 0;
  std::map<std::pair<int, int>, PolyMatrix> no_split_;
};

}  // namespace

BimoduleComplex minimize(const RootDatum& d, const BimoduleComplex& c, MinimizeStats* stats) {
  return Minimizer(d, c, stats).run();
}

bool is_chain_map(const BimoduleComplex& c, const BimoduleComplex& e, const ChainMap& f) {
  const int lo = std::min(c.lowest, e.lowest), hi = std::max(c.highest(), e.highest());
  auto map_at = [&](int i) -> PolyMatrix {
    int k = i - f.lowest;
    if (k >= 0 && k < static_cast<int>(f.f.size())) return f.f[k];
    return poly_zero(term_module(e, i).rank(), term_module(c, i).rank());
  };
  for (int i = lo; i <= hi; ++i) {
    GradedBimodule s = term_module(c, i), t = term_module(e, i);
    PolyMatrix fi = map_at(i);
    if (fi.rows() != t.rank() || fi.cols() != s.rank()) return false;
    if (s.rank() && t.rank() && !is_bimodule_map(s, t, fi, 0)) return false;
    PolyMatrix lhs = poly_mul(differential(e, i), fi);
    PolyMatrix rhs = poly_mul(map_at(i + 1), differential(c, i));
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() || !poly_equal(lhs, rhs)) return false;
  }
  return true;
}

bool is_chain_isomorphism(const BimoduleComplex& c, const BimoduleComplex& e, const ChainMap& f) {
  if (!is_chain_map(c, e, f)) return false;
  for (const PolyMatrix& m : f.f)
    if (m.rows() != m.cols() || (m.rows() > 0 && !is_isomorphism(m))) return false;
  const int lo = std::min(c.lowest, e.lowest), hi = std::max(c.highest(), e.highest());
  for (int i = lo; i <= hi; ++i)
    if (term_module(c, i).rank() != term_module(e, i).rank()) return false;
  return true;
}

namespace {

// Unknown degree-0 maps F_i: C^i → E^i with the chain and intertwining
// equations.
struct ChainSystem {
  MapSystem sys;
  int lo = 0, hi = -1;
  std::vector<int> handle;
  std::vector<GradedBimodule> src, tgt;

  ChainSystem(const RootDatum& d, const BimoduleComplex& c, const BimoduleComplex& e)
      : sys(left_variables(d)) {
    lo = std::min(c.lowest, e.lowest);
    hi = std::max(c.highest(), e.highest());
    for (int i = lo; i <= hi; ++i) {
      src.push_back(term_module(c, i));
      tgt.push_back(term_module(e, i));
      handle.push_back(sys.add_map(src.back().degrees, tgt.back().degrees, 0));
    }
    for (int i = lo; i <= hi; ++i) {
      const int k = i - lo;
      if (src[k].rank() == 0 || tgt[k].rank() == 0) continue;
      for (std::size_t j = 0; j < src[k].action.size(); ++j) {
        int fam = sys.new_family();
        sys.add_term(fam, handle[k], nullptr, &src[k].action[j], 1);
        sys.add_term(fam, handle[k], &tgt[k].action[j], nullptr, -1);
      }
    }
    dc.resize(hi - lo + 1);
    de.resize(hi - lo + 1);
    for (int i = lo; i < hi; ++i) {
      const int k = i - lo;
      dc[k] = differential(c, i);
      de[k] = differential(e, i);
      int fam = sys.new_family();
      if (de[k].rows() && de[k].cols() && src[k].rank()) sys.add_term(fam, handle[k], &de[k], nullptr, 1);
      if (dc[k].rows() && dc[k].cols() && tgt[k + 1].rank()) sys.add_term(fam, handle[k + 1], nullptr, &dc[k], -1);
    }
  }

  ChainMap realize(const SparseVector& v) const {
    ChainMap f;
    f.lowest = lo;
    for (std::size_t k = 0; k < handle.size(); ++k) f.f.push_back(sys.realize(handle[k], v));
    return f;
  }

  std::vector<PolyMatrix> dc, de;
};

}  // namespace

std::optional<ChainMap> complexes_isomorphic(const RootDatum& d, const BimoduleComplex& c, const BimoduleComplex& e) {
  const int lo = std::min(c.lowest, e.lowest), hi = std::max(c.highest(), e.highest());
  for (int i = lo; i <= hi; ++i) {
    GradedBimodule s = term_module(c, i), t = term_module(e, i);
    std::vector<int> ds = s.degrees, dt = t.degrees;
    std::sort(ds.begin(), ds.end());
    std::sort(dt.begin(), dt.end());
    if (ds != dt) return std::nullopt;
  }
  if (c.empty()) return ChainMap{lo, {}};
  ChainSystem cs(d, c, e);
  auto basis = cs.sys.solve();
  if (basis.empty()) return std::nullopt;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(1, 1000);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::map<int, Rational> acc;
    for (const SparseVector& v : basis) {
      Rational r(Integer(coef(rng)));
      for (const auto& [col, x] : v) acc[col] += r * x;
    }
    SparseVector combo;
    for (const auto& [col, x] : acc)
      if (!cah::is_zero(x)) combo.emplace_back(col, x);
    ChainMap f = cs.realize(combo);
    bool ok = true;
    for (const PolyMatrix& m : f.f)
      if (m.rows() > 0 && !is_isomorphism(m)) ok = false;
    if (ok) return f;
  }
  return std::nullopt;
}

int endomorphism_dimension(const RootDatum& d, const BimoduleComplex& c) {
  if (c.empty()) return 0;
  ChainSystem cs(d, c, c);
  const int z = static_cast<int>(cs.sys.solve().size());
  std::vector<SparseVector> boundaries;
  for (int i = cs.lo + 1; i <= cs.hi; ++i) {
    const int k = i - cs.lo;
    const GradedBimodule& from = cs.src[k];
    const GradedBimodule& to = cs.src[k - 1];
    if (from.rank() == 0 || to.rank() == 0) continue;
    for (const PolyMatrix& h : hom_basis(d, from, to, 0)) {
      // dh + hd for h: C^i → C^{i−1}.
      SparseVector v;
      if (cs.src[k].rank()) {
        PolyMatrix fi = poly_mul(cs.dc[k - 1], h);
        for (auto& e : cs.sys.coordinates(cs.handle[k], fi)) v.push_back(e);
      }
      PolyMatrix fprev = poly_mul(h, cs.dc[k - 1]);
      for (auto& e : cs.sys.coordinates(cs.handle[k - 1], fprev)) v.push_back(e);
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      boundaries.push_back(v);
    }
  }
  const int b = boundaries.empty() ? 0 : span_rank(boundaries, cs.sys.unknowns());
  return z - b;
}

namespace {

BraidWord theta_word(const RootDatum& d, const Weight& lambda) {
  Weight two_rho = d.zero();
  for (const Weight& r : d.positive_roots()) two_rho += d.from_root_coords(r);
  int c = 0;
  while (!d.is_dominant(lambda + c * two_rho)) ++c;
  const Weight mu = lambda + c * two_rho, nu = c * two_rho;
  BraidWord w = positive_lift(d, translation_element(d, mu));
  if (c > 0) w = braid_concat(w, braid_inverse(d, positive_lift(d, translation_element(d, nu))));
  return w;
}

void append_letter(const RootDatum& d, const BraidLetter& l, std::vector<BimoduleComplex>& out) {
  switch (l.kind) {
    case BraidLetter::Kind::Ts:
      for (int k = 0; k < std::abs(l.power); ++k) out.push_back(rouquier(d, l.index, l.power > 0 ? 1 : -1));
      break;
    case BraidLetter::Kind::Omega: out.push_back(single_term(build_graph(d, omega_element(d, l.index)))); break;
    case BraidLetter::Kind::Theta:
      for (const BraidLetter& x : theta_word(d, l.weight)) append_letter(d, x, out);
      break;
  }
}

std::string hash_chain_map(const ChainMap& f) {
  std::string s;
  for (const PolyMatrix& m : f.f)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) s += m(i, j).str() + ";";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016zx", std::hash<std::string>()(s));
  return buf;
}

}  // namespace

BimoduleComplex braid_complex(const RootDatum& d, const BraidWord& w, MinimizeStats* stats) {
  std::vector<BimoduleComplex> letters;
  for (const BraidLetter& l : w) append_letter(d, l, letters);
  BimoduleComplex acc = unit_complex(d);
  for (const BimoduleComplex& x : letters) acc = minimize(d, convolve(d, acc, x), stats);
  return acc;
}

BraidReport verify_braid_relation(const RootDatum& d, const BraidWord& lhs, const BraidWord& rhs, bool with_end) {
  const auto start = std::chrono::steady_clock::now();
  BraidReport r;
  BimoduleComplex a = braid_complex(d, lhs), b = braid_complex(d, rhs);
  r.ranks_lhs = complex_ranks(a);
  r.ranks_rhs = complex_ranks(b);
  auto f = complexes_isomorphic(d, a, b);
  r.isomorphic = f.has_value() && is_chain_isomorphism(a, b, *f);
  if (f) r.witness_hash = hash_chain_map(*f);
  if (with_end) {
    r.end_lhs = endomorphism_dimension(d, a);
    r.end_rhs = endomorphism_dimension(d, b);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace cah
