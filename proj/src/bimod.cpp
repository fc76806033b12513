#include "cah/bimod.hpp"

#include "cah/mapsystem.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cah {

std::vector<Polynomial> right_generators(const RootDatum& d, BimoduleKind kind) {
  std::vector<Polynomial> g;
  if (kind == BimoduleKind::full) {
    for (int i = 0; i < d.rank(); ++i) g.push_back(Polynomial::x(i));
  } else {
    g = finite_invariants(d);
  }
  g.push_back(Polynomial::u());
  return g;
}

std::vector<int> left_variables(const RootDatum& d) {
  std::vector<int> v;
  for (int i = 0; i < d.rank(); ++i) v.push_back(i);
  v.push_back(Polynomial::kU);
  return v;
}

namespace {

PolyMatrix scalar_matrix(const Polynomial& p) {
  PolyMatrix m(1, 1);
  m(0, 0) = p;
  return m;
}

PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix m = poly_zero(static_cast<int>(a.rows() + b.rows()), static_cast<int>(a.cols() + b.cols()));
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

std::string word_label(const std::vector<int>& word, int omega) {
  std::string s;
  for (std::size_t k = 0; k < word.size(); ++k) s += (k ? ".R" : "R") + std::to_string(word[k]);
  if (omega != 0 || word.empty()) s += "@om[" + std::to_string(omega) + "]";
  return s;
}

}  // namespace

GradedBimodule build_graph(const RootDatum& d, const AffineWeylElement& w) {
  GradedBimodule m;
  m.degrees = {0};
  m.generators = right_generators(d, BimoduleKind::full);
  for (const Polynomial& g : m.generators) m.action.push_back(scalar_matrix(act(d, w, g)));
  m.label = "J[" + format_affine(d, w) + "]";
  return m;
}

GradedBimodule build_identity(const RootDatum& d) { return build_graph(d, weyl_identity(d)); }

GradedBimodule build_R(const RootDatum& d, int i) {
  GradedBimodule m;
  m.degrees = {0, 2};
  m.generators = right_generators(d, BimoduleKind::full);
  const Polynomial alpha = alpha_elt(d, i);
  for (const Polynomial& g : m.generators) {
    auto [p0, q0] = invariant_split(d, g, i);
    auto [p1, q1] = invariant_split(d, alpha * g, i);
    PolyMatrix a(2, 2);
    a << p0, p1, q0, q1;
    m.action.push_back(a);
  }
  m.label = "R" + std::to_string(i);
  return m;
}

GradedBimodule shift(GradedBimodule m, int n) {
  for (int& x : m.degrees) x -= n;
  if (n) m.label += "(" + std::to_string(n) + ")";
  return m;
}

GradedBimodule direct_sum(const GradedBimodule& a, const GradedBimodule& b) {
  if (a.kind != b.kind || a.generators != b.generators) throw std::invalid_argument("direct sum of different kinds");
  GradedBimodule m;
  m.kind = a.kind;
  m.generators = a.generators;
  m.degrees = a.degrees;
  m.degrees.insert(m.degrees.end(), b.degrees.begin(), b.degrees.end());
  for (std::size_t j = 0; j < a.action.size(); ++j) m.action.push_back(block_diagonal(a.action[j], b.action[j]));
  m.label = a.label + "+" + b.label;
  return m;
}

ActionEvaluator::ActionEvaluator(const GradedBimodule& m) : m_(m), slot_(Polynomial::kVars, -1) {
  if (m.kind != BimoduleKind::full) throw std::invalid_argument("polynomial evaluation needs a full bimodule");
  for (std::size_t j = 0; j < m.generators.size(); ++j) {
    const auto& t = m.generators[j].terms();
    if (t.size() != 1 || !is_one(t[0].second) || Polynomial::total(t[0].first) != 1)
      throw std::invalid_argument("full bimodule generators must be variables");
    for (int v = 0; v < Polynomial::kVars; ++v)
      if (Polynomial::exponent(t[0].first, v) == 1) slot_[v] = static_cast<int>(j);
  }
  cache_.emplace(0, poly_identity(m.rank()));
}

const PolyMatrix& ActionEvaluator::monomial(Polynomial::Monomial mono) {
  auto it = cache_.find(mono);
  if (it != cache_.end()) return it->second;
  int v = 0;
  while (Polynomial::exponent(mono, v) == 0) ++v;
  if (slot_[v] < 0) throw std::invalid_argument("variable without a right action");
  std::array<int, Polynomial::kVars> unit{};
  unit[v] = 1;
  Polynomial::Monomial rest = mono - Polynomial::make_monomial(unit);
  PolyMatrix r = poly_mul(monomial(rest), m_.action[slot_[v]]);
  return cache_.emplace(mono, std::move(r)).first->second;
}

PolyMatrix ActionEvaluator::operator()(const Polynomial& p) {
  PolyMatrix out = poly_zero(m_.rank(), m_.rank());
  for (const auto& [mono, c] : p.terms()) {
    const PolyMatrix& a = monomial(mono);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (!a(i, j).is_zero()) out(i, j) += a(i, j).scaled(c);
  }
  return out;
}

GradedBimodule tensor(const RootDatum& d, const GradedBimodule& m, const GradedBimodule& n) {
  (void)d;
  if (m.kind != BimoduleKind::full) throw std::invalid_argument("left tensor factor must be a full bimodule");
  const int rm = m.rank(), rn = n.rank();
  GradedBimodule t;
  t.kind = n.kind;
  t.generators = n.generators;
  t.degrees.resize(rm * rn);
  for (int k = 0; k < rn; ++k)
    for (int l = 0; l < rm; ++l) t.degrees[k * rm + l] = m.degrees[l] + n.degrees[k];
  ActionEvaluator ev(m);
  for (const PolyMatrix& a : n.action) {
    PolyMatrix r = poly_zero(rm * rn, rm * rn);
    for (int i = 0; i < rn; ++i)
      for (int j = 0; j < rn; ++j)
        if (!a(i, j).is_zero()) r.block(i * rm, j * rm, rm, rm) = ev(a(i, j));
    t.action.push_back(std::move(r));
  }
  t.label = m.label + "." + n.label;
  return t;
}

GradedBimodule bott_samelson(const RootDatum& d, const std::vector<int>& word, int omega) {
  GradedBimodule acc = build_graph(d, omega_element(d, omega));
  for (auto it = word.rbegin(); it != word.rend(); ++it) acc = tensor(d, build_R(d, *it), acc);
  acc.label = word_label(word, omega);
  return acc;
}

GradedBimodule asp_identity(const RootDatum& d, int omega) {
  GradedBimodule m;
  m.kind = BimoduleKind::asp;
  m.degrees = {0};
  m.generators = right_generators(d, BimoduleKind::asp);
  const AffineWeylElement w = omega_element(d, omega);
  for (const Polynomial& g : m.generators) m.action.push_back(scalar_matrix(act(d, w, g)));
  m.label = "A@om[" + std::to_string(omega) + "]";
  return m;
}

GradedBimodule asp_apply_R(const RootDatum& d, int i, const GradedBimodule& m) {
  return tensor(d, build_R(d, i), m);
}

bool is_well_formed(const GradedBimodule& m) {
  const int r = m.rank();
  if (m.action.size() != m.generators.size()) return false;
  for (std::size_t j = 0; j < m.action.size(); ++j) {
    const PolyMatrix& a = m.action[j];
    if (a.rows() != r || a.cols() != r) return false;
    const int dg = m.generators[j].degree();
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) {
        const Polynomial& e = a(k, l);
        if (e.is_zero()) continue;
        if (!e.is_homogeneous() || e.degree() != dg + m.degrees[l] - m.degrees[k]) return false;
      }
    if (m.generators[j] == Polynomial::u()) {
      PolyMatrix uu = poly_identity(r);
      for (int k = 0; k < r; ++k) uu(k, k) = Polynomial::u();
      if (!poly_equal(a, uu)) return false;
    }
  }
  for (std::size_t i = 0; i < m.action.size(); ++i)
    for (std::size_t j = i + 1; j < m.action.size(); ++j)
      if (!poly_equal(poly_mul(m.action[i], m.action[j]), poly_mul(m.action[j], m.action[i]))) return false;
  return true;
}

bool bimodule_equal(const GradedBimodule& a, const GradedBimodule& b) {
  if (a.kind != b.kind || a.degrees != b.degrees || a.generators != b.generators) return false;
  for (std::size_t j = 0; j < a.action.size(); ++j)
    if (!poly_equal(a.action[j], b.action[j])) return false;
  return true;
}

int min_degree(const GradedBimodule& m) {
  return m.degrees.empty() ? 0 : *std::min_element(m.degrees.begin(), m.degrees.end());
}

int max_degree(const GradedBimodule& m) {
  return m.degrees.empty() ? 0 : *std::max_element(m.degrees.begin(), m.degrees.end());
}

std::vector<int> graded_rank(const GradedBimodule& m) {
  if (m.degrees.empty()) return {};
  const int lo = min_degree(m);
  std::vector<int> out(max_degree(m) - lo + 1, 0);
  for (int x : m.degrees) ++out[x - lo];
  return out;
}

bool is_bimodule_map(const GradedBimodule& src, const GradedBimodule& tgt, const PolyMatrix& f, int degree) {
  if (f.rows() != tgt.rank() || f.cols() != src.rank()) return false;
  if (src.generators != tgt.generators) return false;
  for (int k = 0; k < f.rows(); ++k)
    for (int l = 0; l < f.cols(); ++l) {
      const Polynomial& e = f(k, l);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous() || e.degree() != src.degrees[l] - tgt.degrees[k] + degree) return false;
    }
  for (std::size_t j = 0; j < src.action.size(); ++j)
    if (!poly_equal(poly_mul(f, src.action[j]), poly_mul(tgt.action[j], f))) return false;
  return true;
}

PolyMatrix unit_map(const RootDatum& d, int i) {
  PolyMatrix f(2, 1);
  f << alpha_elt(d, i), Polynomial(1);
  return f;
}

PolyMatrix counit_map(const RootDatum& d, int i) {
  PolyMatrix f(1, 2);
  f << Polynomial(1), alpha_elt(d, i);
  return f;
}

PolyMatrix tensor_map_left(const PolyMatrix& f, int rank_y) {
  const int r1 = static_cast<int>(f.rows()), r0 = static_cast<int>(f.cols());
  PolyMatrix out = poly_zero(r1 * rank_y, r0 * rank_y);
  for (int k = 0; k < rank_y; ++k) out.block(k * r1, k * r0, r1, r0) = f;
  return out;
}

PolyMatrix tensor_map_right(const GradedBimodule& x, const PolyMatrix& h) {
  const int rx = x.rank();
  PolyMatrix out = poly_zero(static_cast<int>(h.rows()) * rx, static_cast<int>(h.cols()) * rx);
  ActionEvaluator ev(x);
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      if (!h(i, j).is_zero()) out.block(i * rx, j * rx, rx, rx) = ev(h(i, j));
  return out;
}

std::vector<PolyMatrix> hom_basis(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt,
                                  int degree) {
  if (src.generators != tgt.generators) throw std::invalid_argument("Hom between modules of different kinds");
  MapSystem sys(left_variables(d));
  int h = sys.add_map(src.degrees, tgt.degrees, degree);
  for (std::size_t j = 0; j < src.action.size(); ++j) {
    int fam = sys.new_family();
    sys.add_term(fam, h, nullptr, &src.action[j], 1);
    sys.add_term(fam, h, &tgt.action[j], nullptr, -1);
  }
  std::vector<PolyMatrix> out;
  if (sys.unknowns() == 0) return out;
  for (const SparseVector& v : sys.solve()) out.push_back(sys.realize(h, v));
  return out;
}

std::vector<int> hom_degree_zero(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt,
                                int cutoff) {
  std::vector<int> out;
  for (int deg = 0; deg <= cutoff; ++deg) out.push_back(static_cast<int>(hom_basis(d, src, tgt, deg).size()));
  return out;
}

QMatrix constant_part(const PolyMatrix& f) {
  QMatrix c = q_zero(static_cast<int>(f.rows()), static_cast<int>(f.cols()));
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) c(i, j) = f(i, j).constant_term();
  return c;
}

bool is_isomorphism(const PolyMatrix& f) {
  if (f.rows() != f.cols()) return false;
  QMatrix inv;
  return q_inverse(constant_part(f), inv);
}

namespace {

PolyMatrix to_poly(const QMatrix& q) {
  PolyMatrix m = poly_zero(static_cast<int>(q.rows()), static_cast<int>(q.cols()));
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j)
      if (!cah::is_zero(q(i, j))) m(i, j) = Polynomial(q(i, j));
  return m;
}

bool is_zero_matrix(const PolyMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

}  // namespace

PolyMatrix invert_isomorphism(const PolyMatrix& f) {
  QMatrix c = constant_part(f), ci;
  if (f.rows() != f.cols() || !q_inverse(c, ci)) throw std::invalid_argument("map is not an isomorphism");
  // f = c(1 + c⁻¹n) with c⁻¹n nilpotent, so f⁻¹ = Σ (−c⁻¹n)^k c⁻¹.
  const PolyMatrix g0 = to_poly(ci);
  PolyMatrix n = f;
  for (int i = 0; i < n.rows(); ++i)
    for (int j = 0; j < n.cols(); ++j) n(i, j) -= Polynomial(c(i, j));
  PolyMatrix step = poly_mul(g0, n);
  for (int i = 0; i < step.rows(); ++i)
    for (int j = 0; j < step.cols(); ++j) step(i, j) = -step(i, j);
  PolyMatrix term = g0, sum = g0;
  for (int k = 0; k <= f.rows() + 1; ++k) {
    term = poly_mul(step, term);
    if (is_zero_matrix(term)) return sum;
    sum += term;
  }
  throw std::logic_error("Neumann series did not terminate");
}

std::optional<PolyMatrix> find_isomorphism(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt) {
  if (src.rank() != tgt.rank() || graded_rank(src) != graded_rank(tgt) || min_degree(src) != min_degree(tgt))
    return std::nullopt;
  auto basis = hom_basis(d, src, tgt, 0);
  if (basis.empty()) return std::nullopt;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(1, 97);
  for (int attempt = 0; attempt < 4; ++attempt) {
    PolyMatrix f = poly_zero(tgt.rank(), src.rank());
    for (const PolyMatrix& b : basis) {
      Rational c(Integer(attempt == 0 && basis.size() == 1 ? 1 : coef(rng)));
      for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j)
          if (!b(i, j).is_zero()) f(i, j) += b(i, j).scaled(c);
    }
    if (is_isomorphism(f)) return f;
  }
  return std::nullopt;
}

namespace {

// Coordinates of a vector of polynomials in V_deg = ⊕_l A_{deg − degrees[l]}.
struct GradedPiece {
  std::vector<int> offset;
  std::vector<std::vector<Polynomial::Monomial>> monos;
  int dim = 0;

  GradedPiece(const std::vector<int>& vars, const std::vector<int>& degrees, int deg) {
    for (int dl : degrees) {
      offset.push_back(dim);
      monos.push_back(monomials_of_degree(vars, deg - dl));
      dim += static_cast<int>(monos.back().size());
    }
  }

  std::vector<Polynomial> vector_of(int index) const {
    std::vector<Polynomial> v(offset.size());
    for (std::size_t l = 0; l < offset.size(); ++l)
      if (index >= offset[l] && index < offset[l] + static_cast<int>(monos[l].size()))
        v[l] = Polynomial::term(monos[l][index - offset[l]], Rational(1));
    return v;
  }

  std::vector<Polynomial> from_coordinates(const SparseVector& x) const {
    std::vector<Polynomial> v(offset.size());
    for (const auto& [c, val] : x)
      for (std::size_t l = 0; l < offset.size(); ++l)
        if (c >= offset[l] && c < offset[l] + static_cast<int>(monos[l].size())) {
          v[l] += Polynomial::term(monos[l][c - offset[l]], val);
          break;
        }
    return v;
  }

  SparseVector coordinates(const std::vector<Polynomial>& v) const {
    SparseVector out;
    for (std::size_t l = 0; l < v.size(); ++l)
      for (const auto& [m, c] : v[l].terms()) {
        auto it = std::lower_bound(monos[l].begin(), monos[l].end(), m);
        if (it == monos[l].end() || *it != m) throw std::logic_error("vector outside graded piece");
        out.emplace_back(offset[l] + static_cast<int>(it - monos[l].begin()), c);
      }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
};

std::vector<Polynomial> apply_matrix(const PolyMatrix& a, const std::vector<Polynomial>& v) {
  std::vector<Polynomial> out(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

// Rank of the images of the basis of a graded piece: columns are the basis
// vectors, rows the (component, monomial) coordinates of the images.
// Equations f·x over a graded piece of a free left module, one row per
// (component, monomial).
SparseSystem piece_system(const PolyMatrix& f, const GradedPiece& piece) {
  SparseSystem s;
  s.cols = piece.dim;
  std::map<std::pair<int, Polynomial::Monomial>, int> row_of;
  for (std::size_t l = 0; l < piece.monos.size(); ++l)
    for (std::size_t i = 0; i < piece.monos[l].size(); ++i) {
      const int c = piece.offset[l] + static_cast<int>(i);
      for (int k = 0; k < f.rows(); ++k)
        for (const auto& [nu, x] : f(k, static_cast<int>(l)).terms()) {
          auto key = std::make_pair(k, Polynomial::multiply(nu, piece.monos[l][i]));
          auto [it, ins] = row_of.emplace(key, static_cast<int>(s.rows.size()));
          if (ins) s.rows.emplace_back();
          s.rows[it->second].emplace_back(c, x);
        }
    }
  return s;
}

struct LeftKernel {
  std::vector<int> dims;  // per degree lo..hi
  std::vector<int> degrees;
  std::vector<std::vector<Polynomial>> gens;
};

// Kernel of a left-linear f on the free module with the given degrees, with
// minimal generators in degrees lo..hi.
LeftKernel left_kernel(const std::vector<int>& vars, const std::vector<int>& degrees, const PolyMatrix& f, int lo,
                       int hi) {
  LeftKernel k;
  for (int t = lo; t <= hi; ++t) {
    GradedPiece piece(vars, degrees, t);
    if (piece.dim == 0) {
      k.dims.push_back(0);
      continue;
    }
    auto basis = nullspace(piece_system(f, piece));
    k.dims.push_back(static_cast<int>(basis.size()));
    std::vector<SparseVector> span;
    for (std::size_t g = 0; g < k.gens.size(); ++g)
      for (auto mono : monomials_of_degree(vars, t - k.degrees[g])) {
        std::vector<Polynomial> v(degrees.size());
        for (std::size_t l = 0; l < v.size(); ++l) v[l] = Polynomial::term(mono, Rational(1)) * k.gens[g][l];
        span.push_back(piece.coordinates(v));
      }
    int r = span.empty() ? 0 : span_rank(span, piece.dim);
    if (r == static_cast<int>(basis.size())) continue;
    for (const SparseVector& x : basis) {
      span.push_back(x);
      int r2 = span_rank(span, piece.dim);
      if (r2 == r) {
        span.pop_back();
        continue;
      }
      r = r2;
      k.gens.push_back(piece.from_coordinates(x));
      k.degrees.push_back(t);
    }
  }
  return k;
}

// Replaces (ρ, degrees) by the action on the quotient by the kernel, which
// must be a direct summand stable under ρ.
bool quotient_by(const LeftKernel& ker, PolyMatrix& rho, std::vector<int>& degrees) {
  const int r = static_cast<int>(degrees.size()), k = static_cast<int>(ker.gens.size());
  if (k == 0) return true;
  QMatrix c = q_zero(r, k + r);
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < r; ++l)
      if (degrees[l] == ker.degrees[j]) c(l, j) = ker.gens[j][l].constant_term();
  for (int l = 0; l < r; ++l) c(l, k + l) = Rational(1);
  std::vector<int> piv = q_pivot_columns(c);
  if (static_cast<int>(piv.size()) != r) return false;
  for (int j = 0; j < k; ++j)
    if (piv[j] != j) return false;
  PolyMatrix p = poly_zero(r, r);
  std::vector<int> rest;
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < r; ++l) p(l, j) = ker.gens[j][l];
  for (int j = k; j < r; ++j) {
    const int e = piv[j] - k;
    p(e, j) = Polynomial(Rational(1));
    rest.push_back(degrees[e]);
  }
  PolyMatrix conj = poly_mul(invert_isomorphism(p), poly_mul(rho, p));
  for (int i = k; i < r; ++i)
    for (int j = 0; j < k; ++j)
      if (!conj(i, j).is_zero()) return false;
  rho = conj.bottomRightCorner(r - k, r - k);
  degrees = rest;
  return true;
}

}  // namespace

std::optional<Submodule> kernel_module(const RootDatum& d, const GradedBimodule& src, const GradedBimodule& tgt,
                                       const PolyMatrix& f) {
  if (f.rows() != tgt.rank() || f.cols() != src.rank()) throw std::invalid_argument("map has wrong shape");
  const std::vector<int> vars = left_variables(d);
  const int lo = min_degree(src), hi = max_degree(src) + 2, check_hi = hi + 4;
  std::vector<std::vector<Polynomial>> gens;
  std::vector<int> gen_degrees;
  auto kernel_in = [&](int deg) {
    GradedPiece piece(vars, src.degrees, deg);
    std::vector<std::vector<Polynomial>> images;
    for (int c = 0; c < piece.dim; ++c) images.push_back(apply_matrix(f, piece.vector_of(c)));
    SparseSystem s;
    s.cols = piece.dim;
    std::map<std::pair<int, Polynomial::Monomial>, int> row_of;
    for (int c = 0; c < piece.dim; ++c)
      for (std::size_t k = 0; k < images[c].size(); ++k)
        for (const auto& [m, x] : images[c][k].terms()) {
          auto [it, ins] = row_of.emplace(std::make_pair(static_cast<int>(k), m), static_cast<int>(s.rows.size()));
          if (ins) s.rows.emplace_back();
          s.rows[it->second].emplace_back(c, x);
        }
    return std::make_pair(piece, piece.dim == 0 ? std::vector<SparseVector>{} : nullspace(s));
  };
  for (int deg = lo; deg <= check_hi; ++deg) {
    auto [piece, ker] = kernel_in(deg);
    // Span of what existing generators produce in this degree.
    std::vector<SparseVector> generated;
    for (std::size_t t = 0; t < gens.size(); ++t)
      for (auto m : monomials_of_degree(vars, deg - gen_degrees[t])) {
        std::vector<Polynomial> v = gens[t];
        Polynomial mono = Polynomial::term(m, Rational(1));
        for (auto& p : v) p = p * mono;
        generated.push_back(piece.coordinates(v));
      }
    int have = generated.empty() ? 0 : span_rank(generated, piece.dim);
    if (deg > hi) {
      if (have != static_cast<int>(ker.size())) return std::nullopt;
      continue;
    }
    for (const SparseVector& k : ker) {
      generated.push_back(k);
      int r = span_rank(generated, piece.dim);
      if (r == have) {
        generated.pop_back();
        continue;
      }
      have = r;
      std::vector<Polynomial> v(src.rank());
      for (const auto& [c, x] : k) {
        auto basis = piece.vector_of(c);
        for (int l = 0; l < src.rank(); ++l)
          if (!basis[l].is_zero()) v[l] += basis[l].scaled(x);
      }
      gens.push_back(v);
      gen_degrees.push_back(deg);
    }
  }
  // Freeness: the generators must be independent over A.
  for (int deg = lo; deg <= check_hi; ++deg) {
    int expected = 0;
    for (int gd : gen_degrees) expected += static_cast<int>(monomials_of_degree(vars, deg - gd).size());
    GradedPiece piece(vars, src.degrees, deg);
    std::vector<SparseVector> generated;
    for (std::size_t t = 0; t < gens.size(); ++t)
      for (auto m : monomials_of_degree(vars, deg - gen_degrees[t])) {
        std::vector<Polynomial> v = gens[t];
        Polynomial mono = Polynomial::term(m, Rational(1));
        for (auto& p : v) p = p * mono;
        generated.push_back(piece.coordinates(v));
      }
    int have = generated.empty() ? 0 : span_rank(generated, piece.dim);
    if (have != expected) return std::nullopt;
  }
  Submodule out;
  const int n = static_cast<int>(gens.size());
  out.inclusion = poly_zero(src.rank(), n);
  for (int t = 0; t < n; ++t)
    for (int l = 0; l < src.rank(); ++l) out.inclusion(l, t) = gens[t][l];
  out.module.kind = src.kind;
  out.module.generators = src.generators;
  out.module.degrees = gen_degrees;
  out.module.label = "ker";
  // Right action: K·ρ'(g) = ρ(g)·K, solved for ρ'(g).
  for (std::size_t j = 0; j < src.action.size(); ++j) {
    // Unknowns X and a scalar c with K·X − c·ρ(g)·K = 0; c = 1 after scaling.
    MapSystem sys2(vars);
    int hx = sys2.add_map(gen_degrees, gen_degrees, src.generators[j].degree());
    int hc = sys2.add_map({0}, {0}, 0);
    int fam = sys2.new_family();
    sys2.add_term(fam, hx, &out.inclusion, nullptr, 1);
    PolyMatrix rhs = poly_mul(src.action[j], out.inclusion);
    for (int t = 0; t < n; ++t) {
      PolyMatrix col = rhs.col(t);
      PolyMatrix sel = poly_zero(1, n);
      sel(0, t) = Polynomial(1);
      sys2.add_term(fam, hc, &col, &sel, -1);
    }
    auto sol = sys2.solve();
    std::optional<PolyMatrix> found;
    for (const SparseVector& v : sol) {
      PolyMatrix c = sys2.realize(hc, v);
      if (c(0, 0).is_zero()) continue;
      Rational inv = Rational(1) / c(0, 0).constant_term();
      PolyMatrix x = sys2.realize(hx, v);
      for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) x(i, j) = x(i, j).scaled(inv);
      found = x;
      break;
    }
    if (!found) return std::nullopt;
    out.module.action.push_back(*found);
  }
  return out;
}

std::vector<AffineWeylElement> subword_candidates(const RootDatum& d, const std::vector<int>& word, int omega) {
  std::vector<AffineWeylElement> out;
  const int k = static_cast<int>(word.size());
  const AffineWeylElement om = omega_element(d, omega);
  for (int mask = 0; mask < (1 << k); ++mask) {
    AffineWeylElement x = weyl_identity(d);
    for (int j = 0; j < k; ++j)
      if (mask & (1 << j)) x = weyl_multiply(d, x, affine_simple_reflection(d, word[j]));
    x = weyl_multiply(d, x, om);
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

std::vector<AffineWeylElement> coset_candidates(const RootDatum& d, const std::vector<AffineWeylElement>& elements) {
  std::vector<AffineWeylElement> out;
  for (const AffineWeylElement& x : elements) {
    AffineWeylElement t = translation_element(d, x.translation);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

namespace {

int coset_length(const RootDatum& d, const AffineWeylElement& t) {
  int best = -1;
  for (FiniteWeylElement w : d.elements()) {
    int l = coxeter_length(d, {t.translation, w});
    if (best < 0 || l < best) best = l;
  }
  return best;
}

}  // namespace

Filtration standard_filtration(const RootDatum& d, const GradedBimodule& m,
                               const std::vector<AffineWeylElement>& candidates_in) {
  Filtration out;
  const bool asp = m.kind == BimoduleKind::asp;
  std::vector<AffineWeylElement> cands;
  for (const auto& c : candidates_in) {
    AffineWeylElement x = asp ? translation_element(d, c.translation) : c;
    if (std::find(cands.begin(), cands.end(), x) == cands.end()) cands.push_back(x);
  }
  if (m.rank() == 0) {
    out.ok = true;
    return out;
  }
  // Generic right generator g with pairwise distinct eigenvalues φ_w(g).
  static const int choices[][3] = {{1, 2, 3}, {2, 3, 5}, {3, 5, 7}, {1, 5, 11}, {7, 3, 13}, {5, 11, 2}};
  PolyMatrix rho;
  std::vector<Polynomial> eig;
  bool found = false;
  for (const auto& ch : choices) {
    Polynomial g;
    rho = poly_zero(m.rank(), m.rank());
    for (std::size_t j = 0; j < m.generators.size(); ++j) {
      Rational c(Integer(ch[j % 3] + static_cast<int>(j / 3)));
      g += m.generators[j].scaled(c);
      for (int r = 0; r < m.rank(); ++r)
        for (int s = 0; s < m.rank(); ++s)
          if (!m.action[j](r, s).is_zero()) rho(r, s) += m.action[j](r, s).scaled(c);
    }
    eig.clear();
    for (const auto& w : cands) eig.push_back(act(d, w, g));
    bool distinct = true;
    for (std::size_t a = 0; a < eig.size() && distinct; ++a)
      for (std::size_t b = a + 1; b < eig.size(); ++b)
        if (eig[a] == eig[b]) {
          distinct = false;
          break;
        }
    if (distinct) {
      found = true;
      break;
    }
  }
  if (!found) {
    out.failure = "no generic element separates the candidates";
    return out;
  }
  // Levels by descending length (of the minimal coset element for asp).
  std::vector<int> len;
  for (const auto& w : cands) len.push_back(asp ? coset_length(d, w) : coxeter_length(d, w));
  std::vector<int> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return len[a] > len[b]; });

  const std::vector<int> vars = left_variables(d);
  const int lo = min_degree(m), hi = max_degree(m);
  const int ndeg = hi - lo + 1;
  std::vector<int> total(ndeg);
  for (int t = 0; t < ndeg; ++t) total[t] = GradedPiece(vars, m.degrees, lo + t).dim;

  // Level by level, pass to the quotient by the part supported on the level;
  // only the action of g is carried along.
  PolyMatrix rq = rho;
  std::vector<int> dq = m.degrees;
  auto kernel_dims = [&](const PolyMatrix& f) {
    std::vector<int> h(ndeg, 0);
    for (int t = 0; t < ndeg; ++t) {
      GradedPiece piece(vars, dq, lo + t);
      if (piece.dim) h[t] = piece.dim - rank(piece_system(f, piece));
    }
    return h;
  };
  std::vector<int> covered(ndeg, 0);
  std::vector<std::vector<int>> delta(cands.size(), std::vector<int>(ndeg, 0));
  std::size_t pos = 0;
  while (pos < order.size() && !dq.empty()) {
    std::size_t end = pos;
    while (end < order.size() && len[order[end]] == len[order[pos]]) ++end;
    std::vector<int> level_sum(ndeg, 0);
    PolyMatrix prod = poly_identity(static_cast<int>(dq.size()));
    for (std::size_t q = pos; q < end; ++q) {
      const int w = order[q];
      PolyMatrix fw = rq;
      for (int k = 0; k < fw.rows(); ++k) fw(k, k) -= eig[w];
      delta[w] = kernel_dims(fw);
      for (int t = 0; t < ndeg; ++t) level_sum[t] += delta[w][t];
      prod = poly_mul(prod, fw);
    }
    LeftKernel ker = left_kernel(vars, dq, prod, lo, hi);
    if (ker.dims != level_sum) {
      out.failure = "level does not split into graph pieces";
      return out;
    }
    for (int t = 0; t < ndeg; ++t) covered[t] += level_sum[t];
    if (!quotient_by(ker, rq, dq)) {
      out.failure = "level is not a direct summand";
      return out;
    }
    pos = end;
  }
  if (covered != total || !dq.empty()) {
    out.failure = "candidates do not cover the support";
    return out;
  }
  // Multiplicities: ΔH·(1 − t²)^{#vars}, truncated at the top generator degree.
  const int nv = static_cast<int>(vars.size());
  std::vector<long long> binom(nv + 1, 1);
  for (int k = 1; k <= nv; ++k) binom[k] = binom[k - 1] * (nv - k + 1) / k;
  std::vector<int> rank_sum(ndeg, 0);
  for (int w : order) {
    LaurentScalar p;
    bool any = false;
    for (int t = 0; t < ndeg; ++t) {
      long long mult = 0;
      for (int k = 0; k <= nv && 2 * k <= t; ++k) mult += (k % 2 ? -1 : 1) * binom[k] * delta[w][t - 2 * k];
      if (mult < 0) {
        out.failure = "negative multiplicity";
        return out;
      }
      if (mult) {
        p += LaurentScalar::monomial(lo + t, Integer(mult));
        rank_sum[t] += static_cast<int>(mult);
        any = true;
      }
    }
    if (any) out.entries.emplace_back(cands[w], p);
  }
  std::vector<int> gr(ndeg, 0);
  for (int x : m.degrees) ++gr[x - lo];
  if (rank_sum != gr) {
    out.entries.clear();
    out.failure = "graded ranks do not match";
    return out;
  }
  out.ok = true;
  return out;
}

GradedBimodule finite_R(const RootDatum& d, int k) {
  // For linear g and β̌ = coroot of the root β: s(g) = g − <β, g> β̌, so
  // g = P + Qβ̌ with Q = <β, g>/2 and P = g − Qβ̌, and β̌g = β̌²Q + Pβ̌.
  const Weight& root = d.positive_roots().at(k);
  const Polynomial b = coroot_form(d.positive_coroots().at(k));
  GradedBimodule m;
  m.degrees = {0, 2};
  for (int j = 0; j < d.rank(); ++j) {
    int pair = 0;
    for (int i = 0; i < d.rank(); ++i) pair += root[i] * d.cartan()(j, i);
    Rational q(Integer(pair), Integer(2));
    Polynomial g = Polynomial::x(j);
    Polynomial p = g - b.scaled(q);
    PolyMatrix a(2, 2);
    a << p, (b * b).scaled(q), Polynomial(q), p;
    m.generators.push_back(g);
    m.action.push_back(a);
  }
  m.label = "Rfin";
  return m;
}

GradedBimodule finite_reflection_bimodule(const RootDatum& d, int i) {
  if (!d.is_affine_node(i)) {
    const Weight e = Weight::Unit(d.rank(), i - 1);
    for (int k = 0; k < static_cast<int>(d.positive_roots().size()); ++k)
      if (same_weight(d.positive_roots()[k], e)) return finite_R(d, k);
    throw std::logic_error("simple root missing from the root list");
  }
  return finite_R(d, d.affine_theta_index(i));
}

GradedBimodule finite_bott_samelson(const RootDatum& d, const std::vector<int>& word) {
  // Left fold with its own Kronecker-style evaluation of entries.
  GradedBimodule acc;
  acc.degrees = {0};
  for (int j = 0; j < d.rank(); ++j) {
    acc.generators.push_back(Polynomial::x(j));
    acc.action.push_back(scalar_matrix(Polynomial::x(j)));
  }
  for (int i : word) {
    GradedBimodule r = finite_reflection_bimodule(d, i);
    const int ra = acc.rank();
    GradedBimodule next;
    next.generators = acc.generators;
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < ra; ++l) next.degrees.push_back(acc.degrees[l] + r.degrees[k]);
    for (int j = 0; j < d.rank(); ++j) {
      PolyMatrix big = poly_zero(2 * ra, 2 * ra);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          // Evaluate r.action[j](a, b) on acc by direct substitution of matrices.
          const Polynomial& p = r.action[j](a, b);
          PolyMatrix val = poly_zero(ra, ra);
          for (const auto& [mono, c] : p.terms()) {
            PolyMatrix prod = poly_identity(ra);
            for (int v = 0; v < d.rank(); ++v)
              for (int e = 0; e < Polynomial::exponent(mono, v); ++e) prod = poly_mul(prod, acc.action[v]);
            for (int x = 0; x < ra; ++x)
              for (int y = 0; y < ra; ++y)
                if (!prod(x, y).is_zero()) val(x, y) += prod(x, y).scaled(c);
          }
          big.block(a * ra, b * ra, ra, ra) = val;
        }
      next.action.push_back(big);
    }
    acc = std::move(next);
  }
  acc.label = "finite";
  return acc;
}

GradedBimodule specialize_u_zero(const GradedBimodule& m) {
  GradedBimodule out;
  out.kind = m.kind;
  out.degrees = m.degrees;
  out.label = m.label;
  for (std::size_t j = 0; j < m.generators.size(); ++j) {
    if (m.generators[j] == Polynomial::u()) continue;
    out.generators.push_back(m.generators[j].at_u_zero());
    out.action.push_back(poly_at_u_zero(m.action[j]));
  }
  return out;
}

std::string format_bimodule(const GradedBimodule& m) {
  std::ostringstream os;
  os << "rank " << m.rank() << "\ndegrees";
  for (int x : m.degrees) os << ' ' << x;
  os << '\n';
  for (std::size_t j = 0; j < m.generators.size(); ++j) {
    os << "action " << m.generators[j].str() << '\n';
    for (int r = 0; r < m.rank(); ++r) {
      os << " ";
      for (int c = 0; c < m.rank(); ++c) os << (c ? " | " : " ") << m.action[j](r, c).str();
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace cah
