#include "cah/polyalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cah {

Polynomial::Polynomial(long long c) : Polynomial(Rational(Integer(c))) {}

Polynomial::Polynomial(const Rational& c) {
  if (!cah::is_zero(c)) terms_.emplace_back(0, c);
}

Polynomial::Monomial Polynomial::make_monomial(const std::array<int, kVars>& e) {
  Monomial m = 0;
  int tot = 0;
  for (int j = 0; j < kVars; ++j) {
    if (e[j] < 0 || e[j] > 255) throw std::out_of_range("exponent out of range");
    m |= static_cast<Monomial>(e[j]) << (8 * j);
    tot += e[j];
  }
  if (tot > 255) throw std::out_of_range("degree out of range");
  return m | (static_cast<Monomial>(tot) << 24);
}

Polynomial Polynomial::variable(int j) {
  std::array<int, kVars> e{};
  e[j] = 1;
  return term(make_monomial(e), 1);
}

Polynomial Polynomial::term(Monomial m, const Rational& c) {
  Polynomial p;
  if (!cah::is_zero(c)) p.terms_.emplace_back(m, c);
  return p;
}

Rational Polynomial::constant_term() const { return coeff(0); }

Rational Polynomial::coeff(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial k) { return t.first < k; });
  return it != terms_.end() && it->first == m ? it->second : Rational(0);
}

int Polynomial::degree() const { return terms_.empty() ? -1 : 2 * total(terms_.back().first); }

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || total(terms_.front().first) == total(terms_.back().first);
}

void Polynomial::add_term(Monomial m, const Rational& c) {
  if (cah::is_zero(c)) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (cah::is_zero(it->second)) terms_.erase(it);
  } else {
    terms_.insert(it, {m, c});
  }
}

namespace {

std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a, const std::vector<Polynomial::Term>& b,
                                    bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, subtract ? -j->second : j->second);
      ++j;
    } else {
      Rational c = subtract ? i->second - j->second : i->second + j->second;
      if (!cah::is_zero(c)) out.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.size() == 1) {
    add_term(o.terms_[0].first, o.terms_[0].second);
  } else if (!o.terms_.empty()) {
    terms_ = merge(terms_, o.terms_, false);
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.size() == 1) {
    add_term(o.terms_[0].first, -o.terms_[0].second);
  } else if (!o.terms_.empty()) {
    terms_ = merge(terms_, o.terms_, true);
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  if (a.is_zero() || b.is_zero()) return out;
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const Polynomial& mono = a.terms_.size() == 1 ? a : b;
    const Polynomial& other = a.terms_.size() == 1 ? b : a;
    const auto& [m, c] = mono.terms_[0];
    out.terms_.reserve(other.terms_.size());
    for (const auto& [n, d] : other.terms_) out.terms_.emplace_back(Polynomial::multiply(m, n), c * d);
    return out;  // multiplying by a monomial preserves the order
  }
  std::vector<Polynomial::Term> all;
  all.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [m, c] : a.terms_)
    for (const auto& [n, d] : b.terms_) all.emplace_back(Polynomial::multiply(m, n), c * d);
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& t : all) {
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
      if (cah::is_zero(out.terms_.back().second)) out.terms_.pop_back();
    } else {
      out.terms_.push_back(t);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out;
  if (cah::is_zero(c)) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [m, x] : terms_) out.terms_.emplace_back(m, x * c);
  return out;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial out(1), base = *this;
  while (k > 0) {
    if (k & 1) out *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return out;
}

Polynomial Polynomial::substitute(const std::array<Polynomial, kVars>& images) const {
  std::array<std::vector<Polynomial>, kVars> powers;
  for (int j = 0; j < kVars; ++j) powers[j].push_back(Polynomial(1));
  auto power = [&](int j, int e) -> const Polynomial& {
    while (static_cast<int>(powers[j].size()) <= e) powers[j].push_back(powers[j].back() * images[j]);
    return powers[j][e];
  };
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial t(c);
    for (int j = 0; j < kVars; ++j) {
      int e = exponent(m, j);
      if (e) t *= power(j, e);
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::at_u_zero() const {
  Polynomial out;
  for (const auto& t : terms_)
    if (exponent(t.first, kU) == 0) out.terms_.push_back(t);
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  static const char* names[kVars] = {"x1", "x2", "u"};
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c < 0 ? -c : c;
    if (it == terms_.rbegin()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int j = 0; j < kVars; ++j) {
      int e = exponent(m, j);
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += names[j];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      s += to_string(a);
    } else if (is_one(a)) {
      s += mono;
    } else {
      s += to_string(a) + "*" + mono;
    }
  }
  return s;
}

Polynomial divide_by_linear(const Polynomial& f, const Polynomial& linear) {
  // Eliminate the highest-indexed variable with a nonzero coefficient.
  int v = -1;
  Rational lead;
  for (const auto& [m, c] : linear.terms()) {
    if (Polynomial::total(m) != 1) throw std::invalid_argument("divisor is not a linear form");
    for (int j = 0; j < Polynomial::kVars; ++j)
      if (Polynomial::exponent(m, j) == 1 && j > v) {
        v = j;
        lead = c;
      }
  }
  if (v < 0) throw std::invalid_argument("division by zero linear form");
  std::array<int, Polynomial::kVars> ev{};
  ev[v] = 1;
  const Polynomial::Monomial mv = Polynomial::make_monomial(ev);

  // Order terms by (exponent of v, monomial) and peel the top one.
  auto key = [&](Polynomial::Monomial m) { return std::make_pair(Polynomial::exponent(m, v), m); };
  std::map<std::pair<int, Polynomial::Monomial>, Rational> rest;
  for (const auto& [m, c] : f.terms()) rest.emplace(key(m), c);
  Polynomial q;
  while (!rest.empty()) {
    auto top = std::prev(rest.end());
    auto [ek, m] = top->first;
    if (ek == 0) throw std::domain_error("polynomial not divisible by linear form");
    Rational c = top->second / lead;
    Polynomial::Monomial mq = m - mv;
    q += Polynomial::term(mq, c);
    for (const auto& [lm, lc] : linear.terms()) {
      auto k = key(Polynomial::multiply(mq, lm));
      auto [it, inserted] = rest.emplace(k, -c * lc);
      if (!inserted) {
        it->second -= c * lc;
        if (cah::is_zero(it->second)) rest.erase(it);
      }
    }
  }
  return q;
}

Polynomial coroot_form(const Weight& coroot) {
  Polynomial p;
  for (int k = 0; k < coroot.size(); ++k)
    if (coroot[k]) p += Polynomial::x(k).scaled(Rational(Integer(coroot[k])));
  return p;
}

std::array<Polynomial, Polynomial::kVars> action_images(const RootDatum& d, const AffineWeylElement& g) {
  std::array<Polynomial, Polynomial::kVars> img;
  const IntMatrix& c = d.coroot_matrix(g.finite);
  for (int i = 0; i < d.rank(); ++i) {
    Polynomial p;
    int shift = 0;
    for (int k = 0; k < d.rank(); ++k) {
      if (!c(k, i)) continue;
      p += Polynomial::x(k).scaled(Rational(Integer(c(k, i))));
      shift += c(k, i) * d.pairing(g.translation, k);
    }
    if (shift) p += Polynomial::u().scaled(Rational(Integer(shift)));
    img[i] = p;
  }
  for (int i = d.rank(); i < Polynomial::kU; ++i) img[i] = Polynomial::x(i);
  img[Polynomial::kU] = Polynomial::u();
  return img;
}

Polynomial act(const RootDatum& d, const AffineWeylElement& g, const Polynomial& f) {
  return f.substitute(action_images(d, g));
}

Polynomial alpha_elt(const RootDatum& d, int i) {
  if (!d.is_affine_node(i)) return Polynomial::x(i - 1);
  return Polynomial::u() + coroot_form(d.positive_coroots()[d.affine_theta_index(i)]);
}

Polynomial reflect(const RootDatum& d, int i, const Polynomial& f) {
  return act(d, affine_simple_reflection(d, i), f);
}

Polynomial demazure(const RootDatum& d, const Polynomial& f, int i) {
  Polynomial diff = f - reflect(d, i, f);
  if (diff.is_zero()) return diff;
  return divide_by_linear(diff, alpha_elt(d, i));
}

std::pair<Polynomial, Polynomial> invariant_split(const RootDatum& d, const Polynomial& f, int i) {
  static const Rational half(Integer(1), Integer(2));
  Polynomial q = demazure(d, f, i).scaled(half);
  Polynomial p = f - alpha_elt(d, i) * q;
  return {p, q};
}

bool is_invariant(const RootDatum& d, const Polynomial& f, int i) { return reflect(d, i, f) == f; }

std::vector<Polynomial> finite_invariants(const RootDatum& d) {
  if (d.type() == CartanType::A1xA1) {
    return {Polynomial::x(0) * Polynomial::x(0), Polynomial::x(1) * Polynomial::x(1)};
  }
  std::vector<int> degrees;
  switch (d.type()) {
    case CartanType::A1: degrees = {2}; break;
    case CartanType::A2: degrees = {2, 3}; break;
    case CartanType::B2: degrees = {2, 4}; break;
    case CartanType::G2: degrees = {2, 6}; break;
    case CartanType::A1xA1: break;
  }
  // ω̌_1 = Σ c_k α̌_k with Σ_k c_k <α_j, α̌_k> = δ_{1j}, i.e. (Aᵀ) c = e_1.
  const IntMatrix& a = d.cartan();
  std::vector<Rational> c(d.rank());
  if (d.rank() == 1) {
    c[0] = Rational(Integer(1), Integer(a(0, 0)));
  } else {
    // Aᵀ = [[a00, a10], [a01, a11]].
    Integer det = Integer(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    c[0] = Rational(Integer(a(1, 1)), det);
    c[1] = Rational(Integer(-a(0, 1)), det);
  }
  Polynomial cow;
  for (int k = 0; k < d.rank(); ++k) cow += Polynomial::x(k).scaled(c[k]);
  std::vector<Polynomial> orbit;
  for (FiniteWeylElement w : d.elements()) {
    Polynomial img = act(d, finite_element(d, w), cow);
    if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(img);
  }
  std::vector<Polynomial> out;
  for (int k : degrees) {
    Polynomial p;
    for (const Polynomial& v : orbit) p += v.pow(k);
    out.push_back(p);
  }
  return out;
}

PolyMatrix poly_zero(int rows, int cols) { return PolyMatrix::Constant(rows, cols, Polynomial()); }

PolyMatrix poly_identity(int n) {
  PolyMatrix m = poly_zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Polynomial(1);
  return m;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch");
  PolyMatrix out = poly_zero(static_cast<int>(a.rows()), static_cast<int>(b.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

bool poly_equal(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

PolyMatrix poly_at_u_zero(const PolyMatrix& a) {
  PolyMatrix out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).at_u_zero();
  return out;
}

}  // namespace cah
