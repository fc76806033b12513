#include "cah/scalar.hpp"

#include <algorithm>
#include <stdexcept>

namespace cah {

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return r.numerator().str();
  return r.numerator().str() + "/" + r.denominator().str();
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal '" + text + "'");
  }
}

LaurentScalar::LaurentScalar(long long c) {
  if (c != 0) terms_.emplace_back(0, Integer(c));
}

LaurentScalar LaurentScalar::monomial(int exponent, Integer coeff) {
  LaurentScalar s;
  if (coeff != 0) s.terms_.emplace_back(exponent, coeff);
  return s;
}

Integer LaurentScalar::coeff(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return 0;
}

int LaurentScalar::min_exponent() const { return terms_.empty() ? 0 : terms_.front().first; }
int LaurentScalar::max_exponent() const { return terms_.empty() ? 0 : terms_.back().first; }

Integer LaurentScalar::at_one() const {
  Integer s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

void LaurentScalar::add_term(int e, const Integer& c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, int x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{e, c});
  }
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      Integer c = a->second + b->second;
      if (c != 0) out.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) { return *this += -o; }

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  LaurentScalar r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    return LaurentScalar::monomial(a.terms_[0].first + b.terms_[0].first,
                                   a.terms_[0].second * b.terms_[0].second);
  }
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& o) { return *this = *this * o; }

LaurentScalar LaurentScalar::shifted(int k) const {
  LaurentScalar r = *this;
  for (auto& t : r.terms_) t.first += k;
  return r;
}

std::string LaurentScalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (c < 0) out += "-";
    else if (!first) out += "+";
    first = false;
    if (e == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + "*";
    out += "v";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace cah
