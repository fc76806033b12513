#include "cah/hecke.hpp"

#include <stdexcept>

namespace cah {

void add_to(CharacterElement& a, const Weight& lambda, const LaurentScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = a.emplace(lambda, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) a.erase(it);
}

CharacterElement character_act(const RootDatum& d, FiniteWeylElement w, const CharacterElement& f) {
  CharacterElement out;
  for (const auto& [lambda, c] : f) add_to(out, d.act(w, lambda), c);
  return out;
}

CharacterElement demazure_lusztig_kernel(const RootDatum& d, const Weight& mu, int s) {
  CharacterElement out;
  const int k = d.pairing(mu, s);
  const Weight alpha = d.simple_root(s);
  if (k > 0) {
    for (int j = 0; j < k; ++j) add_to(out, mu - j * alpha, 1);
  } else if (k < 0) {
    Weight smu = mu - k * alpha;
    for (int j = 0; j < -k; ++j) add_to(out, smu - j * alpha, -1);
  }
  return out;
}

HeckeElement HeckeElement::scalar(const RootDatum& d, const LaurentScalar& c) {
  return basis(d.zero(), d.identity(), c);
}

HeckeElement HeckeElement::basis(const Weight& lambda, FiniteWeylElement w, const LaurentScalar& c) {
  HeckeElement h;
  h.add(lambda, w, c);
  return h;
}

LaurentScalar HeckeElement::coeff(const Weight& lambda, FiniteWeylElement w) const {
  auto it = terms_.find({lambda, w});
  return it == terms_.end() ? LaurentScalar() : it->second;
}

void HeckeElement::add(const Weight& lambda, FiniteWeylElement w, const LaurentScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(Key{lambda, w}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

HeckeElement HeckeElement::scaled(const LaurentScalar& c) const {
  HeckeElement out;
  if (c.is_zero()) return out;
  for (const auto& [k, x] : terms_) out.terms_.emplace(k, x * c);
  return out;
}

bool HeckeElement::operator==(const HeckeElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
    if (!same_weight(a->first.first, b->first.first) || a->first.second != b->first.second ||
        !(a->second == b->second))
      return false;
  return true;
}

HeckeElement hecke_Ts(const RootDatum& d, int s) {
  return HeckeElement::basis(d.zero(), d.simple_reflection(s));
}

HeckeElement hecke_Tw(const RootDatum& d, FiniteWeylElement w) { return HeckeElement::basis(d.zero(), w); }

HeckeElement hecke_inverse_Ts(const RootDatum& d, int s) {
  // From (T_s + 1)(T_s − q) = 0: T_s⁻¹ = q⁻¹T_s + (q⁻¹ − 1).
  HeckeElement h = HeckeElement::basis(d.zero(), d.simple_reflection(s), LaurentScalar::q(-1));
  h.add(d.zero(), d.identity(), LaurentScalar::q(-1) - 1);
  return h;
}

HeckeElement hecke_left_Ts(const RootDatum& d, int s, const HeckeElement& h) {
  // T_s e^ν = e^{sν} T_s + (1 − q)·(e^{sν} − e^ν)/(1 − e^{−α}).
  const FiniteWeylElement sr = d.simple_reflection(s);
  const LaurentScalar one_minus_q = LaurentScalar(1) - LaurentScalar::q(1);
  const LaurentScalar q_minus_one = LaurentScalar::q(1) - 1;
  HeckeElement out;
  for (const auto& [key, c] : h.terms()) {
    const auto& [nu, u] = key;
    Weight snu = d.act(sr, nu);
    FiniteWeylElement su = d.multiply(sr, u);
    if (d.length(su) > d.length(u)) {
      out.add(snu, su, c);
    } else {
      out.add(snu, u, c * q_minus_one);
      out.add(snu, su, c * LaurentScalar::q(1));
    }
    LaurentScalar cc = c * one_minus_q;
    for (const auto& [mu, k] : demazure_lusztig_kernel(d, snu, s)) out.add(mu, u, cc * k);
  }
  return out;
}

HeckeElement hecke_multiply(const RootDatum& d, const HeckeElement& a, const HeckeElement& b) {
  // Group the left factor by its T-part so T_w·b is computed once per w.
  std::map<FiniteWeylElement, std::vector<std::pair<Weight, LaurentScalar>>> by_w;
  for (const auto& [key, c] : a.terms()) by_w[key.second].emplace_back(key.first, c);
  HeckeElement out;
  for (const auto& [w, coeffs] : by_w) {
    HeckeElement twb = b;
    const auto& word = d.word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) twb = hecke_left_Ts(d, *it, twb);
    for (const auto& [lambda, c] : coeffs)
      for (const auto& [key, x] : twb.terms()) out.add(lambda + key.first, key.second, c * x);
  }
  return out;
}

HeckeElement from_T_first(const RootDatum& d, const HeckeElement::Terms& t_first) {
  HeckeElement out;
  for (const auto& [key, c] : t_first)
    out += hecke_multiply(d, hecke_Tw(d, key.second), HeckeElement::theta(key.first)).scaled(c);
  return out;
}

HeckeElement::Terms to_T_first(const RootDatum& d, const HeckeElement& h) {
  // T_w e^{w⁻¹λ} = e^λ T_w + (shorter T-parts): peel off the longest terms.
  HeckeElement rest = h;
  HeckeElement::Terms out;
  while (!rest.is_zero()) {
    auto top = rest.terms().begin();
    for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it)
      if (d.length(it->first.second) > d.length(top->first.second)) top = it;
    Weight lambda = top->first.first;
    FiniteWeylElement w = top->first.second;
    LaurentScalar c = top->second;
    Weight mu = d.act(d.inverse(w), lambda);
    HeckeElement::Terms single;
    single.emplace(HeckeElement::Key{mu, w}, c);
    rest -= from_T_first(d, single);
    auto [it, inserted] = out.emplace(HeckeElement::Key{mu, w}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

AspElement asp_generator(const RootDatum& d) {
  AspElement m;
  m.emplace(d.zero(), 1);
  return m;
}

AspElement asp_act(const RootDatum& d, const HeckeElement& h, const AspElement& m, SignConvention conv) {
  HeckeElement hm;
  for (const auto& [mu, c] : m) hm += hecke_multiply(d, h, HeckeElement::theta(mu)).scaled(c);
  AspElement out;
  for (const auto& [key, c] : hm.terms()) {
    int len = d.length(key.second);
    LaurentScalar chi = conv == SignConvention::sign ? LaurentScalar(len % 2 ? -1 : 1) : LaurentScalar::q(len);
    add_to(out, key.first, c * chi);
  }
  return out;
}

HeckeElement braid_image(const RootDatum& d, const BraidWord& w) {
  HeckeElement out = HeckeElement::scalar(d, 1);
  for (const BraidLetter& l : expand_to_bernstein(d, w)) {
    HeckeElement f;
    if (l.kind == BraidLetter::Kind::Theta) {
      f = HeckeElement::theta(l.weight);
    } else if (l.power > 0) {
      f = hecke_Ts(d, l.index - 1).scaled(LaurentScalar::v(-1));
    } else {
      f = hecke_inverse_Ts(d, l.index - 1).scaled(LaurentScalar::v(1));
    }
    out = hecke_multiply(d, out, f);
  }
  return out;
}

}  // namespace cah
