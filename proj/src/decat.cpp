#include "cah/decat.hpp"

#include <deque>
#include <set>

namespace cah {

namespace {

LaurentScalar neg_v_power(int exponent) {
  LaurentScalar c = LaurentScalar::v(exponent);
  return exponent % 2 ? -c : c;
}

void add_scaled(AspElement& acc, const AspElement& m, const LaurentScalar& c) {
  for (const auto& [lambda, x] : m) add_to(acc, lambda, c * x);
}

}  // namespace

HeckeElement standard_class(const RootDatum& d, const AffineWeylElement& w) {
  return braid_image(d, negative_lift(d, w)).scaled(neg_v_power(-coxeter_length(d, w)));
}

AspElement asp_standard_class(const RootDatum& d, const AffineWeylElement& w, SignConvention conv) {
  return asp_act(d, standard_class(d, w), asp_generator(d), conv);
}

std::vector<AffineWeylElement> length_ball(const RootDatum& d, int max_length) {
  std::vector<AffineWeylElement> out;
  std::set<std::string> seen;
  std::deque<std::pair<AffineWeylElement, int>> queue;
  for (int k = 0; k < static_cast<int>(d.omega().size()); ++k) {
    AffineWeylElement om = omega_element(d, k);
    seen.insert(format_affine(d, om));
    out.push_back(om);
    queue.emplace_back(om, 0);
  }
  while (!queue.empty()) {
    auto [x, len] = queue.front();
    queue.pop_front();
    if (len == max_length) continue;
    for (int i = 0; i < d.affine_count(); ++i) {
      AffineWeylElement y = weyl_multiply(d, affine_simple_reflection(d, i), x);
      if (coxeter_length(d, y) != len + 1 || !seen.insert(format_affine(d, y)).second) continue;
      out.push_back(y);
      queue.emplace_back(y, len + 1);
    }
  }
  return out;
}

DecatClass decat_filtration(const RootDatum& d, const Filtration& f, BimoduleKind kind, SignConvention conv) {
  DecatClass c;
  c.ok = f.ok;
  c.failure = f.failure;
  if (!f.ok) return c;
  for (const auto& [w, p] : f.entries) {
    if (kind == BimoduleKind::full)
      c.hecke += standard_class(d, w).scaled(p);
    else
      add_scaled(c.asp, asp_standard_class(d, w, conv), p);
  }
  return c;
}

DecatClass decat_bimodule(const RootDatum& d, const GradedBimodule& m, const std::vector<AffineWeylElement>& candidates,
                          SignConvention conv) {
  std::vector<AffineWeylElement> cand = candidates;
  if (cand.empty()) {
    cand = length_ball(d, (max_degree(m) - min_degree(m)) / 2);
    if (m.kind == BimoduleKind::asp) cand = coset_candidates(d, cand);
  }
  DecatClass c = decat_filtration(d, standard_filtration(d, m, cand), m.kind, conv);
  c.source = m.label;
  return c;
}

DecatClass decat_complex(const RootDatum& d, const BimoduleComplex& cx) {
  DecatClass c;
  c.ok = true;
  for (int t = 0; t < static_cast<int>(cx.terms.size()); ++t)
    for (const GradedBimodule& b : cx.terms[t]) {
      DecatClass x = decat_bimodule(d, b);
      if (!x.ok) {
        c.ok = false;
        c.failure = "term " + std::to_string(cx.lowest + t) + " (" + b.label + "): " + x.failure;
        return c;
      }
      if ((cx.lowest + t) % 2)
        c.hecke -= x.hecke;
      else
        c.hecke += x.hecke;
    }
  return c;
}

CrossCheck cross_check_asp(const RootDatum& d, const std::vector<int>& word, int omega, SignConvention conv) {
  CrossCheck r;
  GradedBimodule m = asp_identity(d, omega);
  for (auto it = word.rbegin(); it != word.rend(); ++it) m = asp_apply_R(d, *it, m);
  DecatClass b = decat_bimodule(d, m, coset_candidates(d, subword_candidates(d, word, omega)), conv);
  if (!b.ok) {
    r.failure = b.failure;
    return r;
  }
  r.bimodule_side = b.asp;

  AspElement h = asp_standard_class(d, omega_element(d, omega), conv);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    AspElement next = h;
    add_scaled(next, asp_act(d, standard_class(d, affine_simple_reflection(d, *it)), h, conv), LaurentScalar::v(2));
    h = next;
  }
  r.hecke_side = h;
  r.equal = r.bimodule_side == r.hecke_side;
  return r;
}

}  // namespace cah
