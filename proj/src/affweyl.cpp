#include "cah/affweyl.hpp"

#include <cstdlib>
#include <stdexcept>

namespace cah {

AffineWeylElement weyl_identity(const RootDatum& d) { return {d.zero(), d.identity()}; }

AffineWeylElement translation_element(const RootDatum& d, const Weight& lambda) {
  return {lambda, d.identity()};
}

AffineWeylElement finite_element(const RootDatum& d, FiniteWeylElement w) { return {d.zero(), w}; }

AffineWeylElement affine_simple_reflection(const RootDatum& d, int i) {
  if (i < 0 || i >= d.affine_count()) throw std::out_of_range("affine simple index out of range");
  if (!d.is_affine_node(i)) return finite_element(d, d.simple_reflection(i - 1));
  int k = d.affine_theta_index(i);
  return {d.from_root_coords(d.positive_roots()[k]), d.reflection(k)};
}

AffineWeylElement omega_element(const RootDatum& d, int k) {
  const OmegaElement& o = d.omega().at(k);
  return {o.translation, o.finite};
}

AffineWeylElement weyl_multiply(const RootDatum& d, const AffineWeylElement& a, const AffineWeylElement& b) {
  if (a.translation.size() != b.translation.size()) throw std::invalid_argument("root datum mismatch");
  return {a.translation + d.act(a.finite, b.translation), d.multiply(a.finite, b.finite)};
}

AffineWeylElement weyl_inverse(const RootDatum& d, const AffineWeylElement& a) {
  FiniteWeylElement wi = d.inverse(a.finite);
  return {-d.act(wi, a.translation), wi};
}

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

int coxeter_length(const RootDatum& d, const AffineWeylElement& a) {
  // Generic point p of the fundamental alcove: <p, α̌_i> = (i+1)/scale.
  constexpr long long scale = 1000;
  FiniteWeylElement winv = d.inverse(a.finite);
  long long len = 0;
  for (const Weight& co : d.positive_coroots()) {
    Weight pulled = d.act_on_coroot(winv, co);
    long long n = scale * d.pairing_with_coroot(a.translation, co);
    for (int i = 0; i < d.rank(); ++i) n += static_cast<long long>(pulled[i]) * (i + 1);
    len += std::abs(floor_div(n, scale));
  }
  return static_cast<int>(len);
}

int omega_component(const RootDatum& d, const AffineWeylElement& a) {
  return d.omega_index_of_coset(a.translation);
}

int omega_inverse_index(const RootDatum& d, int k) {
  AffineWeylElement inv = weyl_inverse(d, omega_element(d, k));
  for (int j = 0; j < static_cast<int>(d.omega().size()); ++j)
    if (omega_element(d, j) == inv) return j;
  throw std::logic_error("Ω is not closed under inversion");
}

std::vector<AffineWeylElement> affine_ball(const RootDatum& d, int radius) {
  std::vector<AffineWeylElement> out;
  std::vector<Weight> pts;
  if (d.rank() == 1) {
    for (int a = -radius; a <= radius; ++a) pts.push_back(Weight::Constant(1, a));
  } else {
    for (int a = -radius; a <= radius; ++a)
      for (int b = -radius; b <= radius; ++b)
        if (std::abs(a) + std::abs(b) <= radius) {
          Weight w(2);
          w << a, b;
          pts.push_back(w);
        }
  }
  for (const Weight& p : pts)
    for (FiniteWeylElement w : d.elements()) out.push_back({p, w});
  return out;
}

std::string format_affine(const RootDatum& d, const AffineWeylElement& a) {
  std::string s = "t[" + format_weight(a.translation) + "]*w[";
  const auto& word = d.word(a.finite);
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) s += ".";
    s += std::to_string(word[k] + 1);
  }
  return s + "]";
}

BraidWord braid_inverse(const RootDatum& d, const BraidWord& w) {
  BraidWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    BraidLetter l = *it;
    switch (l.kind) {
      case BraidLetter::Kind::Ts: l.power = -l.power; break;
      case BraidLetter::Kind::Theta: l.weight = -l.weight; break;
      case BraidLetter::Kind::Omega: l.index = omega_inverse_index(d, l.index); break;
    }
    out.push_back(l);
  }
  return out;
}

BraidWord braid_concat(BraidWord a, const BraidWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

AffineWeylElement braid_to_weyl(const RootDatum& d, const BraidWord& w) {
  AffineWeylElement x = weyl_identity(d);
  for (const BraidLetter& l : w) {
    switch (l.kind) {
      case BraidLetter::Kind::Ts: x = weyl_multiply(d, x, affine_simple_reflection(d, l.index)); break;
      case BraidLetter::Kind::Theta: x = weyl_multiply(d, x, translation_element(d, l.weight)); break;
      case BraidLetter::Kind::Omega: x = weyl_multiply(d, x, omega_element(d, l.index)); break;
    }
  }
  return x;
}

BraidWord positive_lift(const RootDatum& d, const AffineWeylElement& a) {
  int k = omega_component(d, a);
  AffineWeylElement x = weyl_multiply(d, a, weyl_inverse(d, omega_element(d, k)));
  BraidWord out;
  int len = coxeter_length(d, x);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i < d.affine_count() && !found; ++i) {
      AffineWeylElement y = weyl_multiply(d, affine_simple_reflection(d, i), x);
      int ly = coxeter_length(d, y);
      if (ly < len) {
        out.push_back(BraidLetter::ts(i));
        x = y;
        len = ly;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no left descent for element of positive length");
  }
  if (k != 0) out.push_back(BraidLetter::omega(k));
  return out;
}

BraidWord negative_lift(const RootDatum& d, const AffineWeylElement& a) {
  return braid_inverse(d, positive_lift(d, weyl_inverse(d, a)));
}

namespace {

BraidWord finite_positive_word(FiniteWeylElement w, const RootDatum& d) {
  BraidWord out;
  for (int i : d.word(w)) out.push_back(BraidLetter::ts(i + 1));
  return out;
}

}  // namespace

BraidWord expand_to_bernstein(const RootDatum& d, const BraidWord& w) {
  BraidWord out;
  for (const BraidLetter& l : w) {
    if (l.kind == BraidLetter::Kind::Ts && d.is_affine_node(l.index)) {
      AffineWeylElement s = affine_simple_reflection(d, l.index);
      BraidWord t0{BraidLetter::theta(s.translation)};
      t0 = braid_concat(t0, braid_inverse(d, finite_positive_word(s.finite, d)));
      out = braid_concat(out, l.power > 0 ? t0 : braid_inverse(d, t0));
    } else if (l.kind == BraidLetter::Kind::Omega) {
      if (l.index == 0) continue;
      AffineWeylElement o = omega_element(d, l.index);
      BraidWord om{BraidLetter::theta(o.translation)};
      om = braid_concat(om, braid_inverse(d, finite_positive_word(d.inverse(o.finite), d)));
      out = braid_concat(out, om);
    } else {
      out.push_back(l);
    }
  }
  return out;
}

ThetaNormalForm theta_normal_form(const RootDatum& d, const BraidWord& w, int budget) {
  ThetaNormalForm nf;
  nf.lambda = d.zero();
  auto spend = [&]() { return ++nf.steps <= budget; };
  for (const BraidLetter& l : expand_to_bernstein(d, w)) {
    if (l.kind == BraidLetter::Kind::Ts) {
      if (!nf.residue.empty() && nf.residue.back().index == l.index && nf.residue.back().power == -l.power) {
        nf.residue.pop_back();
      } else {
        nf.residue.push_back(l);
      }
      if (!spend()) {
        nf.status = ThetaNormalForm::Status::budget_exhausted;
        return nf;
      }
      continue;
    }
    // Move θ_y leftwards through the finite residue:
    // T^ε θ_y = θ_{s y} T^{ε'} when <y, α̌> ∈ {0, -ε}.
    Weight y = l.weight;
    for (auto it = nf.residue.rbegin(); it != nf.residue.rend(); ++it) {
      if (!spend()) {
        nf.status = ThetaNormalForm::Status::budget_exhausted;
        return nf;
      }
      int i = it->index - 1;
      int p = d.pairing(y, i);
      if (p == 0) continue;
      if (p != -it->power) {
        nf.status = ThetaNormalForm::Status::stuck;
        return nf;
      }
      y = d.act(d.simple_reflection(i), y);
      it->power = -it->power;
    }
    nf.lambda += y;
    BraidWord reduced;
    for (const BraidLetter& t : nf.residue) {
      if (!reduced.empty() && reduced.back().index == t.index && reduced.back().power == -t.power)
        reduced.pop_back();
      else
        reduced.push_back(t);
    }
    nf.residue = std::move(reduced);
  }
  return nf;
}

ConjugationWitness conjugation_witness(const RootDatum& d, int target, int bound) {
  AffineWeylElement s_target = affine_simple_reflection(d, target);
  // BFS over words in Ω letters and affine simple reflections.
  std::vector<AffineWeylElement> frontier{weyl_identity(d)};
  std::vector<AffineWeylElement> seen = frontier;
  auto is_seen = [&](const AffineWeylElement& x) {
    for (const auto& y : seen)
      if (y == x) return true;
    return false;
  };
  std::vector<AffineWeylElement> gens;
  for (int k = 1; k < static_cast<int>(d.omega().size()); ++k) gens.push_back(omega_element(d, k));
  for (int i = 0; i < d.affine_count(); ++i) gens.push_back(affine_simple_reflection(d, i));

  for (int depth = 0; depth <= bound; ++depth) {
    for (const AffineWeylElement& x : frontier) {
      AffineWeylElement xinv = weyl_inverse(d, x);
      for (int a = 1; a <= d.rank(); ++a) {
        AffineWeylElement sa = affine_simple_reflection(d, a);
        if (!(weyl_multiply(d, weyl_multiply(d, xinv, sa), x) == s_target)) continue;
        if (coxeter_length(d, weyl_multiply(d, sa, x)) <= coxeter_length(d, x)) continue;
        return {positive_lift(d, x), a};
      }
    }
    std::vector<AffineWeylElement> next;
    for (const AffineWeylElement& x : frontier)
      for (const AffineWeylElement& g : gens) {
        AffineWeylElement y = weyl_multiply(d, x, g);
        if (is_seen(y)) continue;
        seen.push_back(y);
        next.push_back(y);
      }
    frontier = std::move(next);
  }
  throw std::runtime_error("no conjugation witness within bound " + std::to_string(bound));
}

std::string format_braid(const RootDatum& d, const BraidWord& w) {
  (void)d;
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ".";
    const BraidLetter& l = w[k];
    switch (l.kind) {
      case BraidLetter::Kind::Ts:
        s += "T" + std::to_string(l.index);
        if (l.power != 1) s += "^" + std::to_string(l.power);
        break;
      case BraidLetter::Kind::Theta: s += "th[" + format_weight(l.weight) + "]"; break;
      case BraidLetter::Kind::Omega: s += "om[" + std::to_string(l.index) + "]"; break;
    }
  }
  return s;
}

}  // namespace cah
