#include <doctest.h>

#include "cah/affweyl.hpp"

#include <deque>
#include <map>

using namespace cah;

namespace {

Weight wt(std::initializer_list<int> c) {
  Weight w(static_cast<int>(c.size()));
  int i = 0;
  for (int x : c) w[i++] = x;
  return w;
}

struct AffKey {
  std::vector<int> v;
  bool operator<(const AffKey& o) const { return v < o.v; }
};

AffKey key(const AffineWeylElement& a) {
  AffKey k;
  for (int i = 0; i < a.translation.size(); ++i) k.v.push_back(a.translation[i]);
  k.v.push_back(a.finite.id);
  return k;
}

// Word length in the affine simple reflections, by breadth-first search from
// the Ω-coset representative.
std::map<AffKey, int> bfs_lengths(const RootDatum& d, int max_len) {
  std::map<AffKey, int> dist;
  std::deque<AffineWeylElement> q;
  for (int k = 0; k < static_cast<int>(d.omega().size()); ++k) {
    auto o = omega_element(d, k);
    dist[key(o)] = 0;
    q.push_back(o);
  }
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    int dx = dist[key(x)];
    if (dx == max_len) continue;
    for (int i = 0; i < d.affine_count(); ++i) {
      auto y = weyl_multiply(d, affine_simple_reflection(d, i), x);
      if (dist.emplace(key(y), dx + 1).second) q.push_back(y);
    }
  }
  return dist;
}

const CartanType kTypes[] = {CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2,
                             CartanType::A1xA1};

}  // namespace

TEST_CASE("semidirect product arithmetic") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  auto s = finite_element(a1, a1.simple_reflection(0));
  auto tw = weyl_multiply(a1, translation_element(a1, wt({1})), s);
  CHECK(weyl_multiply(a1, tw, tw) == weyl_identity(a1));
  auto s0 = affine_simple_reflection(a1, 0);
  CHECK(same_weight(s0.translation, wt({2})));
  CHECK(weyl_multiply(a1, s0, s0) == weyl_identity(a1));
  CHECK(weyl_multiply(a1, weyl_identity(a1), tw) == tw);
}

TEST_CASE("coxeter_length agrees with BFS") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  CHECK(coxeter_length(a1, weyl_identity(a1)) == 0);
  CHECK(coxeter_length(a1, affine_simple_reflection(a1, 0)) == 1);
  CHECK(coxeter_length(a1, translation_element(a1, wt({2}))) == 2);
  for (auto t : kTypes)
    for (auto m : {LatticeMode::weight, LatticeMode::root}) {
      RootDatum d(t, m);
      auto dist = bfs_lengths(d, 40);
      for (const auto& a : affine_ball(d, 3)) {
        auto it = dist.find(key(a));
        REQUIRE(it != dist.end());
        CHECK(coxeter_length(d, a) == it->second);
        auto lift = positive_lift(d, a);
        CHECK(braid_to_weyl(d, lift) == a);
        int ts = 0;
        for (const auto& l : lift) ts += l.kind == BraidLetter::Kind::Ts;
        CHECK(ts == it->second);
        CHECK(braid_to_weyl(d, negative_lift(d, a)) == a);
      }
      for (int k = 0; k < static_cast<int>(d.omega().size()); ++k)
        CHECK(coxeter_length(d, omega_element(d, k)) == 0);
    }
}

TEST_CASE("positive_lift examples") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  CHECK(positive_lift(a1, weyl_identity(a1)).empty());
  CHECK(format_braid(a1, positive_lift(a1, translation_element(a1, wt({2})))) == "T0.T1");
  auto tw = weyl_multiply(a1, translation_element(a1, wt({1})), finite_element(a1, a1.simple_reflection(0)));
  CHECK(format_braid(a1, positive_lift(a1, tw)) == "om[1]");
}

TEST_CASE("Ω conjugates affine simple reflections by its permutation") {
  for (auto t : kTypes) {
    RootDatum d(t, LatticeMode::weight);
    for (int k = 0; k < static_cast<int>(d.omega().size()); ++k) {
      auto o = omega_element(d, k);
      auto oi = weyl_inverse(d, o);
      for (int i = 0; i < d.affine_count(); ++i)
        CHECK(weyl_multiply(d, weyl_multiply(d, o, affine_simple_reflection(d, i)), oi) ==
              affine_simple_reflection(d, d.omega()[k].permutation[i]));
      for (int j = 0; j < static_cast<int>(d.omega().size()); ++j) {
        // Ω → Sym is a homomorphism.
        auto oj = omega_element(d, j);
        auto prod = weyl_multiply(d, o, oj);
        int kj = omega_component(d, prod);
        CHECK(omega_element(d, kj) == prod);
        for (int i = 0; i < d.affine_count(); ++i)
          CHECK(d.omega()[kj].permutation[i] == d.omega()[k].permutation[d.omega()[j].permutation[i]]);
      }
    }
  }
}

TEST_CASE("braid relations hold in W'_aff") {
  for (auto t : kTypes) {
    RootDatum d(t, LatticeMode::weight);
    // θ_x = T_s θ_{s x} T_s when <x, α̌_s> = 1
    for (int i = 0; i < d.rank(); ++i) {
      Weight x = d.fundamental_weight(i);
      Weight sx = d.act(d.simple_reflection(i), x);
      BraidWord lhs{BraidLetter::theta(x)};
      BraidWord rhs{BraidLetter::ts(i + 1), BraidLetter::theta(sx), BraidLetter::ts(i + 1)};
      CHECK(braid_to_weyl(d, lhs) == braid_to_weyl(d, rhs));
    }
  }
}

TEST_CASE("theta_normal_form") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  BraidWord w{BraidLetter::theta(wt({1})), BraidLetter::theta(wt({2}))};
  auto nf = theta_normal_form(a1, w);
  CHECK(nf.status == ThetaNormalForm::Status::ok);
  CHECK(same_weight(nf.lambda, wt({3})));
  CHECK(nf.residue.empty());

  BraidWord w2{BraidLetter::ts(1), BraidLetter::theta(wt({-1})), BraidLetter::ts(1)};
  nf = theta_normal_form(a1, w2);
  CHECK(nf.status == ThetaNormalForm::Status::ok);
  CHECK(same_weight(nf.lambda, wt({1})));
  CHECK(nf.residue.empty());

  BraidWord w3{BraidLetter::ts(1), BraidLetter::theta(wt({0}))};
  nf = theta_normal_form(a1, w3);
  CHECK(nf.status == ThetaNormalForm::Status::ok);
  CHECK(format_braid(a1, nf.residue) == "T1");

  CHECK(theta_normal_form(a1, w2, 1).status == ThetaNormalForm::Status::budget_exhausted);
}

TEST_CASE("conjugation_witness") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  auto cw = conjugation_witness(a1);
  CHECK(format_braid(a1, cw.b) == "om[1]");
  CHECK(cw.alpha == 1);
  for (auto t : kTypes) {
    RootDatum d(t, LatticeMode::weight);
    auto c = conjugation_witness(d);
    auto b = braid_to_weyl(d, c.b);
    auto lhs = weyl_multiply(d, weyl_multiply(d, weyl_inverse(d, b), affine_simple_reflection(d, c.alpha)), b);
    CHECK(lhs == affine_simple_reflection(d, 0));
    if (t == CartanType::A2) CHECK(c.b.size() <= 4);
  }
}
