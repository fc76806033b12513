#include <doctest.h>

#include "cah/rootdata.hpp"

#include <set>

using namespace cah;

namespace {

Weight wt(std::initializer_list<int> c) {
  Weight w(static_cast<int>(c.size()));
  int i = 0;
  for (int x : c) w[i++] = x;
  return w;
}

std::vector<Weight> ball(const RootDatum& d, int r) {
  std::vector<Weight> out;
  if (d.rank() == 1) {
    for (int a = -r; a <= r; ++a) out.push_back(wt({a}));
  } else {
    for (int a = -r; a <= r; ++a)
      for (int b = -r; b <= r; ++b)
        if (std::abs(a) + std::abs(b) <= r) out.push_back(wt({a, b}));
  }
  return out;
}

const CartanType kTypes[] = {CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2,
                             CartanType::A1xA1};

}  // namespace

TEST_CASE("Cartan tables and root systems") {
  RootDatum a2(CartanType::A2, LatticeMode::weight);
  CHECK(a2.cartan()(0, 1) == -1);
  CHECK(a2.positive_roots().size() == 3);
  CHECK(a2.weyl_order() == 6);
  Weight theta = a2.highest_root();
  CHECK(same_weight(theta, wt({1, 1})));
  CHECK(pairing(a2, theta, 0) == 1);

  RootDatum b2(CartanType::B2, LatticeMode::root);
  CHECK(b2.positive_roots().size() == 4);
  CHECK(b2.weyl_order() == 8);
  RootDatum g2(CartanType::G2, LatticeMode::root);
  CHECK(g2.positive_roots().size() == 6);
  CHECK(g2.weyl_order() == 12);
  // Highest coroot of G2 has height 5 (coroot system is again G2).
  CHECK(g2.highest_coroot().sum() == 5);
  CHECK(b2.highest_coroot().sum() == 3);

  RootDatum a1(CartanType::A1, LatticeMode::weight);
  CHECK(pairing(a1, a1.fundamental_weight(0), 0) == 1);
  CHECK(pairing(a1, a1.simple_root(0), 0) == 2);
}

TEST_CASE("roots pair to 2 with their coroots; Weyl words are reduced") {
  for (auto t : kTypes)
    for (auto m : {LatticeMode::weight, LatticeMode::root}) {
      RootDatum d(t, m);
      for (std::size_t k = 0; k < d.positive_roots().size(); ++k) {
        Weight beta = d.from_root_coords(d.positive_roots()[k]);
        CHECK(d.pairing_with_coroot(beta, d.positive_coroots()[k]) == 2);
        FiniteWeylElement s = d.reflection(static_cast<int>(k));
        CHECK(d.multiply(s, s) == d.identity());
      }
      // length equals the number of positive roots sent negative
      for (FiniteWeylElement w : d.elements()) {
        int inversions = 0;
        for (const Weight& r : d.positive_roots()) {
          auto c = d.root_coords(d.act(w, d.from_root_coords(r)));
          REQUIRE(c);
          if (c->maxCoeff() <= 0) ++inversions;
        }
        CHECK(inversions == d.length(w));
        CHECK(d.multiply(w, d.inverse(w)) == d.identity());
      }
    }
}

TEST_CASE("Omega permutes affine simple roots and is a homomorphic image") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  REQUIRE(a1.omega().size() == 2);
  CHECK(a1.omega()[1].permutation == std::vector<int>{1, 0});
  RootDatum a2(CartanType::A2, LatticeMode::weight);
  REQUIRE(a2.omega().size() == 3);
  for (const auto& o : a2.omega()) {
    std::set<int> img(o.permutation.begin(), o.permutation.end());
    CHECK(img.size() == 3);
  }
  CHECK(RootDatum(CartanType::B2, LatticeMode::weight).omega().size() == 2);
  CHECK(RootDatum(CartanType::G2, LatticeMode::weight).omega().size() == 1);
  CHECK(RootDatum(CartanType::A1xA1, LatticeMode::weight).omega().size() == 4);
  CHECK(RootDatum(CartanType::A2, LatticeMode::root).omega().size() == 1);
}

TEST_CASE("dominant_representative") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  auto r = dominant_representative(a1, wt({-1}));
  CHECK(same_weight(r.dominant, wt({1})));
  CHECK(r.element == a1.simple_reflection(0));

  RootDatum a2(CartanType::A2, LatticeMode::weight);
  auto r2 = dominant_representative(a2, wt({-1, -1}));
  CHECK(same_weight(r2.dominant, wt({1, 1})));
  // brute force: minimal-length w with w(-θ) dominant
  int best = 100;
  for (auto w : a2.elements())
    if (a2.is_dominant(a2.act(w, wt({-1, -1})))) best = std::min(best, a2.length(w));
  CHECK(a2.length(r2.element) == best);

  for (auto t : kTypes) {
    RootDatum d(t, LatticeMode::weight);
    for (const Weight& lam : ball(d, 5)) {
      auto dr = dominant_representative(d, lam);
      CHECK(d.is_dominant(dr.dominant));
      for (auto u : d.elements())
        CHECK(same_weight(dominant_representative(d, d.act(u, lam)).dominant, dr.dominant));
      if (d.is_dominant(lam)) CHECK(dr.element == d.identity());
    }
  }
}

TEST_CASE("order_on_X is a partial order with Ω-representative minima") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  CHECK(order_on_X(a1, wt({0}), wt({2})) == Comparison::LT);
  CHECK(order_on_X(a1, wt({3}), wt({3})) == Comparison::EQ);
  RootDatum a2(CartanType::A2, LatticeMode::weight);
  CHECK(order_on_X(a2, wt({1, 0}), wt({0, 1})) == Comparison::INCOMPARABLE);

  for (auto t : kTypes) {
    RootDatum d(t, LatticeMode::weight);
    auto pts = ball(d, 3);
    for (const auto& a : pts)
      for (const auto& b : pts) {
        auto ab = order_on_X(d, a, b), ba = order_on_X(d, b, a);
        if (ab == Comparison::LT) CHECK(ba == Comparison::GT);
        if (ab == Comparison::EQ) CHECK(same_weight(a, b));
        if (ab == Comparison::LT)
          for (const auto& c : pts)
            if (order_on_X(d, b, c) == Comparison::LT) CHECK(order_on_X(d, a, c) == Comparison::LT);
        if (ab == Comparison::LT) CHECK(total_order_less(d, a, b));
      }
  }
}
