#include <doctest.h>

#include "cah/io.hpp"
#include "cah/polyalg.hpp"

#include <random>

using namespace cah;

TEST_CASE("Hecke element grammar") {
  RootDatum a2(CartanType::A2, LatticeMode::weight);
  auto h = parse_hecke(a2, "q*T[s1] + e[1,0]");
  CHECK(h.terms().size() == 2);
  CHECK(h.coeff(a2.zero(), a2.simple_reflection(0)) == LaurentScalar::q());
  CHECK(format_hecke(a2, h) == "v^2*T[s1] + e[1,0]");
  CHECK(parse_hecke(a2, format_hecke(a2, h)) == h);

  // Quadratic relation.
  CHECK(parse_hecke(a2, "(T[s1]+1)*(T[s1]-q)").is_zero());
  CHECK(parse_hecke(a2, "T[s2]*T[s2]^-1") == HeckeElement::scalar(a2, 1));
  CHECK(parse_hecke(a2, "v^-2*q") == HeckeElement::scalar(a2, 1));
  CHECK(parse_hecke(a2, "e[1,0]^-1") == HeckeElement::theta(-a2.fundamental_weight(0)));
  CHECK(parse_hecke(a2, "T[]") == HeckeElement::scalar(a2, 1));
  CHECK(parse_hecke(a2, "T[s1.s2]") == hecke_multiply(a2, hecke_Ts(a2, 0), hecke_Ts(a2, 1)));
  CHECK(format_hecke(a2, parse_hecke(a2, "-v*T[s2] + 3")) == "3 - v*T[s2]");

  CHECK_THROWS_AS(parse_hecke(a2, "T[s3]"), ParseError);
  CHECK_THROWS_AS(parse_hecke(a2, "e[1]"), ParseError);
  CHECK_THROWS_AS(parse_hecke(a2, "(T[s1]+1)^-1"), ParseError);
  try {
    parse_hecke(a2, "q + * T[s1]");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("Hecke elements round trip") {
  std::mt19937 rng(5);
  for (CartanType t : {CartanType::A1, CartanType::B2, CartanType::G2}) {
    RootDatum d(t, LatticeMode::weight);
    auto elems = d.elements();
    std::uniform_int_distribution<int> c(-3, 3), e(-2, 2), pick(0, static_cast<int>(elems.size()) - 1);
    for (int k = 0; k < 20; ++k) {
      HeckeElement h;
      for (int j = 0; j < 4; ++j) {
        Weight lambda = d.zero();
        for (int i = 0; i < d.rank(); ++i) lambda[i] = e(rng);
        h.add(lambda, elems[pick(rng)], LaurentScalar::monomial(e(rng), Integer(c(rng))) + LaurentScalar(c(rng)));
      }
      std::string s = format_hecke(d, h);
      CHECK_MESSAGE(parse_hecke(d, s) == h, s);
    }
  }
}

TEST_CASE("braid words, weights and bimodule words") {
  RootDatum a2(CartanType::A2, LatticeMode::weight);
  auto w = parse_braid(a2, "T0^-1.th[2,0].om[1]");
  REQUIRE(w.size() == 3);
  CHECK(w[0] == BraidLetter::ts(0, -1));
  CHECK(w[2] == BraidLetter::omega(1));
  CHECK(format_braid(a2, w) == "T0^-1.th[2,0].om[1]");
  CHECK(parse_braid(a2, "1").empty());
  CHECK(parse_braid(a2, "T1^2").size() == 2);
  CHECK_THROWS_AS(parse_braid(a2, "T3"), ParseError);
  CHECK_THROWS_AS(parse_braid(a2, "om[3]"), ParseError);

  CHECK(parse_weight(a2, "[1,-2]") == parse_weight(a2, "1,-2"));
  CHECK_THROWS_AS(parse_weight(a2, "1"), ParseError);

  auto b = parse_bimodule_word(a2, "R0.R1@om[0]");
  CHECK(b.word == std::vector<int>{0, 1});
  CHECK(b.omega == 0);
  CHECK(format_bimodule_word(b) == "R0.R1");
  auto j = parse_bimodule_word(a2, "J@om[2]");
  CHECK(j.word.empty());
  CHECK(format_bimodule_word(j) == "J@om[2]");
  CHECK_THROWS_AS(parse_bimodule_word(a2, "R0.R5"), ParseError);
}

TEST_CASE("polynomials and antispherical elements") {
  RootDatum a1(CartanType::A1, LatticeMode::weight);
  auto p = parse_polynomial(a1, "3/2*x1^2*u - a0");
  CHECK(p == Polynomial::x(0) * Polynomial::x(0) * Polynomial::u() * Polynomial(Rational(3, 2)) - alpha_elt(a1, 0));
  CHECK(parse_polynomial(a1, p.str()) == p);
  CHECK_THROWS_AS(parse_polynomial(a1, "x2"), ParseError);

  auto m = parse_asp(a1, "(1+v^2)*e[1] - e[-1]");
  CHECK(m.size() == 2);
  CHECK(parse_asp(a1, format_asp(m)) == m);
  CHECK_THROWS_AS(parse_asp(a1, "T[s1]"), ParseError);
}
