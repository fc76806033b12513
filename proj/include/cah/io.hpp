#pragma once

#include "cah/decat.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cah {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// "1,-2" or "[1,-2]", in lattice coordinates.
Weight parse_weight(const RootDatum& d, const std::string& text);

// Sums and products of integers, v, q, e[λ] and T[s1.s2] (T[] is 1), with
// integer powers of invertible factors: `q^2*e[1,0]*T[s1.s2] - v^-1*T[s2]`.
HeckeElement parse_hecke(const RootDatum& d, const std::string& text);
// Terms in canonical order, each as coefficient*e[λ]*T[word].
std::string format_hecke(const RootDatum& d, const HeckeElement& h);

// Σ c·e[λ], read as Σ c·e^λ ⊗ sgn.
AspElement parse_asp(const RootDatum& d, const std::string& text);
std::string format_asp(const AspElement& m);

// Letters T<i>, T<i>^-1, th[λ], om[k] joined by '.'; "1" is the empty word.
BraidWord parse_braid(const RootDatum& d, const std::string& text);

// Rationals, x1, x2, u and a<i> (the affine simple root α_i).
Polynomial parse_polynomial(const RootDatum& d, const std::string& text);

// R<i>.R<j>@om[k]; "J" or "" for the empty word.
struct BimoduleWord {
  std::vector<int> word;
  int omega = 0;
};
BimoduleWord parse_bimodule_word(const RootDatum& d, const std::string& text);
std::string format_bimodule_word(const BimoduleWord& w);

}  // namespace cah
