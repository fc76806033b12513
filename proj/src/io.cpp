#include "cah/io.hpp"

#include "cah/polyalg.hpp"

#include <cctype>
#include <functional>

namespace cah {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool eat(const std::string& word) {
    skip();
    if (text_.compare(pos_, word.size(), word) != 0) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return text_.substr(start, pos_ - start);
  }
  int integer() {
    bool neg = eat('-');
    if (!neg) eat('+');
    std::string s = digits();
    if (s.size() > 9) fail("number too large");
    int n = std::stoi(s);
    return neg ? -n : n;
  }
  void finish() {
    if (!done()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  std::size_t position() const { return pos_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

// expr := ['+'|'-'] term {('+'|'-') term}; term := factor {'*' factor};
// factor := primary ['^' integer]; primary := '(' expr ')' | atom.
template <class T>
struct Expression {
  Cursor& in;
  std::function<T(Cursor&)> atom;
  std::function<T(const T&, int, Cursor&)> power;

  T expr() {
    bool neg = in.eat('-');
    if (!neg) in.eat('+');
    T acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (in.eat('+'))
        acc = acc + term();
      else if (in.eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }
  T term() {
    T acc = factor();
    while (in.eat('*')) acc = multiply(acc, factor());
    return acc;
  }
  T factor() {
    T x;
    if (in.eat('(')) {
      x = expr();
      in.expect(')');
    } else {
      x = atom(in);
    }
    if (in.eat('^')) x = power(x, in.integer(), in);
    return x;
  }
  std::function<T(const T&, const T&)> multiply;
};

Weight read_weight(const RootDatum& d, Cursor& in, char close) {
  std::vector<int> c;
  if (in.peek() != close) {
    c.push_back(in.integer());
    while (in.eat(',')) c.push_back(in.integer());
  }
  if (static_cast<int>(c.size()) != d.rank())
    in.fail("weight has " + std::to_string(c.size()) + " coordinates, expected " + std::to_string(d.rank()));
  Weight w(d.rank());
  for (int i = 0; i < d.rank(); ++i) w[i] = c[i];
  return w;
}

Weight bracket_weight(const RootDatum& d, Cursor& in) {
  in.expect('[');
  Weight w = read_weight(d, in, ']');
  in.expect(']');
  return w;
}

FiniteWeylElement read_finite_word(const RootDatum& d, Cursor& in) {
  std::vector<int> word;
  if (in.eat(']')) return d.identity();
  if (in.eat('e')) {
    in.expect(']');
    return d.identity();
  }
  do {
    in.expect('s');
    int i = in.integer();
    if (i < 1 || i > d.rank()) in.fail("unknown simple reflection s" + std::to_string(i));
    word.push_back(i - 1);
  } while (in.eat('.'));
  in.expect(']');
  return d.from_word(word);
}

// c·e^λ·T_w with c = ±v^k, w simple or trivial, and not both λ ≠ 0 and w ≠ e.
std::optional<HeckeElement> invert_simple(const RootDatum& d, const HeckeElement& h) {
  if (h.terms().size() != 1) return std::nullopt;
  const auto& [key, c] = *h.terms().begin();
  const auto& [lambda, w] = key;
  if (c.terms().size() != 1) return std::nullopt;
  const auto& [e, coef] = c.terms().front();
  if (coef != 1 && coef != -1) return std::nullopt;
  LaurentScalar ci = LaurentScalar::monomial(-e, coef);
  if (w == d.identity()) return HeckeElement::theta(-lambda).scaled(ci);
  if (lambda.isZero() && d.length(w) == 1) return hecke_inverse_Ts(d, d.word(w)[0]).scaled(ci);
  return std::nullopt;
}

std::string coefficient_prefix(const LaurentScalar& c, bool bare, std::string& sign, bool first) {
  LaurentScalar a = c;
  sign = first ? "" : " + ";
  if (a.terms().size() == 1 && a.terms().front().second < 0) {
    sign = first ? "-" : " - ";
    a = -a;
  }
  if (a == LaurentScalar(1)) return bare ? "1" : "";
  std::string s = a.str();
  if (a.terms().size() > 1) s = "(" + s + ")";
  return bare ? s : s + "*";
}

}  // namespace

Weight parse_weight(const RootDatum& d, const std::string& text) {
  Cursor in(text);
  Weight w;
  if (in.eat('[')) {
    w = read_weight(d, in, ']');
    in.expect(']');
  } else {
    w = read_weight(d, in, '\0');
  }
  in.finish();
  return w;
}

HeckeElement parse_hecke(const RootDatum& d, const std::string& text) {
  Cursor in(text);
  Expression<HeckeElement> p{in, nullptr, nullptr, nullptr};
  p.atom = [&](Cursor& c) -> HeckeElement {
    if (c.at_digit()) {
      std::string s = c.digits();
      return HeckeElement::scalar(d, LaurentScalar::monomial(0, Integer(s)));
    }
    if (c.eat('v')) return HeckeElement::scalar(d, LaurentScalar::v());
    if (c.eat('q')) return HeckeElement::scalar(d, LaurentScalar::q());
    if (c.eat('e')) return HeckeElement::theta(bracket_weight(d, c));
    if (c.eat('T')) {
      c.expect('[');
      return hecke_Tw(d, read_finite_word(d, c));
    }
    c.fail("expected a number, v, q, e[...] or T[...]");
  };
  p.multiply = [&](const HeckeElement& a, const HeckeElement& b) { return hecke_multiply(d, a, b); };
  p.power = [&](const HeckeElement& x, int n, Cursor& c) {
    HeckeElement base = x;
    if (n < 0) {
      auto inv = invert_simple(d, x);
      if (!inv) c.fail("negative power of a non-invertible factor");
      base = *inv;
      n = -n;
    }
    HeckeElement r = HeckeElement::scalar(d, 1);
    for (int k = 0; k < n; ++k) r = hecke_multiply(d, r, base);
    return r;
  };
  HeckeElement h = p.expr();
  in.finish();
  return h;
}

std::string format_hecke(const RootDatum& d, const HeckeElement& h) {
  if (h.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : h.terms()) {
    const auto& [lambda, w] = key;
    std::vector<std::string> parts;
    if (!lambda.isZero()) parts.push_back("e[" + format_weight(lambda) + "]");
    if (w != d.identity()) {
      std::string word;
      for (int s : d.word(w)) word += (word.empty() ? "s" : ".s") + std::to_string(s + 1);
      parts.push_back("T[" + word + "]");
    }
    std::string sign;
    std::string term = coefficient_prefix(c, parts.empty(), sign, out.empty());
    for (std::size_t k = 0; k < parts.size(); ++k) term += (k ? "*" : "") + parts[k];
    out += sign + term;
  }
  return out;
}

AspElement parse_asp(const RootDatum& d, const std::string& text) {
  HeckeElement h = parse_hecke(d, text);
  AspElement m;
  for (const auto& [key, c] : h.terms()) {
    if (key.second != d.identity()) throw ParseError("antispherical elements have no T factors", 0);
    add_to(m, key.first, c);
  }
  return m;
}

std::string format_asp(const AspElement& m) {
  if (m.empty()) return "0";
  std::string out;
  for (const auto& [lambda, c] : m) {
    std::string sign;
    std::string term = coefficient_prefix(c, false, sign, out.empty());
    out += sign + term + "e[" + format_weight(lambda) + "]";
  }
  return out;
}

BraidWord parse_braid(const RootDatum& d, const std::string& text) {
  Cursor in(text);
  BraidWord w;
  if (in.peek() == '1') {
    in.eat('1');
    in.finish();
    return w;
  }
  do {
    if (in.eat("th")) {
      w.push_back(BraidLetter::theta(bracket_weight(d, in)));
    } else if (in.eat("om")) {
      in.expect('[');
      int k = in.integer();
      if (k < 0 || k >= static_cast<int>(d.omega().size())) in.fail("unknown omega index " + std::to_string(k));
      in.expect(']');
      w.push_back(BraidLetter::omega(k));
    } else if (in.eat('T')) {
      int i = std::stoi(in.digits());
      if (i >= d.affine_count()) in.fail("unknown affine node " + std::to_string(i));
      int power = 1;
      if (in.eat('^')) power = in.integer();
      if (power == 0) in.fail("zero power");
      for (int k = 0; k < std::abs(power); ++k) w.push_back(BraidLetter::ts(i, power > 0 ? 1 : -1));
    } else {
      in.fail("expected T, th or om");
    }
  } while (in.eat('.'));
  in.finish();
  return w;
}

Polynomial parse_polynomial(const RootDatum& d, const std::string& text) {
  Cursor in(text);
  Expression<Polynomial> p{in, nullptr, nullptr, nullptr};
  p.atom = [&](Cursor& c) -> Polynomial {
    if (c.at_digit()) {
      std::string s = c.digits();
      if (c.eat('/')) s += "/" + c.digits();
      return Polynomial(parse_rational(s));
    }
    if (c.eat('u')) return Polynomial::u();
    if (c.eat('x')) {
      int i = std::stoi(c.digits());
      if (i < 1 || i > d.rank()) c.fail("unknown variable x" + std::to_string(i));
      return Polynomial::x(i - 1);
    }
    if (c.eat('a')) {
      int i = std::stoi(c.digits());
      if (i >= d.affine_count()) c.fail("unknown affine root a" + std::to_string(i));
      return alpha_elt(d, i);
    }
    c.fail("expected a number, x<i>, u or a<i>");
  };
  p.multiply = [](const Polynomial& a, const Polynomial& b) { return a * b; };
  p.power = [](const Polynomial& x, int n, Cursor& c) {
    if (n < 0) c.fail("negative power of a polynomial");
    Polynomial r(Rational(1));
    for (int k = 0; k < n; ++k) r = r * x;
    return r;
  };
  Polynomial f = p.expr();
  in.finish();
  return f;
}

BimoduleWord parse_bimodule_word(const RootDatum& d, const std::string& text) {
  Cursor in(text);
  BimoduleWord w;
  if (!in.eat('J') && in.peek() == 'R') {
    do {
      in.expect('R');
      int i = std::stoi(in.digits());
      if (i >= d.affine_count()) in.fail("unknown affine node " + std::to_string(i));
      w.word.push_back(i);
    } while (in.eat('.'));
  }
  if (in.eat('@')) {
    if (!in.eat("om")) in.fail("expected om[k]");
    in.expect('[');
    w.omega = in.integer();
    if (w.omega < 0 || w.omega >= static_cast<int>(d.omega().size()))
      in.fail("unknown omega index " + std::to_string(w.omega));
    in.expect(']');
  }
  in.finish();
  return w;
}

std::string format_bimodule_word(const BimoduleWord& w) {
  std::string s;
  for (std::size_t k = 0; k < w.word.size(); ++k) s += (k ? ".R" : "R") + std::to_string(w.word[k]);
  if (s.empty()) s = "J";
  if (w.omega) s += "@om[" + std::to_string(w.omega) + "]";
  return s;
}

}  // namespace cah
