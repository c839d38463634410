#include "splab/cas/parse.hpp"

#include <cctype>
#include <string>

#include "splab/errors.hpp"

namespace splab::cas {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RatFunc parse_all() {
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    RatFunc r = expr();
    skip();
    if (!at_end()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
    return r;
  }

 private:
  RatFunc expr() {
    skip();
    bool negate = false;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      negate = peek() == '-';
      ++pos_;
    }
    RatFunc r = term();
    if (negate) r = -r;
    for (;;) {
      skip();
      if (at_end() || (peek() != '+' && peek() != '-')) return r;
      const char op = peek();
      ++pos_;
      RatFunc t = term();
      r = op == '+' ? r + t : r - t;
    }
  }

  RatFunc term() {
    RatFunc r = power();
    for (;;) {
      skip();
      if (at_end() || (peek() != '*' && peek() != '/')) return r;
      const char op = peek();
      const std::size_t at = pos_;
      ++pos_;
      RatFunc f = power();
      if (op == '*') {
        r = r * f;
      } else {
        if (f.is_zero()) throw ParseError("division by zero", at);
        r = r / f;
      }
    }
  }

  RatFunc power() {
    RatFunc base = atom();
    skip();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      const unsigned long e = digits_ulong();
      if (e > 64) throw ParseError("exponent too large", start);
      RatFunc r(Rational(1));
      for (unsigned long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  RatFunc atom() {
    skip();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return RatFunc(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (c == 'X' || c == 'Y' || c == 'Z') {
      ++pos_;
      return RatFunc(MPoly::variable(c == 'X' ? Var::X : c == 'Y' ? Var::Y : Var::Z));
    }
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      skip();
      if (at_end() || peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  unsigned long digits_ulong() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start || pos_ - start > 6) throw ParseError("expected small integer exponent", start);
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return Parser(text).parse_all(); }

MPoly parse_poly(std::string_view text) {
  const RatFunc r = parse_ratfunc(text);
  if (!r.is_polynomial()) throw ParseError("not a polynomial (non-constant denominator)", 0);
  return r.num() * (1 / r.den().constant());
}

}  // namespace splab::cas
