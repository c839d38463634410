#include "splab/radical.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "splab/errors.hpp"

namespace splab {

namespace {

std::uint64_t to_u64(const Integer& z) {
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) {
    throw std::overflow_error("radicand does not fit in 64 bits: " + z.get_str());
  }
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, z.get_mpz_t());
  return v;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p >> 64) throw std::overflow_error("radicand product overflows 64 bits");
  return static_cast<std::uint64_t>(p);
}

// Sorts by radicand, merges equal radicands, drops zero coefficients.
std::vector<RadicalTerm> normalize_sorted(std::vector<RadicalTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const RadicalTerm& a, const RadicalTerm& b) { return a.radicand < b.radicand; });
  std::vector<RadicalTerm> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().radicand == t.radicand) {
      out.back().coefficient += t.coefficient;
    } else {
      if (!out.empty() && out.back().coefficient == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coefficient == 0) out.pop_back();
  return out;
}

}  // namespace

SquarefreeSplit squarefree_decompose(const Integer& m) {
  if (m <= 0) throw std::invalid_argument("squarefree_decompose requires m >= 1");
  Integer rest = m;
  Integer root = 1;
  Integer radicand = 1;
  for (unsigned long p = 2;; p += (p == 2 ? 1 : 2)) {
    // Once p^3 exceeds the cofactor it has at most two prime factors, all >= p.
    const Integer cube = Integer(p) * p * p;
    if (cube > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e % 2 == 1) radicand *= p;
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), rest.get_mpz_t());
      root *= s;
    } else {
      radicand *= rest;
    }
  }
  return {root, to_u64(radicand)};
}

bool is_squarefree(std::uint64_t m) {
  if (m == 0) return false;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

RadicalSum::RadicalSum(const Rational& q) {
  if (q != 0) terms_.push_back({q, 1});
}

RadicalSum RadicalSum::from_terms(std::vector<RadicalTerm> terms) {
  for (auto& t : terms) {
    if (t.radicand == 0) throw std::invalid_argument("radicand must be positive");
    if (t.radicand != 1 && !is_squarefree(t.radicand)) {
      const SquarefreeSplit s = squarefree_decompose(Integer(std::to_string(t.radicand)));
      t.coefficient *= s.root;
      t.radicand = s.radicand;
    }
  }
  RadicalSum r;
  r.terms_ = normalize_sorted(std::move(terms));
  return r;
}

RadicalSum RadicalSum::term(const Rational& coefficient, std::uint64_t radicand) {
  return from_terms({{coefficient, radicand}});
}

RadicalSum RadicalSum::squarefree_term(const Rational& coefficient, std::uint64_t radicand) {
  RadicalSum r;
  if (coefficient != 0) r.terms_.push_back({coefficient, radicand});
  return r;
}

bool RadicalSum::is_rational() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().radicand == 1);
}

Rational RadicalSum::to_rational() const {
  if (!is_rational()) throw std::logic_error("value is irrational: " + to_string(*this));
  return terms_.empty() ? Rational(0) : terms_.front().coefficient;
}

Rational RadicalSum::coefficient_of(std::uint64_t radicand) const {
  for (const auto& t : terms_) {
    if (t.radicand == radicand) return t.coefficient;
  }
  return 0;
}

std::size_t RadicalSum::irrational_radicand_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(terms_.begin(), terms_.end(), [](const RadicalTerm& t) { return t.radicand != 1; }));
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) return *this = other;
  std::vector<RadicalTerm> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->radicand < b->radicand)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->radicand < a->radicand) {
      out.push_back(*b++);
    } else {
      Rational c = a->coefficient + b->coefficient;
      if (c != 0) out.push_back({std::move(c), a->radicand});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& other) { return *this += -other; }

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  std::vector<RadicalTerm> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      // sqrt(g r1) sqrt(g r2) = g sqrt(r1 r2); r1, r2 coprime and squarefree.
      const std::uint64_t g = std::gcd(x.radicand, y.radicand);
      const std::uint64_t r = checked_mul(x.radicand / g, y.radicand / g);
      Rational c = x.coefficient * y.coefficient;
      if (g != 1) c *= static_cast<unsigned long>(g);
      products.push_back({std::move(c), r});
    }
  }
  RadicalSum r;
  r.terms_ = normalize_sorted(std::move(products));
  return r;
}

RadicalSum operator/(const RadicalSum& a, const RadicalSum& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (b.terms_.size() > 2 || b.irrational_radicand_count() > 1) {
    throw UnsupportedDenominator("denominator spans several radicands: " + to_string(b));
  }
  if (b.is_rational()) return a.scaled(1 / b.terms_.front().coefficient);
  // b = p + q sqrt(r); 1/b = (p - q sqrt(r)) / (p^2 - q^2 r).
  const Rational p = b.coefficient_of(1);
  const RadicalTerm& irr = b.terms_.back();
  const Rational& q = irr.coefficient;
  const Rational norm = p * p - q * q * Rational(static_cast<unsigned long>(irr.radicand));
  RadicalSum conj = RadicalSum(p) + RadicalSum::term(-q, irr.radicand);
  return (a * conj).scaled(1 / norm);
}

RadicalSum RadicalSum::scaled(const Rational& q) const {
  if (q == 0) return {};
  RadicalSum r = *this;
  for (auto& t : r.terms_) t.coefficient *= q;
  return r;
}

std::size_t RadicalSum::hash() const noexcept {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    h = hash_combine(h, std::hash<std::uint64_t>{}(t.radicand));
    h = hash_combine(h, hash_value(t.coefficient));
  }
  return h;
}

RadicalSum sqrt_int(const Integer& m) {
  if (m <= 0) throw std::invalid_argument("sqrt_int requires m >= 1, got " + m.get_str());
  const SquarefreeSplit s = squarefree_decompose(m);
  return RadicalSum::squarefree_term(Rational(s.root), s.radicand);
}

RadicalSum sqrt_rational(const Rational& q) {
  if (q < 0) throw std::invalid_argument("sqrt_rational of a negative value");
  if (q == 0) return {};
  const Integer pq = q.get_num() * q.get_den();
  return sqrt_int(pq).scaled(Rational(1) / Rational(q.get_den()));
}

RadicalSum pow(const RadicalSum& x, unsigned exponent) {
  RadicalSum result(1L);
  RadicalSum base = x;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::strong_ordering canonical_compare(const RadicalSum& a, const RadicalSum& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (auto c = ta.size() <=> tb.size(); c != 0) return c;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (auto c = ta[i].radicand <=> tb[i].radicand; c != 0) return c;
    const int c = cmp(ta[i].coefficient, tb[i].coefficient);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Interval eval_enclosure(const RadicalSum& x, int precision_bits) {
  if (precision_bits < 16) throw std::invalid_argument("precision_bits must be >= 16");
  const auto prec = static_cast<mpfr_prec_t>(precision_bits);
  Interval sum(prec);
  for (const auto& t : x.terms()) {
    Interval c(t.coefficient, prec);
    sum += t.radicand == 1 ? c : c * Interval::sqrt_of(t.radicand, prec);
  }
  return sum;
}

std::optional<int> separation_precision(const RadicalSum& a, const RadicalSum& b, int cap_bits) {
  for (int bits = 64; bits <= cap_bits; bits *= 2) {
    if (eval_enclosure(a, bits).disjoint(eval_enclosure(b, bits))) return bits;
  }
  return std::nullopt;
}

int sign(const RadicalSum& x) {
  if (x.is_zero()) return 0;
  for (int bits = 64; bits <= (1 << 20); bits *= 2) {
    const Interval e = eval_enclosure(x, bits);
    if (e.strictly_positive()) return 1;
    if (e.strictly_negative()) return -1;
  }
  throw std::runtime_error("sign undecided for " + to_string(x));
}

std::string to_string(const RadicalSum& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : x.terms()) {
    const bool negative = t.coefficient < 0;
    if (negative) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    first = false;
    const Rational mag = abs(t.coefficient);
    if (t.radicand == 1) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += "sqrt(" + std::to_string(t.radicand) + ")";
    }
  }
  return out;
}

namespace {

class RadicalParser {
 public:
  explicit RadicalParser(std::string_view text) : text_(text) {}

  RadicalSum parse() {
    skip_space();
    if (at_end()) throw ParseError("empty radical sum", pos_);
    std::vector<RadicalTerm> terms;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
      skip_space();
    }
    terms.push_back(parse_term(negative));
    skip_space();
    while (!at_end()) {
      const char c = peek();
      if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", pos_);
      ++pos_;
      skip_space();
      terms.push_back(parse_term(c == '-'));
      skip_space();
    }
    return RadicalSum::from_terms(std::move(terms));
  }

 private:
  RadicalTerm parse_term(bool negative) {
    RadicalTerm t{Rational(1), 1};
    if (match("sqrt(")) {
      t.radicand = parse_radicand();
    } else {
      t.coefficient = parse_unsigned_rational();
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (!match("sqrt(")) throw ParseError("expected 'sqrt('", pos_);
        t.radicand = parse_radicand();
      }
    }
    if (negative) t.coefficient = -t.coefficient;
    return t;
  }

  std::uint64_t parse_radicand() {
    skip_space();
    const std::size_t start = pos_;
    const Integer m = parse_digits();
    skip_space();
    if (!match(")")) throw ParseError("expected ')'", pos_);
    if (m <= 0) throw ParseError("radicand must be positive", start);
    try {
      return to_u64(m);
    } catch (const std::overflow_error&) {
      throw ParseError("radicand too large", start);
    }
  }

  Rational parse_unsigned_rational() {
    Integer num = parse_digits();
    Integer den = 1;
    if (!at_end() && peek() == '/') {
      ++pos_;
      const std::size_t at = pos_;
      den = parse_digits();
      if (den == 0) throw ParseError("zero denominator", at);
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Integer parse_digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) throw ParseError("expected digits", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  bool match(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RadicalSum parse_radical_sum(std::string_view text) { return RadicalParser(text).parse(); }

}  // namespace splab
