#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splab/interval.hpp"
#include "splab/rational.hpp"

namespace splab {

/// coefficient * sqrt(radicand); radicand is squarefree, radicand 1 is the
/// rational part.
struct RadicalTerm {
  Rational coefficient;
  std::uint64_t radicand = 1;

  friend bool operator==(const RadicalTerm&, const RadicalTerm&) = default;
};

/// m = root^2 * radicand with radicand squarefree.
struct SquarefreeSplit {
  Integer root;
  std::uint64_t radicand = 1;
};

/// Throws std::invalid_argument for m <= 0 and std::overflow_error when the
/// squarefree part does not fit in 64 bits.
SquarefreeSplit squarefree_decompose(const Integer& m);

bool is_squarefree(std::uint64_t m);

/// An element of Q(sqrt 2, sqrt 3, sqrt 5, ...), stored as a list of terms
/// with strictly increasing squarefree radicands and nonzero coefficients.
///
/// Square roots of distinct squarefree integers are linearly independent
/// over Q, so two values are equal exactly when their term lists are.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(const Rational& q);  // NOLINT: rationals embed implicitly
  RadicalSum(long q) : RadicalSum(Rational(q)) {}  // NOLINT

  /// Canonicalizes arbitrary terms: reduces non-squarefree radicands, merges
  /// equal radicands and drops zeros. Throws std::invalid_argument on radicand 0.
  static RadicalSum from_terms(std::vector<RadicalTerm> terms);
  /// coefficient * sqrt(radicand) for a squarefree radicand.
  static RadicalSum term(const Rational& coefficient, std::uint64_t radicand);
  /// Like term() but skips the squarefree check; the caller guarantees it.
  static RadicalSum squarefree_term(const Rational& coefficient, std::uint64_t radicand);

  const std::vector<RadicalTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept;
  /// Requires is_rational().
  Rational to_rational() const;
  /// Coefficient of sqrt(radicand); zero when absent.
  Rational coefficient_of(std::uint64_t radicand) const;
  /// Number of distinct radicands other than 1.
  std::size_t irrational_radicand_count() const noexcept;

  RadicalSum operator-() const;
  RadicalSum& operator+=(const RadicalSum& other);
  RadicalSum& operator-=(const RadicalSum& other);
  RadicalSum& operator*=(const RadicalSum& other) { return *this = *this * other; }

  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
  friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);
  /// Exact quotient by conjugate rationalization. Throws DivisionByZero, or
  /// UnsupportedDenominator when b involves two or more non-unit radicands.
  friend RadicalSum operator/(const RadicalSum& a, const RadicalSum& b);

  friend bool operator==(const RadicalSum& a, const RadicalSum& b) { return a.terms_ == b.terms_; }

  RadicalSum scaled(const Rational& q) const;
  std::size_t hash() const noexcept;

 private:
  std::vector<RadicalTerm> terms_;
};

/// s * sqrt(r) where m = s^2 r, r squarefree. Throws std::invalid_argument for m <= 0.
RadicalSum sqrt_int(const Integer& m);
/// sqrt(p/q) = sqrt(p q) / q for q > 0, p >= 0.
RadicalSum sqrt_rational(const Rational& q);

RadicalSum pow(const RadicalSum& x, unsigned exponent);

/// Deterministic total order: term count, then (radicand, coefficient) pairs.
/// Not the numeric order.
std::strong_ordering canonical_compare(const RadicalSum& a, const RadicalSum& b);
inline bool canonical_less(const RadicalSum& a, const RadicalSum& b) {
  return canonical_compare(a, b) < 0;
}

/// Interval guaranteed to contain the exact value. precision_bits >= 16.
Interval eval_enclosure(const RadicalSum& x, int precision_bits);

/// Largest precision tried when separating unequal values numerically.
inline constexpr int kSeparationCapBits = 4096;

/// Smallest precision (doubling from 64) at which the enclosures of a and b
/// are disjoint; nullopt when they still overlap at the cap. Structural
/// equality remains authoritative either way.
std::optional<int> separation_precision(const RadicalSum& a, const RadicalSum& b,
                                        int cap_bits = kSeparationCapBits);

/// Sign via enclosures; the value must be nonzero for a definite answer
/// (zero is detected structurally first).
int sign(const RadicalSum& x);

/// Canonical text form, e.g. "1+3/2*sqrt(21)".
std::string to_string(const RadicalSum& x);
/// Accepts the text grammar (non-canonical input allowed); throws ParseError.
RadicalSum parse_radical_sum(std::string_view text);

struct RadicalSumHash {
  std::size_t operator()(const RadicalSum& x) const noexcept { return x.hash(); }
};

}  // namespace splab

template <>
struct std::hash<splab::RadicalSum> {
  std::size_t operator()(const splab::RadicalSum& x) const noexcept { return x.hash(); }
};
