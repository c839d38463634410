#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

#include "splab/rational.hpp"

namespace splab {

/// Closed interval [lower, upper] of MPFR floats. Every operation rounds the
/// lower endpoint down and the upper endpoint up, so the exact result of the
/// corresponding real operation is always contained.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision = 64);
  Interval(const Rational& q, mpfr_prec_t precision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  /// Enclosure of sqrt(n) for a nonnegative integer n.
  static Interval sqrt_of(std::uint64_t n, mpfr_prec_t precision);

  mpfr_prec_t precision() const noexcept { return precision_; }
  mpfr_srcptr lower() const noexcept { return lo_; }
  mpfr_srcptr upper() const noexcept { return hi_; }
  double lower_double() const;  // rounded down
  double upper_double() const;  // rounded up

  bool contains_zero() const;
  bool contains(const Rational& q) const;
  bool strictly_positive() const;
  bool strictly_negative() const;
  bool disjoint(const Interval& other) const;
  bool intersects(const Interval& other) const { return !disjoint(other); }
  /// Upper bound on the width (rounded up).
  double width() const;
  double midpoint() const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws DomainError when the divisor contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  /// Throws DomainError unless the argument is strictly positive or exactly [0,0].
  friend Interval sqrt(const Interval& a);
  friend Interval abs(const Interval& a);
  /// Smallest interval containing both.
  friend Interval hull(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  /// "[lo, hi]" with `digits` significant decimal digits, outward rounded.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_prec_t precision_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace splab
