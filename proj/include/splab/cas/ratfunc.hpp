#pragma once

#include <string>

#include "splab/cas/mpoly.hpp"

namespace splab::cas {

/// num / den with gcd(num, den) = 1 and den an integer polynomial with
/// coprime coefficients and positive leading coefficient. Zero is 0 / 1.
/// Canonical, so equality is structural.
class RatFunc {
 public:
  RatFunc() : den_(1L) {}
  RatFunc(MPoly num);  // NOLINT
  RatFunc(const Rational& c) : RatFunc(MPoly(c)) {}  // NOLINT
  /// Throws DivisionByZero when den is zero.
  RatFunc(MPoly num, MPoly den);

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  /// Throws DivisionByZero when b is zero.
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  /// Quotient rule, then normalization.
  RatFunc differentiate(Var v) const;

  /// Throws DivisionByZero when the denominator vanishes at the point.
  Rational evaluate(const Point3<Rational>& at) const;
  Interval evaluate(const Point3<Interval>& at) const;

 private:
  MPoly num_;
  MPoly den_;
};

inline RatFunc differentiate(const RatFunc& f, Var v) { return f.differentiate(v); }

/// "num" when the denominator is 1, otherwise "(num)/(den)".
std::string to_string(const RatFunc& f);

}  // namespace splab::cas
