#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "splab/interval.hpp"
#include "splab/radical.hpp"
#include "splab/rational.hpp"

namespace splab::cas {

enum class Var : std::uint8_t { X = 0, Y = 1, Z = 2 };
inline constexpr std::array<Var, 3> kAllVars = {Var::X, Var::Y, Var::Z};
char var_name(Var v);

/// Exponents of (X, Y, Z).
using Monomial = std::array<std::uint16_t, 3>;

inline int total_degree(const Monomial& m) { return m[0] + m[1] + m[2]; }

/// Graded lexicographic order with X > Y > Z; "greater" comes first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

template <typename T>
using Point3 = std::array<T, 3>;

/// Sparse polynomial in X, Y, Z over Q. No stored zero coefficients; terms
/// iterate in grlex order, leading term first.
class MPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT
  static MPoly variable(Var v);
  static MPoly monomial(const Monomial& m, const Rational& c);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant polynomial.
  Rational constant() const;
  int degree(Var v) const;
  int total_degree() const;
  bool depends_on(Var v) const { return degree(v) > 0; }
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const Rational& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(MPoly a, long c) { return a *= Rational(c); }
  friend MPoly operator*(long c, MPoly a) { return a *= Rational(c); }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly derivative(Var v) const;

  Rational evaluate(const Point3<Rational>& at) const;
  RadicalSum evaluate(const Point3<RadicalSum>& at) const;
  Interval evaluate(const Point3<Interval>& at) const;

  /// View as a polynomial in v: exponent -> coefficient (free of v).
  std::map<int, MPoly> coefficients_in(Var v) const;
  static MPoly from_coefficients(Var v, const std::map<int, MPoly>& coeffs);
  /// Coefficient of v^degree(v).
  MPoly leading_coefficient_in(Var v) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

MPoly pow(const MPoly& p, unsigned exponent);

/// Exact quotient p / d, or nullopt when d does not divide p.
std::optional<MPoly> try_divide(const MPoly& p, const MPoly& d);
/// Throws std::domain_error when d does not divide p.
MPoly divide_exact(const MPoly& p, const MPoly& d);

/// p scaled so its coefficients are coprime integers with a positive leading
/// coefficient; returns the scale factor through `factor` when given.
MPoly integer_primitive(const MPoly& p, Rational* factor = nullptr);

/// Greatest common divisor, normalized by integer_primitive. gcd(p, 0) is the
/// normalized p. Throws std::invalid_argument when both are zero.
MPoly poly_gcd(const MPoly& p, const MPoly& q);

/// Pseudo-remainder of p by q with respect to v.
MPoly pseudo_remainder(const MPoly& p, const MPoly& q, Var v);

/// F = k Z + h(X, Y) with k a nonzero constant.
struct LinearInZ {
  Rational z_coefficient;
  MPoly rest;
};
std::optional<LinearInZ> as_linear_in_z(const MPoly& f);

/// Grlex-ordered text such as "-X^2+X*Y-Z".
std::string to_string(const MPoly& p);

}  // namespace splab::cas
