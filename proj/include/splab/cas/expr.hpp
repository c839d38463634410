#pragma once

#include <memory>
#include <string>

#include "splab/cas/mpoly.hpp"

namespace splab::cas {

/// Immutable expression tree over rational constants, X, Y, Z, the four
/// arithmetic operations, integer powers and signed square roots. Nodes are
/// shared; construction through the free functions below folds constants and
/// the usual 0/1 identities.
class Expr {
 public:
  enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Sqrt };

  Expr();  // the constant 0
  Expr(const Rational& c);  // NOLINT
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT
  static Expr variable(Var v);

  Kind kind() const noexcept;
  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  /// Value of a Constant node.
  const Rational& constant() const;
  bool is_zero() const noexcept;
  Var variable_id() const;
  const Expr& lhs() const;
  const Expr& rhs() const;
  /// Exponent of a Pow node.
  unsigned exponent() const;
  /// +1 or -1 for a Sqrt node: the node is sign * sqrt(lhs()).
  int sqrt_sign() const;

  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Expr pow(const Expr& base, unsigned exponent);
  friend Expr signed_sqrt(const Expr& arg, int sign);
  static Expr make(Kind kind, Expr a, Expr b);

  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, unsigned exponent);
/// sign * sqrt(arg), sign in {+1, -1}.
Expr signed_sqrt(const Expr& arg, int sign = 1);

Expr lift(const MPoly& p);

Expr differentiate(const Expr& e, Var v);

/// Throws DomainError when a divisor encloses zero or a square-root argument
/// is not certified positive.
Interval evaluate(const Expr& e, const Point3<Interval>& at);

/// Exact evaluation. Square roots are taken only of rational values (throws
/// UnsupportedEvaluation otherwise); division follows RadicalSum rules.
RadicalSum evaluate_exact(const Expr& e, const Point3<RadicalSum>& at);

bool contains_sqrt(const Expr& e);
std::size_t node_count(const Expr& e);

std::string to_string(const Expr& e);

}  // namespace splab::cas
