#pragma once

#include "splab/cas/expr.hpp"
#include "splab/cas/ratfunc.hpp"

namespace splab::cas {

struct DilateElimination {
  /// f(X, Y) = (X - Y)(Y - lambda X) / (1 - lambda)^2
  RatFunc f;
  /// F(X, Y, Z) = f(X, Y) - Z
  MPoly F;
};

/// From c = a + b, d = a + lambda b, e = ab. Throws LambdaOne.
DilateElimination eliminate_dilate(const Rational& lambda);

/// X(Y - X) - Z, from c = a, d = a + b, e = ab.
MPoly eliminate_sp();

struct ShiftedProductBranch {
  /// Z = ((alpha+beta) X + 2Y + 2 alpha beta + sign (alpha-beta) sqrt(X^2 - 4Y)) / 2
  Expr z;
  /// sign * (alpha - beta) / 2
  Rational sqrt_coefficient;
  int sign = 1;
};

/// Branch of e = (a+alpha)(b+beta) over c = a + b, d = ab. The + branch is
/// the one with a <= b; the - branch has a >= b.
ShiftedProductBranch eliminate_shifted_product(const Rational& alpha, const Rational& beta, int sign = 1);

/// Which branch reproduces (a+alpha)(b+beta) from (a+b, ab).
inline int shifted_product_branch_for(const Rational& a, const Rational& b) { return a <= b ? 1 : -1; }

}  // namespace splab::cas
