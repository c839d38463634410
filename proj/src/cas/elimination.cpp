#include "splab/cas/elimination.hpp"

#include <stdexcept>

#include "splab/errors.hpp"

namespace splab::cas {

DilateElimination eliminate_dilate(const Rational& lambda) {
  if (lambda == 1) throw LambdaOne();
  const MPoly X = MPoly::variable(Var::X);
  const MPoly Y = MPoly::variable(Var::Y);
  const Rational scale = 1 / ((1 - lambda) * (1 - lambda));
  const MPoly f = (X - Y) * (Y - X * lambda) * scale;
  return {RatFunc(f), f - MPoly::variable(Var::Z)};
}

MPoly eliminate_sp() {
  const MPoly X = MPoly::variable(Var::X);
  return X * (MPoly::variable(Var::Y) - X) - MPoly::variable(Var::Z);
}

ShiftedProductBranch eliminate_shifted_product(const Rational& alpha, const Rational& beta, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("branch sign must be +1 or -1");
  const Expr X = Expr::variable(Var::X);
  const Expr Y = Expr::variable(Var::Y);
  ShiftedProductBranch out;
  out.sign = sign;
  out.sqrt_coefficient = sign * (alpha - beta) / 2;
  const Expr disc = pow(X, 2) - Expr(4L) * Y;
  out.z = Expr((alpha + beta) / 2) * X + Y + Expr(alpha * beta) + Expr(out.sqrt_coefficient) * signed_sqrt(disc, 1);
  return out;
}

}  // namespace splab::cas
