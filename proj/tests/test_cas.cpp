#include <chrono>
#include <random>

#include "doctest.h"
#include "random_polys.hpp"
#include "splab/cas/degeneracy.hpp"
#include "splab/cas/elimination.hpp"
#include "splab/cas/parse.hpp"
#include "splab/errors.hpp"

using namespace splab;
using namespace splab::cas;
using splab::testing::random_poly_xy;
using splab::testing::random_ratfunc_xy;
using splab::testing::random_rational;
using splab::testing::ratfunc_canonical;

namespace {

const MPoly X = MPoly::variable(Var::X);
const MPoly Y = MPoly::variable(Var::Y);
const MPoly Z = MPoly::variable(Var::Z);

Point3<Rational> pt(const Rational& x, const Rational& y, const Rational& z = 0) { return {x, y, z}; }

// Closed form of T for the dilate elimination.
RatFunc dilate_closed_form(const Rational& l) {
  const MPoly num = (Y * Y - X * X * l) * (2 * (1 + l) * (4 * l - (1 + l) * (1 + l)));
  const MPoly d1 = X * (-2 * l) + Y * (1 + l);
  const MPoly d2 = Y * Rational(-2) + X * (1 + l);
  return RatFunc(num, d1 * d1 * d2 * d2);
}

}  // namespace

TEST_CASE("parse_poly examples") {
  CHECK(parse_poly("X*(Y-X)-Z") == X * Y - X * X - Z);
  CHECK(to_string(parse_poly("X*(Y-X)-Z")) == "-X^2+X*Y-Z");
  CHECK(parse_poly("0").is_zero());
  CHECK(parse_poly(" 3/4 * X^2 - -Y ") == X * X * Rational(3, 4) + Y);
  CHECK(parse_poly("(X+Y)^3") == pow(X + Y, 3));
  CHECK_THROWS_AS(parse_poly("X^2+"), ParseError);
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  CHECK_THROWS_AS(parse_poly("X/Y"), ParseError);
  CHECK_THROWS_AS(parse_poly("X**2"), ParseError);
  CHECK_THROWS_AS(parse_poly("(X+1"), ParseError);
  CHECK_THROWS_AS(parse_ratfunc("X/0"), ParseError);
  try {
    parse_poly("X+W");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK(parse_ratfunc("X/Y") == RatFunc(X, Y));
}

TEST_CASE("to_string round trips through the parser") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const MPoly p = random_poly_xy(rng, 5, 6) + Z * random_rational(rng);
    CHECK(parse_poly(to_string(p)) == p);
    const RatFunc f = random_ratfunc_xy(rng, 3);
    CHECK(parse_ratfunc(to_string(f)) == f);
  }
}

TEST_CASE("poly_gcd examples") {
  CHECK(poly_gcd(X * X - Y * Y, X - Y) == X - Y);
  CHECK(poly_gcd(X * X + Y, MPoly(1L)) == MPoly(1L));
  const MPoly l = Y - X * 2;
  const MPoly g = poly_gcd(pow(l, 2), pow(l, 3));
  CHECK(try_divide(pow(l, 2), g).has_value());
  CHECK(try_divide(g, pow(l, 2)).has_value());
  CHECK(g == integer_primitive(pow(l, 2)));
  CHECK(poly_gcd(X * 6 + 4, MPoly()) == X * 3 + 2);
  CHECK_THROWS(poly_gcd(MPoly(), MPoly()));
}

TEST_CASE("poly_gcd against a planted common factor") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const MPoly g = random_poly_xy(rng, 2, 3) + Z * random_rational(rng, 3, 1);
    const MPoly a = random_poly_xy(rng, 2, 3);
    const MPoly b = random_poly_xy(rng, 2, 3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    const MPoly d = poly_gcd(g * a, g * b);
    CHECK(try_divide(g * a, d).has_value());
    CHECK(try_divide(g * b, d).has_value());
    CHECK(try_divide(d, integer_primitive(g)).has_value());
  }
}

TEST_CASE("differentiate examples") {
  CHECK(RatFunc(X * X * Y).differentiate(Var::X) == RatFunc(X * Y * 2));
  CHECK(RatFunc(X, Y).differentiate(Var::Y) == RatFunc(-X, Y * Y));
  CHECK(RatFunc(Rational(7, 3)).differentiate(Var::X).is_zero());
  CHECK(RatFunc(X * Z).differentiate(Var::Z) == RatFunc(X));
}

TEST_CASE("differentiate agrees with central differences at rate h^2") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const RatFunc f = random_ratfunc_xy(rng, 3);
    const Var v = i % 2 ? Var::X : Var::Y;
    const RatFunc df = f.differentiate(v);
    const Point3<Rational> p = pt(random_rational(rng), random_rational(rng));
    auto shifted = [&](const Rational& h) {
      Point3<Rational> q = p;
      q[static_cast<int>(v)] += h;
      return q;
    };
    try {
      const Rational exact = df.evaluate(p);
      Rational previous_error = -1;
      bool ok = true;
      for (int k = 10; k <= 16; k += 2) {
        const Rational h(1, 1L << k);
        const Rational fd = (f.evaluate(shifted(h)) - f.evaluate(shifted(-h))) / (2 * h);
        const Rational err = abs(fd - exact);
        // Halving h twice should shrink the error by about 16.
        if (previous_error > 0 && err * 8 > previous_error) ok = false;
        previous_error = err;
      }
      CHECK(ok);
      ++checked;
    } catch (const DivisionByZero&) {
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("RatFunc stays canonical after every operation") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const RatFunc a = random_ratfunc_xy(rng, 3);
    const RatFunc b = random_ratfunc_xy(rng, 3);
    CHECK(ratfunc_canonical(a));
    CHECK(ratfunc_canonical(a + b));
    CHECK(ratfunc_canonical(a - b));
    CHECK(ratfunc_canonical(a * b));
    if (!b.is_zero()) CHECK(ratfunc_canonical(a / b));
    CHECK(ratfunc_canonical(a.differentiate(Var::X)));
    CHECK(a - a == RatFunc());
  }
}

TEST_CASE("mixed partials commute exactly") {
  std::mt19937_64 rng(29);
  int tested = 0;
  while (tested < 100) {
    const RatFunc f = random_ratfunc_xy(rng, 4);
    if (f.differentiate(Var::X).is_zero() || f.differentiate(Var::Y).is_zero()) continue;
    CHECK(degeneracy_expression(f, DerivativeOrder::XFirst) == degeneracy_expression(f, DerivativeOrder::YFirst));
    ++tested;
  }
}

TEST_CASE("degeneracy of X(Y-X)") {
  const auto r = degeneracy_test_rational(RatFunc(X * (Y - X)));
  CHECK_FALSE(r.identically_zero);
  CHECK(r.T == RatFunc(MPoly(2L), pow(Y - X * 2, 2)));
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->x == 0);
  CHECK(r.witness->y == 1);
  CHECK(r.witness->value == 2);
}

TEST_CASE("degeneracy dichotomy for the dilate elimination") {
  for (const Rational& l : {Rational(-1), Rational(0), Rational(1, 2), Rational(2), Rational(3), Rational(-2),
                            Rational(5, 3)}) {
    CAPTURE(to_string(l));
    const auto r = degeneracy_test_rational(eliminate_dilate(l).f);
    CHECK(r.identically_zero == (l == -1));
    if (l != -1) CHECK(r.T == dilate_closed_form(l));
  }
  CHECK_THROWS_AS(eliminate_dilate(1), LambdaOne);
  CHECK_THROWS_AS(eliminate_dilate(1), PreconditionError);

  const auto r2 = degeneracy_test_rational(eliminate_dilate(2).f, {pt(1, 1)});
  REQUIRE(r2.witness.has_value());
  CHECK(r2.witness->value == 6);
  CHECK(r2.T.evaluate(pt(1, 1)) == 6);
  CHECK(degeneracy_test_rational(RatFunc((X - Y) * (Y + X))).identically_zero);
}

TEST_CASE("degeneracy preconditions") {
  CHECK_THROWS_AS(degeneracy_test_rational(RatFunc(X * X)), PreconditionError);
  CHECK_THROWS_AS(degeneracy_test_rational(RatFunc(Y)), PreconditionError);
  CHECK(degeneracy_test_rational(RatFunc(X + Y)).identically_zero);
}

TEST_CASE("eliminate_dilate examples") {
  CHECK(eliminate_dilate(2).f == RatFunc((X - Y) * (Y - X * 2)));
  CHECK(eliminate_dilate(0).f == RatFunc((X - Y) * Y));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng), l = random_rational(rng);
    if (l == 1) continue;
    CHECK(eliminate_dilate(l).F.evaluate(pt(a + b, a + l * b, a * b)) == 0);
  }
}

TEST_CASE("eliminate_sp examples") {
  const MPoly F = eliminate_sp();
  CHECK(F == parse_poly("X*(Y-X)-Z"));
  CHECK(F.evaluate(pt(0, 5, 0)) == 0);
  CHECK(F.evaluate(pt(1, 1, 1)) == -1);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    CHECK(F.evaluate(pt(a, a + b, a * b)) == 0);
  }
  const auto lz = as_linear_in_z(F);
  REQUIRE(lz.has_value());
  CHECK(lz->z_coefficient == -1);
}

TEST_CASE("eliminate_shifted_product examples") {
  auto at = [](const Expr& e, long x, long y) {
    return evaluate_exact(e, {RadicalSum(x), RadicalSum(y), RadicalSum(0L)});
  };
  CHECK(at(eliminate_shifted_product(1, 5).z, 5, 6) == RadicalSum(24L));
  CHECK(at(eliminate_shifted_product(1, 0).z, 5, 4) == RadicalSum(8L));
  const auto sym = eliminate_shifted_product(0, 0);
  CHECK(sym.sqrt_coefficient == 0);
  CHECK_FALSE(contains_sqrt(sym.z));
  CHECK(sym.z == Expr::variable(Var::Y));
}

TEST_CASE("shifted-product branch reproduces (a+alpha)(b+beta)") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> small(-20, 20);
  for (int i = 0; i < 1000; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    const Rational alpha = small(rng), beta = small(rng);
    const int sign = shifted_product_branch_for(a, b);
    const Expr z = eliminate_shifted_product(alpha, beta, sign).z;
    const RadicalSum e = evaluate_exact(z, {RadicalSum(a + b), RadicalSum(a * b), RadicalSum(0L)});
    CHECK(e == RadicalSum((a + alpha) * (b + beta)));
  }
}

TEST_CASE("numeric degeneracy examples") {
  const auto sp = degeneracy_test_numeric(lift(X * (Y - X)));
  CHECK(sp.verdict == NumericVerdict::NonzeroWitness);
  REQUIRE(sp.witness_x.has_value());
  CHECK(*sp.witness_x == 0);
  CHECK(*sp.witness_y == 1);
  CHECK(sp.enclosure->contains(2));

  const auto add = degeneracy_test_numeric(lift(X + Y));
  CHECK(add.verdict == NumericVerdict::ProbablyZero);

  const auto branch = degeneracy_test_numeric(eliminate_shifted_product(1, 0).z);
  CHECK(branch.verdict == NumericVerdict::NonzeroWitness);

  const auto same = degeneracy_test_numeric(eliminate_shifted_product(2, 2).z);
  CHECK(same.verdict == NumericVerdict::ProbablyZero);

  CHECK_THROWS_AS(degeneracy_test_numeric(lift(X * X)), PreconditionError);
  // sqrt(-1 - X^2 - Y^2) has no real point.
  const Expr nowhere = signed_sqrt(lift(-(X * X) - Y * Y - 1), 1) + lift(X * Y);
  CHECK_THROWS_AS(degeneracy_test_numeric(nowhere), DomainError);
}

TEST_CASE("numeric and symbolic degeneracy agree on polynomials") {
  std::mt19937_64 rng(37);
  int agreed = 0;
  int tested = 0;
  while (tested < 100) {
    const MPoly f = random_poly_xy(rng, 4, 4);
    if (!f.depends_on(Var::X) || !f.depends_on(Var::Y)) continue;
    ++tested;
    const auto sym = degeneracy_test_rational(RatFunc(f));
    NumericOptions opt;
    opt.seed = static_cast<std::uint64_t>(tested);
    const auto num = degeneracy_test_numeric(lift(f), opt);
    if (sym.identically_zero == (num.verdict == NumericVerdict::ProbablyZero)) ++agreed;
  }
  CHECK(agreed == tested);
}

TEST_CASE("certificates carry the verdict and witness") {
  const auto r = degeneracy_test_rational(eliminate_dilate(2).f, {pt(1, 1)});
  const auto j = certificate("lambda=2", r);
  CHECK(j["verdict"] == "nonzero");
  CHECK(j["witness"][0] == "1");
  CHECK(j["witness"][1] == "1");
  CHECK(j["value"] == "6");
  const auto z = certificate("lambda=-1", degeneracy_test_rational(eliminate_dilate(-1).f));
  CHECK(z["verdict"] == "identically-zero");
  CHECK(z["witness"].is_null());
  const auto n = certificate("X*(Y-X)", degeneracy_test_numeric(lift(X * (Y - X))));
  CHECK(n["verdict"] == "nonzero");
}
