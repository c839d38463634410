#include "splab/cas/ratfunc.hpp"

#include "splab/errors.hpp"

namespace splab::cas {

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(1L) {}

RatFunc::RatFunc(MPoly num, MPoly den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = MPoly(1L);
    return;
  }
  if (!den.is_constant()) {
    const MPoly g = poly_gcd(num, den);
    if (!g.is_constant()) {
      num = divide_exact(num, g);
      den = divide_exact(den, g);
    }
  }
  Rational scale;
  den_ = integer_primitive(den, &scale);
  num_ = num * scale;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_constant() && b.den_.is_constant()) return RatFunc(a.num_ + b.num_);
  // With g = gcd of the denominators, any factor shared by the new numerator
  // and denominator already divides g, so only that small gcd is needed.
  const MPoly g = poly_gcd(a.den_, b.den_);
  const MPoly ad = divide_exact(a.den_, g);
  const MPoly bd = divide_exact(b.den_, g);
  MPoly num = a.num_ * bd + b.num_ * ad;
  MPoly den = ad * b.den_;
  if (num.is_zero()) return {};
  if (!g.is_constant()) {
    const MPoly h = poly_gcd(num, g);
    if (!h.is_constant()) {
      num = divide_exact(num, h);
      den = divide_exact(den, h);
    }
  }
  RatFunc r;
  Rational scale;
  r.den_ = integer_primitive(den, &scale);
  r.num_ = num * scale;
  return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Cross-cancel so the product needs no further gcd.
  const MPoly g1 = poly_gcd(a.num_, b.den_);
  const MPoly g2 = poly_gcd(b.num_, a.den_);
  RatFunc r;
  const MPoly num = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
  const MPoly den = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
  Rational scale;
  r.den_ = integer_primitive(den, &scale);
  r.num_ = num * scale;
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero();
  RatFunc inv;
  Rational scale;
  inv.den_ = integer_primitive(b.num_, &scale);
  inv.num_ = b.den_ * scale;
  return a * inv;
}

RatFunc RatFunc::differentiate(Var v) const {
  if (den_.is_constant()) return RatFunc(num_.derivative(v) * (1 / den_.constant()));
  const MPoly dd = den_.derivative(v);
  if (dd.is_zero()) return RatFunc(num_.derivative(v), den_);
  // With g = gcd(d, d'), (n/d)' = (n' (d/g) - n (d'/g)) / (d (d/g)). A prime
  // involving v that divides d exactly k times divides n' d - n d' exactly
  // k - 1 times, so it cannot survive. Primes free of v are wholly inside g,
  // which makes gcd(num, g) the only cancellation left to find.
  const MPoly g = poly_gcd(den_, dd);
  const MPoly dg = divide_exact(den_, g);
  MPoly num = num_.derivative(v) * dg - num_ * divide_exact(dd, g);
  if (num.is_zero()) return {};
  MPoly den = den_ * dg;
  if (!g.is_constant()) {
    const MPoly h = poly_gcd(num, g);
    if (!h.is_constant()) {
      num = divide_exact(num, h);
      den = divide_exact(den, h);
    }
  }
  RatFunc r;
  Rational scale;
  r.den_ = integer_primitive(den, &scale);
  r.num_ = num * scale;
  return r;
}

Rational RatFunc::evaluate(const Point3<Rational>& at) const {
  const Rational d = den_.evaluate(at);
  if (d == 0) throw DivisionByZero();
  return num_.evaluate(at) / d;
}

Interval RatFunc::evaluate(const Point3<Interval>& at) const { return num_.evaluate(at) / den_.evaluate(at); }

std::string to_string(const RatFunc& f) {
  if (f.den() == MPoly(1L)) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace splab::cas
