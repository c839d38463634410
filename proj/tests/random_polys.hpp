#pragma once

#include <random>

#include "random_values.hpp"
#include "splab/cas/mpoly.hpp"
#include "splab/cas/ratfunc.hpp"

namespace splab::testing {

/// Polynomial in X, Y of total degree <= max_degree with up to max_terms terms.
inline cas::MPoly random_poly_xy(std::mt19937_64& rng, int max_degree = 4, int max_terms = 4) {
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_degree);
  cas::MPoly p;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const int d = deg(rng);
    std::uniform_int_distribution<int> split(0, d);
    const int dx = split(rng);
    const cas::Monomial m{static_cast<std::uint16_t>(dx), static_cast<std::uint16_t>(d - dx), 0};
    p += cas::MPoly::monomial(m, random_rational(rng, 5, 3));
  }
  return p;
}

/// Nonzero denominator; numerator may be anything.
inline cas::RatFunc random_ratfunc_xy(std::mt19937_64& rng, int max_degree = 4) {
  cas::MPoly den;
  while (den.is_zero()) den = random_poly_xy(rng, max_degree, 3);
  return cas::RatFunc(random_poly_xy(rng, max_degree), den);
}

/// gcd(num, den) is a unit and den is integer primitive with positive lead.
inline bool ratfunc_canonical(const cas::RatFunc& f) {
  if (f.is_zero()) return f.den() == cas::MPoly(1L);
  if (!cas::poly_gcd(f.num(), f.den()).is_constant()) return false;
  return cas::integer_primitive(f.den()) == f.den();
}

}  // namespace splab::testing
