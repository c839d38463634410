#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splab/cas/expr.hpp"
#include "splab/cas/ratfunc.hpp"

namespace splab::cas {

enum class DerivativeOrder { XFirst, YFirst };

/// d^2/dXdY of log|f_X / f_Y|, with the logarithm never materialized.
/// XFirst: d/dY (f_XX/f_X - f_XY/f_Y).  YFirst: d/dX (f_XY/f_X - f_YY/f_Y).
/// Throws PreconditionError when f_X or f_Y vanishes identically.
RatFunc degeneracy_expression(const RatFunc& f, DerivativeOrder order = DerivativeOrder::XFirst);

struct RationalWitness {
  Rational x;
  Rational y;
  Rational value;
};

struct RationalDegeneracy {
  RatFunc T;
  bool identically_zero = false;
  std::optional<RationalWitness> witness;
};

/// `preferred` points are tried first, then (0,1), (1,1) and growing
/// integer grids. The witness has nonzero numerator and denominator.
RationalDegeneracy degeneracy_test_rational(const RatFunc& f,
                                            const std::vector<Point3<Rational>>& preferred = {});

struct NumericOptions {
  int samples = 64;
  unsigned min_precision = 64;
  unsigned max_precision = 1024;
  std::uint64_t seed = 1;
  /// Box centres tried before random ones (Z coordinate ignored).
  std::vector<Point3<Rational>> preferred_centres;
};

enum class NumericVerdict { ProbablyZero, NonzeroWitness };

struct NumericDegeneracy {
  NumericVerdict verdict = NumericVerdict::ProbablyZero;
  Expr T;
  /// Evaluation box actually used: centre and half-width.
  Rational centre_x, centre_y, radius;
  int samples_used = 0;
  unsigned precision = 0;
  std::optional<Rational> witness_x, witness_y;
  std::optional<Interval> enclosure;
};

/// Throws DomainError when no box is found on which e, its first partials
/// and T are all certified evaluable.
NumericDegeneracy degeneracy_test_numeric(const Expr& e, const NumericOptions& options = {});

/// Certificate documents: {input, T, verdict, witness, enclosure}.
nlohmann::ordered_json certificate(const std::string& input, const RationalDegeneracy& r);
nlohmann::ordered_json certificate(const std::string& input, const NumericDegeneracy& r);

}  // namespace splab::cas
