#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splab/cas/mpoly.hpp"
#include "splab/constructions.hpp"

namespace splab {

inline constexpr std::uint64_t kTripleLoopGuard = 100'000'000;

enum class CountPath { Auto, TripleLoop };

struct CountOptions {
  CountPath path = CountPath::Auto;
  std::uint64_t guard = kTripleLoopGuard;
  /// Worker threads for the (c, d) grid; 0 or 1 runs serially.
  unsigned jobs = 1;
};

/// Number of (c, d, e) in Cs x Ds x Es with F(c, d, e) = 0. Lists are read as
/// sets. When F = k Z + h(X, Y) with k a nonzero constant, each (c, d) is
/// resolved by one hash lookup of -h(c, d)/k in Es; otherwise every triple is
/// evaluated (Horner in Z) after checking |Cs| |Ds| |Es| <= guard.
/// Throws SizeGuardExceeded, or UnsupportedEvaluation when h(c, d) would need
/// an unsupported division.
std::uint64_t count_zero_intersection(const cas::MPoly& F, const std::vector<RadicalSum>& Cs,
                                      const std::vector<RadicalSum>& Ds, const std::vector<RadicalSum>& Es,
                                      const CountOptions& options = {});

struct SolutionCount {
  std::uint64_t S = 0;
  std::uint64_t zCount = 0;
  bool injective = false;
  /// Every image triple satisfies F = 0.
  bool on_surface = false;
  std::size_t sizeC = 0, sizeD = 0, sizeE = 0;
};

/// Maps each edge (a, b) to (a + b, a + lambda b, ab) and counts zeros of the
/// eliminated F on C x D x E. Throws LambdaOne.
SolutionCount verify_injection(const RestrictionGraph& g, const Rational& lambda, const CountOptions& options = {});

/// nA^(1/2) nB^(2/3) nC^(2/3) + nA^(1/2) (nA^(1/2) + nB + nC), constant free.
double rsz_rhs(std::uint64_t nA, std::uint64_t nB, std::uint64_t nC);

struct AuditRecord {
  std::string construction;
  ConstructionParams params;
  std::optional<Rational> lambda;  // dilate used for |D|
  std::size_t sizeA = 0, sizeB = 0, sizeG = 0;
  std::size_t sizeC = 0;  // |A +_G B|
  std::size_t sizeD = 0;  // |A +_G lambda B|
  std::size_t sizeE = 0;  // |A ._G B|
  std::optional<std::size_t> sizeRatio;
  double ratioTrivial = 0;  // max(C, E) sqrt(2) / |G|^(1/2)
  double ratio611 = 0;      // max(C, D, E) / |G|^(6/11)
  double ratioSp34 = 0;     // max(C, E) |A|^(3/8) / |G|^(3/4)
  double arsRhs = 0;        // |G|^(3/2) / |A|^(7/4)
  double rszRhs = 0;
  double rszRhsRatio = 0;  // |G| / rszRhs, NaN when rszRhs = 0
  /// |G| = |A|^(3/2 + epsilon); absent when |A| < 2.
  std::optional<double> epsilon;
  /// 4 epsilon / (24 + 16 epsilon), recorded when epsilon > 0.
  std::optional<double> epsilonPrime;
  /// 2 max(C, E)^2 >= |G|, decided in integers.
  bool trivialHolds = false;
};

/// Throws PreconditionError when |G| = 0.
AuditRecord bound_audit(const ConstructionInstance& inst, const Rational& lambda);

const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const AuditRecord& r);

}  // namespace splab
