#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splab/graph_sets.hpp"

namespace splab {

/// Statistic names shared by predictions, measurements and reports.
namespace stat {
inline constexpr const char* kSizeA = "sizeA";
inline constexpr const char* kSizeB = "sizeB";
inline constexpr const char* kSizeG = "sizeG";
inline constexpr const char* kSum = "sizeSum";
inline constexpr const char* kDiff = "sizeDiff";
/// A +_G lambda B with the instance's lambda.
inline constexpr const char* kDilate = "sizeDilate";
inline constexpr const char* kProd = "sizeProd";
inline constexpr const char* kRatio = "sizeRatio";
/// (A + alpha) ._G (B + beta) with the instance's alpha, beta.
inline constexpr const char* kShiftedProd = "sizeShiftedProd";
/// max(|A +_G B|, |A ._G B|)
inline constexpr const char* kMaxSumProd = "sizeMaxSumProd";
}  // namespace stat

enum class Relation { Equal, AtMost };

struct Prediction {
  std::string statistic;
  Relation relation = Relation::Equal;
  Integer value;
};

struct ConstructionParams {
  long n = 0;
  std::optional<Rational> lambda;
  std::optional<Rational> alpha;
  std::optional<Rational> beta;
  std::optional<std::uint64_t> seed;
};

struct ConstructionInstance {
  std::string name;
  ConstructionParams params;
  RestrictionGraph graph;
  std::vector<Prediction> predicted;
  /// Statistic -> predicted value set, compared by exact set equality.
  std::map<std::string, std::vector<RadicalSum>> predicted_sets;
  /// Collision reports, parameter reselections and similar remarks.
  std::vector<std::string> notes;
};

/// A = {sqrt(i) +- sqrt(j)}, G = {(sqrt(i)+sqrt(j), sqrt(i)-sqrt(j)) : i, j in [n]}.
ConstructionInstance chang(long n);

/// Intersections of the lines x + y = 2n + k with the hyperbolas xy = m,
/// k, m in [n]; every point gives the edge (x, y).
ConstructionInstance figure1_lines_hyperbolas(long n);

/// Edges (u sqrt(v/w), z sqrt(w/v)) over distinct primes with v, w <= n^(1/5)
/// and u, z <= n^(3/5). Throws InsufficientPrimes unless there are at least
/// 2 small and 4 large primes.
ConstructionInstance ars2(long n, const Rational& lambda);

/// Edges (2^i + lambda 2^j, -2^i - 2^j), i, j in [n]. Repeated edges are
/// dropped and every prediction is downgraded to an upper bound.
ConstructionInstance pencil(long n, const Rational& lambda);

/// Intersections of {xy = c : c in C} with {(x+alpha)(y+beta) = d : d in D}.
/// C = {1..n}, D = {M+1..M+n}; M doubles until every discriminant is positive.
/// Throws PreconditionError when alpha or beta is zero.
ConstructionInstance hyperbola_pair_families(long n, const Rational& alpha, const Rational& beta);

/// Random rational sets of sizes in [1, max_size] and a random nonempty G.
ConstructionInstance random_instance(std::uint64_t seed, long max_size = 50);

/// Dispatch on the CLI names "chang", "figure1", "ars2", "pencil",
/// "hyperbola-pair" and "random". Missing lambda/alpha/beta default to 2, 1, 2.
ConstructionInstance make_construction(const std::string& name, const ConstructionParams& params);
const std::vector<std::string>& construction_names();

/// Measured value of a statistic; nullopt when it cannot be computed
/// (a ratio with zero or unsupported divisor, a missing parameter).
std::optional<std::size_t> measure(const ConstructionInstance& inst, const std::string& statistic);

struct PredictionCheck {
  Prediction prediction;
  std::optional<std::size_t> measured;
  bool ok = false;
};

struct SetCheck {
  std::string statistic;
  bool ok = false;
};

struct PredictionReport {
  std::vector<PredictionCheck> values;
  std::vector<SetCheck> sets;
  bool all_ok() const;
};

PredictionReport check_predictions(const ConstructionInstance& inst);

nlohmann::ordered_json params_json(const ConstructionParams& p);
/// {"construction", "params", "predicted", "predictedSets", "notes"}
nlohmann::ordered_json predicted_json(const ConstructionInstance& inst);

/// Inverse of predicted_json, attached to a graph read back from disk.
/// Throws ParseError on malformed documents.
ConstructionInstance instance_from_json(RestrictionGraph graph, const nlohmann::json& doc);

/// Primes <= limit by the sieve of Eratosthenes.
std::vector<long> primes_up_to(long limit);
/// floor(x^(1/k)) for x >= 0.
Integer integer_root(const Integer& x, unsigned long k);

}  // namespace splab
