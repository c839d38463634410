#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splab/es_counter.hpp"

namespace splab {

struct SweepConfig {
  std::string construction = "chang";
  /// Nonempty, strictly ascending, positive.
  std::vector<long> ns;
  /// Dilate parameters; each is also handed to generators that take lambda.
  std::vector<Rational> lambdas{Rational(2)};
  std::optional<Rational> alpha;
  std::optional<Rational> beta;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
  std::string format = "csv";
};

/// Throws ConfigError.
void validate(const SweepConfig& cfg);

/// "10,20,30", "20:200:20" (inclusive range with step) or a mix of both.
std::vector<long> parse_n_list(const std::string& text);
/// Comma-separated rationals such as "2,1/2,-3".
std::vector<Rational> parse_rational_list(const std::string& text);

/// key=value lines; blank lines and lines starting with '#' are ignored.
/// Throws ConfigError on malformed lines or repeated keys.
std::map<std::string, std::string> read_key_values(std::istream& in);
/// Keys: construction, n, lambda, alpha, beta, seed, jobs, out, format.
/// Throws ConfigError on unknown keys or bad values.
void apply_key_values(SweepConfig& cfg, const std::map<std::string, std::string>& kv);

/// Positive value of SPLAB_JOBS, else 1.
unsigned default_jobs();

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::vector<std::pair<double, double>> points;
};

/// Least squares y = slope x + intercept. Throws PreconditionError on fewer
/// than 3 points or when all x coincide.
ExponentFit fit_exponent(std::vector<std::pair<double, double>> points);

struct SweepFit {
  Rational lambda;
  ExponentFit fit;
};

struct SweepResult {
  /// Grid order: n outer, lambda inner.
  std::vector<AuditRecord> records;
  /// One per lambda with at least 3 grid points; log max(|C|,|D|,|E|) vs log |G|.
  std::vector<SweepFit> fits;
};

/// Deterministic for a given config; independent of cfg.jobs.
SweepResult run_sweep(const SweepConfig& cfg);

std::string sweep_csv(const SweepResult& r);
nlohmann::ordered_json sweep_json(const SweepConfig& cfg, const SweepResult& r);
nlohmann::ordered_json audit_json(const AuditRecord& r);
nlohmann::ordered_json fit_json(const ExponentFit& f);
/// "lambda,logG,logMax" rows, one per record.
std::string plot_rows(const SweepResult& r);

}  // namespace splab
