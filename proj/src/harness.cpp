#include "splab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include "splab/errors.hpp"

namespace splab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
  return out;
}

long parse_long(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + " '" + s + "'");
  }
}

Rational parse_rational_config(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + " '" + s + "'");
  }
}

}  // namespace

std::vector<long> parse_n_list(const std::string& text) {
  std::vector<long> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw ConfigError("empty entry in n list '" + text + "'");
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_long(parts[0], "n"));
    } else if (parts.size() == 3) {
      const long a = parse_long(parts[0], "n"), b = parse_long(parts[1], "n"), step = parse_long(parts[2], "n");
      if (step <= 0 || b < a) throw ConfigError("bad n range '" + item + "'");
      for (long v = a; v <= b; v += step) out.push_back(v);
    } else {
      throw ConfigError("bad n range '" + item + "' (expected start:stop:step)");
    }
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational_config(item, "rational"));
  if (out.empty()) throw ConfigError("empty rational list");
  return out;
}

void validate(const SweepConfig& cfg) {
  const auto& names = construction_names();
  if (std::find(names.begin(), names.end(), cfg.construction) == names.end()) {
    throw ConfigError("unknown construction '" + cfg.construction + "'");
  }
  if (cfg.ns.empty()) throw ConfigError("n list is empty");
  for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
    if (cfg.ns[i] < 1) throw ConfigError("n values must be positive");
    if (i > 0 && cfg.ns[i] <= cfg.ns[i - 1]) throw ConfigError("n list must be strictly ascending");
  }
  if (cfg.lambdas.empty()) throw ConfigError("lambda list is empty");
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, trim(t.substr(eq + 1))).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": repeated key '" + key + "'");
    }
  }
  return kv;
}

void apply_key_values(SweepConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "construction") {
      cfg.construction = v;
    } else if (k == "n") {
      cfg.ns = parse_n_list(v);
    } else if (k == "lambda") {
      cfg.lambdas = parse_rational_list(v);
    } else if (k == "alpha") {
      cfg.alpha = parse_rational_config(v, "alpha");
    } else if (k == "beta") {
      cfg.beta = parse_rational_config(v, "beta");
    } else if (k == "seed") {
      const long s = parse_long(v, "seed");
      if (s < 0) throw ConfigError("seed must be nonnegative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (k == "jobs") {
      const long j = parse_long(v, "jobs");
      if (j < 1 || j > 1024) throw ConfigError("jobs must be in [1, 1024]");
      cfg.jobs = static_cast<unsigned>(j);
    } else if (k == "out") {
      cfg.out = v;
    } else if (k == "format") {
      cfg.format = v;
    } else {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
}

unsigned default_jobs() {
  const char* env = std::getenv("SPLAB_JOBS");
  if (!env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 1024) return 1;
  return static_cast<unsigned>(v);
}

ExponentFit fit_exponent(std::vector<std::pair<double, double>> points) {
  if (points.size() < 3) throw PreconditionError("exponent fit needs at least 3 points");
  const double n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0) throw PreconditionError("exponent fit needs distinct x values");
  ExponentFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (const auto& [x, y] : points) {
    const double r = y - (f.slope * x + f.intercept);
    ss_res += r * r;
  }
  f.r2 = syy == 0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  f.points = std::move(points);
  return f;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  struct Point {
    long n;
    Rational lambda;
  };
  std::vector<Point> grid;
  for (long n : cfg.ns) {
    for (const auto& l : cfg.lambdas) grid.push_back({n, l});
  }

  std::vector<std::optional<AuditRecord>> slots(grid.size());
  auto run_point = [&](std::size_t i) {
    ConstructionParams p;
    p.n = grid[i].n;
    p.lambda = grid[i].lambda;
    p.alpha = cfg.alpha;
    p.beta = cfg.beta;
    p.seed = cfg.seed + i;  // per-point stream, independent of scheduling
    slots[i] = bound_audit(make_construction(cfg.construction, p), grid[i].lambda);
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(grid.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex m;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
          try {
            run_point(i);
          } catch (...) {
            std::lock_guard lock(m);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
  }

  SweepResult result;
  for (auto& s : slots) result.records.push_back(std::move(*s));
  for (const auto& l : cfg.lambdas) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : result.records) {
      if (r.lambda != l) continue;
      const double mx = static_cast<double>(std::max({r.sizeC, r.sizeD, r.sizeE}));
      pts.emplace_back(std::log(static_cast<double>(r.sizeG)), std::log(mx));
    }
    if (pts.size() >= 3) {
      try {
        result.fits.push_back({l, fit_exponent(std::move(pts))});
      } catch (const PreconditionError&) {
        // every |G| equal: nothing to fit
      }
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& r) {
  std::string s = csv_header() + "\n";
  for (const auto& rec : r.records) s += csv_row(rec) + "\n";
  return s;
}

namespace {

nlohmann::ordered_json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json audit_json(const AuditRecord& r) {
  nlohmann::ordered_json j;
  j["construction"] = r.construction;
  j["params"] = params_json(r.params);
  j["lambda"] = r.lambda ? nlohmann::ordered_json(to_string(*r.lambda)) : nullptr;
  j["sizeA"] = r.sizeA;
  j["sizeB"] = r.sizeB;
  j["sizeG"] = r.sizeG;
  j["sizeSum"] = r.sizeC;
  j["sizeDilate"] = r.sizeD;
  j["sizeProd"] = r.sizeE;
  j["sizeRatio"] = r.sizeRatio ? nlohmann::ordered_json(*r.sizeRatio) : nullptr;
  j["ratioTrivial"] = number_or_null(r.ratioTrivial);
  j["ratio611"] = number_or_null(r.ratio611);
  j["ratioSp34"] = number_or_null(r.ratioSp34);
  j["arsRhs"] = number_or_null(r.arsRhs);
  j["rszRhs"] = number_or_null(r.rszRhs);
  j["rszRhsRatio"] = number_or_null(r.rszRhsRatio);
  j["epsilon"] = r.epsilon ? number_or_null(*r.epsilon) : nullptr;
  j["epsilonPrime"] = r.epsilonPrime ? number_or_null(*r.epsilonPrime) : nullptr;
  j["trivialHolds"] = r.trivialHolds;
  return j;
}

nlohmann::ordered_json fit_json(const ExponentFit& f) {
  nlohmann::ordered_json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["r2"] = f.r2;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& [x, y] : f.points) pts.push_back({x, y});
  j["points"] = pts;
  return j;
}

nlohmann::ordered_json sweep_json(const SweepConfig& cfg, const SweepResult& r) {
  nlohmann::ordered_json j;
  j["construction"] = cfg.construction;
  j["n"] = cfg.ns;
  auto ls = nlohmann::ordered_json::array();
  for (const auto& l : cfg.lambdas) ls.push_back(to_string(l));
  j["lambda"] = ls;
  j["seed"] = cfg.seed;
  auto recs = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) recs.push_back(audit_json(rec));
  j["records"] = recs;
  auto fits = nlohmann::ordered_json::array();
  for (const auto& f : r.fits) {
    auto fj = fit_json(f.fit);
    fj["lambda"] = to_string(f.lambda);
    fits.push_back(fj);
  }
  j["fits"] = fits;
  return j;
}

std::string plot_rows(const SweepResult& r) {
  std::string s = "lambda,logG,logMax\n";
  char buf[96];
  for (const auto& rec : r.records) {
    const double mx = static_cast<double>(std::max({rec.sizeC, rec.sizeD, rec.sizeE}));
    std::snprintf(buf, sizeof buf, ",%.12g,%.12g\n", std::log(static_cast<double>(rec.sizeG)), std::log(mx));
    s += (rec.lambda ? to_string(*rec.lambda) : "NA") + buf;
  }
  return s;
}

}  // namespace splab
