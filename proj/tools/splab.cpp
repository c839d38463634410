// splab: command-line driver for the sum-product laboratory.
//
// Exit codes
//   0  success
//   1  internal error
//   2  usage or configuration error
//   3  file could not be read or written
//   4  malformed input (graph file, polynomial, rational, instance JSON)
//   5  mathematical precondition or domain failure (lambda = 1, too few
//      primes, no evaluation box, unsupported division, ...)
//   6  size guard exceeded

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "splab/cas/degeneracy.hpp"
#include "splab/cas/elimination.hpp"
#include "splab/cas/parse.hpp"
#include "splab/constructions.hpp"
#include "splab/errors.hpp"
#include "splab/harness.hpp"

namespace {

using namespace splab;

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kIo = 3, kInput = 4, kMath = 5, kGuard = 6 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

Rational rational_arg(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const ParseError&) {
    throw ConfigError(std::string("bad ") + what + " '" + s + "'");
  }
}

std::optional<Rational> optional_rational(const std::string& s, const char* what) {
  if (s.empty()) return std::nullopt;
  return rational_arg(s, what);
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string construction;
  long n = 0;
  std::string lambda, alpha, beta;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
};

int run_generate(const GenerateArgs& a) {
  if (a.n < 1) throw ConfigError("generate needs n >= 1 (positional or --n)");
  ConstructionParams p;
  p.n = a.n;
  p.lambda = optional_rational(a.lambda, "lambda");
  p.alpha = optional_rational(a.alpha, "alpha");
  p.beta = optional_rational(a.beta, "beta");
  p.seed = a.seed;
  const ConstructionInstance inst = make_construction(a.construction, p);
  std::ostringstream graph;
  write_graph(graph, inst.graph);
  if (a.format == "json") {
    nlohmann::ordered_json doc = predicted_json(inst);
    doc["graph"] = graph.str();
    write_output(a.out, doc.dump(2) + "\n");
  } else {
    write_output(a.out, graph.str());
    if (!a.out.empty() && a.out != "-") write_output(a.out + ".json", predicted_json(inst).dump(2) + "\n");
  }
  return kOk;
}

// ---- audit ----------------------------------------------------------------

struct AuditArgs {
  std::string input;
  std::string lambda;
  std::string out;
  std::string format = "csv";
};

int run_audit(const AuditArgs& a) {
  std::istringstream text(read_file(a.input));
  RestrictionGraph graph = read_graph(text);
  const std::string sidecar = a.input + ".json";
  std::optional<ConstructionInstance> inst;
  if (a.input != "-" && file_exists(sidecar)) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(sidecar));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("bad instance document: ") + e.what(), e.byte);
    }
    inst = instance_from_json(graph, doc);
  } else {
    inst = ConstructionInstance{"file", {}, graph, {}, {}, {}};
  }
  Rational lambda(2);
  if (!a.lambda.empty()) {
    lambda = rational_arg(a.lambda, "lambda");
  } else if (inst->params.lambda) {
    lambda = *inst->params.lambda;
  }
  const AuditRecord rec = bound_audit(*inst, lambda);
  if (a.format == "json") {
    nlohmann::ordered_json doc = audit_json(rec);
    const PredictionReport report = check_predictions(*inst);
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : report.values) {
      checks.push_back({{"statistic", c.prediction.statistic},
                        {"relation", c.prediction.relation == Relation::Equal ? "=" : "<="},
                        {"predicted", c.prediction.value.get_str()},
                        {"measured", c.measured ? nlohmann::ordered_json(*c.measured) : nullptr},
                        {"ok", c.ok}});
    }
    for (const auto& s : report.sets) checks.push_back({{"statistic", s.statistic}, {"set", true}, {"ok", s.ok}});
    doc["predictions"] = checks;
    doc["predictionsOk"] = report.all_ok();
    write_output(a.out, doc.dump(2) + "\n");
  } else {
    write_output(a.out, csv_header() + "\n" + csv_row(rec) + "\n");
  }
  return kOk;
}

// ---- degeneracy -----------------------------------------------------------

struct DegeneracyArgs {
  std::string poly;
  std::string dilate_lambda;
  bool sp = false;
  bool shifted = false;
  std::string alpha = "1";
  std::string beta = "0";
  int sign = 1;
  bool numeric = false;
  int samples = 64;
  unsigned precision = 1024;
  std::uint64_t seed = 1;
  std::string out;
};

int run_degeneracy(const DegeneracyArgs& a) {
  const int sources = (!a.poly.empty()) + (!a.dilate_lambda.empty()) + a.sp + a.shifted;
  if (sources != 1) throw ConfigError("give exactly one of --poly, --dilate-lambda, --sp, --shifted");

  cas::NumericOptions opt;
  opt.samples = a.samples;
  opt.max_precision = a.precision;
  opt.seed = a.seed;

  nlohmann::ordered_json cert;
  if (a.shifted) {
    const Rational alpha = rational_arg(a.alpha, "alpha");
    const Rational beta = rational_arg(a.beta, "beta");
    const auto branch = cas::eliminate_shifted_product(alpha, beta, a.sign);
    const std::string input = "shifted-product alpha=" + to_string(alpha) + " beta=" + to_string(beta) +
                              " sign=" + std::to_string(a.sign) + ": Z=" + cas::to_string(branch.z);
    cert = cas::certificate(input, cas::degeneracy_test_numeric(branch.z, opt));
  } else {
    cas::RatFunc f;
    std::string input;
    std::vector<cas::Point3<Rational>> preferred;
    if (!a.poly.empty()) {
      f = cas::parse_ratfunc(a.poly);
      input = a.poly;
    } else if (a.sp) {
      f = cas::RatFunc(cas::eliminate_sp() + cas::MPoly::variable(cas::Var::Z));
      input = "sp: f=" + cas::to_string(f);
      preferred = {{Rational(0), Rational(1), Rational(0)}};
    } else {
      const Rational lambda = rational_arg(a.dilate_lambda, "lambda");
      f = cas::eliminate_dilate(lambda).f;
      input = "dilate lambda=" + to_string(lambda) + ": f=" + cas::to_string(f);
      preferred = {{Rational(1), Rational(1), Rational(0)}};
    }
    for (cas::Var v : {cas::Var::Z}) {
      if (f.num().depends_on(v) || f.den().depends_on(v)) throw ConfigError("f must be a function of X and Y only");
    }
    if (a.numeric) {
      if (!f.is_polynomial()) throw ConfigError("--numeric accepts polynomial inputs only");
      opt.preferred_centres = preferred;
      cert = cas::certificate(input, cas::degeneracy_test_numeric(cas::lift(f.num() * (1 / f.den().constant())), opt));
    } else {
      cert = cas::certificate(input, cas::degeneracy_test_rational(f, preferred));
    }
  }
  write_output(a.out, cert.dump(2) + "\n");
  return kOk;
}

// ---- sweep / plotdata -----------------------------------------------------

struct SweepArgs {
  std::string construction, n, lambda, alpha, beta, out, format;
  long long seed = -1;
  unsigned jobs = 0;
};

SweepConfig sweep_config(const SweepArgs& a) {
  SweepConfig cfg;
  cfg.jobs = default_jobs();
  std::map<std::string, std::string> kv;
  if (!a.construction.empty()) kv["construction"] = a.construction;
  if (!a.n.empty()) kv["n"] = a.n;
  if (!a.lambda.empty()) kv["lambda"] = a.lambda;
  if (!a.alpha.empty()) kv["alpha"] = a.alpha;
  if (!a.beta.empty()) kv["beta"] = a.beta;
  if (!a.out.empty()) kv["out"] = a.out;
  if (!a.format.empty()) kv["format"] = a.format;
  if (a.seed >= 0) kv["seed"] = std::to_string(a.seed);
  if (a.jobs > 0) kv["jobs"] = std::to_string(a.jobs);
  apply_key_values(cfg, kv);
  validate(cfg);
  return cfg;
}

int run_sweep_cmd(const SweepArgs& a) {
  const SweepConfig cfg = sweep_config(a);
  const SweepResult r = run_sweep(cfg);
  if (cfg.format == "json") {
    write_output(cfg.out, sweep_json(cfg, r).dump(2) + "\n");
  } else {
    write_output(cfg.out, sweep_csv(r));
    for (const auto& f : r.fits) {
      std::fprintf(stderr, "fit lambda=%s slope=%.6f intercept=%.6f r2=%.6f points=%zu\n",
                   to_string(f.lambda).c_str(), f.fit.slope, f.fit.intercept, f.fit.r2, f.fit.points.size());
    }
  }
  return kOk;
}

int run_plotdata(const SweepArgs& a) {
  const SweepConfig cfg = sweep_config(a);
  write_output(cfg.out, plot_rows(run_sweep(cfg)));
  return kOk;
}

// ---- config injection -----------------------------------------------------

// "--config FILE" on any subcommand: each key=value line becomes "--key=value"
// placed before the explicit arguments, so explicit flags win ("true"/"false"
// toggle bare flags).
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.size() < 2) return args;
  std::string path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::istringstream in(read_file(path));
  std::vector<std::string> out{args[0], args[1]};
  for (const auto& [k, v] : read_key_values(in)) {
    if (k == "config") throw ConfigError("config files cannot nest");
    if (v == "true") {
      out.push_back("--" + k);
    } else if (v != "false") {
      out.push_back("--" + k + "=" + v);
    }
  }
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

int classify(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const ConfigError*>(&e)) return kUsage;
  if (dynamic_cast<const ParseError*>(&e)) return kInput;
  if (dynamic_cast<const SizeGuardExceeded*>(&e)) return kGuard;
  if (dynamic_cast<const Error*>(&e)) return kMath;
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic laboratory for sums, products and dilates on sparse graphs"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  const char* names = "chang, figure1, ars2, pencil, hyperbola-pair, random";

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a construction in the graph text format");
  g->add_option("construction", gen.construction, std::string("One of: ") + names)->required();
  g->add_option("n_pos", gen.n, "Size parameter n");
  g->add_option("--n", gen.n, "Size parameter n");
  g->add_option("--lambda", gen.lambda, "Rational lambda (pencil, ars2)");
  g->add_option("--alpha", gen.alpha, "Rational alpha (hyperbola-pair)");
  g->add_option("--beta", gen.beta, "Rational beta (hyperbola-pair)");
  g->add_option("--seed", gen.seed, "Seed for the random construction");
  g->add_option("--out", gen.out, "Output path; also writes <out>.json with the predictions");
  g->add_option("--format", gen.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  g->add_option("--config", config_path, "key=value file mirroring the flags");

  AuditArgs aud;
  auto* a = app.add_subcommand("audit", "Audit a graph file and emit one CSV row");
  a->add_option("input", aud.input, "Graph file ('-' for stdin); <input>.json supplies predictions")->required();
  a->add_option("--lambda", aud.lambda, "Dilate parameter (default: from the instance, else 2)");
  a->add_option("--out", aud.out, "Output path (default stdout)");
  a->add_option("--format", aud.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  a->add_option("--config", config_path, "key=value file mirroring the flags");

  DegeneracyArgs deg;
  auto* d = app.add_subcommand("degeneracy", "Emit a degeneracy certificate as JSON");
  d->add_option("--poly", deg.poly, "Rational function f(X, Y)");
  d->add_option("--dilate-lambda", deg.dilate_lambda, "Preset f = (X-Y)(Y-lambda X)/(1-lambda)^2");
  d->add_flag("--sp", deg.sp, "Preset f = X(Y-X)");
  d->add_flag("--shifted", deg.shifted, "Preset shifted-product branch (numeric path)");
  d->add_option("--alpha", deg.alpha, "alpha for --shifted");
  d->add_option("--beta", deg.beta, "beta for --shifted");
  d->add_option("--sign", deg.sign, "Branch sign for --shifted")->check(CLI::IsMember({-1, 1}));
  d->add_flag("--numeric", deg.numeric, "Use the sampling path for polynomial inputs");
  d->add_option("--samples", deg.samples, "Numeric samples")->check(CLI::PositiveNumber);
  d->add_option("--precision", deg.precision, "Maximum precision in bits")->check(CLI::Range(64u, 65536u));
  d->add_option("--seed", deg.seed, "Seed for sample points");
  d->add_option("--out", deg.out, "Output path (default stdout)");
  d->add_option("--config", config_path, "key=value file mirroring the flags");

  SweepArgs sw;
  auto add_sweep_flags = [&](CLI::App* s) {
    s->add_option("--construction,-c", sw.construction, std::string("One of: ") + names);
    s->add_option("--n", sw.n, "n list: 10,20,30 or 20:200:20");
    s->add_option("--lambda", sw.lambda, "Comma-separated rational lambdas");
    s->add_option("--alpha", sw.alpha, "Rational alpha");
    s->add_option("--beta", sw.beta, "Rational beta");
    s->add_option("--seed", sw.seed, "Seed")->check(CLI::NonNegativeNumber);
    s->add_option("--jobs", sw.jobs, "Worker threads (default $SPLAB_JOBS or 1)")->check(CLI::Range(1u, 1024u));
    s->add_option("--out", sw.out, "Output path (default stdout)");
    s->add_option("--format", sw.format, "csv or json");
    s->add_option("--config", config_path, "key=value file mirroring the flags");
  };
  auto* s = app.add_subcommand("sweep", "Audit a construction over an n grid and fit exponents");
  add_sweep_flags(s);
  auto* p = app.add_subcommand("plotdata", "Emit log|G| and log max-size columns for plotting");
  add_sweep_flags(p);

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(args);
    std::vector<const char*> cargs;
    for (const auto& x : args) cargs.push_back(x.c_str());
    try {
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kOk : kUsage;
    }
    if (*g) return run_generate(gen);
    if (*a) return run_audit(aud);
    if (*d) return run_degeneracy(deg);
    if (*s) return run_sweep_cmd(sw);
    if (*p) return run_plotdata(sw);
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "splab: %s\n", e.what());
    return classify(e);
  }
}
