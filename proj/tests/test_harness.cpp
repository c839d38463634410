#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "splab/errors.hpp"
#include "splab/harness.hpp"

using namespace splab;

TEST_CASE("fit recovers an exact power law") {
  for (double k : {0.5, 6.0 / 11.0, 0.75, 1.3}) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i <= 12; ++i) {
      const double x = std::log(10.0 * i * i);
      pts.emplace_back(x, k * x + 0.7);
    }
    const auto f = fit_exponent(pts);
    CHECK(std::abs(f.slope - k) < 1e-9);
    CHECK(std::abs(f.intercept - 0.7) < 1e-9);
    CHECK(f.r2 == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(fit_exponent({{0, 0}, {1, 1}}), PreconditionError);
  CHECK_THROWS_AS(fit_exponent({{1, 0}, {1, 1}, {1, 2}}), PreconditionError);
}

TEST_CASE("fit r2 stays within [0, 1]") {
  const auto f = fit_exponent({{0, 1}, {1, -1}, {2, 1}, {3, -1}});
  CHECK(f.r2 >= 0);
  CHECK(f.r2 <= 1);
}

TEST_CASE("n and rational lists") {
  CHECK(parse_n_list("20:100:20") == std::vector<long>{20, 40, 60, 80, 100});
  CHECK(parse_n_list("3, 5,7") == std::vector<long>{3, 5, 7});
  CHECK(parse_n_list("1,4:8:2") == std::vector<long>{1, 4, 6, 8});
  CHECK_THROWS_AS(parse_n_list("3,,4"), ConfigError);
  CHECK_THROWS_AS(parse_n_list("5:1:1"), ConfigError);
  CHECK_THROWS_AS(parse_n_list("x"), ConfigError);
  CHECK(parse_rational_list("2,1/2,-3") == std::vector<Rational>{2, Rational(1, 2), -3});
  CHECK_THROWS_AS(parse_rational_list("2,a"), ConfigError);
}

TEST_CASE("config files") {
  std::istringstream in("# sweep\nconstruction = pencil\nn=2:6:2\nlambda=3,1/2\njobs=2\n\nseed=7\n");
  SweepConfig cfg;
  apply_key_values(cfg, read_key_values(in));
  CHECK(cfg.construction == "pencil");
  CHECK(cfg.ns == std::vector<long>{2, 4, 6});
  CHECK(cfg.lambdas.size() == 2);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.seed == 7);

  std::istringstream bad("n=3\nnonsense\n");
  CHECK_THROWS_AS(read_key_values(bad), ConfigError);
  std::istringstream repeated("n=3\nn=4\n");
  CHECK_THROWS_AS(read_key_values(repeated), ConfigError);
  SweepConfig c2;
  CHECK_THROWS_AS(apply_key_values(c2, {{"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(apply_key_values(c2, {{"jobs", "0"}}), ConfigError);
}

TEST_CASE("config validation") {
  SweepConfig cfg;
  CHECK_THROWS_AS(validate(cfg), ConfigError);  // empty n list
  cfg.ns = {3, 2};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.ns = {2, 3};
  CHECK_NOTHROW(validate(cfg));
  cfg.construction = "nope";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.construction = "chang";
  cfg.format = "xml";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("chang sweep slope is one half") {
  SweepConfig cfg;
  cfg.construction = "chang";
  cfg.ns = parse_n_list("20:200:20");
  cfg.lambdas = {-1};
  const auto r = run_sweep(cfg);
  REQUIRE(r.fits.size() == 1);
  CHECK(std::abs(r.fits[0].fit.slope - 0.5) <= 0.02);
  CHECK(r.records.size() == 10);
}

TEST_CASE("single grid point has no fit") {
  SweepConfig cfg;
  cfg.ns = {5};
  const auto r = run_sweep(cfg);
  CHECK(r.records.size() == 1);
  CHECK(r.fits.empty());
}

TEST_CASE("sweeps are deterministic and independent of jobs") {
  SweepConfig cfg;
  cfg.construction = "random";
  cfg.ns = {10, 20, 30, 40};
  cfg.lambdas = {2, Rational(1, 2)};
  cfg.seed = 99;
  const auto serial = run_sweep(cfg);
  cfg.jobs = 4;
  const auto parallel = run_sweep(cfg);
  CHECK(sweep_csv(serial) == sweep_csv(parallel));
  CHECK(sweep_json(cfg, serial).dump() == sweep_json(cfg, parallel).dump());
  CHECK(plot_rows(serial) == plot_rows(parallel));
  cfg.seed = 100;
  CHECK(sweep_csv(run_sweep(cfg)) != sweep_csv(serial));
}

TEST_CASE("SPLAB_JOBS default") {
  setenv("SPLAB_JOBS", "3", 1);
  CHECK(default_jobs() == 3);
  setenv("SPLAB_JOBS", "zero", 1);
  CHECK(default_jobs() == 1);
  unsetenv("SPLAB_JOBS");
  CHECK(default_jobs() == 1);
}

TEST_CASE("plot rows") {
  SweepConfig cfg;
  cfg.ns = {2, 3};
  const auto rows = plot_rows(run_sweep(cfg));
  CHECK(rows.rfind("lambda,logG,logMax\n2,", 0) == 0);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
}
