#include "splab/es_counter.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "splab/cas/elimination.hpp"
#include "splab/errors.hpp"

namespace splab {

namespace {

using RadicalSet = std::unordered_set<RadicalSum, RadicalSumHash>;

std::vector<RadicalSum> distinct(const std::vector<RadicalSum>& v) {
  RadicalSet seen;
  std::vector<RadicalSum> out;
  for (const auto& x : v) {
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

// Runs body(i) for i in [0, n) on up to `jobs` threads and sums the results.
template <typename Body>
std::uint64_t parallel_sum(std::size_t n, unsigned jobs, Body&& body) {
  if (jobs <= 1 || n < 2) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += body(i);
    return total;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> total{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned t = 0; t < count; ++t) {
    workers.emplace_back([&] {
      try {
        std::uint64_t local = 0;
        for (std::size_t i = next++; i < n; i = next++) local += body(i);
        total += local;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
  return total;
}

}  // namespace

std::uint64_t count_zero_intersection(const cas::MPoly& F, const std::vector<RadicalSum>& Cs_in,
                                      const std::vector<RadicalSum>& Ds_in, const std::vector<RadicalSum>& Es_in,
                                      const CountOptions& options) {
  const auto Cs = distinct(Cs_in);
  const auto Ds = distinct(Ds_in);
  const auto Es = distinct(Es_in);
  if (Cs.empty() || Ds.empty() || Es.empty()) return 0;

  const auto linear = cas::as_linear_in_z(F);
  if (linear && options.path == CountPath::Auto) {
    const RadicalSet targets(Es.begin(), Es.end());
    const Rational scale = -1 / linear->z_coefficient;
    const cas::MPoly& h = linear->rest;
    return parallel_sum(Cs.size(), options.jobs, [&](std::size_t i) {
      std::uint64_t hits = 0;
      for (const auto& d : Ds) {
        const RadicalSum z = h.evaluate(cas::Point3<RadicalSum>{Cs[i], d, RadicalSum()}).scaled(scale);
        hits += targets.contains(z) ? 1 : 0;
      }
      return hits;
    });
  }

  const unsigned __int128 work = static_cast<unsigned __int128>(Cs.size()) * Ds.size() * Es.size();
  if (work > options.guard) {
    throw SizeGuardExceeded("triple loop over " + std::to_string(Cs.size()) + " x " + std::to_string(Ds.size()) +
                            " x " + std::to_string(Es.size()) + " exceeds the guard");
  }
  // F = sum_k a_k(X, Y) Z^k
  const auto coeffs = F.coefficients_in(cas::Var::Z);
  const int top = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  return parallel_sum(Cs.size(), options.jobs, [&](std::size_t i) {
    std::uint64_t hits = 0;
    std::vector<RadicalSum> a(static_cast<std::size_t>(top) + 1);
    for (const auto& d : Ds) {
      for (const auto& [k, ck] : coeffs) {
        a[static_cast<std::size_t>(k)] = ck.evaluate(cas::Point3<RadicalSum>{Cs[i], d, RadicalSum()});
      }
      for (const auto& e : Es) {
        RadicalSum acc = a[static_cast<std::size_t>(top)];
        for (int k = top - 1; k >= 0; --k) acc = acc * e + a[static_cast<std::size_t>(k)];
        hits += acc.is_zero() ? 1 : 0;
      }
    }
    return hits;
  });
}

SolutionCount verify_injection(const RestrictionGraph& g, const Rational& lambda, const CountOptions& options) {
  const auto elim = cas::eliminate_dilate(lambda);
  const auto C = restricted_sum(g).values;
  const auto D = restricted_dilate_sum(g, lambda).values;
  const auto E = restricted_product(g).values;

  SolutionCount out;
  out.S = g.edge_count();
  out.sizeC = C.size();
  out.sizeD = D.size();
  out.sizeE = E.size();
  struct TripleHash {
    std::size_t operator()(const std::array<RadicalSum, 3>& t) const {
      std::size_t h = t[0].hash();
      hash_combine(h, t[1].hash());
      hash_combine(h, t[2].hash());
      return h;
    }
  };
  std::unordered_set<std::array<RadicalSum, 3>, TripleHash> images;
  out.on_surface = true;
  for (const Edge& e : g.edges()) {
    const RadicalSum& a = g.left_value(e);
    const RadicalSum& b = g.right_value(e);
    std::array<RadicalSum, 3> t{a + b, a + b.scaled(lambda), a * b};
    if (!elim.F.evaluate(cas::Point3<RadicalSum>{t[0], t[1], t[2]}).is_zero()) out.on_surface = false;
    images.insert(std::move(t));
  }
  out.injective = images.size() == g.edge_count();
  out.zCount = count_zero_intersection(elim.F, C, D, E, options);
  return out;
}

double rsz_rhs(std::uint64_t nA, std::uint64_t nB, std::uint64_t nC) {
  const double a = std::sqrt(static_cast<double>(nA));
  const double b = static_cast<double>(nB);
  const double c = static_cast<double>(nC);
  return a * std::cbrt(b * b) * std::cbrt(c * c) + a * (a + b + c);
}

AuditRecord bound_audit(const ConstructionInstance& inst, const Rational& lambda) {
  const RestrictionGraph& g = inst.graph;
  if (g.edge_count() == 0) throw PreconditionError("bound_audit requires |G| >= 1");
  AuditRecord r;
  r.construction = inst.name;
  r.params = inst.params;
  r.lambda = lambda;
  r.sizeA = g.left().size();
  r.sizeB = g.right().size();
  r.sizeG = g.edge_count();
  r.sizeC = restricted_sum(g).size();
  r.sizeD = restricted_dilate_sum(g, lambda).size();
  r.sizeE = restricted_product(g).size();
  try {
    r.sizeRatio = restricted_ratio(g).size();
  } catch (const DivisionByZero&) {
  } catch (const UnsupportedDenominator&) {
  }

  const double G = static_cast<double>(r.sizeG);
  const double A = static_cast<double>(r.sizeA);
  const std::size_t ce = std::max(r.sizeC, r.sizeE);
  const std::size_t cde = std::max(ce, r.sizeD);
  r.ratioTrivial = static_cast<double>(ce) * std::sqrt(2.0) / std::sqrt(G);
  r.ratio611 = static_cast<double>(cde) / std::pow(G, 6.0 / 11.0);
  r.ratioSp34 = static_cast<double>(ce) * std::pow(A, 3.0 / 8.0) / std::pow(G, 3.0 / 4.0);
  r.arsRhs = std::pow(G, 1.5) / std::pow(A, 7.0 / 4.0);
  r.rszRhs = rsz_rhs(r.sizeC, r.sizeD, r.sizeE);
  r.rszRhsRatio = r.rszRhs > 0 ? G / r.rszRhs : std::nan("");
  if (r.sizeA >= 2) {
    r.epsilon = std::log(G) / std::log(A) - 1.5;
    if (*r.epsilon > 0) r.epsilonPrime = 4 * *r.epsilon / (24 + 16 * *r.epsilon);
  }
  const auto m = static_cast<unsigned __int128>(ce);
  r.trivialHolds = 2 * m * m >= static_cast<unsigned __int128>(r.sizeG);
  return r;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"construction", "n",        "lambda",     "alpha",    "beta",
                                             "sizeA",        "sizeB",    "sizeG",      "sizeSum",  "sizeDilate",
                                             "sizeProd",     "sizeRatio", "ratioTrivial", "ratio611", "ratioSp34",
                                             "rszRhsRatio"};
  return cols;
}

std::string csv_header() {
  std::string s;
  for (const auto& c : csv_columns()) s += (s.empty() ? "" : ",") + c;
  return s;
}

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string opt(const std::optional<Rational>& q) { return q ? to_string(*q) : "NA"; }

}  // namespace

std::string csv_row(const AuditRecord& r) {
  const std::vector<std::string> cells{r.construction,
                                       r.params.n > 0 ? std::to_string(r.params.n) : "NA",
                                       opt(r.lambda),
                                       opt(r.params.alpha),
                                       opt(r.params.beta),
                                       std::to_string(r.sizeA),
                                       std::to_string(r.sizeB),
                                       std::to_string(r.sizeG),
                                       std::to_string(r.sizeC),
                                       std::to_string(r.sizeD),
                                       std::to_string(r.sizeE),
                                       r.sizeRatio ? std::to_string(*r.sizeRatio) : "NA",
                                       fmt(r.ratioTrivial),
                                       fmt(r.ratio611),
                                       fmt(r.ratioSp34),
                                       fmt(r.rszRhsRatio)};
  std::string s;
  for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
  return s;
}

}  // namespace splab
