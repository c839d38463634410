#include "splab/cas/degeneracy.hpp"

#include <random>

#include "splab/errors.hpp"

namespace splab::cas {

namespace {

void require_both_partials(bool fx_zero, bool fy_zero) {
  if (fx_zero) throw PreconditionError("f_X vanishes identically");
  if (fy_zero) throw PreconditionError("f_Y vanishes identically");
}

bool usable_witness(const RatFunc& T, const Rational& x, const Rational& y) {
  const Point3<Rational> p{x, y, Rational(0)};
  return T.num().evaluate(p) != 0 && T.den().evaluate(p) != 0;
}

}  // namespace

RatFunc degeneracy_expression(const RatFunc& f, DerivativeOrder order) {
  const RatFunc fx = f.differentiate(Var::X);
  const RatFunc fy = f.differentiate(Var::Y);
  require_both_partials(fx.is_zero(), fy.is_zero());
  const RatFunc fxy = fx.differentiate(Var::Y);
  if (order == DerivativeOrder::XFirst) {
    const RatFunc fxx = fx.differentiate(Var::X);
    return (fxx / fx - fxy / fy).differentiate(Var::Y);
  }
  const RatFunc fyy = fy.differentiate(Var::Y);
  return (fxy / fx - fyy / fy).differentiate(Var::X);
}

RationalDegeneracy degeneracy_test_rational(const RatFunc& f, const std::vector<Point3<Rational>>& preferred) {
  RationalDegeneracy r;
  r.T = degeneracy_expression(f);
  r.identically_zero = r.T.is_zero();
  if (r.identically_zero) return r;

  auto accept = [&](const Rational& x, const Rational& y) {
    if (!usable_witness(r.T, x, y)) return false;
    r.witness = RationalWitness{x, y, r.T.evaluate(Point3<Rational>{x, y, Rational(0)})};
    return true;
  };
  for (const auto& p : preferred) {
    if (accept(p[0], p[1])) return r;
  }
  if (accept(0, 1) || accept(1, 1)) return r;
  // A nonzero polynomial of degree d cannot vanish on all of [-k, k]^2 once
  // 2k + 1 > d, so this terminates well before the cap.
  for (long k = 1; k <= 256; ++k) {
    for (long x = -k; x <= k; ++x) {
      for (long y = -k; y <= k; ++y) {
        if (std::max(std::abs(x), std::abs(y)) != k) continue;
        if (accept(x, y)) return r;
      }
    }
  }
  throw std::logic_error("no witness found for a nonzero rational function");
}

namespace {

struct Partials {
  Expr e, fx, fy, T;
};

Point3<Interval> box_point(const Rational& cx, const Rational& cy, const Rational& radius, mpfr_prec_t prec) {
  const Interval x = hull(Interval(cx - radius, prec), Interval(cx + radius, prec));
  const Interval y = hull(Interval(cy - radius, prec), Interval(cy + radius, prec));
  return {x, y, Interval(Rational(0), prec)};
}

bool box_ok(const Partials& p, const Point3<Interval>& box) {
  try {
    (void)evaluate(p.e, box);
    (void)evaluate(p.fx, box);
    (void)evaluate(p.fy, box);
    (void)evaluate(p.T, box);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

constexpr int kMaxHalvings = 24;
constexpr int kRandomCentres = 128;
constexpr long kSampleGrid = 1L << 16;

}  // namespace

NumericDegeneracy degeneracy_test_numeric(const Expr& e, const NumericOptions& options) {
  if (options.samples < 1) throw PreconditionError("samples must be positive");
  if (options.min_precision < 16 || options.max_precision < options.min_precision) {
    throw PreconditionError("invalid precision range");
  }
  Partials p;
  p.e = e;
  p.fx = differentiate(e, Var::X);
  p.fy = differentiate(e, Var::Y);
  require_both_partials(p.fx.is_zero(), p.fy.is_zero());
  const Expr fxy = differentiate(p.fx, Var::Y);
  const Expr fxx = differentiate(p.fx, Var::X);
  p.T = differentiate(fxx / p.fx - fxy / p.fy, Var::Y);

  NumericDegeneracy out;
  out.T = p.T;

  std::mt19937_64 rng(options.seed);
  std::vector<std::pair<Rational, Rational>> centres;
  for (const auto& c : options.preferred_centres) centres.emplace_back(c[0], c[1]);
  for (auto [x, y] : {std::pair{0L, 1L}, {1L, 1L}, {3L, 1L}, {5L, 6L}}) centres.emplace_back(x, y);
  std::uniform_int_distribution<long> coord(-64, 64);
  for (int i = 0; i < kRandomCentres; ++i) centres.emplace_back(Rational(coord(rng), 8), Rational(coord(rng), 8));

  const auto prec = static_cast<mpfr_prec_t>(options.min_precision);
  bool found = false;
  for (const auto& [cx, cy] : centres) {
    Rational radius(1, 4);
    for (int h = 0; h <= kMaxHalvings && !found; ++h, radius /= 2) {
      if (box_ok(p, box_point(cx, cy, radius, prec))) {
        out.centre_x = cx;
        out.centre_y = cy;
        out.radius = radius;
        found = true;
      }
    }
    if (found) break;
  }
  if (!found) throw DomainError("no certified evaluation box found");

  std::uniform_int_distribution<long> offset(-kSampleGrid, kSampleGrid);
  for (int s = 0; s < options.samples; ++s) {
    Rational x = out.centre_x;
    Rational y = out.centre_y;
    if (s > 0) {
      x += out.radius * Rational(offset(rng), kSampleGrid);
      y += out.radius * Rational(offset(rng), kSampleGrid);
    }
    out.samples_used = s + 1;
    for (unsigned bits = options.min_precision; bits <= options.max_precision; bits *= 2) {
      const auto pr = static_cast<mpfr_prec_t>(bits);
      out.precision = bits;
      const Interval v = evaluate(p.T, {Interval(x, pr), Interval(y, pr), Interval(Rational(0), pr)});
      if (!v.contains_zero()) {
        out.verdict = NumericVerdict::NonzeroWitness;
        out.witness_x = x;
        out.witness_y = y;
        out.enclosure = v;
        return out;
      }
    }
  }
  out.verdict = NumericVerdict::ProbablyZero;
  return out;
}

nlohmann::ordered_json certificate(const std::string& input, const RationalDegeneracy& r) {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["method"] = "rational";
  j["T"] = to_string(r.T);
  j["verdict"] = r.identically_zero ? "identically-zero" : "nonzero";
  if (r.witness) {
    j["witness"] = {splab::to_string(r.witness->x), splab::to_string(r.witness->y)};
    j["value"] = splab::to_string(r.witness->value);
    j["enclosure"] = {splab::to_string(r.witness->value), splab::to_string(r.witness->value)};
  } else {
    j["witness"] = nullptr;
    j["value"] = nullptr;
    j["enclosure"] = nullptr;
  }
  return j;
}

nlohmann::ordered_json certificate(const std::string& input, const NumericDegeneracy& r) {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["method"] = "numeric";
  j["T"] = to_string(r.T);
  j["verdict"] = r.verdict == NumericVerdict::NonzeroWitness ? "nonzero" : "probably-zero";
  j["box"] = {{"centre", {splab::to_string(r.centre_x), splab::to_string(r.centre_y)}}, {"radius", splab::to_string(r.radius)}};
  j["samples"] = r.samples_used;
  j["precision"] = r.precision;
  if (r.witness_x) {
    j["witness"] = {splab::to_string(*r.witness_x), splab::to_string(*r.witness_y)};
    j["enclosure"] = r.enclosure->to_string(20);
  } else {
    j["witness"] = nullptr;
    j["enclosure"] = nullptr;
  }
  return j;
}

}  // namespace splab::cas
