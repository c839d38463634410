#include "splab/constructions.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "splab/errors.hpp"

namespace splab {

namespace {

void require_n(long n, long max = 1L << 20) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (n > max) throw PreconditionError("n = " + std::to_string(n) + " exceeds the supported range");
}

Integer pow2(long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return r;
}

std::vector<RadicalSum> sorted_unique(std::vector<RadicalSum> v) {
  std::sort(v.begin(), v.end(), canonical_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Prediction eq(const char* s, const Integer& v) { return {s, Relation::Equal, v}; }
Prediction at_most(const char* s, const Integer& v) { return {s, Relation::AtMost, v}; }

// Edge list builder that records repeats instead of failing.
struct EdgeCollector {
  std::set<Edge> seen;
  std::vector<Edge> edges;
  std::size_t repeats = 0;
  void add(std::uint32_t l, std::uint32_t r) {
    const Edge e{l, r};
    if (seen.insert(e).second) {
      edges.push_back(e);
    } else {
      ++repeats;
    }
  }
};

}  // namespace

std::vector<long> primes_up_to(long limit) {
  std::vector<long> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (long p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (long q = p * p; q <= limit; q += p) composite[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

Integer integer_root(const Integer& x, unsigned long k) {
  if (x < 0) throw std::invalid_argument("integer_root of a negative number");
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

ConstructionInstance chang(long n) {
  require_n(n, 4000);
  auto ground = std::make_shared<GroundSet>();
  std::vector<RadicalSum> roots;
  for (long i = 1; i <= n; ++i) roots.push_back(sqrt_int(i));
  EdgeCollector edges;
  for (long i = 1; i <= n; ++i) {
    for (long j = 1; j <= n; ++j) {
      const auto& ri = roots[static_cast<std::size_t>(i - 1)];
      const auto& rj = roots[static_cast<std::size_t>(j - 1)];
      const auto l = ground->insert(ri + rj);
      const auto r = ground->insert(ri - rj);
      edges.add(l, r);
    }
  }
  if (edges.repeats != 0) throw std::logic_error("chang: (i, j) -> edge is not injective");

  ConstructionInstance inst{"chang", {}, RestrictionGraph(ground, ground, std::move(edges.edges)), {}, {}, {}};
  inst.params.n = n;
  const Integer N(n);
  inst.predicted = {eq(stat::kSizeG, N * N), eq(stat::kSum, N), eq(stat::kDiff, N), eq(stat::kProd, 2 * N - 1)};
  std::vector<RadicalSum> sums, prods;
  for (const auto& r : roots) sums.push_back(r.scaled(2));
  for (long d = -(n - 1); d <= n - 1; ++d) prods.emplace_back(d);
  inst.predicted_sets[stat::kSum] = sorted_unique(sums);
  inst.predicted_sets[stat::kDiff] = sorted_unique(sums);
  inst.predicted_sets[stat::kProd] = sorted_unique(prods);
  return inst;
}

ConstructionInstance figure1_lines_hyperbolas(long n) {
  require_n(n, 2000);
  std::vector<std::string> notes;
  for (long shift = 0;; shift += n) {
    auto ground = std::make_shared<GroundSet>();
    EdgeCollector edges;
    std::vector<RadicalSum> sums;
    for (long k = 1; k <= n; ++k) {
      const long s = 2 * n + k + shift;
      sums.emplace_back(s);
      for (long m = 1; m <= n; ++m) {
        // roots of t^2 - s t + m
        const RadicalSum root = sqrt_rational(Rational(s * s - 4 * m));
        const RadicalSum t1 = (RadicalSum(s) + root).scaled(Rational(1, 2));
        const RadicalSum t2 = (RadicalSum(s) - root).scaled(Rational(1, 2));
        const auto i1 = ground->insert(t1);
        const auto i2 = ground->insert(t2);
        edges.add(i1, i2);
        edges.add(i2, i1);
      }
    }
    if (edges.repeats != 0) {
      notes.push_back("coincident intersection points at shift " + std::to_string(shift) + "; regenerated");
      continue;
    }
    ConstructionInstance inst{"figure1", {}, RestrictionGraph(ground, ground, std::move(edges.edges)), {}, {},
                              std::move(notes)};
    inst.params.n = n;
    const Integer N(n);
    inst.predicted = {eq(stat::kSizeG, 2 * N * N), eq(stat::kSum, N), eq(stat::kProd, N),
                      eq(stat::kMaxSumProd, N)};
    std::vector<RadicalSum> prods;
    for (long m = 1; m <= n; ++m) prods.emplace_back(m);
    inst.predicted_sets[stat::kSum] = sorted_unique(sums);
    inst.predicted_sets[stat::kProd] = sorted_unique(prods);
    return inst;
  }
}

ConstructionInstance ars2(long n, const Rational& lambda) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  const Integer N(n);
  const Integer r1 = integer_root(N, 5);          // n^(1/5)
  const Integer r3 = integer_root(N * N * N, 5);  // n^(3/5)
  if (r3 > 2000000) throw PreconditionError("n too large for ars2");
  const std::vector<long> large = primes_up_to(r3.get_si());
  std::vector<long> small;
  for (long p : large) {
    if (p <= r1) small.push_back(p);
  }
  if (small.size() < 2 || large.size() < 4) {
    throw InsufficientPrimes("ars2 needs two primes <= n^(1/5) and four primes <= n^(3/5)");
  }

  auto ground = std::make_shared<GroundSet>();
  EdgeCollector edges;
  // u sqrt(v/w) = (u/w) sqrt(vw)
  auto value = [](long u, long v, long w) {
    return RadicalSum::squarefree_term(Rational(u, w), static_cast<std::uint64_t>(v * w));
  };
  for (long v : small) {
    for (long w : small) {
      if (v == w) continue;
      for (long u : large) {
        if (u == v || u == w) continue;
        const auto l = ground->insert(value(u, v, w));
        for (long z : large) {
          if (z == u || z == v || z == w) continue;
          edges.add(l, ground->insert(value(z, w, v)));
        }
      }
    }
  }
  if (edges.repeats != 0) throw std::logic_error("ars2: repeated edge");

  ConstructionInstance inst{"ars2", {}, RestrictionGraph(ground, ground, std::move(edges.edges)), {}, {}, {}};
  inst.params.n = n;
  inst.params.lambda = lambda;
  const Integer s(static_cast<long>(small.size()));
  const Integer b(static_cast<long>(large.size()));
  const Integer m4 = integer_root(N * N * N * N, 5);  // floor(n^(4/5)) bounds uv
  const Integer m2 = integer_root(N * N, 5);          // floor(n^(2/5)) bounds the radicand count
  inst.predicted = {
      eq(stat::kSizeG, s * (s - 1) * (b - 2) * (b - 3)),
      at_most(stat::kProd, b * b),
      at_most(stat::kProd, integer_root(N * N * N * N * N * N, 5)),  // n^(6/5)
      at_most(stat::kSum, 2 * m4 * m2),
  };
  if (is_integer(lambda)) {
    const Integer L = abs(lambda.get_num());
    inst.predicted.push_back(at_most(stat::kDilate, ((1 + 2 * L) * m4 + 1) * m2));
  }
  return inst;
}

ConstructionInstance pencil(long n, const Rational& lambda) {
  require_n(n, 2000);
  if (lambda == 0) throw PreconditionError("pencil needs lambda != 0");
  auto xs = std::make_shared<GroundSet>();
  auto ys = std::make_shared<GroundSet>();
  EdgeCollector edges;
  std::vector<RadicalSum> sums, dilates;
  for (long i = 1; i <= n; ++i) {
    for (long j = 1; j <= n; ++j) {
      const Rational pi(pow2(i)), pj(pow2(j));
      edges.add(xs->insert(RadicalSum(pi + lambda * pj)), ys->insert(RadicalSum(-pi - pj)));
    }
    sums.emplace_back((lambda - 1) * Rational(pow2(i)));
    dilates.emplace_back((1 - lambda) * Rational(pow2(i)));
  }
  ConstructionInstance inst{"pencil", {}, RestrictionGraph(xs, ys, std::move(edges.edges)), {}, {}, {}};
  inst.params.n = n;
  inst.params.lambda = lambda;
  const Integer N(n);
  if (edges.repeats == 0) {
    inst.predicted = {eq(stat::kSizeG, N * N), eq(stat::kSum, N), eq(stat::kDilate, N),
                      at_most(stat::kRatio, 2 * N - 1)};
    inst.predicted_sets[stat::kSum] = sorted_unique(sums);
    inst.predicted_sets[stat::kDilate] = sorted_unique(dilates);
  } else {
    inst.notes.push_back(std::to_string(edges.repeats) + " repeated edges dropped; predictions downgraded to bounds");
    inst.predicted = {at_most(stat::kSizeG, N * N), at_most(stat::kSum, N), at_most(stat::kDilate, N),
                      at_most(stat::kRatio, 2 * N - 1)};
  }
  return inst;
}

ConstructionInstance hyperbola_pair_families(long n, const Rational& alpha, const Rational& beta) {
  require_n(n, 1000);
  if (beta == 0) throw PreconditionError("hyperbola-pair needs beta != 0");
  if (alpha == 0) throw PreconditionError("hyperbola-pair needs alpha != 0 (otherwise each pair meets once)");
  const Rational big = std::max({Rational(abs(alpha)), Rational(abs(beta)), Rational(1)});
  Rational m0 = 4 * big * big * n;
  Integer M = m0.get_num() / m0.get_den() + (is_integer(m0) ? 0 : 1);  // ceiling
  std::vector<std::string> notes;
  for (int attempt = 0; attempt < 64; ++attempt, M *= 2) {
    try {
      auto as = std::make_shared<GroundSet>();
      auto bs = std::make_shared<GroundSet>();
      EdgeCollector edges;
      for (long c = 1; c <= n; ++c) {
        for (long k = 1; k <= n; ++k) {
          const Rational d(M + k);
          // beta x^2 + (c + alpha beta - d) x + alpha c = 0
          const Rational lin = c + alpha * beta - d;
          const Rational disc = lin * lin - 4 * alpha * beta * c;
          if (disc <= 0) {
            throw DiscriminantFailure("no two real intersections for c=" + std::to_string(c) +
                                      ", d=" + to_string(d));
          }
          const RadicalSum root = sqrt_rational(disc);
          for (int sgn : {1, -1}) {
            const RadicalSum x = (RadicalSum(-lin) + root.scaled(sgn)).scaled(1 / (2 * beta));
            const RadicalSum y = RadicalSum(c) / x;
            edges.add(as->insert(x), bs->insert(y));
          }
        }
      }
      if (edges.repeats != 0) throw DiscriminantFailure("coincident intersection points");
      ConstructionInstance inst{"hyperbola-pair", {}, RestrictionGraph(as, bs, std::move(edges.edges)), {}, {},
                                std::move(notes)};
      inst.params.n = n;
      inst.params.alpha = alpha;
      inst.params.beta = beta;
      const Integer N(n);
      inst.predicted = {eq(stat::kSizeG, 2 * N * N), eq(stat::kProd, N), eq(stat::kShiftedProd, N)};
      std::vector<RadicalSum> cs, ds;
      for (long k = 1; k <= n; ++k) {
        cs.emplace_back(k);
        ds.emplace_back(Rational(M + k));
      }
      inst.predicted_sets[stat::kProd] = sorted_unique(cs);
      inst.predicted_sets[stat::kShiftedProd] = sorted_unique(ds);
      inst.notes.push_back("M = " + M.get_str());
      return inst;
    } catch (const DiscriminantFailure& e) {
      notes.push_back(std::string(e.what()) + " at M = " + M.get_str() + "; doubling M");
    }
  }
  throw DiscriminantFailure("hyperbola-pair: no valid M found");
}

ConstructionInstance random_instance(std::uint64_t seed, long max_size) {
  require_n(max_size, 10000);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> size(1, max_size);
  std::uniform_int_distribution<int> mode_pick(0, 2);
  auto make_set = [&](long k) {
    auto g = std::make_shared<GroundSet>();
    const int mode = mode_pick(rng);
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 3);
    std::uniform_int_distribution<long> start(-5, 5);
    const long a = start(rng);
    const long d = std::max(1L, den(rng));
    long attempts = 0;
    while (static_cast<long>(g->size()) < k && attempts < 100000) {
      ++attempts;
      const long i = static_cast<long>(g->size());
      switch (mode) {
        case 0:  // random rationals
          g->insert(RadicalSum(Rational(num(rng), den(rng))));
          break;
        case 1:  // arithmetic progression
          g->insert(RadicalSum(Rational(a + i * d)));
          break;
        default:  // geometric progression with a sign flip
          g->insert(RadicalSum(Rational(pow2(i % 40)) * (i >= 40 ? -1 : 1)));
          break;
      }
    }
    return g;
  };
  auto as = make_set(size(rng));
  auto bs = make_set(size(rng));
  std::uniform_real_distribution<double> density(0.02, 1.0);
  std::bernoulli_distribution keep(density(rng));
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < as->size(); ++i) {
    for (std::uint32_t j = 0; j < bs->size(); ++j) {
      if (keep(rng)) edges.push_back({i, j});
    }
  }
  if (edges.empty()) {
    std::uniform_int_distribution<std::uint32_t> li(0, static_cast<std::uint32_t>(as->size() - 1));
    std::uniform_int_distribution<std::uint32_t> ri(0, static_cast<std::uint32_t>(bs->size() - 1));
    edges.push_back({li(rng), ri(rng)});
  }
  ConstructionInstance inst{"random", {}, RestrictionGraph(as, bs, std::move(edges)), {}, {}, {}};
  inst.params.n = max_size;
  inst.params.seed = seed;
  return inst;
}

const std::vector<std::string>& construction_names() {
  static const std::vector<std::string> names{"chang", "figure1", "ars2", "pencil", "hyperbola-pair", "random"};
  return names;
}

ConstructionInstance make_construction(const std::string& name, const ConstructionParams& p) {
  const Rational lambda = p.lambda.value_or(Rational(2));
  ConstructionInstance inst = [&]() {
    if (name == "chang") return chang(p.n);
    if (name == "figure1") return figure1_lines_hyperbolas(p.n);
    if (name == "ars2") return ars2(p.n, lambda);
    if (name == "pencil") return pencil(p.n, lambda);
    if (name == "hyperbola-pair") {
      return hyperbola_pair_families(p.n, p.alpha.value_or(Rational(1)), p.beta.value_or(Rational(2)));
    }
    if (name == "random") return random_instance(p.seed.value_or(1), p.n);
    throw ConfigError("unknown construction '" + name + "'");
  }();
  // Carry audit parameters the generator itself does not use.
  if (!inst.params.lambda && p.lambda) inst.params.lambda = p.lambda;
  if (!inst.params.alpha && p.alpha) inst.params.alpha = p.alpha;
  if (!inst.params.beta && p.beta) inst.params.beta = p.beta;
  return inst;
}

std::optional<std::size_t> measure(const ConstructionInstance& inst, const std::string& s) {
  const RestrictionGraph& g = inst.graph;
  if (s == stat::kSizeA) return g.left().size();
  if (s == stat::kSizeB) return g.right().size();
  if (s == stat::kSizeG) return g.edge_count();
  if (s == stat::kSum) return restricted_sum(g).size();
  if (s == stat::kDiff) return restricted_dilate_sum(g, -1).size();
  if (s == stat::kProd) return restricted_product(g).size();
  if (s == stat::kMaxSumProd) return std::max(restricted_sum(g).size(), restricted_product(g).size());
  if (s == stat::kDilate) {
    if (!inst.params.lambda) return std::nullopt;
    return restricted_dilate_sum(g, *inst.params.lambda).size();
  }
  if (s == stat::kShiftedProd) {
    if (!inst.params.alpha || !inst.params.beta) return std::nullopt;
    return restricted_shifted_product(g, *inst.params.alpha, *inst.params.beta).size();
  }
  if (s == stat::kRatio) {
    try {
      return restricted_ratio(g).size();
    } catch (const DivisionByZero&) {
      return std::nullopt;
    } catch (const UnsupportedDenominator&) {
      return std::nullopt;
    }
  }
  throw std::invalid_argument("unknown statistic '" + s + "'");
}

namespace {

std::optional<std::vector<RadicalSum>> measured_set(const ConstructionInstance& inst, const std::string& s) {
  const RestrictionGraph& g = inst.graph;
  if (s == stat::kSum) return restricted_sum(g).values;
  if (s == stat::kDiff) return restricted_dilate_sum(g, -1).values;
  if (s == stat::kProd) return restricted_product(g).values;
  if (s == stat::kDilate && inst.params.lambda) return restricted_dilate_sum(g, *inst.params.lambda).values;
  if (s == stat::kShiftedProd && inst.params.alpha && inst.params.beta) {
    return restricted_shifted_product(g, *inst.params.alpha, *inst.params.beta).values;
  }
  if (s == stat::kRatio) {
    try {
      return restricted_ratio(g).values;
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

bool PredictionReport::all_ok() const {
  return std::all_of(values.begin(), values.end(), [](const auto& c) { return c.ok; }) &&
         std::all_of(sets.begin(), sets.end(), [](const auto& c) { return c.ok; });
}

PredictionReport check_predictions(const ConstructionInstance& inst) {
  PredictionReport report;
  std::map<std::string, std::optional<std::size_t>> cache;
  for (const Prediction& p : inst.predicted) {
    auto it = cache.find(p.statistic);
    if (it == cache.end()) it = cache.emplace(p.statistic, measure(inst, p.statistic)).first;
    PredictionCheck c{p, it->second, false};
    if (c.measured) {
      const Integer m(static_cast<unsigned long>(*c.measured));
      c.ok = p.relation == Relation::Equal ? m == p.value : m <= p.value;
    }
    report.values.push_back(std::move(c));
  }
  for (const auto& [s, expected] : inst.predicted_sets) {
    const auto got = measured_set(inst, s);
    report.sets.push_back({s, got && *got == expected});
  }
  return report;
}

nlohmann::ordered_json params_json(const ConstructionParams& p) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["lambda"] = p.lambda ? nlohmann::ordered_json(to_string(*p.lambda)) : nullptr;
  j["alpha"] = p.alpha ? nlohmann::ordered_json(to_string(*p.alpha)) : nullptr;
  j["beta"] = p.beta ? nlohmann::ordered_json(to_string(*p.beta)) : nullptr;
  j["seed"] = p.seed ? nlohmann::ordered_json(*p.seed) : nullptr;
  return j;
}

nlohmann::ordered_json predicted_json(const ConstructionInstance& inst) {
  nlohmann::ordered_json j;
  j["construction"] = inst.name;
  j["params"] = params_json(inst.params);
  auto preds = nlohmann::ordered_json::array();
  for (const auto& p : inst.predicted) {
    preds.push_back({{"statistic", p.statistic},
                     {"relation", p.relation == Relation::Equal ? "=" : "<="},
                     {"value", p.value.get_str()}});
  }
  j["predicted"] = preds;
  nlohmann::ordered_json sets = nlohmann::ordered_json::object();
  for (const auto& [s, values] : inst.predicted_sets) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : values) arr.push_back(to_string(v));
    sets[s] = arr;
  }
  j["predictedSets"] = sets;
  j["notes"] = inst.notes;
  return j;
}

ConstructionInstance instance_from_json(RestrictionGraph graph, const nlohmann::json& doc) {
  try {
    ConstructionInstance inst{doc.at("construction").get<std::string>(), {}, std::move(graph), {}, {}, {}};
    const auto& p = doc.at("params");
    inst.params.n = p.at("n").get<long>();
    auto rational_field = [&](const char* key) -> std::optional<Rational> {
      if (!p.contains(key) || p.at(key).is_null()) return std::nullopt;
      return parse_rational(p.at(key).get<std::string>());
    };
    inst.params.lambda = rational_field("lambda");
    inst.params.alpha = rational_field("alpha");
    inst.params.beta = rational_field("beta");
    if (p.contains("seed") && !p.at("seed").is_null()) inst.params.seed = p.at("seed").get<std::uint64_t>();
    const nlohmann::json predicted = doc.value("predicted", nlohmann::json::array());
    const nlohmann::json sets = doc.value("predictedSets", nlohmann::json::object());
    const nlohmann::json notes = doc.value("notes", nlohmann::json::array());
    for (const auto& e : predicted) {
      const std::string rel = e.at("relation").get<std::string>();
      if (rel != "=" && rel != "<=") throw ParseError("unknown relation '" + rel + "'", 0);
      inst.predicted.push_back({e.at("statistic").get<std::string>(), rel == "=" ? Relation::Equal : Relation::AtMost,
                                Integer(e.at("value").get<std::string>())});
    }
    for (const auto& [key, arr] : sets.items()) {
      std::vector<RadicalSum> values;
      for (const auto& v : arr) values.push_back(parse_radical_sum(v.get<std::string>()));
      inst.predicted_sets[key] = std::move(values);
    }
    for (const auto& note : notes) inst.notes.push_back(note.get<std::string>());
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad instance document: ") + e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad instance document: ") + e.what(), 0);
  }
}

}  // namespace splab
