#include <cmath>
#include <set>

#include "doctest.h"
#include "splab/constructions.hpp"
#include "splab/errors.hpp"

using namespace splab;

namespace {

bool is_prime_oracle(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Ordered (v, w, u, z) of distinct primes with v^5, w^5 <= n and u^5, z^5 <= n^3.
long ars2_count_oracle(long n) {
  std::vector<long> small, large;
  for (long p = 2; p * p * p * p * p <= n; ++p) {
    if (is_prime_oracle(p)) small.push_back(p);
  }
  const double bound = std::pow(static_cast<double>(n), 0.6) + 1;
  for (long p = 2; p <= static_cast<long>(bound); ++p) {
    const Integer p5 = Integer(p) * p * p * p * p;
    const Integer n3 = Integer(n) * n * n;
    if (is_prime_oracle(p) && p5 <= n3) large.push_back(p);
  }
  long count = 0;
  for (long v : small)
    for (long w : small)
      for (long u : large)
        for (long z : large) {
          const std::set<long> s{v, w, u, z};
          if (s.size() == 4) ++count;
        }
  return count;
}

std::vector<RadicalSum> values_of(const RestrictedSet& s) { return s.values; }

std::vector<RadicalSum> rationals(std::initializer_list<Rational> qs) {
  std::vector<RadicalSum> v;
  for (const auto& q : qs) v.emplace_back(q);
  std::sort(v.begin(), v.end(), canonical_less);
  return v;
}

}  // namespace

TEST_CASE("primes and integer roots") {
  CHECK(primes_up_to(30) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_up_to(1).empty());
  for (long p : primes_up_to(5000)) CHECK(is_prime_oracle(p));
  CHECK(primes_up_to(5000).size() == 669);
  CHECK(integer_root(243, 5) == 3);
  CHECK(integer_root(242, 5) == 2);
  CHECK(integer_root(0, 3) == 0);
}

TEST_CASE("chang examples") {
  const auto c3 = chang(3);
  CHECK(c3.graph.left().size() == 13);
  CHECK(c3.graph.shares_ground_set());
  CHECK(c3.graph.edge_count() == 9);
  CHECK(restricted_sum(c3.graph).size() == 3);
  CHECK(restricted_dilate_sum(c3.graph, -1).size() == 3);
  CHECK(restricted_product(c3.graph).size() == 5);
  CHECK(check_predictions(c3).all_ok());

  const auto c1 = chang(1);
  CHECK(c1.graph.left().elements().size() == 2);
  CHECK(c1.graph.left().index_of(RadicalSum(0L)).has_value());
  CHECK(c1.graph.left().index_of(RadicalSum(2L)).has_value());
  CHECK(c1.graph.edge_count() == 1);

  const auto c100 = chang(100);
  CHECK(restricted_sum(c100.graph).size() == 100);
  CHECK(c100.graph.edge_count() == 10000);
  CHECK(check_predictions(c100).all_ok());
  CHECK_THROWS_AS(chang(0), PreconditionError);
}

TEST_CASE("figure1 examples") {
  const auto f2 = figure1_lines_hyperbolas(2);
  CHECK(f2.graph.edge_count() == 8);
  CHECK(restricted_sum(f2.graph).size() == 2);
  CHECK(restricted_product(f2.graph).size() == 2);
  CHECK(check_predictions(f2).all_ok());
  const auto f1 = figure1_lines_hyperbolas(1);
  CHECK(f1.graph.edge_count() == 2);
  for (long n = 1; n <= 10; ++n) {
    const auto f = figure1_lines_hyperbolas(n);
    const TrivialBound t = trivial_bound_check(f.graph);
    CHECK(t.holds);
    CHECK(t.tight);
    CHECK(check_predictions(f).all_ok());
  }
}

TEST_CASE("ars2 examples") {
  const auto a = ars2(243, 2);
  CHECK(a.graph.edge_count() == 84);
  CHECK(ars2_count_oracle(243) == 84);
  CHECK(check_predictions(a).all_ok());
  for (long n : {243L, 1024L, 3125L, 7776L}) {
    const auto inst = ars2(n, 2);
    CHECK(inst.graph.edge_count() == static_cast<std::size_t>(ars2_count_oracle(n)));
    // |A._G A| <= n^(6/5) exactly: p^5 <= n^6
    const Integer p(static_cast<unsigned long>(restricted_product(inst.graph).size()));
    const Integer N(n);
    CHECK(p * p * p * p * p <= N * N * N * N * N * N);
    CHECK(check_predictions(inst).all_ok());
    for (const auto& v : restricted_sum(inst.graph).values) {
      REQUIRE(v.terms().size() == 1);
      CHECK(is_squarefree(v.terms()[0].radicand));
    }
  }
  CHECK(ars2(1024, 2).graph.edge_count() == 480);
  CHECK_THROWS_AS(ars2(242, 2), InsufficientPrimes);
  CHECK_THROWS_AS(ars2(31, 2), InsufficientPrimes);
  // Non-integer lambda records no dilate bound.
  for (const auto& p : ars2(243, Rational(1, 2)).predicted) CHECK(p.statistic != stat::kDilate);
}

TEST_CASE("pencil examples") {
  const auto p = pencil(2, 3);
  CHECK(p.graph.edge_count() == 4);
  CHECK(values_of(restricted_sum(p.graph)) == rationals({4, 8}));
  CHECK(values_of(restricted_dilate_sum(p.graph, 3)) == rationals({-4, -8}));
  CHECK(values_of(restricted_ratio(p.graph)) == rationals({-2, Rational(-7, 3), Rational(-5, 3)}));
  CHECK(check_predictions(p).all_ok());

  const auto one = pencil(1, 3);
  CHECK(restricted_sum(one.graph).size() == 1);
  CHECK(restricted_dilate_sum(one.graph, 3).size() == 1);
  CHECK(restricted_ratio(one.graph).size() == 1);

  for (long n : {10L, 50L}) {
    const auto q = pencil(n, 3);
    CHECK(q.graph.edge_count() == static_cast<std::size_t>(n * n));
    CHECK(restricted_ratio(q.graph).size() <= static_cast<std::size_t>(2 * n - 1));
    CHECK(check_predictions(q).all_ok());
  }
  const auto collide = pencil(4, 1);
  CHECK(collide.graph.edge_count() == 10);
  CHECK_FALSE(collide.notes.empty());
  CHECK(check_predictions(collide).all_ok());
  for (const auto& pr : collide.predicted) CHECK(pr.relation == Relation::AtMost);
  CHECK(check_predictions(pencil(6, Rational(1, 2))).all_ok());
  CHECK(check_predictions(pencil(6, -1)).all_ok());
  CHECK_THROWS_AS(pencil(3, 0), PreconditionError);
}

TEST_CASE("hyperbola pair examples") {
  for (auto [a, b] : {std::pair{Rational(1), Rational(5)}, {Rational(1), Rational(2)}, {Rational(-2), Rational(3)},
                      {Rational(1, 2), Rational(-7, 3)}}) {
    for (long n : {1L, 2L, 5L}) {
      const auto h = hyperbola_pair_families(n, a, b);
      CHECK(h.graph.edge_count() == static_cast<std::size_t>(2 * n * n));
      const auto prod = restricted_product(h.graph);
      CHECK(prod.size() == static_cast<std::size_t>(n));
      CHECK(prod.values == h.predicted_sets.at(stat::kProd));
      CHECK(restricted_shifted_product(h.graph, a, b).size() == static_cast<std::size_t>(n));
      CHECK(check_predictions(h).all_ok());
      const std::size_t mx = std::max(prod.size(), restricted_shifted_product(h.graph, a, b).size());
      CHECK(2 * mx * mx == h.graph.edge_count());
    }
  }
  CHECK_THROWS_AS(hyperbola_pair_families(2, 1, 0), PreconditionError);
  CHECK_THROWS_AS(hyperbola_pair_families(2, 0, 1), PreconditionError);
}

TEST_CASE("random instances are deterministic and well formed") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto a = random_instance(seed);
    const auto b = random_instance(seed);
    CHECK(a.graph.left() == b.graph.left());
    CHECK(a.graph.edges() == b.graph.edges());
    CHECK(a.graph.edge_count() >= 1);
    CHECK(a.graph.left().size() <= 50);
    CHECK(a.graph.right().size() <= 50);
  }
}

TEST_CASE("make_construction dispatch") {
  ConstructionParams p;
  p.n = 3;
  CHECK(make_construction("chang", p).graph.edge_count() == 9);
  CHECK(make_construction("pencil", p).params.lambda == Rational(2));
  CHECK_THROWS_AS(make_construction("nope", p), ConfigError);
  const auto j = predicted_json(make_construction("chang", p));
  CHECK(j["construction"] == "chang");
  CHECK(j["predicted"][0]["statistic"] == "sizeG");
  CHECK(j["predicted"][0]["value"] == "9");
}
