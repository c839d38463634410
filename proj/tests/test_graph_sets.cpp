#include <random>
#include <sstream>

#include "doctest.h"
#include "random_values.hpp"
#include "splab/errors.hpp"
#include "splab/graph_sets.hpp"

using namespace splab;

namespace {

RadicalSum rs(const char* text) { return parse_radical_sum(text); }

RestrictionGraph single_edge(const RadicalSum& a, const RadicalSum& b) {
  auto left = std::make_shared<const GroundSet>(std::vector<RadicalSum>{a});
  auto right = std::make_shared<const GroundSet>(std::vector<RadicalSum>{b});
  return RestrictionGraph(left, right, {{0, 0}});
}

// A = {sqrt i +- sqrt j}, G = {(sqrt i + sqrt j, sqrt i - sqrt j)}, i, j in [3]
RestrictionGraph chang3() {
  auto ground = std::make_shared<GroundSet>();
  std::vector<Edge> edges;
  for (long i = 1; i <= 3; ++i) {
    for (long j = 1; j <= 3; ++j) {
      const auto a = ground->insert(sqrt_int(i) + sqrt_int(j));
      const auto b = ground->insert(sqrt_int(i) - sqrt_int(j));
      edges.push_back({a, b});
    }
  }
  std::shared_ptr<const GroundSet> g = ground;
  return RestrictionGraph(g, g, edges);
}

}  // namespace

TEST_CASE("ground set and graph validation") {
  CHECK_THROWS_AS(GroundSet({rs("1"), rs("2/2")}), std::invalid_argument);
  auto a = std::make_shared<const GroundSet>(std::vector<RadicalSum>{rs("1"), rs("sqrt(2)")});
  CHECK_THROWS_AS(RestrictionGraph(a, a, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(RestrictionGraph(a, a, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK(RestrictionGraph(a, a, {}).edge_count() == 0);
}

TEST_CASE("restricted_sum") {
  const RestrictionGraph g = chang3();
  const RestrictedSet s = restricted_sum(g);
  CHECK(s.size() == 3);
  for (long i = 1; i <= 3; ++i) CHECK(s.contains(sqrt_int(i).scaled(2)));

  auto a = std::make_shared<const GroundSet>(std::vector<RadicalSum>{rs("1")});
  CHECK(restricted_sum(RestrictionGraph(a, a, {})).size() == 0);
  const RestrictedSet one = restricted_sum(single_edge(rs("sqrt(2)"), rs("1")));
  CHECK(one.values == std::vector<RadicalSum>{rs("1+sqrt(2)")});
}

TEST_CASE("restricted_dilate_sum") {
  const RestrictionGraph g = chang3();
  const RestrictedSet diff = restricted_dilate_sum(g, -1);
  CHECK(diff.size() == 3);
  for (long j = 1; j <= 3; ++j) CHECK(diff.contains(sqrt_int(j).scaled(2)));

  const RestrictedSet left = restricted_dilate_sum(g, 0);
  std::vector<RadicalSum> endpoints;
  for (const Edge& e : g.edges()) endpoints.push_back(g.left_value(e));
  CHECK(left.size() == 6);  // sqrt i + sqrt j over unordered pairs {i, j}
  for (const auto& v : endpoints) CHECK(left.contains(v));

  CHECK(restricted_dilate_sum(g, 1).values == restricted_sum(g).values);
}

TEST_CASE("restricted_product") {
  const RestrictedSet p = restricted_product(chang3());
  // brute force {i - j : i, j in [3]}
  std::vector<RadicalSum> expected;
  for (long i = 1; i <= 3; ++i)
    for (long j = 1; j <= 3; ++j)
      if (std::find(expected.begin(), expected.end(), RadicalSum(i - j)) == expected.end())
        expected.push_back(RadicalSum(i - j));
  CHECK(p.size() == expected.size());
  for (const auto& v : expected) CHECK(p.contains(v));
  CHECK(restricted_product(single_edge(rs("sqrt(2)"), rs("sqrt(2)"))).values ==
        std::vector<RadicalSum>{RadicalSum(2L)});
}

TEST_CASE("restricted_ratio") {
  CHECK(restricted_ratio(single_edge(rs("1+sqrt(7)"), rs("1+sqrt(7)"))).values ==
        std::vector<RadicalSum>{RadicalSum(1L)});
  CHECK_THROWS_AS(restricted_ratio(single_edge(rs("1"), rs("0"))), DivisionByZero);
  CHECK_THROWS_AS(restricted_ratio(single_edge(rs("1"), rs("sqrt(2)+sqrt(3)"))), UnsupportedDenominator);
}

TEST_CASE("restricted_shifted_product") {
  const RestrictionGraph g = chang3();
  CHECK(restricted_shifted_product(g, 0, 0).values == restricted_product(g).values);
  CHECK(restricted_shifted_product(single_edge(rs("1"), rs("1")), 1, 2).values ==
        std::vector<RadicalSum>{RadicalSum(6L)});
}

TEST_CASE("provenance is sound and sizes are bounded by |G|") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = std::make_shared<GroundSet>();
    auto b = std::make_shared<GroundSet>();
    for (int i = 0; i < 8; ++i) {
      a->insert(splab::testing::random_radical(rng, 2));
      b->insert(splab::testing::random_radical(rng, 1));
    }
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < a->size(); ++i)
      for (std::uint32_t j = 0; j < b->size(); ++j)
        if (rng() % 3 == 0) edges.push_back({i, j});
    const RestrictionGraph g(a, b, edges);
    const Rational lambda = splab::testing::random_rational(rng);

    const RestrictedSet sums = restricted_sum(g, Provenance::Keep);
    const RestrictedSet dil = restricted_dilate_sum(g, lambda, Provenance::Keep);
    const RestrictedSet prods = restricted_product(g, Provenance::Keep);
    const RestrictedSet shifted = restricted_shifted_product(g, 1, -2, Provenance::Keep);
    for (const RestrictedSet* s : {&sums, &dil, &prods, &shifted}) {
      CHECK(s->size() <= g.edge_count());
      REQUIRE(s->provenance);
      for (const auto& src : *s->provenance) CHECK(!src.empty());
    }
    for (std::size_t i = 0; i < sums.size(); ++i)
      for (const Edge& e : (*sums.provenance)[i]) CHECK(g.left_value(e) + g.right_value(e) == sums.values[i]);
    for (std::size_t i = 0; i < dil.size(); ++i)
      for (const Edge& e : (*dil.provenance)[i])
        CHECK(g.left_value(e) + g.right_value(e).scaled(lambda) == dil.values[i]);
    for (std::size_t i = 0; i < prods.size(); ++i)
      for (const Edge& e : (*prods.provenance)[i]) CHECK(g.left_value(e) * g.right_value(e) == prods.values[i]);
    for (std::size_t i = 0; i < shifted.size(); ++i)
      for (const Edge& e : (*shifted.provenance)[i])
        CHECK((g.left_value(e) + RadicalSum(1L)) * (g.right_value(e) - RadicalSum(2L)) == shifted.values[i]);

    if (g.edge_count() > 0) CHECK(trivial_bound_check(g).holds);
  }
}

TEST_CASE("trivial_bound_check") {
  const TrivialBound one = trivial_bound_check(single_edge(rs("3"), rs("5")));
  CHECK(one.holds);
  CHECK(one.floor >= 0.7071067811865475);
  const TrivialBound c = trivial_bound_check(chang3());
  CHECK(c.sum_size == 3);
  CHECK(c.prod_size == 5);
  CHECK(c.holds);
  CHECK_FALSE(c.tight);
  auto a = std::make_shared<const GroundSet>(std::vector<RadicalSum>{rs("1")});
  CHECK_THROWS_AS(trivial_bound_check(RestrictionGraph(a, a, {})), PreconditionError);
}

TEST_CASE("graph text format round-trips bit-exactly") {
  const RestrictionGraph g = chang3();
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream in(out.str());
  const RestrictionGraph back = read_graph(in);
  CHECK(back.shares_ground_set());
  CHECK(back.edges() == g.edges());
  std::ostringstream again;
  write_graph(again, back);
  CHECK(again.str() == out.str());

  std::istringstream bad1("A:\n1\nB:\n2\nG:\n0 3\n");
  CHECK_THROWS_AS(read_graph(bad1), ParseError);
  std::istringstream bad2("A:\n1+\nB:\nG:\n");
  CHECK_THROWS_AS(read_graph(bad2), ParseError);
  std::istringstream bad3("A:\n1\nG:\n");
  CHECK_THROWS_AS(read_graph(bad3), ParseError);
  std::istringstream bad4("A:\n1\nB:\n1\nG:\n0 x\n");
  CHECK_THROWS_AS(read_graph(bad4), ParseError);
}
