#include "splab/graph_sets.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "splab/errors.hpp"

namespace splab {

GroundSet::GroundSet(std::vector<RadicalSum> elements) {
  elements_.reserve(elements.size());
  for (auto& v : elements) {
    if (index_.contains(v)) throw std::invalid_argument("duplicate ground-set element " + to_string(v));
    insert(v);
  }
}

std::uint32_t GroundSet::insert(const RadicalSum& value) {
  auto [it, inserted] = index_.try_emplace(value, static_cast<std::uint32_t>(elements_.size()));
  if (inserted) elements_.push_back(value);
  return it->second;
}

std::optional<std::uint32_t> GroundSet::index_of(const RadicalSum& value) const {
  auto it = index_.find(value);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RestrictionGraph::RestrictionGraph(std::shared_ptr<const GroundSet> left,
                                   std::shared_ptr<const GroundSet> right, std::vector<Edge> edges)
    : left_(std::move(left)), right_(std::move(right)), edges_(std::move(edges)) {
  if (!left_ || !right_) throw std::invalid_argument("ground sets must be non-null");
  std::set<Edge> seen;
  for (const Edge& e : edges_) {
    if (e.left >= left_->size() || e.right >= right_->size()) {
      throw std::invalid_argument("edge index out of range");
    }
    if (!seen.insert(e).second) throw std::invalid_argument("repeated edge");
  }
}

bool RestrictedSet::contains(const RadicalSum& v) const {
  return std::find(values.begin(), values.end(), v) != values.end();
}

namespace {

template <typename Fn>
RestrictedSet restricted_image(const RestrictionGraph& g, Provenance keep, Fn&& fn) {
  std::unordered_map<RadicalSum, std::size_t, RadicalSumHash> slot;
  std::vector<RadicalSum> values;
  std::vector<std::vector<Edge>> sources;
  for (const Edge& e : g.edges()) {
    RadicalSum v = fn(g.left_value(e), g.right_value(e));
    auto [it, inserted] = slot.try_emplace(v, values.size());
    if (inserted) {
      values.push_back(std::move(v));
      if (keep == Provenance::Keep) sources.emplace_back();
    }
    if (keep == Provenance::Keep) sources[it->second].push_back(e);
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(values[a], values[b]); });

  RestrictedSet out;
  out.values.reserve(values.size());
  for (std::size_t i : order) out.values.push_back(std::move(values[i]));
  if (keep == Provenance::Keep) {
    out.provenance.emplace();
    out.provenance->reserve(order.size());
    for (std::size_t i : order) out.provenance->push_back(std::move(sources[i]));
  }
  return out;
}

}  // namespace

RestrictedSet restricted_sum(const RestrictionGraph& g, Provenance p) {
  return restricted_image(g, p, [](const RadicalSum& a, const RadicalSum& b) { return a + b; });
}

RestrictedSet restricted_dilate_sum(const RestrictionGraph& g, const Rational& lambda, Provenance p) {
  return restricted_image(g, p,
                          [&](const RadicalSum& a, const RadicalSum& b) { return a + b.scaled(lambda); });
}

RestrictedSet restricted_product(const RestrictionGraph& g, Provenance p) {
  return restricted_image(g, p, [](const RadicalSum& a, const RadicalSum& b) { return a * b; });
}

RestrictedSet restricted_ratio(const RestrictionGraph& g, Provenance p) {
  return restricted_image(g, p, [](const RadicalSum& a, const RadicalSum& b) { return a / b; });
}

RestrictedSet restricted_shifted_product(const RestrictionGraph& g, const Rational& alpha,
                                         const Rational& beta, Provenance p) {
  const RadicalSum sa(alpha);
  const RadicalSum sb(beta);
  return restricted_image(g, p,
                          [&](const RadicalSum& a, const RadicalSum& b) { return (a + sa) * (b + sb); });
}

TrivialBound trivial_bound_check(const RestrictionGraph& g) {
  if (g.edge_count() == 0) throw PreconditionError("trivial_bound_check requires |G| >= 1");
  TrivialBound r;
  r.sum_size = restricted_sum(g).size();
  r.prod_size = restricted_product(g).size();
  const auto m = static_cast<unsigned __int128>(std::max(r.sum_size, r.prod_size));
  const auto edges = static_cast<unsigned __int128>(g.edge_count());
  r.holds = 2 * m * m >= edges;
  r.tight = 2 * m * m == edges;
  r.floor = std::nextafter(std::sqrt(static_cast<double>(g.edge_count()) / 2.0),
                           std::numeric_limits<double>::infinity());
  return r;
}

void write_graph(std::ostream& out, const RestrictionGraph& g) {
  out << "A:\n";
  for (const auto& v : g.left().elements()) out << to_string(v) << '\n';
  out << "B:\n";
  for (const auto& v : g.right().elements()) out << to_string(v) << '\n';
  out << "G:\n";
  for (const Edge& e : g.edges()) out << e.left << ' ' << e.right << '\n';
}

RestrictionGraph read_graph(std::istream& in) {
  enum class Section { None, A, B, G } section = Section::None;
  std::vector<RadicalSum> a;
  std::vector<RadicalSum> b;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  bool saw_b = false;
  bool saw_g = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "A:" && section == Section::None) {
      section = Section::A;
      continue;
    }
    if (line == "B:" && section == Section::A) {
      section = Section::B;
      saw_b = true;
      continue;
    }
    if (line == "G:" && section == Section::B) {
      section = Section::G;
      saw_g = true;
      continue;
    }
    try {
      switch (section) {
        case Section::None:
          throw ParseError("expected 'A:' header", line_no);
        case Section::A:
          a.push_back(parse_radical_sum(line));
          break;
        case Section::B:
          b.push_back(parse_radical_sum(line));
          break;
        case Section::G: {
          std::istringstream ss(line);
          long long i = -1;
          long long j = -1;
          std::string rest;
          if (!(ss >> i >> j) || (ss >> rest) || i < 0 || j < 0 ||
              i > std::numeric_limits<std::uint32_t>::max() || j > std::numeric_limits<std::uint32_t>::max()) {
            throw ParseError("malformed edge line", line_no);
          }
          edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
          break;
        }
      }
    } catch (const ParseError& e) {
      if (section == Section::None || section == Section::G) throw;
      throw ParseError(std::string("bad value (") + e.what() + ")", line_no);
    }
  }
  if (!saw_b || !saw_g) throw ParseError("missing 'B:' or 'G:' section", line_no);
  try {
    auto left = std::make_shared<const GroundSet>(std::move(a));
    auto right = *left == GroundSet(b) ? left : std::make_shared<const GroundSet>(std::move(b));
    return RestrictionGraph(left, right, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line_no);
  }
}

}  // namespace splab
