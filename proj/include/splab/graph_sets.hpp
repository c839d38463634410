#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "splab/radical.hpp"

namespace splab {

/// Indexed list of pairwise distinct values; indices never change.
class GroundSet {
 public:
  GroundSet() = default;
  /// Throws std::invalid_argument on duplicate values.
  explicit GroundSet(std::vector<RadicalSum> elements);

  /// Index of `value`, appending it when absent.
  std::uint32_t insert(const RadicalSum& value);
  std::optional<std::uint32_t> index_of(const RadicalSum& value) const;

  const RadicalSum& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<RadicalSum>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<RadicalSum> elements_;
  std::unordered_map<RadicalSum, std::uint32_t, RadicalSumHash> index_;
};

struct Edge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// G, a subset of A x B, stored as index pairs into the two ground sets.
/// Both sides may share one GroundSet (the A = B case).
class RestrictionGraph {
 public:
  /// Throws std::invalid_argument on out-of-range or repeated edges.
  RestrictionGraph(std::shared_ptr<const GroundSet> left, std::shared_ptr<const GroundSet> right,
                   std::vector<Edge> edges);

  const GroundSet& left() const noexcept { return *left_; }
  const GroundSet& right() const noexcept { return *right_; }
  std::shared_ptr<const GroundSet> left_ptr() const noexcept { return left_; }
  std::shared_ptr<const GroundSet> right_ptr() const noexcept { return right_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool shares_ground_set() const noexcept { return left_ == right_; }

  const RadicalSum& left_value(const Edge& e) const { return (*left_)[e.left]; }
  const RadicalSum& right_value(const Edge& e) const { return (*right_)[e.right]; }

 private:
  std::shared_ptr<const GroundSet> left_;
  std::shared_ptr<const GroundSet> right_;
  std::vector<Edge> edges_;
};

enum class Provenance { Drop, Keep };

/// Distinct values of some f(a, b) over the edges, in canonical order.
struct RestrictedSet {
  std::vector<RadicalSum> values;
  /// provenance->at(i) lists the edges producing values[i].
  std::optional<std::vector<std::vector<Edge>>> provenance;

  std::size_t size() const noexcept { return values.size(); }
  bool contains(const RadicalSum& v) const;
};

/// A +_G B
RestrictedSet restricted_sum(const RestrictionGraph& g, Provenance p = Provenance::Drop);
/// A +_G lambda B; lambda = 0 gives the left-endpoint set.
RestrictedSet restricted_dilate_sum(const RestrictionGraph& g, const Rational& lambda,
                                    Provenance p = Provenance::Drop);
/// A ._G B
RestrictedSet restricted_product(const RestrictionGraph& g, Provenance p = Provenance::Drop);
/// A /_G B. Throws DivisionByZero or UnsupportedDenominator.
RestrictedSet restricted_ratio(const RestrictionGraph& g, Provenance p = Provenance::Drop);
/// (A + alpha) ._G (B + beta)
RestrictedSet restricted_shifted_product(const RestrictionGraph& g, const Rational& alpha,
                                         const Rational& beta, Provenance p = Provenance::Drop);

struct TrivialBound {
  std::size_t sum_size = 0;
  std::size_t prod_size = 0;
  /// sqrt(|G| / 2) rounded up.
  double floor = 0;
  /// max(sum_size, prod_size) >= sqrt(|G|/2), decided exactly.
  bool holds = false;
  /// max(sum_size, prod_size) == sqrt(|G|/2) exactly.
  bool tight = false;
};

/// Requires at least one edge.
TrivialBound trivial_bound_check(const RestrictionGraph& g);

/// Text format: "A:" + one value per line, "B:" + values, "G:" + "i j" lines.
void write_graph(std::ostream& out, const RestrictionGraph& g);
/// Throws ParseError (position = line number) on malformed input.
RestrictionGraph read_graph(std::istream& in);

}  // namespace splab
