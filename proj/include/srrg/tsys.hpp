#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "srrg/workspace.hpp"

namespace srrg {

/// Deterministic transition system grown by the planner. States carry their
/// configuration and cached label; every admitted state keeps distance at least
/// eta1(|T|) from all earlier ones.
class TransitionSystem {
 public:
  TransitionSystem(Point initial, LabelSet initial_labels, PlannerBounds bounds) : bounds_(bounds)
  {
    points_.push_back(std::move(initial));
    labels_.push_back(std::move(initial_labels));
    insertion_size_.push_back(0);
    adjacency_.emplace_back();
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t num_transitions() const noexcept { return edges_.size(); }
  StateId initial() const noexcept { return 0; }
  const PlannerBounds& bounds() const noexcept { return bounds_; }

  std::span<const Point> points() const noexcept { return points_; }
  const Point& point(StateId id) const { return points_.at(id); }
  const LabelSet& labels(StateId id) const { return labels_.at(id); }
  const std::vector<StateId>& successors(StateId id) const { return adjacency_.at(id); }
  /// |T| at the moment the state was admitted (0 for the initial state).
  std::size_t insertion_size(StateId id) const { return insertion_size_.at(id); }

  bool has_transition(StateId from, StateId to) const { return edges_.count(key(from, to)) != 0; }

  /// Distance check against the current sparsity radius, without inserting.
  bool admissible(const Point& x) const
  {
    const double r = bounds_.eta1(size());
    const double r2 = r * r;
    return std::none_of(points_.begin(), points_.end(), [&](const Point& p) { return squared_distance(p, x) < r2; });
  }

  /// Id of a state with exactly these coordinates, if any.
  std::optional<StateId> find(const Point& x) const
  {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == x) return static_cast<StateId>(i);
    return std::nullopt;
  }

  StateId add_state(Point x, LabelSet labels)
  {
    if (x.size() != points_[0].size()) throw std::invalid_argument("add_state: dimension mismatch");
    if (find(x)) throw std::invalid_argument("add_state: duplicate coordinates");
    if (!admissible(x)) throw std::invalid_argument("add_state: violates the sparsity radius");
    insertion_size_.push_back(size());
    points_.push_back(std::move(x));
    labels_.push_back(std::move(labels));
    adjacency_.emplace_back();
    return static_cast<StateId>(points_.size() - 1);
  }

  /// Inserts from -> to; false if already present. Self-loops are rejected.
  bool add_transition(StateId from, StateId to)
  {
    if (from >= size() || to >= size()) throw std::out_of_range("add_transition: unknown state");
    if (from == to) throw std::invalid_argument("add_transition: self-loops are not allowed");
    if (!edges_.insert(key(from, to)).second) return false;
    adjacency_[from].push_back(to);
    return true;
  }

  std::size_t max_out_degree() const
  {
    std::size_t m = 0;
    for (const auto& a : adjacency_) m = std::max(m, a.size());
    return m;
  }

  double min_pairwise_distance() const
  {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j) best = std::min(best, squared_distance(points_[i], points_[j]));
    return std::sqrt(best);
  }

 private:
  static std::uint64_t key(StateId a, StateId b) { return (std::uint64_t{a} << 32) | b; }

  PlannerBounds bounds_;
  std::vector<Point> points_;
  std::vector<LabelSet> labels_;
  std::vector<std::size_t> insertion_size_;
  std::vector<std::vector<StateId>> adjacency_;
  std::unordered_set<std::uint64_t> edges_;
};

}  // namespace srrg
