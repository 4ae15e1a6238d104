#pragma once

// Configuration space, labeled regions and the geometric primitives used by the
// planner: sampling, steering, radius queries, simple-segment tests and the
// sparsity bound functions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srrg/ltl.hpp"

namespace srrg {

using Point = std::vector<double>;
using StateId = std::uint32_t;

/// Geometric tolerance for boundary contact, in configuration-space length units.
inline constexpr double kGeoEps = 1e-9;

inline double squared_distance(const Point& a, const Point& b)
{
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}
inline double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

/// Closed axis-aligned box.
struct Box {
  Point lo, hi;

  std::size_t dimension() const noexcept { return lo.size(); }
  bool contains(const Point& x) const
  {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  double volume() const
  {
    double v = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
  bool contains(const Box& b) const
  {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (b.lo[i] < lo[i] || b.hi[i] > hi[i]) return false;
    return true;
  }
  /// Some axis separates the boxes by more than `gap`.
  bool separated_from(const Box& b, double gap) const
  {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (hi[i] + gap < b.lo[i] || b.hi[i] + gap < lo[i]) return true;
    return false;
  }
};

struct Region {
  std::string name;
  Box box;
  LabelSet labels;
};

/// The domain D, disjoint labeled regions and the initial configuration.
class Environment {
 public:
  Environment(Box domain, std::vector<Region> regions, Point initial, std::vector<std::string> propositions)
    : domain_(std::move(domain)), regions_(std::move(regions)), initial_(std::move(initial)),
      propositions_(std::move(propositions))
  {
    validate();
  }

  std::size_t dimension() const noexcept { return domain_.dimension(); }
  const Box& domain() const noexcept { return domain_; }
  const std::vector<Region>& regions() const noexcept { return regions_; }
  const Point& initial() const noexcept { return initial_; }
  const std::vector<std::string>& propositions() const noexcept { return propositions_; }

  /// Index of the first region (closed containment) holding `x`, or -1 for free space.
  int region_index(const Point& x) const
  {
    require_inside(x);
    for (std::size_t i = 0; i < regions_.size(); ++i)
      if (regions_[i].box.contains(x)) return static_cast<int>(i);
    return -1;
  }

  LabelSet label_of(const Point& x) const
  {
    const int r = region_index(x);
    return r < 0 ? LabelSet{} : regions_[static_cast<std::size_t>(r)].labels;
  }

  void require_inside(const Point& x) const
  {
    if (x.size() != dimension())
      throw std::invalid_argument("point has dimension " + std::to_string(x.size()) + ", expected " +
                                  std::to_string(dimension()));
    if (!domain_.contains(x))
      throw std::out_of_range("point lies outside the configuration space");
  }

 private:
  void validate() const
  {
    const std::size_t n = domain_.lo.size();
    if (n == 0) throw std::invalid_argument("domain: dimension must be positive");
    if (domain_.hi.size() != n) throw std::invalid_argument("domain: lo/hi dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
      if (!(domain_.lo[i] < domain_.hi[i]))
        throw std::invalid_argument("domain: axis " + std::to_string(i) + " has lo >= hi");
    if (initial_.size() != n) throw std::invalid_argument("initial: dimension mismatch");
    if (!domain_.contains(initial_)) throw std::invalid_argument("initial: point lies outside the domain");
    for (std::size_t r = 0; r < regions_.size(); ++r) {
      const auto& reg = regions_[r];
      const std::string where = "regions[" + std::to_string(r) + "] (" + reg.name + ")";
      if (reg.box.lo.size() != n || reg.box.hi.size() != n)
        throw std::invalid_argument(where + ": dimension mismatch");
      for (std::size_t i = 0; i < n; ++i)
        if (!(reg.box.lo[i] < reg.box.hi[i]))
          throw std::invalid_argument(where + ": empty interior on axis " + std::to_string(i));
      if (!domain_.contains(reg.box)) throw std::invalid_argument(where + ": not contained in the domain");
      for (const auto& l : reg.labels)
        if (std::find(propositions_.begin(), propositions_.end(), l) == propositions_.end())
          throw std::invalid_argument(where + ": label '" + l + "' is not a declared proposition");
      for (std::size_t q = 0; q < r; ++q)
        if (!reg.box.separated_from(regions_[q].box, kGeoEps))
          throw std::invalid_argument(where + ": overlaps or touches regions[" + std::to_string(q) + "]");
    }
  }

  Box domain_;
  std::vector<Region> regions_;
  Point initial_;
  std::vector<std::string> propositions_;
};

/// Uniform sample on the domain.
template <class Rng>
Point sample(const Environment& env, Rng& rng)
{
  Point x(env.dimension());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uniform_real_distribution<double> axis(env.domain().lo[i], env.domain().hi[i]);
    x[i] = axis(rng);
  }
  return x;
}

/// Moves from `from` towards `goal` by at most `step`; returns `goal` itself when in reach.
inline Point steer(const Point& from, const Point& goal, double step)
{
  const double d = distance(from, goal);
  if (d == 0) throw std::invalid_argument("steer: start and goal coincide");
  if (!(step > 0)) throw std::invalid_argument("steer: step must be positive");
  if (d <= step) return goal;
  Point x(from.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = from[i] + step * (goal[i] - from[i]) / d;
  return x;
}

/// Number of region-boundary crossings strictly inside the segment [a, b], or
/// -1 when the segment touches a boundary ambiguously (tangency, an endpoint on
/// a boundary, or two crossings closer than the tolerance).
inline int boundary_crossings(const Environment& env, const Point& a, const Point& b)
{
  const double len = distance(a, b);
  if (len == 0) return 0;
  const double tol = kGeoEps / len;  // kGeoEps in parameter units
  std::vector<double> hits;
  for (const auto& reg : env.regions()) {
    double enter = -std::numeric_limits<double>::infinity();
    double exit = std::numeric_limits<double>::infinity();
    bool misses = false;
    for (std::size_t i = 0; i < a.size() && !misses; ++i) {
      const double lo = reg.box.lo[i], hi = reg.box.hi[i];
      const double d = b[i] - a[i];
      if (std::abs(d) <= kGeoEps * 1e-6) {
        if (a[i] < lo - kGeoEps || a[i] > hi + kGeoEps) misses = true;
        else if (std::abs(a[i] - lo) <= kGeoEps || std::abs(a[i] - hi) <= kGeoEps) return -1;  // runs along a face
        continue;
      }
      double t1 = (lo - a[i]) / d, t2 = (hi - a[i]) / d;
      if (t1 > t2) std::swap(t1, t2);
      enter = std::max(enter, t1);
      exit = std::min(exit, t2);
    }
    if (misses || exit < enter - tol) continue;
    if (exit - enter <= tol) {
      // The line only grazes the box.
      if (enter > -tol && enter < 1 + tol) return -1;
      continue;
    }
    for (double t : {enter, exit}) {
      if (t < -tol || t > 1 + tol) continue;
      if (t <= tol || t >= 1 - tol) return -1;  // endpoint on the boundary
      hits.push_back(t);
    }
  }
  std::sort(hits.begin(), hits.end());
  for (std::size_t i = 1; i < hits.size(); ++i)
    if (hits[i] - hits[i - 1] <= tol) return -1;
  return static_cast<int>(hits.size());
}

/// The segment crosses region boundaries at most once, so its labels are
/// determined by its endpoints. Ambiguous contact counts as not simple.
inline bool is_simple_segment(const Environment& env, const Point& a, const Point& b)
{
  env.require_inside(a);
  env.require_inside(b);
  const int c = boundary_crossings(env, a, b);
  return c >= 0 && c <= 1;
}

/// Ids of all states within distance `radius` of `x`, nearest first (ties by id).
inline std::vector<StateId> near(std::span<const Point> states, const Point& x, double radius)
{
  if (!(radius > 0)) throw std::invalid_argument("near: radius must be positive");
  const double r2 = radius * radius;
  std::vector<std::pair<double, StateId>> hits;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double d = squared_distance(states[i], x);
    if (d <= r2) hits.push_back({d, static_cast<StateId>(i)});
  }
  std::sort(hits.begin(), hits.end());
  std::vector<StateId> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

/// Empty if some state is closer than `inner`; otherwise near(states, x, outer).
inline std::vector<StateId> far(std::span<const Point> states, const Point& x, double inner, double outer)
{
  if (!(inner > 0 && inner < outer)) throw std::invalid_argument("far: need 0 < inner < outer");
  const double i2 = inner * inner;
  for (const auto& s : states)
    if (squared_distance(s, x) < i2) return {};
  return near(states, x, outer);
}

// ---------------------------------------------------------------------------
// Bound functions

/// Largest inner radius for which a ball of half that radius still fits between
/// k states in a domain of the given volume: (1/sqrt(pi)) (vol Gamma(n/2+1) / k)^(1/n).
inline double sparsity_upper_bound(double volume, std::size_t n, std::size_t k)
{
  if (k == 0) throw std::invalid_argument("sparsity bound: k must be at least 1");
  const double nd = static_cast<double>(n);
  return std::pow(volume * std::tgamma(nd / 2 + 1) / static_cast<double>(k), 1 / nd) / std::sqrt(std::numbers::pi);
}

/// eta1(k) = gamma k^(-1/n), eta2(k) = c eta1(k).
struct PlannerBounds {
  double c = 2.0;
  double gamma = 0.0;
  std::size_t n = 1;

  /// gamma = safety * sparsity_upper_bound(volume(D), n, 1).
  static PlannerBounds for_domain(const Box& domain, double c = 2.0, double safety = 0.5)
  {
    if (!(c > 1)) throw std::invalid_argument("bounds: c must exceed 1");
    if (!(safety > 0 && safety <= 1)) throw std::invalid_argument("bounds: safety must lie in (0, 1]");
    return {c, safety * sparsity_upper_bound(domain.volume(), domain.dimension(), 1), domain.dimension()};
  }

  double eta1(std::size_t k) const
  {
    if (k == 0) throw std::invalid_argument("eta: k must be at least 1");
    return gamma * std::pow(static_cast<double>(k), -1.0 / static_cast<double>(n));
  }
  std::pair<double, double> eta(std::size_t k) const
  {
    const double e1 = eta1(k);
    return {e1, c * e1};
  }
};

}  // namespace srrg
