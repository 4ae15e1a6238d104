#pragma once

// Sparse random graph planner: grows a transition system by sampling, keeps the
// product with the Buchi automaton up to date after every accepted transition
// and stops once an accepting product state lies on a cycle.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "srrg/buchi.hpp"
#include "srrg/ltl.hpp"
#include "srrg/product.hpp"
#include "srrg/tsys.hpp"
#include "srrg/workspace.hpp"

namespace srrg {

struct PlannerParams {
  PlannerBounds bounds;
  double step = std::numeric_limits<double>::infinity();
  std::size_t max_iterations = 100000;
  std::uint64_t seed = 0;
  bool self_loop_termination = true;
  bool defer_scc = false;
  /// Wall-clock budget in seconds; 0 disables it.
  double time_limit_seconds = 0;

  /// Default bounds for `env` (c = 2, safety 0.5).
  static PlannerParams for_env(const Environment& env, std::uint64_t seed = 0)
  {
    PlannerParams p;
    p.bounds = PlannerBounds::for_domain(env.domain());
    p.seed = seed;
    return p;
  }
};

struct PlanReport {
  std::optional<Plan> plan;
  std::size_t iterations = 0;
  std::size_t ts_states = 0, ts_transitions = 0;
  std::size_t product_states = 0, product_transitions = 0;
  double seconds_total = 0, seconds_search = 0, seconds_geometry = 0;
  /// Iterations where Far returned something, and where the admission loops ran.
  std::size_t far_nonempty = 0, loops_executed = 0;
  bool time_limit_hit = false;
};

class Planner {
 public:
  Planner(const Environment& env, const BuchiAutomaton& b, PlannerParams params)
    : env_(&env), params_(params), rng_(params.seed), ts_(env.initial(), env.label_of(env.initial()), params.bounds),
      product_(b, ts_, {params.self_loop_termination, params.defer_scc})
  {
    if (params.max_iterations < 1) throw std::invalid_argument("planner: max_iterations must be at least 1");
    if (!(params.step > 0)) throw std::invalid_argument("planner: step must be positive");
    if (params.bounds.n != env.dimension()) throw std::invalid_argument("planner: bounds dimension mismatch");
  }

  const Environment& environment() const noexcept { return *env_; }
  const PlannerParams& params() const noexcept { return params_; }
  const TransitionSystem& ts() const noexcept { return ts_; }
  const ProductAutomaton& product() const noexcept { return product_; }
  std::size_t iterations() const noexcept { return report_.iterations; }
  bool solved() const { return product_.has_accepting_cycle(); }

  /// One sampling round. Returns the states admitted in it.
  std::vector<StateId> iterate()
  {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    ++report_.iterations;
    const Point xr = sample(*env_, rng_);
    const auto [eta1, eta2] = params_.bounds.eta(ts_.size());
    const auto neighbors = far(ts_.points(), xr, eta1, eta2);
    std::vector<StateId> added;
    if (!neighbors.empty()) ++report_.far_nonempty;

    bool ran = false;
    for (StateId x : neighbors) {
      ran = true;
      Point xn = steer(ts_.point(x), xr, params_.step);
      if (!is_simple_segment(*env_, ts_.point(x), xn)) continue;
      std::optional<StateId> existing = ts_.find(xn);
      if (existing && (*existing == x || ts_.has_transition(x, *existing))) continue;
      if (!existing && !ts_.admissible(xn)) continue;
      const StateId target = existing ? *existing : static_cast<StateId>(ts_.size());
      LabelSet labels = existing ? ts_.labels(target) : env_->label_of(xn);
      if (!search(Candidate{x, target, labels})) continue;
      if (!existing) {
        ts_.add_state(std::move(xn), std::move(labels));
        added.push_back(target);
      }
      ts_.add_transition(x, target);
    }

    for (StateId xn : added) {
      ran = true;
      for (StateId x : near(ts_.points(), ts_.point(xn), eta2)) {
        if (x == xn || ts_.has_transition(xn, x)) continue;
        if (!reaches_exactly(ts_.point(xn), ts_.point(x))) continue;
        if (!is_simple_segment(*env_, ts_.point(xn), ts_.point(x))) continue;
        if (search(Candidate{xn, x, ts_.labels(x)})) ts_.add_transition(xn, x);
      }
    }
    if (ran) ++report_.loops_executed;
    report_.seconds_total += std::chrono::duration<double>(clock::now() - t0).count();
    return added;
  }

  /// Runs until solved or out of budget; `observer` sees the planner after each iteration.
  PlanReport run(const std::function<void(const Planner&)>& observer = {})
  {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    while (!solved() && report_.iterations < params_.max_iterations) {
      if (params_.time_limit_seconds > 0 && elapsed() > params_.time_limit_seconds) {
        report_.time_limit_hit = true;
        break;
      }
      iterate();
      if (observer) observer(*this);
    }
    return report();
  }

  PlanReport report() const
  {
    PlanReport r = report_;
    if (solved()) r.plan = product_.extract_plan();
    r.ts_states = ts_.size();
    r.ts_transitions = ts_.num_transitions();
    r.product_states = product_.size();
    r.product_transitions = product_.num_transitions();
    r.seconds_geometry = r.seconds_total - r.seconds_search;
    return r;
  }

 private:
  // Cycle-closing guard: steering from `from` towards `to` lands exactly on `to`.
  bool reaches_exactly(const Point& from, const Point& to) const
  {
    const Point s = steer(from, to, params_.step);
    if (std::isinf(params_.step)) return s == to;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::abs(s[i] - to[i]) > 1e-12) return false;
    return true;
  }

  bool search(const Candidate& c)
  {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = product_.update(ts_, c);
    report_.seconds_search += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return ok;
  }

  const Environment* env_;
  PlannerParams params_;
  std::mt19937_64 rng_;
  TransitionSystem ts_;
  ProductAutomaton product_;
  PlanReport report_;
};

inline PlanReport plan(const Environment& env, const BuchiAutomaton& b, const PlannerParams& params)
{
  Planner p(env, b, params);
  return p.run();
}

/// Fraction of seeds params.seed, params.seed + 1, ... that yield a plan. An
/// automaton with an empty language gives 0.
inline double success_rate(const Environment& env, const BuchiAutomaton& b, PlannerParams params, std::size_t trials)
{
  if (trials < 1) throw std::invalid_argument("success_rate: trials must be at least 1");
  if (std::none_of(b.initial().begin(), b.initial().end(), [&](BuchiState s) { return b.is_nonblocking(s); }))
    return 0;
  const std::uint64_t base = params.seed;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    params.seed = base + i;
    if (plan(env, b, params).plan) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(trials);
}

/// Labels along the plan as a lasso word.
inline LassoWord plan_word(const TransitionSystem& t, const Plan& p)
{
  LassoWord w;
  for (StateId x : p.prefix) w.prefix.push_back(t.labels(x));
  for (StateId x : p.suffix) w.suffix.push_back(t.labels(x));
  return w;
}

/// Empty when `p` is a valid plan of `t` for `f`, otherwise the first problem found.
inline std::string check_plan(const Environment& env, const TransitionSystem& t, const Formula& f, const Plan& p)
{
  if (p.prefix.empty() || p.prefix.front() != t.initial()) return "prefix does not start at the initial state";
  if (p.suffix.empty()) return "suffix is empty";
  std::vector<StateId> walk = p.prefix;
  walk.insert(walk.end(), p.suffix.begin(), p.suffix.end());
  walk.push_back(p.suffix.front());
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (walk[i] >= t.size() || walk[i + 1] >= t.size()) return "unknown state in plan";
    if (!t.has_transition(walk[i], walk[i + 1]))
      return "missing transition " + std::to_string(walk[i]) + " -> " + std::to_string(walk[i + 1]);
    if (!is_simple_segment(env, t.point(walk[i]), t.point(walk[i + 1])))
      return "segment " + std::to_string(walk[i]) + " -> " + std::to_string(walk[i + 1]) + " is not simple";
  }
  if (!eval_lasso(f, plan_word(t, p))) return "plan labels do not satisfy the formula";
  return {};
}

}  // namespace srrg
