#pragma once

// JSON import/export for environments, automata, transition systems, products
// and planner results. Requires nlohmann/json.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "srrg/buchi.hpp"
#include "srrg/inc_scc.hpp"
#include "srrg/planner.hpp"
#include "srrg/product.hpp"
#include "srrg/tsys.hpp"
#include "srrg/workspace.hpp"

namespace srrg {

using Json = nlohmann::ordered_json;

/// Malformed input; the message starts with the path of the offending field.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& member(const Json& j, const std::string& key, const std::string& path)
{
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + "." + key + ": missing");
  return *it;
}

inline double number(const Json& j, const std::string& path)
{
  if (j.is_string() && (j == "inf" || j == "infinity")) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw InputError(path + ": expected a number");
  return j.get<double>();
}

inline std::uint64_t count(const Json& j, const std::string& path)
{
  if (!j.is_number_unsigned()) throw InputError(path + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::string text(const Json& j, const std::string& path)
{
  if (!j.is_string()) throw InputError(path + ": expected a string");
  return j.get<std::string>();
}

inline Point point(const Json& j, const std::string& path)
{
  if (!j.is_array()) throw InputError(path + ": expected an array of numbers");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return p;
}

inline std::vector<std::string> strings(const Json& j, const std::string& path)
{
  if (!j.is_array()) throw InputError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json number_or_inf(double v)
{
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Environment
//
// {"dimension": n,                             optional
//  "domain": {"lo": [...], "hi": [...]},
//  "propositions": [...],                       optional, defaults to region labels
//  "regions": [{"name", "lo", "hi", "labels"}],  labels default to [name]
//  "initial": [...],
//  "spec": "...",                                optional
//  "planner": {"c", "safety", "step", "max_iterations"}}  optional

inline Environment environment_from_json(const Json& j)
{
  using namespace detail;
  const Json& dom = member(j, "domain", "env");
  Box domain{point(member(dom, "lo", "env.domain"), "env.domain.lo"), point(member(dom, "hi", "env.domain"), "env.domain.hi")};
  std::vector<Region> regions;
  std::vector<std::string> props;
  const Json& regs = member(j, "regions", "env");
  if (!regs.is_array()) throw InputError("env.regions: expected an array");
  for (std::size_t i = 0; i < regs.size(); ++i) {
    const std::string path = "env.regions[" + std::to_string(i) + "]";
    Region r;
    r.name = text(member(regs[i], "name", path), path + ".name");
    r.box = {point(member(regs[i], "lo", path), path + ".lo"), point(member(regs[i], "hi", path), path + ".hi")};
    std::vector<std::string> labels{r.name};
    if (regs[i].contains("labels")) labels = strings(regs[i]["labels"], path + ".labels");
    for (const auto& l : labels) {
      r.labels.insert(l);
      if (std::find(props.begin(), props.end(), l) == props.end()) props.push_back(l);
    }
    regions.push_back(std::move(r));
  }
  if (j.contains("propositions")) props = strings(j["propositions"], "env.propositions");
  Point initial = point(member(j, "initial", "env"), "env.initial");
  if (j.contains("dimension") && count(j["dimension"], "env.dimension") != domain.lo.size())
    throw InputError("env.dimension: does not match env.domain");
  try {
    return Environment(std::move(domain), std::move(regions), std::move(initial), std::move(props));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("env.") + e.what());
  }
}

inline Json to_json(const Environment& env)
{
  Json j;
  j["dimension"] = env.dimension();
  j["domain"] = {{"lo", env.domain().lo}, {"hi", env.domain().hi}};
  j["propositions"] = env.propositions();
  j["regions"] = Json::array();
  for (const auto& r : env.regions())
    j["regions"].push_back({{"name", r.name}, {"lo", r.box.lo}, {"hi", r.box.hi}, {"labels", r.labels}});
  j["initial"] = env.initial();
  return j;
}

// ---------------------------------------------------------------------------
// Buchi automaton
//
// {"propositions": [...], "states": N, "initial": [...], "accepting": [...],
//  "transitions": [{"from", "pos": [...], "neg": [...], "to"}]}

inline Json to_json(const BuchiAutomaton& b)
{
  Json j;
  j["propositions"] = b.propositions();
  j["states"] = b.size();
  j["initial"] = b.initial();
  Json acc = Json::array(), trans = Json::array();
  auto names = [&](Label bits) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < b.propositions().size(); ++i)
      if (bits >> i & 1) out.push_back(b.propositions()[i]);
    return out;
  };
  for (BuchiState s = 0; s < b.size(); ++s) {
    if (b.is_accepting(s)) acc.push_back(s);
    for (const auto& t : b.transitions(s))
      trans.push_back(
          {{"from", s}, {"pos", names(t.guard.positive)}, {"neg", names(t.guard.negative)}, {"to", t.target}});
  }
  j["accepting"] = acc;
  j["transitions"] = trans;
  return j;
}

inline BuchiAutomaton buchi_from_json(const Json& j)
{
  using namespace detail;
  BuchiAutomaton b(strings(member(j, "propositions", "buchi"), "buchi.propositions"));
  const auto n = count(member(j, "states", "buchi"), "buchi.states");
  for (std::uint64_t i = 0; i < n; ++i) b.add_state();
  auto ids = [&](const char* key) {
    std::vector<BuchiState> out;
    const Json& a = member(j, key, "buchi");
    if (!a.is_array()) throw InputError(std::string("buchi.") + key + ": expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = std::string("buchi.") + key + "[" + std::to_string(i) + "]";
      const auto s = count(a[i], path);
      if (s >= n) throw InputError(path + ": state out of range");
      out.push_back(static_cast<BuchiState>(s));
    }
    return out;
  };
  for (auto s : ids("initial")) b.add_initial(s);
  for (auto s : ids("accepting")) b.set_accepting(s, true);
  const Json& trans = member(j, "transitions", "buchi");
  if (!trans.is_array()) throw InputError("buchi.transitions: expected an array");
  for (std::size_t i = 0; i < trans.size(); ++i) {
    const std::string path = "buchi.transitions[" + std::to_string(i) + "]";
    const auto from = count(member(trans[i], "from", path), path + ".from");
    const auto to = count(member(trans[i], "to", path), path + ".to");
    if (from >= n || to >= n) throw InputError(path + ": state out of range");
    std::vector<std::string> pos, neg;
    if (trans[i].contains("pos")) pos = strings(trans[i]["pos"], path + ".pos");
    if (trans[i].contains("neg")) neg = strings(trans[i]["neg"], path + ".neg");
    try {
      b.add_transition(static_cast<BuchiState>(from), b.make_guard({pos.begin(), pos.end()}, {neg.begin(), neg.end()}),
                       static_cast<BuchiState>(to));
    } catch (const std::invalid_argument& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Transition system
//
// {"initial": 0, "states": [{"id", "coords", "labels"}], "transitions": [[from, to], ...]}

inline Json to_json(const TransitionSystem& t)
{
  Json j;
  j["initial"] = t.initial();
  j["states"] = Json::array();
  for (StateId i = 0; i < t.size(); ++i)
    j["states"].push_back({{"id", i}, {"coords", t.point(i)}, {"labels", t.labels(i)}});
  j["transitions"] = Json::array();
  for (StateId i = 0; i < t.size(); ++i)
    for (StateId k : t.successors(i)) j["transitions"].push_back({i, k});
  return j;
}

/// Rebuilds a transition system. State ids must be 0..n-1 in order with the
/// initial state first, and must respect the sparsity radius of `bounds`.
/// Missing labels are taken from `env` when given.
inline TransitionSystem ts_from_json(const Json& j, const PlannerBounds& bounds, const Environment* env = nullptr)
{
  using namespace detail;
  const Json& states = member(j, "states", "ts");
  if (!states.is_array() || states.empty()) throw InputError("ts.states: expected a nonempty array");
  if (j.contains("initial") && count(j["initial"], "ts.initial") != 0) throw InputError("ts.initial: must be 0");
  auto state = [&](std::size_t i) {
    const std::string path = "ts.states[" + std::to_string(i) + "]";
    if (count(member(states[i], "id", path), path + ".id") != i) throw InputError(path + ".id: ids must be 0..n-1 in order");
    Point p = point(member(states[i], "coords", path), path + ".coords");
    LabelSet labels;
    if (states[i].contains("labels")) {
      for (auto& l : strings(states[i]["labels"], path + ".labels")) labels.insert(l);
    } else if (env) {
      labels = env->label_of(p);
    }
    return std::pair{std::move(p), std::move(labels)};
  };
  auto [p0, l0] = state(0);
  TransitionSystem t(std::move(p0), std::move(l0), bounds);
  for (std::size_t i = 1; i < states.size(); ++i) {
    auto [p, l] = state(i);
    try {
      t.add_state(std::move(p), std::move(l));
    } catch (const std::invalid_argument& e) {
      throw InputError("ts.states[" + std::to_string(i) + "]: " + e.what());
    }
  }
  if (j.contains("transitions")) {
    const Json& links = j["transitions"];
    if (!links.is_array()) throw InputError("ts.transitions: expected an array");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string path = "ts.transitions[" + std::to_string(i) + "]";
      if (!links[i].is_array() || links[i].size() != 2) throw InputError(path + ": expected [from, to]");
      const auto a = count(links[i][0], path + "[0]");
      const auto b = count(links[i][1], path + "[1]");
      try {
        t.add_transition(static_cast<StateId>(a), static_cast<StateId>(b));
      } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Product and SCC debug dumps

inline Json to_json(const ProductAutomaton& p)
{
  Json j;
  j["states"] = Json::array();
  for (ProductState i = 0; i < p.size(); ++i) j["states"].push_back({p.pair(i).ts, p.pair(i).buchi});
  j["initial"] = p.initial();
  j["accepting"] = p.accepting();
  j["transitions"] = Json::array();
  for (ProductState i = 0; i < p.size(); ++i)
    for (ProductState k : p.successors(i)) j["transitions"].push_back({i, k});
  return j;
}

/// Condensation in topological order.
inline Json to_json(const SccIndex& s)
{
  Json comps = Json::array();
  for (auto rep : s.components_in_order()) {
    auto members = s.members(rep);
    std::sort(members.begin(), members.end());
    bool loop = false;
    for (auto v : members) loop = loop || s.has_self_loop(v);
    comps.push_back({{"representative", rep}, {"order", s.order(rep)}, {"members", members}, {"self_loop", loop}});
  }
  return {{"vertices", s.num_vertices()}, {"edges", s.num_edges()}, {"components", comps}};
}

// ---------------------------------------------------------------------------
// Planner result

/// Result document. Wall-clock figures are included only when `timing` is set,
/// so that reruns with the same configuration produce identical output.
inline Json result_to_json(const TransitionSystem& t, const BuchiAutomaton& b, const PlanReport& r,
                           const std::string& spec, const PlannerParams& params, bool timing = false)
{
  Json j;
  j["status"] = r.plan ? "plan_found" : "budget_exhausted";
  j["spec"] = spec;
  j["params"] = {{"seed", params.seed},
                 {"max_iterations", params.max_iterations},
                 {"c", params.bounds.c},
                 {"gamma", params.bounds.gamma},
                 {"step", detail::number_or_inf(params.step)},
                 {"self_loop_termination", params.self_loop_termination},
                 {"defer_scc", params.defer_scc}};
  if (r.plan) {
    Json prefix_coords = Json::array(), suffix_coords = Json::array();
    for (auto x : r.plan->prefix) prefix_coords.push_back(t.point(x));
    for (auto x : r.plan->suffix) suffix_coords.push_back(t.point(x));
    j["plan"] = {{"prefix", r.plan->prefix},
                 {"suffix", r.plan->suffix},
                 {"prefix_coords", prefix_coords},
                 {"suffix_coords", suffix_coords}};
  } else {
    j["plan"] = nullptr;
  }
  j["stats"] = {{"states", r.ts_states},
                {"transitions", r.ts_transitions},
                {"product_states", r.product_states},
                {"product_transitions", r.product_transitions},
                {"iterations", r.iterations},
                {"buchi", {{"states", b.size()}, {"transitions", b.num_transitions()}}}};
  if (timing)
    j["timing"] = {{"seconds", r.seconds_total}, {"search_seconds", r.seconds_search}, {"geometry_seconds", r.seconds_geometry}};
  return j;
}

}  // namespace srrg
