#pragma once

// Test-only generators and reference implementations. Nothing here calls the
// library code it is used to check.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "srrg/ltl.hpp"
#include "srrg/workspace.hpp"

namespace oracle {

using srrg::Formula;
using srrg::LabelSet;
using srrg::LassoWord;
using srrg::Op;

/// Random formula with exactly `size` nodes over the first `atoms` of a..e.
inline Formula random_formula(std::mt19937_64& rng, int size, int atoms)
{
  static const char* names[] = {"a", "b", "c", "d", "e"};
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  if (size <= 1) {
    const int k = pick(atoms + 2);
    if (k == atoms) return Formula::constant(true);
    if (k == atoms + 1) return Formula::constant(false);
    return Formula::atom(names[k]);
  }
  static const Op unary[] = {Op::Not, Op::Next, Op::Eventually, Op::Always};
  static const Op binary[] = {Op::And, Op::Or, Op::Until, Op::Release};
  if (size == 2 || pick(3) == 0) return Formula::unary(unary[pick(4)], random_formula(rng, size - 1, atoms));
  const int left = 1 + pick(size - 2);
  return Formula::binary(binary[pick(4)], random_formula(rng, left, atoms), random_formula(rng, size - 1 - left, atoms));
}

inline LabelSet random_letter(std::mt19937_64& rng, int atoms)
{
  static const char* names[] = {"a", "b", "c", "d", "e"};
  LabelSet l;
  for (int i = 0; i < atoms; ++i)
    if (rng() & 1) l.insert(names[i]);
  return l;
}

inline LassoWord random_lasso(std::mt19937_64& rng, int atoms, int max_prefix = 4, int max_suffix = 4)
{
  LassoWord w;
  const int p = static_cast<int>(rng() % static_cast<std::uint64_t>(max_prefix + 1));
  const int s = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_suffix));
  for (int i = 0; i < p; ++i) w.prefix.push_back(random_letter(rng, atoms));
  for (int i = 0; i < s; ++i) w.suffix.push_back(random_letter(rng, atoms));
  return w;
}

// ---------------------------------------------------------------------------
// Semantics by unrolling: position i of the lasso maps to a finite index.
// Truth is computed per formula node on positions 0..L-1 where L = |prefix| +
// |suffix|, using least/greatest fixpoints computed by repeated backward passes
// over twice the loop (enough for convergence on a loop of length m).

inline std::vector<char> unroll_eval(const Formula& f, const LassoWord& w)
{
  const std::size_t p = w.prefix.size(), m = w.suffix.size(), n = p + m;
  auto letter = [&](std::size_t i) -> const LabelSet& { return i < p ? w.prefix[i] : w.suffix[i - p]; };
  auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : p; };
  std::vector<char> out(n, 0);
  switch (f.op()) {
    case Op::True: std::fill(out.begin(), out.end(), 1); return out;
    case Op::False: return out;
    case Op::Atom:
      for (std::size_t i = 0; i < n; ++i) out[i] = letter(i).count(f.name()) != 0;
      return out;
    case Op::Not: {
      auto a = unroll_eval(f.child(), w);
      for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
      return out;
    }
    case Op::And:
    case Op::Or: {
      auto a = unroll_eval(f.lhs(), w), b = unroll_eval(f.rhs(), w);
      for (std::size_t i = 0; i < n; ++i) out[i] = f.op() == Op::And ? (a[i] && b[i]) : (a[i] || b[i]);
      return out;
    }
    case Op::Next: {
      auto a = unroll_eval(f.child(), w);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[succ(i)];
      return out;
    }
    default: break;
  }
  // Until-like operators: a U b, F b = true U b, a R b, G b = false R b.
  std::vector<char> a(n, 1), b;
  bool least = true;
  switch (f.op()) {
    case Op::Until: a = unroll_eval(f.lhs(), w), b = unroll_eval(f.rhs(), w); break;
    case Op::Eventually: b = unroll_eval(f.child(), w); break;
    case Op::Release: a = unroll_eval(f.lhs(), w), b = unroll_eval(f.rhs(), w), least = false; break;
    case Op::Always: a.assign(n, 0), b = unroll_eval(f.child(), w), least = false; break;
    default: std::abort();
  }
  out.assign(n, least ? 0 : 1);
  for (std::size_t round = 0; round < 2 * n + 2; ++round)
    for (std::size_t k = n; k-- > 0;) {
      const bool next = out[succ(k)];
      out[k] = least ? (b[k] || (a[k] && next)) : (b[k] && (a[k] || next));
    }
  return out;
}

inline bool holds(const Formula& f, const LassoWord& w) { return unroll_eval(f, w)[0] != 0; }

// ---------------------------------------------------------------------------
// Kosaraju's two-pass SCC; returns a canonical label per vertex (smallest member).

inline std::vector<std::uint32_t> kosaraju(const std::vector<std::vector<std::uint32_t>>& adj)
{
  const std::size_t n = adj.size();
  std::vector<std::vector<std::uint32_t>> radj(n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (auto w : adj[v]) radj[w].push_back(v);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> finish;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < adj[v].size()) {
        const auto w = adj[v][i++];
        if (!seen[w]) seen[w] = 1, stack.push_back({w, 0});
      } else {
        finish.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<std::uint32_t> comp(n, UINT32_MAX);
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] != UINT32_MAX) continue;
    std::vector<std::uint32_t> members{*it}, todo{*it};
    comp[*it] = *it;
    while (!todo.empty()) {
      const auto v = todo.back();
      todo.pop_back();
      for (auto w : radj[v])
        if (comp[w] == UINT32_MAX) comp[w] = *it, members.push_back(w), todo.push_back(w);
    }
    const auto rep = *std::min_element(members.begin(), members.end());
    for (auto v : members) comp[v] = rep;
  }
  return comp;
}

// ---------------------------------------------------------------------------
// Boundary crossings by dense sampling of the region index along the segment.

inline int sampled_crossings(const srrg::Environment& env, const srrg::Point& a, const srrg::Point& b, int samples = 20000)
{
  int changes = 0;
  int prev = env.region_index(a);
  for (int i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    srrg::Point x(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) x[k] = a[k] + t * (b[k] - a[k]);
    const int r = env.region_index(x);
    if (r != prev) changes += (prev >= 0 && r >= 0) ? 2 : 1;
    prev = r;
  }
  return changes;
}

// ---------------------------------------------------------------------------
// Fixtures (mirrors of data/*.json; test_json_io checks they agree)

inline srrg::Environment fig1_environment()
{
  using srrg::Region;
  return srrg::Environment({{0, 0}, {1, 1}},
                           {Region{"O1", {{0.4, 0.3}, {0.6, 0.7}}, {"O1"}}, Region{"R1", {{0.05, 0.7}, {0.25, 0.9}}, {"R1"}},
                            Region{"R2", {{0.75, 0.1}, {0.95, 0.3}}, {"R2"}}},
                           {0.1, 0.1}, {"R1", "R2", "O1"});
}
inline const char* fig1_spec() { return "G (F (R1 && F R2) && !O1)"; }
inline constexpr double kFig1C = 3.0;

inline srrg::Environment case2_environment()
{
  srrg::Box r1, r2, r3, o1, dom;
  auto axis = [](srrg::Box& b, double lo, double hi) {
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  };
  axis(r1, 0, 0.4);
  axis(r2, 0.6, 1);
  axis(r3, 0.6, 1);
  axis(r3, 0, 0.2);
  axis(o1, 0.41, 0.59);
  axis(o1, 0.3, 0.9);
  for (int i = 0; i < 9; ++i) axis(r1, 0, 0.75), axis(r2, 0.25, 1);
  for (int i = 0; i < 4; ++i) axis(r3, 0.2, 1), axis(r3, 0, 0.8);
  for (int i = 0; i < 8; ++i) axis(o1, 0.12, 0.88);
  for (int i = 0; i < 10; ++i) axis(dom, 0, 1);
  srrg::Point x0(10, 0.5);
  x0[1] = 0.1;
  return srrg::Environment(dom, {{"r1", r1, {"r1"}}, {"r2", r2, {"r2"}}, {"r3", r3, {"r3"}}, {"o1", o1, {"o1"}}}, x0,
                           {"r1", "r2", "r3", "o1"});
}
inline const char* phi1() { return "G( F r1 && ( F r2 && ( F r3 && ( F r4 ) ) ) && !(o1 || o2 || o3 || o4))"; }
inline const char* phi2() { return "G(F r1 && (F r2 && (F r3)) && !o1)"; }
inline const char* phi3() { return "G (F (r1 && F r2))"; }

}  // namespace oracle
