#pragma once

// Nondeterministic Buchi automata over 2^AP with literal guards, the
// LTL -> Buchi translation (tableau expansion + counter degeneralization) and
// lasso acceptance.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srrg/graph.hpp"
#include "srrg/ltl.hpp"

namespace srrg {

/// Bit i is set iff proposition i (in the automaton's proposition order) holds.
using Label = std::uint64_t;
using BuchiState = std::uint32_t;

/// Conjunction of literals: every `positive` bit must hold, no `negative` bit may.
struct Guard {
  Label positive = 0;
  Label negative = 0;

  bool satisfiable() const noexcept { return (positive & negative) == 0; }
  bool admits(Label l) const noexcept { return (positive & ~l) == 0 && (negative & l) == 0; }
  /// Every label admitted by `other` is admitted by *this.
  bool weaker_than(const Guard& other) const noexcept
  {
    return (positive & ~other.positive) == 0 && (negative & ~other.negative) == 0;
  }
  friend auto operator<=>(const Guard&, const Guard&) = default;
};

inline bool guard_sat(const Guard& g, Label label) noexcept { return g.admits(label); }

struct BuchiTransition {
  Guard guard;
  BuchiState target = 0;
  friend auto operator<=>(const BuchiTransition&, const BuchiTransition&) = default;
};

class BuchiAutomaton {
 public:
  BuchiAutomaton() = default;
  explicit BuchiAutomaton(std::vector<std::string> propositions) : propositions_(std::move(propositions))
  {
    if (propositions_.size() > 64)
      throw std::invalid_argument("at most 64 propositions are supported");
    std::set<std::string> uniq(propositions_.begin(), propositions_.end());
    if (uniq.size() != propositions_.size())
      throw std::invalid_argument("duplicate proposition name");
  }

  BuchiState add_state(bool accepting = false)
  {
    transitions_.emplace_back();
    accepting_.push_back(accepting);
    return static_cast<BuchiState>(transitions_.size() - 1);
  }
  void set_accepting(BuchiState s, bool accepting) { accepting_.at(s) = accepting; }
  void add_initial(BuchiState s)
  {
    check(s);
    if (std::find(initial_.begin(), initial_.end(), s) == initial_.end())
      initial_.push_back(s);
  }
  void add_transition(BuchiState from, Guard g, BuchiState to)
  {
    check(from);
    check(to);
    const Label all = propositions_.size() == 64 ? ~Label{0} : ((Label{1} << propositions_.size()) - 1);
    if (((g.positive | g.negative) & ~all) != 0)
      throw std::invalid_argument("guard references an unknown proposition");
    transitions_[from].push_back({g, to});
  }

  std::size_t size() const noexcept { return transitions_.size(); }
  std::size_t num_transitions() const noexcept
  {
    std::size_t n = 0;
    for (const auto& t : transitions_) n += t.size();
    return n;
  }
  const std::vector<std::string>& propositions() const noexcept { return propositions_; }
  const std::vector<BuchiState>& initial() const noexcept { return initial_; }
  bool is_accepting(BuchiState s) const { return accepting_.at(s); }
  const std::vector<BuchiTransition>& transitions(BuchiState s) const { return transitions_.at(s); }

  /// Encodes a label-set; names outside the proposition list are ignored.
  Label encode(const LabelSet& labels) const
  {
    Label l = 0;
    for (std::size_t i = 0; i < propositions_.size(); ++i)
      if (labels.count(propositions_[i])) l |= Label{1} << i;
    return l;
  }
  Guard make_guard(const LabelSet& positive, const LabelSet& negative) const
  {
    auto bits = [&](const LabelSet& names) {
      Label l = 0;
      for (const auto& n : names) {
        auto it = std::find(propositions_.begin(), propositions_.end(), n);
        if (it == propositions_.end())
          throw std::invalid_argument("unknown proposition '" + n + "'");
        l |= Label{1} << (it - propositions_.begin());
      }
      return l;
    };
    Guard g{bits(positive), bits(negative)};
    if (!g.satisfiable())
      throw std::invalid_argument("guard requires and forbids the same proposition");
    return g;
  }

  /// Sorted set of states reachable from `s` by reading `label`.
  std::vector<BuchiState> successors(BuchiState s, Label label) const
  {
    check(s);
    std::vector<BuchiState> out;
    for (const auto& t : transitions_[s])
      if (t.guard.admits(label)) out.push_back(t.target);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// At least one outgoing transition with a satisfiable guard.
  bool is_nonblocking(BuchiState s) const
  {
    check(s);
    return std::any_of(transitions_[s].begin(), transitions_[s].end(),
                       [](const BuchiTransition& t) { return t.guard.satisfiable(); });
  }

 private:
  void check(BuchiState s) const
  {
    if (s >= transitions_.size())
      throw std::out_of_range("unknown Buchi state " + std::to_string(s));
  }

  std::vector<std::string> propositions_;
  std::vector<std::vector<BuchiTransition>> transitions_;
  std::vector<BuchiState> initial_;
  std::vector<char> accepting_;
};

// ---------------------------------------------------------------------------
// Simplification

namespace detail {

// Keeps the states reachable from an initial state that can also reach an
// accepting state lying on a cycle; everything else can never contribute to an
// accepting run.
inline BuchiAutomaton trim(const BuchiAutomaton& in)
{
  const std::size_t n = in.size();
  std::vector<std::vector<std::uint32_t>> adj(n), radj(n);
  for (BuchiState s = 0; s < n; ++s)
    for (const auto& t : in.transitions(s))
      if (t.guard.satisfiable()) {
        adj[s].push_back(t.target);
        radj[t.target].push_back(s);
      }

  std::vector<char> fwd(n, 0), bwd(n, 0);
  std::vector<std::uint32_t> work(in.initial().begin(), in.initial().end());
  for (auto s : work) fwd[s] = 1;
  while (!work.empty()) {
    auto s = work.back();
    work.pop_back();
    for (auto t : adj[s])
      if (!fwd[t]) fwd[t] = 1, work.push_back(t);
  }
  const auto cyc = on_cycle(adj);
  for (BuchiState s = 0; s < n; ++s)
    if (in.is_accepting(s) && cyc[s] && fwd[s]) bwd[s] = 1, work.push_back(s);
  while (!work.empty()) {
    auto s = work.back();
    work.pop_back();
    for (auto p : radj[s])
      if (!bwd[p]) bwd[p] = 1, work.push_back(p);
  }

  BuchiAutomaton out(in.propositions());
  std::vector<BuchiState> remap(n, UINT32_MAX);
  for (BuchiState s = 0; s < n; ++s)
    if (fwd[s] && bwd[s]) remap[s] = out.add_state(in.is_accepting(s));
  for (BuchiState s = 0; s < n; ++s) {
    if (remap[s] == UINT32_MAX) continue;
    // Drop duplicates and transitions whose guard is implied by a weaker one to the same target.
    std::vector<BuchiTransition> kept;
    for (const auto& t : in.transitions(s)) {
      if (!t.guard.satisfiable() || remap[t.target] == UINT32_MAX) continue;
      kept.push_back({t.guard, remap[t.target]});
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < kept.size() && !redundant; ++j)
        redundant = j != i && kept[j].target == kept[i].target && kept[j].guard.weaker_than(kept[i].guard) &&
                    (kept[j].guard != kept[i].guard || j < i);
      if (!redundant) out.add_transition(remap[s], kept[i].guard, kept[i].target);
    }
  }
  for (auto s : in.initial())
    if (remap[s] != UINT32_MAX) out.add_initial(remap[s]);
  return out;
}

// Quotient by the coarsest bisimulation that respects acceptance.
inline BuchiAutomaton merge_bisimilar(const BuchiAutomaton& in)
{
  const std::size_t n = in.size();
  std::vector<std::uint32_t> cls(n);
  for (BuchiState s = 0; s < n; ++s) cls[s] = in.is_accepting(s) ? 1 : 0;
  std::size_t nclasses = 0;
  for (;;) {
    std::map<std::pair<std::uint32_t, std::set<std::pair<Guard, std::uint32_t>>>, std::uint32_t> sig;
    std::vector<std::uint32_t> next(n);
    for (BuchiState s = 0; s < n; ++s) {
      std::set<std::pair<Guard, std::uint32_t>> moves;
      for (const auto& t : in.transitions(s)) moves.insert({t.guard, cls[t.target]});
      auto [it, fresh] = sig.try_emplace({cls[s], std::move(moves)}, static_cast<std::uint32_t>(sig.size()));
      next[s] = it->second;
    }
    const bool stable = sig.size() == nclasses;
    nclasses = sig.size();
    cls = std::move(next);
    if (stable) break;
  }

  // Class representatives in first-occurrence order keep the numbering stable.
  std::vector<std::uint32_t> order(nclasses, UINT32_MAX);
  BuchiAutomaton out(in.propositions());
  std::vector<BuchiState> rep_state(nclasses);
  for (BuchiState s = 0; s < n; ++s)
    if (order[cls[s]] == UINT32_MAX) {
      order[cls[s]] = s;
      rep_state[cls[s]] = out.add_state(in.is_accepting(s));
    }
  for (std::uint32_t c = 0; c < nclasses; ++c) {
    std::set<std::pair<Guard, BuchiState>> moves;
    for (const auto& t : in.transitions(order[c])) moves.insert({t.guard, rep_state[cls[t.target]]});
    for (const auto& [g, to] : moves) out.add_transition(rep_state[c], g, to);
  }
  for (auto s : in.initial()) out.add_initial(rep_state[cls[s]]);
  return out;
}

}  // namespace detail

/// Removes useless states and merges equivalent ones; the language is unchanged.
inline BuchiAutomaton simplify(const BuchiAutomaton& b)
{
  return detail::trim(detail::merge_bisimilar(detail::trim(b)));
}

// ---------------------------------------------------------------------------
// Translation

namespace detail {

using FormulaSet = std::set<Formula>;

// `postponed` holds the untils deferred by this expansion; an until is
// fulfilled on a step that does not postpone it.
struct Expansion {
  Guard guard;
  FormulaSet next;
  FormulaSet postponed;
  friend bool operator<(const Expansion& a, const Expansion& b)
  {
    return std::tie(a.guard, a.next, a.postponed) < std::tie(b.guard, b.next, b.postponed);
  }
};

class Tableau {
 public:
  explicit Tableau(const std::vector<std::string>& props) : props_(props) {}

  // All ways of discharging the obligations in `now` at the current position:
  // a literal guard on the current letter plus the obligations for the next one.
  std::vector<Expansion> expand(const FormulaSet& now) const
  {
    struct Partial {
      std::vector<Formula> todo;
      Guard guard;
      FormulaSet next;
      FormulaSet postponed;
    };
    std::set<Expansion> found;
    std::vector<Partial> stack{{std::vector<Formula>(now.begin(), now.end()), {}, {}, {}}};
    while (!stack.empty()) {
      Partial p = std::move(stack.back());
      stack.pop_back();
      bool dead = false;
      while (!dead && !p.todo.empty()) {
        Formula f = p.todo.back();
        p.todo.pop_back();
        switch (f.op()) {
          case Op::True: break;
          case Op::False: dead = true; break;
          case Op::Atom: p.guard.positive |= bit(f.name()); dead = !p.guard.satisfiable(); break;
          case Op::Not: p.guard.negative |= bit(f.child().name()); dead = !p.guard.satisfiable(); break;
          case Op::And:
            p.todo.push_back(f.rhs());
            p.todo.push_back(f.lhs());
            break;
          case Op::Or: {
            Partial alt = p;
            alt.todo.push_back(f.rhs());
            stack.push_back(std::move(alt));
            p.todo.push_back(f.lhs());
            break;
          }
          case Op::Next:
            if (f.child().op() != Op::True) p.next.insert(f.child());
            break;
          case Op::Until: {  // b now, or a now and (a U b) next
            Partial alt = p;
            alt.todo.push_back(f.lhs());
            alt.next.insert(f);
            alt.postponed.insert(f);
            stack.push_back(std::move(alt));
            p.todo.push_back(f.rhs());
            break;
          }
          case Op::Release: {  // a and b now, or b now and (a R b) next
            Partial alt = p;
            alt.todo.push_back(f.rhs());
            alt.next.insert(f);
            stack.push_back(std::move(alt));
            p.todo.push_back(f.rhs());
            p.todo.push_back(f.lhs());
            break;
          }
          default: throw std::logic_error("tableau expects a formula in negation normal form");
        }
      }
      if (!dead) found.insert({p.guard, std::move(p.next), std::move(p.postponed)});
    }

    // Drop expansions dominated by one with a weaker guard, fewer obligations and fewer postponements.
    std::vector<Expansion> all(found.begin(), found.end()), out;
    for (std::size_t i = 0; i < all.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < all.size() && !dominated; ++j)
        dominated = j != i && all[j].guard.weaker_than(all[i].guard) &&
                    std::includes(all[i].next.begin(), all[i].next.end(), all[j].next.begin(), all[j].next.end()) &&
                    std::includes(all[i].postponed.begin(), all[i].postponed.end(), all[j].postponed.begin(),
                                  all[j].postponed.end());
      if (!dominated) out.push_back(all[i]);
    }
    return out;
  }

 private:
  Label bit(const std::string& name) const
  {
    auto it = std::find(props_.begin(), props_.end(), name);
    return Label{1} << (it - props_.begin());
  }

  const std::vector<std::string>& props_;
};

inline void collect_untils(const Formula& f, FormulaSet& out)
{
  if (f.op() == Op::Until) out.insert(f);
  if (arity(f.op()) >= 1) collect_untils(f.lhs(), out);
  if (arity(f.op()) == 2) collect_untils(f.rhs(), out);
}

}  // namespace detail

/// Builds a Buchi automaton over the atoms of `f` accepting exactly the words satisfying `f`.
///
/// States of the intermediate automaton are sets of pending obligations; a
/// transition is accepting for an until-subformula when it does not postpone it. The resulting generalized acceptance is
/// turned into a single set with a level counter, and the result is simplified.
inline BuchiAutomaton translate(const Formula& f)
{
  using detail::FormulaSet;
  const Formula nnf = to_nnf(f);
  const auto props = atoms(nnf);
  if (props.size() > 64)
    throw std::invalid_argument("formula has more than 64 atoms");

  FormulaSet until_set;
  detail::collect_untils(nnf, until_set);
  // The level counter waits for outer untils before the ones nested in them.
  std::vector<Formula> untils(until_set.begin(), until_set.end());
  std::stable_sort(untils.begin(), untils.end(),
                   [](const Formula& a, const Formula& b) { return a.size() > b.size(); });
  const std::uint32_t k = static_cast<std::uint32_t>(untils.size());

  detail::Tableau tableau(props);
  BuchiAutomaton raw(props);
  std::map<std::pair<FormulaSet, std::uint32_t>, BuchiState> ids;
  std::map<FormulaSet, std::vector<detail::Expansion>> expansions;
  std::deque<std::pair<FormulaSet, std::uint32_t>> queue;

  auto state_of = [&](const FormulaSet& obligations, std::uint32_t level) {
    auto [it, fresh] = ids.try_emplace({obligations, level}, 0);
    if (fresh) {
      it->second = raw.add_state(level == k);
      queue.push_back({obligations, level});
    }
    return it->second;
  };

  FormulaSet start;
  if (nnf.op() != Op::True) start.insert(nnf);
  raw.add_initial(state_of(start, 0));

  while (!queue.empty()) {
    auto [obligations, level] = queue.front();
    queue.pop_front();
    const BuchiState from = ids.at({obligations, level});
    auto it = expansions.find(obligations);
    if (it == expansions.end()) it = expansions.emplace(obligations, tableau.expand(obligations)).first;
    for (const auto& e : it->second) {
      std::uint32_t next_level = level == k ? 0 : level;
      while (next_level < k && !e.postponed.count(untils[next_level])) ++next_level;
      raw.add_transition(from, e.guard, state_of(e.next, next_level));
    }
  }
  return simplify(raw);
}

// ---------------------------------------------------------------------------
// Lasso acceptance

/// Whether some run over prefix . suffix^omega visits an accepting state infinitely often.
inline bool accepts_lasso(const BuchiAutomaton& b, const LassoWord& w)
{
  if (w.suffix.empty())
    throw std::invalid_argument("lasso suffix must be nonempty");

  std::set<BuchiState> current(b.initial().begin(), b.initial().end());
  for (const auto& letter : w.prefix) {
    const Label l = b.encode(letter);
    std::set<BuchiState> next;
    for (auto s : current)
      for (auto t : b.successors(s, l)) next.insert(t);
    current = std::move(next);
  }

  // Graph over (state, suffix position) pairs reachable from the post-prefix states.
  const std::size_t m = w.suffix.size();
  std::vector<Label> letters;
  for (const auto& s : w.suffix) letters.push_back(b.encode(s));
  const auto node = [&](BuchiState s, std::size_t j) { return static_cast<std::uint32_t>(s * m + j); };
  std::vector<std::vector<std::uint32_t>> adj(b.size() * m);
  std::vector<char> seen(b.size() * m, 0);
  std::vector<std::pair<BuchiState, std::size_t>> work;
  for (auto s : current) {
    seen[node(s, 0)] = 1;
    work.push_back({s, 0});
  }
  while (!work.empty()) {
    auto [s, j] = work.back();
    work.pop_back();
    const std::size_t nj = (j + 1) % m;
    for (auto t : b.successors(s, letters[j])) {
      adj[node(s, j)].push_back(node(t, nj));
      if (!seen[node(t, nj)]) {
        seen[node(t, nj)] = 1;
        work.push_back({t, nj});
      }
    }
  }
  const auto cyc = detail::on_cycle(adj);
  for (BuchiState s = 0; s < b.size(); ++s)
    for (std::size_t j = 0; j < m; ++j)
      if (seen[node(s, j)] && cyc[node(s, j)] && b.is_accepting(s)) return true;
  return false;
}

}  // namespace srrg
