#pragma once

// Product of a transition system with a Buchi automaton, restricted to states
// reachable from the initial pairs. Büchi moves read the label of the source
// transition-system state: (x, s) -> (x', s') iff x -> x' and s' in delta(s, h(x)).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "srrg/buchi.hpp"
#include "srrg/inc_scc.hpp"
#include "srrg/tsys.hpp"

namespace srrg {

using ProductState = std::uint32_t;

struct ProductPair {
  StateId ts;
  BuchiState buchi;
  friend auto operator<=>(const ProductPair&, const ProductPair&) = default;
};

/// A transition x -> x' proposed to the product. `to` may be the id the next
/// state of T will receive (T.size()), in which case `to_labels` supplies h(x').
struct Candidate {
  StateId from;
  StateId to;
  LabelSet to_labels;
};

/// Set-valued snapshot of a product, independent of insertion order.
struct ProductSnapshot {
  std::set<ProductPair> states, initial, accepting;
  std::set<std::pair<ProductPair, ProductPair>> transitions;
  friend bool operator==(const ProductSnapshot&, const ProductSnapshot&) = default;
};

struct Plan {
  std::vector<StateId> prefix;
  std::vector<StateId> suffix;
};

class ProductAutomaton {
 public:
  struct Options {
    /// A self-loop at an accepting state counts as an accepting cycle.
    bool count_self_loops = true;
    /// Keep the SCC index empty until the first accepting state appears.
    bool defer_scc = false;
  };

  /// Seeds the product with {x0} x initial(B), dropping blocking Buchi states.
  ProductAutomaton(const BuchiAutomaton& b, const TransitionSystem& t) : ProductAutomaton(b, t, Options{}) {}
  ProductAutomaton(const BuchiAutomaton& b, const TransitionSystem& t, Options options)
    : buchi_(&b), options_(options), scc_active_(!options.defer_scc)
  {
    if (b.initial().empty()) throw std::invalid_argument("product: Buchi automaton has no initial state");
    nonblocking_.resize(b.size());
    for (BuchiState s = 0; s < b.size(); ++s) nonblocking_[s] = b.is_nonblocking(s);
    sync_labels(t);
    for (BuchiState s : b.initial())
      if (nonblocking_[s]) {
        const ProductState p = add_state({t.initial(), s}).first;
        if (std::find(initial_.begin(), initial_.end(), p) == initial_.end()) initial_.push_back(p);
      }
    if (initial_.empty()) throw std::domain_error("product: every initial Buchi state is blocking");
  }

  const BuchiAutomaton& buchi() const noexcept { return *buchi_; }
  const Options& options() const noexcept { return options_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  std::size_t num_transitions() const noexcept { return edge_set_.size(); }
  const ProductPair& pair(ProductState p) const { return pairs_.at(p); }
  std::optional<ProductState> find(ProductPair q) const
  {
    auto it = index_.find(key(q));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<ProductState>& initial() const noexcept { return initial_; }
  const std::vector<ProductState>& accepting() const noexcept { return accepting_; }
  bool is_accepting(ProductState p) const { return buchi_->is_accepting(pair(p).buchi); }
  const std::vector<ProductState>& successors(ProductState p) const { return adjacency_.at(p); }
  bool has_transition(ProductState a, ProductState b) const { return edge_set_.count(edge_key(a, b)) != 0; }
  const SccIndex& scc() const noexcept { return scc_; }
  bool scc_active() const noexcept { return scc_active_; }

  /// Buchi states paired with `x` (sorted).
  std::vector<BuchiState> beta(StateId x) const
  {
    if (x >= beta_.size()) return {};
    std::vector<BuchiState> out = beta_[x];
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Applies a candidate transition of T. Returns false, leaving the product
  /// untouched, when no non-blocking state is induced at the target.
  bool update(const TransitionSystem& t, const Candidate& c)
  {
    sync_labels(t);
    if (c.from >= t.size()) throw std::out_of_range("update: unknown source state " + std::to_string(c.from));
    const bool pending = c.to == t.size();
    if (!pending && c.to > t.size()) throw std::out_of_range("update: unknown target state " + std::to_string(c.to));
    if (c.from == c.to) throw std::invalid_argument("update: self-loop candidate");
    const Label to_mask = buchi_->encode(c.to_labels);
    if (!pending && to_mask != masks_[c.to]) throw std::invalid_argument("update: target label disagrees with T");

    // Induced states at the target and the transitions into them.
    std::vector<ProductState> frontier;
    std::vector<std::pair<ProductState, BuchiState>> induced;
    if (c.from < beta_.size())
      for (BuchiState s : beta_[c.from])
        for (BuchiState s2 : buchi_->successors(s, masks_[c.from]))
          if (nonblocking_[s2]) induced.push_back({*find({c.from, s}), s2});
    if (induced.empty()) return false;

    if (pending) masks_.push_back(to_mask);
    std::vector<std::pair<ProductState, ProductState>> fresh_edges;
    for (const auto& [p, s2] : induced) {
      const ProductState q = add_state({c.to, s2}).first;
      if (std::find(frontier.begin(), frontier.end(), q) == frontier.end()) frontier.push_back(q);
      if (add_edge(p, q)) fresh_edges.push_back({p, q});
    }

    // Reachability closure over T plus the candidate transition.
    std::vector<ProductState> stack = frontier;
    while (!stack.empty()) {
      const ProductState p1 = stack.back();
      stack.pop_back();
      const auto [x1, s1] = pairs_[p1];
      auto visit = [&](StateId x2) {
        for (BuchiState s2 : buchi_->successors(s1, masks_[x1])) {
          const auto [p2, added] = add_state({x2, s2});
          if (add_edge(p1, p2)) fresh_edges.push_back({p1, p2});
          if (added) stack.push_back(p2);
        }
      };
      if (x1 < t.size())
        for (StateId x2 : t.successors(x1)) visit(x2);
      if (x1 == c.from && !(c.to < t.size() && t.has_transition(c.from, c.to))) visit(c.to);
    }

    feed_scc(fresh_edges);
    return true;
  }

  /// Some accepting state lies on a cycle.
  bool has_accepting_cycle() const { return accepting_cycle_state().has_value(); }

  /// Smallest accepting state lying on a cycle, if any.
  std::optional<ProductState> accepting_cycle_state() const
  {
    if (!scc_active_) return std::nullopt;
    for (ProductState p : sorted_accepting())
      if (on_cycle(p)) return p;
    return std::nullopt;
  }

  bool on_cycle(ProductState p) const
  {
    if (!scc_active_) return false;
    return scc_.scc_size(p) > 1 || (options_.count_self_loops && scc_.has_self_loop(p));
  }

  /// Shortest prefix to, plus shortest cycle through, the accepting state that
  /// minimizes their total length (ties by smallest state id), projected on T.
  Plan extract_plan() const
  {
    const auto dist_parent = bfs(initial_);
    std::optional<ProductState> best;
    std::vector<ProductState> best_cycle;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (ProductState f : sorted_accepting()) {
      if (!on_cycle(f) || dist_parent.first[f] == kUnreached) continue;
      auto cycle = shortest_cycle(f);
      if (cycle.empty()) continue;
      const std::size_t len = dist_parent.first[f] + cycle.size();
      if (len < best_len) {
        best_len = len;
        best = f;
        best_cycle = std::move(cycle);
      }
    }
    if (!best) throw std::logic_error("extract_plan: no accepting cycle");
    Plan plan;
    std::vector<ProductState> path;
    for (ProductState p = *best; p != kNoParent; p = dist_parent.second[p]) path.push_back(p);
    std::reverse(path.begin(), path.end());
    for (ProductState p : path) plan.prefix.push_back(pairs_[p].ts);
    for (ProductState p : best_cycle) plan.suffix.push_back(pairs_[p].ts);
    return plan;
  }

  ProductSnapshot snapshot() const
  {
    ProductSnapshot s;
    for (const auto& q : pairs_) s.states.insert(q);
    for (ProductState p : initial_) s.initial.insert(pairs_[p]);
    for (ProductState p : accepting_) s.accepting.insert(pairs_[p]);
    for (ProductState p = 0; p < pairs_.size(); ++p)
      for (ProductState q : adjacency_[p]) s.transitions.insert({pairs_[p], pairs_[q]});
    return s;
  }

  /// Breadth-first construction over all of T (the non-incremental reference).
  friend ProductAutomaton batch_product(const TransitionSystem& t, const BuchiAutomaton& b, Options options);

 private:
  static constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  static constexpr ProductState kNoParent = std::numeric_limits<ProductState>::max();

  std::uint64_t key(ProductPair q) const { return std::uint64_t{q.ts} * buchi_->size() + q.buchi; }
  static std::uint64_t edge_key(ProductState a, ProductState b) { return (std::uint64_t{a} << 32) | b; }

  void sync_labels(const TransitionSystem& t)
  {
    while (masks_.size() < t.size()) masks_.push_back(buchi_->encode(t.labels(static_cast<StateId>(masks_.size()))));
  }

  std::pair<ProductState, bool> add_state(ProductPair q)
  {
    auto [it, inserted] = index_.try_emplace(key(q), static_cast<ProductState>(pairs_.size()));
    if (!inserted) return {it->second, false};
    const ProductState p = it->second;
    pairs_.push_back(q);
    adjacency_.emplace_back();
    if (beta_.size() <= q.ts) beta_.resize(q.ts + 1);
    beta_[q.ts].push_back(q.buchi);
    if (scc_active_) scc_.insert_vertex(p);
    if (buchi_->is_accepting(q.buchi)) {
      accepting_.push_back(p);
      if (!scc_active_) activate_scc();
    }
    return {p, true};
  }

  bool add_edge(ProductState a, ProductState b)
  {
    if (!edge_set_.insert(edge_key(a, b)).second) return false;
    adjacency_[a].push_back(b);
    return true;
  }

  void activate_scc()
  {
    scc_active_ = true;
    for (ProductState p = 0; p < pairs_.size(); ++p) scc_.insert_vertex(p);
    for (ProductState p = 0; p < pairs_.size(); ++p)
      for (ProductState q : adjacency_[p]) scc_.insert_edge(p, q);
  }

  void feed_scc(const std::vector<std::pair<ProductState, ProductState>>& edges)
  {
    if (!scc_active_) return;
    for (const auto& [a, b] : edges) scc_.insert_edge(a, b);
  }

  std::vector<ProductState> sorted_accepting() const
  {
    std::vector<ProductState> out = accepting_;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<ProductState> sorted_successors(ProductState p) const
  {
    std::vector<ProductState> out = adjacency_[p];
    std::sort(out.begin(), out.end());
    return out;
  }

  // Distances and BFS parents from `sources`.
  std::pair<std::vector<std::size_t>, std::vector<ProductState>> bfs(const std::vector<ProductState>& sources) const
  {
    std::vector<std::size_t> dist(pairs_.size(), kUnreached);
    std::vector<ProductState> parent(pairs_.size(), kNoParent);
    std::deque<ProductState> queue;
    std::vector<ProductState> start = sources;
    std::sort(start.begin(), start.end());
    for (ProductState s : start)
      if (dist[s] == kUnreached) dist[s] = 0, queue.push_back(s);
    while (!queue.empty()) {
      const ProductState p = queue.front();
      queue.pop_front();
      for (ProductState q : sorted_successors(p))
        if (dist[q] == kUnreached) {
          dist[q] = dist[p] + 1;
          parent[q] = p;
          queue.push_back(q);
        }
    }
    return {std::move(dist), std::move(parent)};
  }

  // States after f along a shortest cycle back to f, ending with f itself.
  std::vector<ProductState> shortest_cycle(ProductState f) const
  {
    const auto succ = sorted_successors(f);
    if (options_.count_self_loops && std::binary_search(succ.begin(), succ.end(), f)) return {f};
    std::vector<std::size_t> dist(pairs_.size(), kUnreached);
    std::vector<ProductState> parent(pairs_.size(), kNoParent);
    std::deque<ProductState> queue;
    for (ProductState s : succ)
      if (s != f) dist[s] = 1, queue.push_back(s);
    while (!queue.empty()) {
      const ProductState p = queue.front();
      queue.pop_front();
      for (ProductState q : sorted_successors(p)) {
        if (q == f) {
          std::vector<ProductState> cycle{f};
          for (ProductState r = p; r != kNoParent; r = parent[r]) cycle.push_back(r);
          std::reverse(cycle.begin() + 1, cycle.end());
          std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
          return cycle;
        }
        if (dist[q] == kUnreached) {
          dist[q] = dist[p] + 1;
          parent[q] = p;
          queue.push_back(q);
        }
      }
    }
    return {};
  }

  const BuchiAutomaton* buchi_;
  Options options_;
  std::vector<char> nonblocking_;
  std::vector<Label> masks_;
  std::vector<ProductPair> pairs_;
  std::unordered_map<std::uint64_t, ProductState> index_;
  std::vector<std::vector<ProductState>> adjacency_;
  std::unordered_set<std::uint64_t> edge_set_;
  std::vector<ProductState> initial_, accepting_;
  std::vector<std::vector<BuchiState>> beta_;
  SccIndex scc_;
  bool scc_active_;
};

inline ProductAutomaton batch_product(const TransitionSystem& t, const BuchiAutomaton& b,
                                      ProductAutomaton::Options options = {})
{
  ProductAutomaton p(b, t, options);
  std::deque<ProductState> queue(p.initial_.begin(), p.initial_.end());
  std::vector<std::pair<ProductState, ProductState>> edges;
  while (!queue.empty()) {
    const ProductState p1 = queue.front();
    queue.pop_front();
    const auto [x1, s1] = p.pairs_[p1];
    for (StateId x2 : t.successors(x1))
      for (BuchiState s2 : b.successors(s1, p.masks_[x1])) {
        const auto [p2, added] = p.add_state({x2, s2});
        if (p.add_edge(p1, p2)) edges.push_back({p1, p2});
        if (added) queue.push_back(p2);
      }
  }
  p.feed_scc(edges);
  return p;
}

}  // namespace srrg
