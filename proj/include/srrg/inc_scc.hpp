#pragma once

// Incremental strongly connected components under edge insertion.
//
// The index keeps the condensation in topological order as a linked list with
// integer order keys. Inserting an edge u -> v that points backwards in the
// order runs a two-way search: forward from v visiting components in
// increasing order, backward from u in decreasing order, one arc on each side
// per step, until the smallest unfinished forward component lies after the
// largest unfinished backward one. The visited components below that pivot
// (forward) and above it (backward) are then re-inserted just before the pivot,
// backward ones first. When the searches meet, every component on a cycle
// through the new edge has been visited; those are contracted into the one
// with the smallest vertex id.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace srrg {

class SccIndex {
 public:
  using Vertex = std::uint32_t;

  struct MergeReport {
    /// Components (by their previous representative) folded together; empty if none.
    std::vector<Vertex> merged;
    /// Representative of the resulting component when `merged` is nonempty.
    Vertex into = kNone;
    bool any() const noexcept { return !merged.empty(); }
  };

  static constexpr Vertex kNone = std::numeric_limits<Vertex>::max();

  bool contains(Vertex v) const noexcept { return v < present_.size() && present_[v]; }
  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_components() const noexcept { return num_components_; }
  /// Elementary search steps performed so far (arc scans, frontier pops, reordered nodes).
  std::uint64_t work() const noexcept { return work_; }

  void insert_vertex(Vertex v)
  {
    if (v == kNone) throw std::invalid_argument("insert_vertex: reserved id");
    if (contains(v)) throw std::invalid_argument("insert_vertex: duplicate vertex " + std::to_string(v));
    if (v >= present_.size()) grow(v + 1);
    present_[v] = 1;
    parent_[v] = v;
    members_[v] = {v};
    ++num_vertices_;
    ++num_components_;
    link_before(v, kNone);
    if (prev_[v] == kNone) label_[v] = kSpacing;
    else if (label_[prev_[v]] > std::numeric_limits<std::uint64_t>::max() - 2 * kSpacing) relabel();
    else label_[v] = label_[prev_[v]] + kSpacing;
  }

  MergeReport insert_edge(Vertex u, Vertex v)
  {
    require(u);
    require(v);
    if (!edges_.insert((std::uint64_t{u} << 32) | v).second) return {};
    if (u == v) {
      self_loop_[u] = 1;
      return {};
    }
    const Vertex ru = find(u), rv = find(v);
    out_[ru].push_back(v);
    in_[rv].push_back(u);
    if (ru == rv || label_[ru] < label_[rv]) return {};
    return restore_order(ru, rv);
  }

  /// Representative (smallest vertex id) of the component holding `v`.
  Vertex component(Vertex v) const
  {
    require(v);
    return find(v);
  }
  const std::vector<Vertex>& members(Vertex v) const { return members_[component(v)]; }
  std::size_t scc_size(Vertex v) const { return members(v).size(); }
  bool has_self_loop(Vertex v) const
  {
    require(v);
    return self_loop_[v] != 0;
  }
  /// |component| > 1, or `v` carries a self-loop.
  bool has_cycle(Vertex v) const { return scc_size(v) > 1 || self_loop_[v]; }
  /// Position key of the component of `v`; edges between components go from smaller to larger keys.
  std::uint64_t order(Vertex v) const { return label_[component(v)]; }

  /// Component representatives from first to last in topological order.
  std::vector<Vertex> components_in_order() const
  {
    std::vector<Vertex> out;
    for (Vertex c = head_; c != kNone; c = next_[c]) out.push_back(c);
    return out;
  }

  /// All inserted edges (u, v), including self-loops, in no particular order.
  std::vector<std::pair<Vertex, Vertex>> edges() const
  {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_.size());
    for (auto e : edges_) out.push_back({static_cast<Vertex>(e >> 32), static_cast<Vertex>(e & 0xffffffffu)});
    return out;
  }

 private:
  static constexpr std::uint64_t kSpacing = std::uint64_t{1} << 24;

  void require(Vertex v) const
  {
    if (!contains(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
  }

  void grow(std::size_t n)
  {
    present_.resize(n, 0);
    parent_.resize(n, kNone);
    members_.resize(n);
    out_.resize(n);
    in_.resize(n);
    self_loop_.resize(n, 0);
    prev_.resize(n, kNone);
    next_.resize(n, kNone);
    label_.resize(n, 0);
    for (auto* m : {&fmark_, &bmark_, &moved_, &cfwd_, &cbwd_}) m->resize(n, 0);
    fptr_.resize(n, 0);
    bptr_.resize(n, 0);
  }

  Vertex find(Vertex v) const
  {
    Vertex r = v;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[v] != r) {
      const Vertex nx = parent_[v];
      parent_[v] = r;
      v = nx;
    }
    return r;
  }

  // Order list -------------------------------------------------------------

  void unlink(Vertex c)
  {
    if (prev_[c] != kNone) next_[prev_[c]] = next_[c];
    else head_ = next_[c];
    if (next_[c] != kNone) prev_[next_[c]] = prev_[c];
    else tail_ = prev_[c];
    prev_[c] = next_[c] = kNone;
  }

  // Links `c` right before `anchor` (at the tail for kNone) without assigning a label.
  void link_before(Vertex c, Vertex anchor)
  {
    const Vertex p = anchor == kNone ? tail_ : prev_[anchor];
    prev_[c] = p;
    next_[c] = anchor;
    if (p != kNone) next_[p] = c;
    else head_ = c;
    if (anchor != kNone) prev_[anchor] = c;
    else tail_ = c;
  }

  void relabel()
  {
    std::uint64_t l = kSpacing;
    for (Vertex c = head_; c != kNone; c = next_[c], l += kSpacing) label_[c] = l;
  }

  void insert_run_before(const std::vector<Vertex>& run, Vertex anchor)
  {
    for (Vertex c : run) link_before(c, anchor);
    const Vertex before = prev_[run.front()];
    const std::uint64_t lo = before == kNone ? 0 : label_[before];
    const std::uint64_t hi = anchor == kNone ? lo + (run.size() + 1) * kSpacing : label_[anchor];
    if (hi - lo <= run.size() || (anchor == kNone && hi < lo)) {
      relabel();
      return;
    }
    const std::uint64_t gap = (hi - lo) / (run.size() + 1);
    for (std::size_t i = 0; i < run.size(); ++i) label_[run[i]] = lo + gap * (i + 1);
  }

  // Search -----------------------------------------------------------------

  // Next component across an out-arc (forward) or in-arc (backward) of component
  // `c`; kNone when exhausted. Arcs internal to `c` stay internal, so they are
  // dropped the first time they are met.
  Vertex next_arc(Vertex c, bool forward)
  {
    auto& list = forward ? out_[c] : in_[c];
    auto& ptr = forward ? fptr_[c] : bptr_[c];
    while (ptr < list.size()) {
      ++work_;
      const Vertex x = find(list[ptr]);
      if (x != c) {
        ++ptr;
        forward ? traversed_.push_back({c, x}) : traversed_.push_back({x, c});
        return x;
      }
      list[ptr] = list.back();
      list.pop_back();
    }
    return kNone;
  }

  MergeReport restore_order(Vertex source, Vertex target)
  {
    if (++epoch_ == 0) {
      for (auto* m : {&fmark_, &bmark_, &moved_, &cfwd_, &cbwd_}) std::fill(m->begin(), m->end(), 0);
      epoch_ = 1;
    }
    using Entry = std::pair<std::uint64_t, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> forward;
    std::priority_queue<Entry> backward;
    std::vector<Vertex> fset{target}, bset{source};
    bool meet = false;
    traversed_.clear();

    fmark_[target] = epoch_;
    fptr_[target] = 0;
    forward.push({label_[target], target});
    bmark_[source] = epoch_;
    bptr_[source] = 0;
    backward.push({label_[source], source});

    while (!forward.empty() && !backward.empty()) {
      const auto [lu, u] = forward.top();
      const auto [lz, z] = backward.top();
      if (lu >= lz) break;

      if (Vertex x = next_arc(u, true); x == kNone) {
        forward.pop();
        ++work_;
      } else if (fmark_[x] != epoch_) {
        fmark_[x] = epoch_;
        fptr_[x] = 0;
        fset.push_back(x);
        forward.push({label_[x], x});
        meet |= bmark_[x] == epoch_;
      }

      if (Vertex y = next_arc(z, false); y == kNone) {
        backward.pop();
        ++work_;
      } else if (bmark_[y] != epoch_) {
        bmark_[y] = epoch_;
        bptr_[y] = 0;
        bset.push_back(y);
        backward.push({label_[y], y});
        meet |= fmark_[y] == epoch_;
      }
    }

    // Everything reachable from `target` ordered below `pivot` is in fset, and
    // everything reaching `source` ordered at or above it is in bset.
    const bool source_is_pivot = forward.empty() || label_[source] <= forward.top().first;
    const std::uint64_t pivot = source_is_pivot ? label_[source] : forward.top().first;
    const Vertex pivot_node = source_is_pivot ? source : forward.top().second;

    std::vector<Vertex> fwd_moved, bwd_moved;
    for (Vertex x : fset)
      if (label_[x] < pivot) fwd_moved.push_back(x), moved_[x] = epoch_;
    for (Vertex y : bset)
      if (label_[y] >= pivot) bwd_moved.push_back(y), moved_[y] = epoch_;

    std::vector<Vertex> cycle;
    if (meet) cycle = cycle_members(source, target, fset, bset);

    Vertex anchor = pivot_node;
    while (anchor != kNone && moved_[anchor] == epoch_) anchor = next_[anchor];

    auto by_label = [&](Vertex a, Vertex b) { return label_[a] < label_[b]; };
    std::sort(fwd_moved.begin(), fwd_moved.end(), by_label);
    std::sort(bwd_moved.begin(), bwd_moved.end(), by_label);
    for (Vertex c : fwd_moved) unlink(c);
    for (Vertex c : bwd_moved) unlink(c);
    work_ += fwd_moved.size() + bwd_moved.size();

    MergeReport report;
    std::vector<Vertex> run;
    auto in_cycle = [&](Vertex c) { return !cycle.empty() && cfwd_[c] == epoch_ && cbwd_[c] == epoch_; };
    for (Vertex c : bwd_moved)
      if (!in_cycle(c)) run.push_back(c);
    if (!cycle.empty()) {
      const Vertex rep = *std::min_element(cycle.begin(), cycle.end());
      for (Vertex c : cycle)
        if (c != rep) contract(c, rep);
      report.merged = cycle;
      std::sort(report.merged.begin(), report.merged.end());
      report.into = rep;
      run.push_back(rep);
    }
    for (Vertex c : fwd_moved)
      if (!in_cycle(c)) run.push_back(c);
    if (!run.empty()) insert_run_before(run, anchor);
    return report;
  }

  // Components on a cycle through source -> target: reachable from `target` and
  // reaching `source`. Every arc of such a cycle was scanned by one of the two
  // searches (its tail lies below the forward frontier or its head above the
  // backward one), so the traversed arcs suffice.
  std::vector<Vertex> cycle_members(Vertex source, Vertex target, const std::vector<Vertex>& fset,
                                    const std::vector<Vertex>& bset)
  {
    std::unordered_map<Vertex, std::vector<Vertex>> succ, pred;
    for (auto [a, b] : traversed_) {
      succ[a].push_back(b);
      pred[b].push_back(a);
    }
    auto closure = [&](Vertex start, std::unordered_map<Vertex, std::vector<Vertex>>& adj, std::vector<std::uint32_t>& mark) {
      std::vector<Vertex> stack{start};
      mark[start] = epoch_;
      while (!stack.empty()) {
        const Vertex c = stack.back();
        stack.pop_back();
        auto it = adj.find(c);
        if (it == adj.end()) continue;
        for (Vertex x : it->second) {
          ++work_;
          if (mark[x] != epoch_) {
            mark[x] = epoch_;
            stack.push_back(x);
          }
        }
      }
    };
    closure(target, succ, cfwd_);
    closure(source, pred, cbwd_);
    std::vector<Vertex> out;
    for (Vertex c : fset)
      if (cfwd_[c] == epoch_ && cbwd_[c] == epoch_) out.push_back(c);
    for (Vertex c : bset)
      if (cfwd_[c] == epoch_ && cbwd_[c] == epoch_ && fmark_[c] != epoch_) out.push_back(c);
    return out;
  }

  void contract(Vertex c, Vertex rep)
  {
    parent_[c] = rep;
    for (auto* lists : {&members_, &out_, &in_}) {
      auto& into = (*lists)[rep];
      auto& from = (*lists)[c];
      if (from.size() > into.size()) into.swap(from);
      into.insert(into.end(), from.begin(), from.end());
      std::vector<Vertex>().swap(from);
    }
    --num_components_;
  }

  std::vector<char> present_;
  mutable std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> members_, out_, in_;
  std::vector<char> self_loop_;
  std::vector<Vertex> prev_, next_;
  std::vector<std::uint64_t> label_;
  Vertex head_ = kNone, tail_ = kNone;
  std::unordered_set<std::uint64_t> edges_;
  std::size_t num_vertices_ = 0, num_components_ = 0;
  std::uint64_t work_ = 0;

  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> fmark_, bmark_, moved_, cfwd_, cbwd_;
  std::vector<std::size_t> fptr_, bptr_;
  std::vector<std::pair<Vertex, Vertex>> traversed_;
};

}  // namespace srrg
