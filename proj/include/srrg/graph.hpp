#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace srrg::detail {

/// Strongly connected components of a dense adjacency-list digraph
/// (iterative Tarjan). Returns the component index of every vertex.
inline std::vector<std::uint32_t> tarjan_scc(const std::vector<std::vector<std::uint32_t>>& adj)
{
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::vector<char> on_stack(n, 0);
  std::uint32_t counter = 0, ncomp = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < adj[v].size()) {
        const std::uint32_t w = adj[v][next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

/// Vertices that lie on some cycle (nontrivial component or self-loop).
inline std::vector<char> on_cycle(const std::vector<std::vector<std::uint32_t>>& adj)
{
  const auto comp = tarjan_scc(adj);
  std::vector<std::uint32_t> size(adj.size(), 0);
  for (auto c : comp) ++size[c];
  std::vector<char> out(adj.size(), 0);
  for (std::uint32_t v = 0; v < adj.size(); ++v) {
    out[v] = size[comp[v]] > 1 || std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
  }
  return out;
}

}  // namespace srrg::detail
