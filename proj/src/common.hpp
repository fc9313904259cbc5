#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "spanner/spanner.hpp"

namespace spanner::detail {

inline std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32 | static_cast<std::uint32_t>(b);
}

// Runs fn on each connected component with at least one edge and maps the
// edge ids back. Connected inputs go straight through.
Spanner by_component(const WeightedGraph& g, const std::function<Spanner(const WeightedGraph&)>& fn);

void finish(Spanner& s);  // sort and dedupe edges

std::string fmt(const char* f, ...);

}  // namespace spanner::detail

#include <algorithm>
#include <unordered_map>

#include "spanner/hz.hpp"

namespace spanner::detail {

// S_i, the representative graph R_i over the non-isolated clusters, and the
// source edges of an HZ spanner of R_i.
struct LevelSelection {
  std::vector<EdgeId> source;              // one edge per cluster pair
  std::vector<int> nodes;                  // representatives, ascending
  std::vector<std::pair<int, int>> rgraph; // R_i on indices into nodes; parallel to source
  std::vector<EdgeId> kept;                // source edges chosen by HZ
  std::uint64_t ops = 0;
};

// pos must have size n and be all -1; it is restored before returning.
template <class Find>
LevelSelection select_level(const WeightedGraph& g, const std::vector<EdgeId>& bucket, Find&& find,
                            int k, std::vector<int>& pos) {
  LevelSelection sel;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  slot.reserve(bucket.size() * 2);
  std::vector<std::pair<int, int>> ends;
  for (EdgeId e : bucket) {
    int a = find(g.edge(e).u), b = find(g.edge(e).v);
    ++sel.ops;
    if (a == b) continue;
    auto [it, fresh] = slot.emplace(pair_key(a, b), sel.source.size());
    if (fresh) {
      sel.source.push_back(e);
      ends.push_back({a, b});
    } else {
      EdgeId& cur = sel.source[it->second];
      double wc = g.edge(cur).w, we = g.edge(e).w;
      if (we < wc || (we == wc && e < cur)) cur = e;
    }
  }
  for (auto [a, b] : ends) {
    if (pos[a] < 0) {
      pos[a] = 0;
      sel.nodes.push_back(a);
    }
    if (pos[b] < 0) {
      pos[b] = 0;
      sel.nodes.push_back(b);
    }
  }
  std::sort(sel.nodes.begin(), sel.nodes.end());
  for (std::size_t x = 0; x < sel.nodes.size(); ++x) pos[sel.nodes[x]] = static_cast<int>(x);
  sel.rgraph.reserve(ends.size());
  for (auto [a, b] : ends) sel.rgraph.push_back({pos[a], pos[b]});
  for (int r : sel.nodes) pos[r] = -1;
  if (!sel.rgraph.empty()) {
    HzResult hz = hz_spanner(static_cast<int>(sel.nodes.size()), sel.rgraph, k);
    sel.ops += hz.ops;
    for (int x : hz.kept) sel.kept.push_back(sel.source[x]);
  }
  return sel;
}

}  // namespace spanner::detail
