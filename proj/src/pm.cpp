#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "common.hpp"
#include "spanner/buckets.hpp"
#include "spanner/dsu.hpp"
#include "spanner/star_cover.hpp"

namespace spanner {

namespace {

constexpr double kGrowth = 9.0;  // g

// Largest distance inside H[members], by Dijkstra from every member.
double induced_diameter(const std::vector<std::vector<std::pair<int, double>>>& adj,
                        const std::vector<int>& members, std::vector<int>& mark, int tag) {
  for (int v : members) mark[v] = tag;
  double diam = 0.0;
  std::vector<double> dist(adj.size(), kInf);
  for (int s : members) {
    for (int v : members) dist[v] = kInf;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (d > dist[x]) continue;
      for (auto [y, w] : adj[x]) {
        if (mark[y] != tag || d + w >= dist[y]) continue;
        dist[y] = d + w;
        pq.push({dist[y], y});
      }
    }
    for (int v : members) diam = std::max(diam, dist[v]);
  }
  return diam;
}

// Worst hop diameter of a group over the cover's own edges; -1 when a group
// is smaller than two nodes or not connected by them.
int star_cover_hops(int vr, const std::vector<std::pair<int, int>>& rgraph, const StarCover& sc) {
  std::vector<std::vector<int>> adj(vr);
  for (int x : sc.used_edges) {
    adj[rgraph[x].first].push_back(rgraph[x].second);
    adj[rgraph[x].second].push_back(rgraph[x].first);
  }
  std::vector<int> size(sc.groups(), 0);
  for (int x = 0; x < vr; ++x) ++size[sc.group[x]];
  for (int c : size)
    if (c < 2) return -1;
  int worst = 0;
  std::vector<int> d(vr);
  for (int s = 0; s < vr; ++s) {
    std::fill(d.begin(), d.end(), -1);
    std::vector<int> queue{s};
    d[s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (int y : adj[queue[h]])
        if (d[y] < 0) {
          d[y] = d[queue[h]] + 1;
          queue.push_back(y);
        }
    for (int x = 0; x < vr; ++x)
      if (sc.group[x] == sc.group[s]) {
        if (d[x] < 0) return -1;
        worst = std::max(worst, d[x]);
      }
  }
  return worst;
}

Spanner pm_connected(const WeightedGraph& input, const BuildOptions& opt) {
  Spanner out;
  out.algo = "pm";
  out.k = opt.k;
  out.eps = opt.eps;
  out.nominal = opt.nominal;
  out.internal_eps = opt.nominal ? opt.eps : std::min(opt.eps / (8 * kGrowth + 1), 1.0 / (2 * kGrowth));
  if (input.m() == 0) return out;
  const WeightedGraph g = normalize_weights(input).first;
  const int n = g.n();
  LevelBuckets buckets = partition_edges(g, out.internal_eps);
  const BucketGrid& grid = buckets.grid;
  const bool check_diam = opt.check && !opt.nominal;

  std::vector<int> pos(n, -1);
  std::vector<int> mark(n, -1);
  int tag = 0;
  for (int s = 0; s < grid.mu(); ++s) {
    if (buckets.per_sigma[s].empty()) continue;
    ClassicUF uf(n);
    int clusters = n;
    long long delta_sum = 0;
    std::vector<std::vector<std::pair<int, double>>> hadj;
    if (check_diam) hadj.resize(n);
    for (const Level& level : buckets.per_sigma[s]) {
      auto sel = detail::select_level(g, level.edges, [&](int v) { return uf.find(v); }, opt.k, pos);
      out.ops += sel.ops;
      std::vector<EdgeId> added = sel.kept;
      int vr = static_cast<int>(sel.nodes.size());
      int before = clusters;
      std::size_t star_edges = 0;
      std::vector<std::vector<int>> groups;
      if (vr > 0) {
        StarCover sc = star_cover(vr, sel.rgraph);
        for (int x : sc.used_edges) added.push_back(sel.source[x]);
        star_edges = sc.used_edges.size();
        if (opt.check) {
          int hops = star_cover_hops(vr, sel.rgraph, sc);
          if (hops < 0 || hops > 4)
            out.violations.push_back(detail::fmt("star cover: sigma=%d i=%lld group of fewer than 2 nodes or hop diameter %d > 4",
                                                 s, level.i, hops));
        }
        groups.assign(sc.groups(), {});
        for (int x = 0; x < vr; ++x) {
          groups[sc.group[x]].push_back(sel.nodes[x]);
          if (uf.unite(sel.nodes[x], sel.nodes[sc.center[sc.group[x]]])) --clusters;
        }
        out.ops += vr;
      }
      out.edges.insert(out.edges.end(), added.begin(), added.end());
      int delta = before - clusters;
      delta_sum += delta;
      if (opt.check && 2 * delta < vr)
        out.violations.push_back(detail::fmt("charging: sigma=%d i=%lld delta=%d < |V(R)|/2 (|V(R)|=%d)",
                                             s, level.i, delta, vr));
      if (check_diam && !groups.empty()) {
        for (EdgeId e : added) {
          hadj[g.edge(e).u].push_back({g.edge(e).v, g.edge(e).w});
          hadj[g.edge(e).v].push_back({g.edge(e).u, g.edge(e).w});
        }
        double bound = kGrowth * grid.level_scale(s, level.i) * (1 + 1e-9);
        std::vector<std::vector<int>> members(n);
        for (int v = 0; v < n; ++v) members[uf.find(v)].push_back(v);
        for (auto& grp : groups) {
          const auto& mem = members[uf.find(grp[0])];
          double d = induced_diameter(hadj, mem, mark, ++tag);
          if (d > bound)
            out.violations.push_back(detail::fmt("P2: sigma=%d i=%lld cluster of %zu vertices has diameter %.6g > gL_i=%.6g",
                                                 s, level.i, mem.size(), d, bound));
        }
      }
      if (opt.instrument)
        out.levels.push_back({{"sigma", s}, {"i", level.i}, {"E", level.edges.size()}, {"VR", vr},
                              {"S_prime", sel.kept.size()}, {"star_edges", star_edges}, {"delta", delta}});
    }
    if (opt.check) {
      if (delta_sum > n)
        out.violations.push_back(detail::fmt("charging: sigma=%d total delta %lld > n", s, delta_sum));
      std::vector<int> size(n, 0);
      for (int v = 0; v < n; ++v) ++size[uf.find(v)];
      int total = 0, classes = 0;
      for (int c : size) {
        total += c;
        classes += c > 0;
      }
      if (total != n || classes != clusters)
        out.violations.push_back(detail::fmt("P1: sigma=%d clusters do not partition V", s));
    }
  }
  detail::finish(out);
  return out;
}

}  // namespace

Spanner build_pm(const WeightedGraph& g, const BuildOptions& opt) {
  validate(opt);
  return detail::by_component(g, [&](const WeightedGraph& c) { return pm_connected(c, opt); });
}

}  // namespace spanner
