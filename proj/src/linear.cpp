#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "spanner/buckets.hpp"
#include "spanner/dsu.hpp"
#include "spanner/star_cover.hpp"

namespace spanner {

namespace {

constexpr double kGrowth = 9.0;

// Diameter of the tree induced by members (a connected subtree of the MST).
double subtree_diameter(const std::vector<int>& members, const std::vector<int>& parent,
                        const std::vector<double>& up_weight, const std::vector<int>& owner, int id) {
  // two sweeps over the induced tree
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<int> local(parent.size(), -1);
  for (std::size_t x = 0; x < members.size(); ++x) local[members[x]] = static_cast<int>(x);
  adj.resize(members.size());
  for (int v : members) {
    int p = parent[v];
    if (p >= 0 && owner[p] == id) {
      adj[local[v]].push_back({local[p], up_weight[v]});
      adj[local[p]].push_back({local[v], up_weight[v]});
    }
  }
  auto far = [&](int s) {
    std::vector<double> d(members.size(), -1.0);
    std::vector<int> st{s};
    d[s] = 0.0;
    int best = s;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      if (d[x] > d[best]) best = x;
      for (auto [y, w] : adj[x])
        if (d[y] < 0) {
          d[y] = d[x] + w;
          st.push_back(y);
        }
    }
    for (double v : d)
      if (v < 0) return std::pair<int, double>{-1, kInf};  // disconnected
    return std::pair<int, double>{best, d[best]};
  };
  auto [a, da] = far(0);
  if (a < 0) return kInf;
  return far(a).second;
}

Spanner linear_connected(const WeightedGraph& input, const BuildOptions& opt, LinearTrace* trace) {
  Spanner out;
  out.algo = "linear";
  out.k = opt.k;
  out.eps = opt.eps;
  out.nominal = opt.nominal;
  out.internal_eps = opt.nominal ? opt.eps : std::min(opt.eps / (8 * kGrowth + 1), 1.0 / (2 * kGrowth));
  if (input.m() == 0) return out;
  auto [g, scale] = normalize_weights(input);
  const int n = g.n();
  MstResult mst = minimum_spanning_tree(g, 0);
  out.edges = mst.edges;
  std::vector<char> in_tree(g.m(), 0);
  for (EdgeId e : mst.edges) in_tree[e] = 1;
  std::vector<EdgeId> rest;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!in_tree[e]) rest.push_back(e);
  LevelBuckets buckets = partition_edges(g, rest, out.internal_eps);
  const BucketGrid& grid = buckets.grid;
  const int mu = grid.mu();

  std::vector<double> up_weight(n, 0.0);
  // tree vertices (non-root) sorted by grid index of their parent edge
  std::vector<std::pair<long long, int>> tree_j;
  for (int v = 0; v < n; ++v) {
    if (mst.parent[v] < 0) continue;
    up_weight[v] = g.edge(mst.parent_edge[v]).w;
    tree_j.push_back({grid.index(up_weight[v]), v});
  }
  std::sort(tree_j.begin(), tree_j.end());
  if (trace) {
    trace->tree_parent = mst.parent;
    trace->tree_weight = up_weight;
    trace->scale = scale;
    trace->levels.clear();
  }
  const bool check_diam = opt.check && !opt.nominal;

  std::vector<int> pos(n, -1), ypos(n, -1), owner(n, -1);
  for (int s = 0; s < mu; ++s) {
    const auto& levels = buckets.per_sigma[s];
    if (levels.empty()) continue;
    StaticTreeUF uf(mst.parent);
    auto level_of = [&](long long j) { return j <= s ? 0LL : (j - s + mu - 1) / mu; };
    std::size_t tj = 0;
    std::vector<int> carried;  // forest edges between different subtrees, as child vertices
    int clusters = n;
    long long delta_sum = 0;
    // Levels are those with bucket edges plus those with tree edges below the
    // last bucket level; tree-only levels still merge clusters.
    const std::vector<EdgeId> none;
    std::size_t bi = 0;
    while (bi < levels.size()) {
      Level level;
      level.i = levels[bi].i;
      if (tj < tree_j.size()) level.i = std::min(level.i, level_of(tree_j[tj].first));
      const std::vector<EdgeId>& bucket = levels[bi].i == level.i ? levels[bi++].edges : none;
      while (tj < tree_j.size() && level_of(tree_j[tj].first) <= level.i) carried.push_back(tree_j[tj++].second);
      std::vector<int> forest;
      for (int v : carried) {
        int a = uf.find(v), b = uf.find(mst.parent[v]);
        if (a != b) forest.push_back(v);
      }
      std::vector<int> ynodes;
      for (int v : forest) {
        for (int r : {v, uf.find(mst.parent[v])}) {
          if (ypos[r] < 0) {
            ypos[r] = 0;
            ynodes.push_back(r);
          }
        }
      }
      std::sort(ynodes.begin(), ynodes.end());
      for (std::size_t x = 0; x < ynodes.size(); ++x) ypos[ynodes[x]] = static_cast<int>(x);

      if (trace) {
        LinearLevelSnapshot snap;
        snap.sigma = s;
        snap.i = level.i;
        snap.scale = grid.level_scale(s, level.i);
        snap.rep.resize(n);
        for (int v = 0; v < n; ++v) snap.rep[v] = uf.find(v);
        snap.forest_nodes = ynodes;
        snap.bucket = bucket;
        trace->levels.push_back(std::move(snap));
      }

      auto sel = detail::select_level(g, bucket, [&](int v) { return uf.find(v); }, opt.k, pos);
      out.ops += sel.ops;
      out.edges.insert(out.edges.end(), sel.kept.begin(), sel.kept.end());
      if (opt.check) {
        for (int r : sel.nodes)
          if (ypos[r] < 0)
            out.violations.push_back(detail::fmt("forest cover: sigma=%d i=%lld cluster %d is non-isolated but not in the forest",
                                                 s, level.i, r));
      }

      int before = clusters;
      std::vector<int> next_carried;
      std::vector<std::vector<int>> groups;
      if (!ynodes.empty()) {
        std::vector<std::pair<int, int>> fe;
        fe.reserve(forest.size());
        for (int v : forest) fe.push_back({ypos[v], ypos[uf.find(mst.parent[v])]});
        StarCover sc = star_cover(static_cast<int>(ynodes.size()), fe);
        std::vector<int> links;
        for (std::size_t x = 0; x < forest.size(); ++x) {
          if (sc.group[fe[x].first] == sc.group[fe[x].second])
            links.push_back(forest[x]);
          else
            next_carried.push_back(forest[x]);
        }
        std::sort(links.begin(), links.end(),
                  [&](int a, int b) { return mst.depth[a] != mst.depth[b] ? mst.depth[a] > mst.depth[b] : a < b; });
        for (int v : links) uf.link(v);
        clusters -= static_cast<int>(links.size());
        if (check_diam) {
          groups.assign(sc.groups(), {});
          for (std::size_t x = 0; x < ynodes.size(); ++x) groups[sc.group[x]].push_back(ynodes[x]);
        }
      }
      carried.swap(next_carried);
      int y = static_cast<int>(ynodes.size());
      int delta = before - clusters;
      delta_sum += delta;
      if (opt.check && 2 * delta < y)
        out.violations.push_back(detail::fmt("charging: sigma=%d i=%lld delta=%d < |Y|/2 (|Y|=%d)", s, level.i, delta, y));
      if (check_diam && !groups.empty()) {
        double bound = kGrowth * grid.level_scale(s, level.i) * (1 + 1e-9);
        std::vector<std::vector<int>> members(n);
        for (int v = 0; v < n; ++v) members[uf.find(v)].push_back(v);
        for (auto& grp : groups) {
          int id = uf.find(grp[0]);
          const auto& mem = members[id];
          for (int v : mem) owner[v] = id;
          double d = subtree_diameter(mem, mst.parent, up_weight, owner, id);
          for (int v : mem) owner[v] = -1;
          if (id != uf.find(mem[0]) || d > bound)
            out.violations.push_back(detail::fmt("P2': sigma=%d i=%lld cluster rooted at %d has tree diameter %.6g > gL_i=%.6g",
                                                 s, level.i, id, d, bound));
          bool top = mst.parent[id] < 0 || uf.find(mst.parent[id]) != id;
          if (!top) out.violations.push_back(detail::fmt("P1': cluster representative %d is not the subtree root", id));
        }
      }
      for (int r : ynodes) ypos[r] = -1;
      if (opt.instrument)
        out.levels.push_back({{"sigma", s}, {"i", level.i}, {"E", bucket.size()}, {"VR", sel.nodes.size()},
                              {"S_prime", sel.kept.size()}, {"Y", y}, {"delta", delta}});
    }
    out.ops += uf.ops();
    if (opt.check && delta_sum > n)
      out.violations.push_back(detail::fmt("charging: sigma=%d total delta %lld > n", s, delta_sum));
    if (opt.instrument && !out.levels.empty()) {
      out.levels.back()["links"] = uf.links();
      out.levels.back()["finds"] = uf.finds();
    }
  }
  detail::finish(out);
  return out;
}

}  // namespace

Spanner build_linear(const WeightedGraph& g, const BuildOptions& opt, LinearTrace* trace) {
  validate(opt);
  if (trace && is_connected(g)) return linear_connected(g, opt, trace);
  return detail::by_component(g, [&](const WeightedGraph& c) { return linear_connected(c, opt, nullptr); });
}

}  // namespace spanner
