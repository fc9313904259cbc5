#include "spanner/light.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "common.hpp"
#include "spanner/buckets.hpp"
#include "spanner/dsu.hpp"
#include "spanner/hz.hpp"

namespace spanner {

LightHeavySplit split_light_heavy(const WeightedGraph& g, double mst_weight, double eps) {
  LightHeavySplit s;
  if (g.m() == 0) return s;
  s.threshold = mst_weight / (g.m() * eps);
  for (EdgeId e = 0; e < g.m(); ++e) {
    double w = g.edge(e).w;
    if (w <= s.threshold)
      s.light.push_back(e);
    else if (w < mst_weight)
      s.heavy.push_back(e);
    else
      s.dropped.push_back(e);
  }
  return s;
}

std::vector<double> subdivision_pieces(double w, double granularity) {
  if (!(granularity > 0.0)) throw std::invalid_argument("granularity must be positive");
  if (w <= granularity) return {w};
  auto c = static_cast<long long>(std::ceil(w / granularity));
  while (c > 1 && (c - 1) * granularity >= w) --c;
  std::vector<double> out(c - 1, granularity);
  out.push_back(w - (c - 1) * granularity);
  return out;
}

SubdividedTree subdivide_tree(const WeightedGraph& g, const MstResult& mst, double granularity) {
  SubdividedTree t;
  t.real = g.n();
  t.granularity = granularity;
  t.parent.assign(g.n(), -1);
  t.up_weight.assign(g.n(), 0.0);
  t.host.assign(g.n(), -1);
  for (int v : mst.order) {
    int p = mst.parent[v];
    if (p < 0) continue;
    EdgeId e = mst.parent_edge[v];
    std::vector<double> pieces = subdivision_pieces(g.edge(e).w, granularity);
    // chain p -> x_1 -> ... -> x_{c-1} -> v, pieces taken in order from p
    int above = p;
    for (std::size_t q = 0; q + 1 < pieces.size(); ++q) {
      int x = t.size();
      t.parent.push_back(above);
      t.up_weight.push_back(pieces[q]);
      t.host.push_back(e);
      above = x;
    }
    t.parent[v] = above;
    t.up_weight[v] = pieces.back();
    t.host[v] = e;
  }
  std::vector<std::vector<int>> children(t.size());
  for (int v = 0; v < t.size(); ++v)
    if (t.parent[v] >= 0) children[t.parent[v]].push_back(v);
  if (t.size() > 0) t.order.push_back(0);
  for (std::size_t h = 0; h < t.order.size(); ++h)
    for (int c : children[t.order[h]]) t.order.push_back(c);
  return t;
}

std::vector<std::pair<int, int>> break_long_path(const std::vector<PathNode>& nodes,
                                                 const std::vector<double>& edge, double scale) {
  const int r = static_cast<int>(nodes.size());
  if (r == 0 || static_cast<int>(edge.size()) != r - 1)
    throw std::invalid_argument("path needs one edge weight between consecutive nodes");
  double total = 0.0;
  for (const PathNode& p : nodes) total += p.weight;
  for (double w : edge) total += w;
  if (total < 6 * scale * (1 - 1e-12)) throw std::invalid_argument("path shorter than 6L");

  // Contracted path over non-virtual nodes and the two ends.
  std::vector<int> q;
  for (int j = 0; j < r; ++j)
    if (!nodes[j].is_virtual || j == 0 || j == r - 1) q.push_back(j);
  const int s = static_cast<int>(q.size());
  std::vector<double> prefix(r, 0.0);  // augmented length of nodes[0..j]
  for (int j = 0; j < r; ++j) prefix[j] = (j ? prefix[j - 1] + edge[j - 1] : 0.0) + nodes[j].weight;
  // weight of the contracted edge (q[t], q[t+1]): everything strictly between
  auto cw = [&](int t) {
    return prefix[q[t + 1]] - nodes[q[t + 1]].weight - prefix[q[t]];
  };

  // Forest of contracted edges <= 2L, without singletons, cut into chunks of
  // two or three contracted nodes.
  std::vector<int> chunk_of(r, -1);
  std::vector<std::pair<int, int>> chunks;
  int t = 0;
  while (t < s - 1) {
    if (cw(t) > 2 * scale) {
      ++t;
      continue;
    }
    int a = t;
    while (t < s - 1 && cw(t) <= 2 * scale) ++t;
    int count = t - a + 1;  // contracted nodes q[a..t]
    int at = a;
    while (count > 0) {
      int take = count > 5 ? 3 : (count == 5 ? 3 : count);
      if (count == 4) take = 2;
      chunks.push_back({q[at], q[at + take - 1]});
      at += take;
      count -= take;
    }
  }
  for (std::size_t c = 0; c < chunks.size(); ++c)
    for (int j = chunks[c].first; j <= chunks[c].second; ++j) chunk_of[j] = static_cast<int>(c);

  // Units in path order: whole chunks and single free nodes.
  std::vector<std::pair<int, int>> units;
  for (int j = 0; j < r;) {
    if (chunk_of[j] >= 0) {
      units.push_back(chunks[chunk_of[j]]);
      j = chunks[chunk_of[j]].second + 1;
    } else {
      units.push_back({j, j});
      ++j;
    }
  }
  auto span = [&](int a, int b) { return prefix[b] - (a ? prefix[a - 1] + edge[a - 1] : 0.0); };

  std::vector<std::pair<int, int>> pieces;
  int start = -1, end = -1;
  for (auto [a, b] : units) {
    if (start < 0) {
      start = a;
      end = b;
    } else if (span(start, end) < scale) {
      end = b;
    } else {
      pieces.push_back({start, end});
      start = a;
      end = b;
    }
  }
  if (start >= 0) {
    if (span(start, end) < scale && !pieces.empty())
      pieces.back().second = end;
    else
      pieces.push_back({start, end});
  }
  return pieces;
}

namespace {

constexpr double kGrowth = 42.0;  // g

struct TEdge {
  int a, b;
  double w;
};

struct CEdge {
  int a, b;
  double w;
  EdgeId src;
};

// Augmented diameter of the graph on local ids [0, nw.size()): path weight
// counts every edge and every node on it. Trees use a DP, anything else one
// Dijkstra per node. Disconnected input gives +inf.
double augmented_diameter(const std::vector<double>& nw, const std::vector<TEdge>& edges) {
  const int k = static_cast<int>(nw.size());
  if (k == 0) return 0.0;
  std::vector<std::vector<std::pair<int, double>>> adj(k);
  for (const TEdge& e : edges) {
    adj[e.a].push_back({e.b, e.w});
    adj[e.b].push_back({e.a, e.w});
  }
  if (static_cast<int>(edges.size()) == k - 1) {
    std::vector<int> order{0}, par(k, -1);
    std::vector<char> seen(k, 0);
    seen[0] = 1;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (auto [y, w] : adj[order[h]])
        if (!seen[y]) {
          seen[y] = 1;
          par[y] = order[h];
          order.push_back(y);
        }
    if (static_cast<int>(order.size()) != k) return kInf;
    std::vector<double> down(k, 0.0), top1(k, 0.0), top2(k, 0.0);
    double diam = 0.0;
    for (int h = k - 1; h >= 0; --h) {
      int x = order[h];
      down[x] = nw[x] + top1[x];
      diam = std::max(diam, nw[x] + top1[x] + top2[x]);
      if (par[x] < 0) continue;
      double w = 0.0;
      for (auto [y, ww] : adj[x])
        if (y == par[x]) w = ww;
      double arm = down[x] + w;
      int p = par[x];
      if (arm > top1[p]) {
        top2[p] = top1[p];
        top1[p] = arm;
      } else if (arm > top2[p]) {
        top2[p] = arm;
      }
    }
    return diam;
  }
  double diam = 0.0;
  std::vector<double> dist(k);
  for (int s = 0; s < k; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[s] = nw[s];
    pq.push({dist[s], s});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (d > dist[x]) continue;
      for (auto [y, w] : adj[x])
        if (d + w + nw[y] < dist[y]) {
          dist[y] = d + w + nw[y];
          pq.push({dist[y], y});
        }
    }
    for (double d : dist) diam = std::max(diam, d);
  }
  return diam;
}

// The cluster graph of one level.
struct LevelGraph {
  double L = 0.0;
  int V = 0;
  std::vector<double> omega;
  std::vector<char> virt;
  std::vector<EdgeId> host;
  std::vector<TEdge> tree;
  std::vector<std::vector<std::pair<int, double>>> tadj;
  std::vector<CEdge> cedges;
  std::vector<std::vector<int>> cadj;

  int other(int c, int x) const { return cedges[c].a == x ? cedges[c].b : cedges[c].a; }
  bool non_isolated(int x) const { return !cadj[x].empty(); }
};

// Rooted view of the level tree with Euler tour + sparse table LCA.
struct TreeIndex {
  std::vector<int> parent, first, euler, depth;
  std::vector<double> aug;  // augmented distance from the root, both ends counted
  std::vector<std::vector<int>> table;

  void build(const LevelGraph& G) {
    const int V = G.V;
    parent.assign(V, -1);
    depth.assign(V, 0);
    first.assign(V, -1);
    aug.assign(V, 0.0);
    euler.clear();
    if (V == 0) return;
    std::vector<std::size_t> it(V, 0);
    std::vector<int> stack{0};
    aug[0] = G.omega[0];
    first[0] = 0;
    euler.push_back(0);
    while (!stack.empty()) {
      int x = stack.back();
      if (it[x] < G.tadj[x].size()) {
        auto [y, w] = G.tadj[x][it[x]++];
        if (y == parent[x]) continue;
        parent[y] = x;
        depth[y] = depth[x] + 1;
        aug[y] = aug[x] + w + G.omega[y];
        first[y] = static_cast<int>(euler.size());
        euler.push_back(y);
        stack.push_back(y);
      } else {
        stack.pop_back();
        if (!stack.empty()) euler.push_back(stack.back());
      }
    }
    const int E = static_cast<int>(euler.size());
    table.assign(1, euler);
    for (int j = 1; (1 << j) <= E; ++j) {
      const auto& prev = table[j - 1];
      std::vector<int> row(E - (1 << j) + 1);
      for (std::size_t x = 0; x < row.size(); ++x) {
        int a = prev[x], b = prev[x + (1 << (j - 1))];
        row[x] = depth[a] <= depth[b] ? a : b;
      }
      table.push_back(std::move(row));
    }
  }

  int lca(int a, int b) const {
    int l = first[a], r = first[b];
    if (l > r) std::swap(l, r);
    int j = 31 - __builtin_clz(static_cast<unsigned>(r - l + 1));
    int x = table[j][l], y = table[j][r - (1 << j) + 1];
    return depth[x] <= depth[y] ? x : y;
  }

  double distance(int a, int b, const std::vector<double>& omega) const {
    int l = lca(a, b);
    return aug[a] + aug[b] - 2 * aug[l] + omega[l];
  }
};

struct Sub {
  std::vector<int> nodes;
  std::vector<TEdge> tree;
  std::vector<int> cross;  // indices into cedges
  int step = 0;            // 1, 2, 4, or 5 for a new piece formed in the last step
  bool prefix = false;     // step-5 piece at an end of its path
  bool alive = true;
};

struct Clustering {
  std::vector<Sub> subs;
  std::vector<int> owner;
  std::vector<char> high;
  bool degenerate = false;
  std::vector<std::string> problems;
  std::vector<std::pair<double, double>> pieces;  // (Adm, L) of step-5 path pieces
};

class Clusterer {
 public:
  Clusterer(const LevelGraph& G, double eps) : G_(G), eps_(eps), L_(G.L) {
    out_.owner.assign(G.V, -1);
    out_.high.assign(G.V, 0);
    loc_.assign(G.V, -1);
    comp_.assign(G.V, -1);
  }

  Clustering run() {
    step1();
    step2();
    step3();
    step4();
    step5();
    return std::move(out_);
  }

 private:
  int new_sub(int step) {
    out_.subs.push_back({});
    out_.subs.back().step = step;
    return static_cast<int>(out_.subs.size()) - 1;
  }
  void add_node(int s, int x) {
    out_.owner[x] = s;
    out_.subs[s].nodes.push_back(x);
  }
  void merge_into(int from, int to, TEdge link) {
    Sub& a = out_.subs[from];
    Sub& b = out_.subs[to];
    for (int x : a.nodes) {
      out_.owner[x] = to;
      b.nodes.push_back(x);
    }
    b.tree.insert(b.tree.end(), a.tree.begin(), a.tree.end());
    b.cross.insert(b.cross.end(), a.cross.begin(), a.cross.end());
    b.tree.push_back(link);
    a = Sub{};
    a.alive = false;
  }

  // Components of the unassigned nodes in the level tree.
  std::vector<std::vector<int>> free_components() {
    std::vector<int> pool;
    for (int x = 0; x < G_.V; ++x)
      if (out_.owner[x] < 0) pool.push_back(x);
    return components_of(pool);
  }

  std::vector<std::vector<int>> components_of(const std::vector<int>& pool) {
    ++stamp_;
    for (int x : pool) mark(x);
    std::vector<std::vector<int>> comps;
    for (int x : pool) {
      if (comp_[x] != stamp_) continue;
      comp_[x] = -1;
      std::vector<int> c{x};
      for (std::size_t h = 0; h < c.size(); ++h)
        for (auto [y, w] : G_.tadj[c[h]])
          if (comp_[y] == stamp_) {
            comp_[y] = -1;
            c.push_back(y);
          }
      comps.push_back(std::move(c));
    }
    return comps;
  }
  void mark(int x) { comp_[x] = stamp_; }

  // Induced level-tree subgraph on nodes, local ids follow the vector order.
  std::vector<TEdge> induced(const std::vector<int>& nodes) {
    for (std::size_t j = 0; j < nodes.size(); ++j) loc_[nodes[j]] = static_cast<int>(j);
    std::vector<TEdge> e;
    for (int x : nodes)
      for (auto [y, w] : G_.tadj[x])
        if (loc_[y] >= 0 && x < y) e.push_back({loc_[x], loc_[y], w});
    return e;
  }
  void unmark(const std::vector<int>& nodes) {
    for (int x : nodes) loc_[x] = -1;
  }

  double tree_adm(const std::vector<int>& nodes) {
    std::vector<TEdge> e = induced(nodes);
    unmark(nodes);
    std::vector<double> nw;
    nw.reserve(nodes.size());
    for (int x : nodes) nw.push_back(G_.omega[x]);
    return augmented_diameter(nw, e);
  }

  // Nodes of a path component in order, with edge weights; empty if not a path.
  bool path_order(const std::vector<int>& comp, std::vector<int>& ord, std::vector<double>& ew) {
    for (int x : comp) loc_[x] = 1;
    int start = -1;
    bool ok = true;
    for (int x : comp) {
      int d = 0;
      for (auto [y, w] : G_.tadj[x]) d += loc_[y] >= 0;
      if (d > 2) ok = false;
      if (d <= 1 && start < 0) start = x;
    }
    ord.clear();
    ew.clear();
    if (ok && start >= 0) {
      int prev = -1, x = start;
      while (x >= 0) {
        ord.push_back(x);
        int next = -1;
        for (auto [y, w] : G_.tadj[x])
          if (loc_[y] >= 0 && y != prev) {
            next = y;
            ew.push_back(w);
          }
        prev = x;
        x = next;
      }
    }
    unmark(comp);
    return ok && start >= 0 && ord.size() == comp.size();
  }

  int count_nonvirtual(const std::vector<int>& nodes) const {
    int c = 0;
    for (int x : nodes) c += !G_.virt[x];
    return c;
  }
  int count_nonisolated(const std::vector<int>& nodes) const {
    int c = 0;
    for (int x : nodes) c += G_.non_isolated(x);
    return c;
  }

  // High-degree nodes and their neighbours, grouped into stars of stars.
  void step1() {
    const double need = 2 * kGrowth / eps_;
    for (int x = 0; x < G_.V; ++x) out_.high[x] = G_.cadj[x].size() >= need;
    for (int x = 0; x < G_.V; ++x) {
      if (!out_.high[x] || out_.owner[x] >= 0) continue;
      int s = new_sub(1);
      add_node(s, x);
      for (int c : G_.cadj[x]) {
        int y = G_.other(c, x);
        if (out_.owner[y] >= 0) continue;
        add_node(s, y);
        out_.subs[s].cross.push_back(c);
      }
    }
    for (int x = 0; x < G_.V; ++x) {
      if (!out_.high[x]) continue;
      int s = out_.owner[x];
      for (int c : G_.cadj[x]) {
        int y = G_.other(c, x);
        if (out_.owner[y] >= 0) continue;
        add_node(s, y);
        out_.subs[s].cross.push_back(c);
      }
    }
  }

  // Balls around branching nodes of long trees, then repair of balls whose
  // only non-virtual node is their single non-isolated node.
  void step2() {
    std::vector<std::vector<int>> work = free_components();
    std::vector<int> balls;
    while (!work.empty()) {
      std::vector<int> comp = std::move(work.back());
      work.pop_back();
      if (comp.size() < 4) continue;
      for (int x : comp) loc_[x] = 1;
      int center = -1;
      for (int x : comp) {
        int d = 0;
        for (auto [y, w] : G_.tadj[x]) d += loc_[y] >= 0;
        if (d < 3) continue;
        if (center < 0 || (G_.non_isolated(x) && !G_.non_isolated(center))) center = x;
      }
      unmark(comp);
      if (center < 0 || tree_adm(comp) < 6 * L_) continue;

      ++stamp_;
      for (int x : comp) mark(x);
      int s = new_sub(2);
      std::vector<std::pair<int, double>> stack{{center, G_.omega[center]}};
      add_node(s, center);
      while (!stack.empty()) {
        auto [x, d] = stack.back();
        stack.pop_back();
        if (d >= 2 * L_) continue;
        for (auto [y, w] : G_.tadj[x]) {
          if (comp_[y] != stamp_ || out_.owner[y] >= 0) continue;
          add_node(s, y);
          out_.subs[s].tree.push_back({x, y, w});
          stack.push_back({y, d + w + G_.omega[y]});
        }
      }
      balls.push_back(s);
      std::vector<int> rest;
      for (int x : comp)
        if (out_.owner[x] < 0) rest.push_back(x);
      for (auto& c : components_of(rest)) work.push_back(std::move(c));
    }

    for (int b : balls) {
      Sub& ball = out_.subs[b];
      if (!ball.alive) continue;
      if (count_nonisolated(ball.nodes) == 0 || count_nonvirtual(ball.nodes) >= 2) continue;
      int target = -1, rank = 3;
      TEdge link{};
      for (int x : ball.nodes)
        for (auto [y, w] : G_.tadj[x]) {
          int o = out_.owner[y];
          if (o < 0 || o == b) continue;
          const Sub& t = out_.subs[o];
          int r = t.step == 1 ? 0 : (count_nonvirtual(t.nodes) >= 2 ? 1 : 2);
          if (r < rank) {
            rank = r;
            target = o;
            link = {x, y, w};
          }
        }
      if (target >= 0) merge_into(b, target, link);
    }
  }

  // Level-tree branching nodes on long paths join an adjacent step-1/2 subgraph.
  void step3() {
    std::vector<int> before = out_.owner;
    for (auto& comp : free_components()) {
      if (tree_adm(comp) < 6 * L_) continue;
      for (int x : comp) {
        if (G_.tadj[x].size() < 3) continue;
        for (auto [y, w] : G_.tadj[x]) {
          int o = before[y];
          if (o < 0 || !out_.subs[o].alive || out_.subs[o].step > 2) continue;
          add_node(o, x);
          out_.subs[o].tree.push_back({y, x, w});
          break;
        }
      }
    }
  }

  struct LongPath {
    std::vector<int> ord;
    std::vector<double> ew;
  };

  std::vector<LongPath> long_paths(std::vector<int>& path_id, std::vector<int>& pos,
                                   std::vector<char>& blue) {
    std::vector<LongPath> paths;
    std::fill(path_id.begin(), path_id.end(), -1);
    for (auto& comp : free_components()) {
      if (tree_adm(comp) < 6 * L_) continue;
      LongPath p;
      if (!path_order(comp, p.ord, p.ew)) {
        out_.problems.push_back("step 4: long tree left after step 2 is not a path");
        continue;
      }
      const int r = static_cast<int>(p.ord.size());
      std::vector<double> from0(r), from1(r);
      for (int j = 0; j < r; ++j)
        from0[j] = (j ? from0[j - 1] + p.ew[j - 1] : 0.0) + G_.omega[p.ord[j]];
      for (int j = r - 1; j >= 0; --j)
        from1[j] = (j < r - 1 ? from1[j + 1] + p.ew[j] : 0.0) + G_.omega[p.ord[j]];
      for (int j = 0; j < r; ++j) {
        int x = p.ord[j];
        path_id[x] = static_cast<int>(paths.size());
        pos[x] = j;
        blue[x] = from0[j] > L_ && from1[j] > L_;
      }
      paths.push_back(std::move(p));
    }
    return paths;
  }

  // Nodes within augmented distance about L of x along its path, both ways.
  void carve(int s, const LongPath& p, int at) {
    int x = p.ord[at];
    add_node(s, x);
    for (int dir : {-1, 1}) {
      double d = G_.omega[x];
      int j = at;
      while (d < L_) {
        int nj = j + dir;
        if (nj < 0 || nj >= static_cast<int>(p.ord.size())) break;
        int y = p.ord[nj];
        if (out_.owner[y] >= 0) break;
        double w = p.ew[std::min(j, nj)];
        add_node(s, y);
        out_.subs[s].tree.push_back({p.ord[j], y, w});
        d += w + G_.omega[y];
        j = nj;
      }
    }
  }

  // Red/blue colouring; each E_i edge between two blue nodes becomes the
  // single cross edge of a subgraph carved around both ends.
  void step4() {
    std::vector<int> path_id(G_.V, -1), pos(G_.V, -1);
    std::vector<char> blue(G_.V, 0);
    for (;;) {
      std::vector<LongPath> paths = long_paths(path_id, pos, blue);
      std::vector<char> stale(paths.size(), 0);
      bool carved = false;
      for (int c = 0; c < static_cast<int>(G_.cedges.size()); ++c) {
        int a = G_.cedges[c].a, b = G_.cedges[c].b;
        if (out_.owner[a] >= 0 || out_.owner[b] >= 0) continue;
        int pa = path_id[a], pb = path_id[b];
        if (pa < 0 || pb < 0 || stale[pa] || stale[pb] || !blue[a] || !blue[b]) continue;
        int s = new_sub(4);
        carve(s, paths[pa], pos[a]);
        if (out_.owner[b] < 0) {
          carve(s, paths[pb], pos[b]);
          out_.subs[s].cross.push_back(c);
        }
        stale[pa] = stale[pb] = 1;
        carved = true;
      }
      if (!carved) break;
    }
  }

  int attach_target(int x, TEdge& link) const {
    for (auto [y, w] : G_.tadj[x]) {
      int o = out_.owner[y];
      if (o >= 0 && out_.subs[o].step != 5) {
        link = {y, x, w};
        return o;
      }
    }
    return -1;
  }

  void step5() {
    bool any = false;
    for (const Sub& s : out_.subs) any = any || (s.alive && s.step != 5);
    out_.degenerate = !any;
    for (auto& comp : free_components()) {
      if (tree_adm(comp) <= 6 * L_) {
        std::vector<TEdge> inner = induced(comp);
        unmark(comp);
        int target = -1;
        TEdge link{};
        for (int x : comp)
          if ((target = attach_target(x, link)) >= 0) break;
        int s = target >= 0 ? target : new_sub(5);
        for (int x : comp) add_node(s, x);
        for (const TEdge& e : inner) out_.subs[s].tree.push_back({comp[e.a], comp[e.b], e.w});
        if (target >= 0) out_.subs[s].tree.push_back(link);
        continue;
      }
      std::vector<int> ord;
      std::vector<double> ew;
      if (!path_order(comp, ord, ew)) {
        out_.problems.push_back("step 5: long tree is not a path");
        int s = new_sub(5);
        std::vector<TEdge> inner = induced(comp);
        unmark(comp);
        for (int x : comp) add_node(s, x);
        for (const TEdge& e : inner) out_.subs[s].tree.push_back({comp[e.a], comp[e.b], e.w});
        continue;
      }
      const int r = static_cast<int>(ord.size());
      std::vector<PathNode> pn(r);
      TEdge link0{}, link1{};
      int t0 = attach_target(ord[0], link0);
      int t1 = attach_target(ord[r - 1], link1);
      for (int j = 0; j < r; ++j) {
        int x = ord[j];
        pn[j] = {G_.omega[x], G_.virt[x] != 0, G_.non_isolated(x), false};
      }
      pn[0].connecting = t0 >= 0;
      pn[r - 1].connecting = t1 >= 0;
      auto pieces = break_long_path(pn, ew, L_);
      for (std::size_t q = 0; q < pieces.size(); ++q) {
        auto [a, b] = pieces[q];
        double adm = 0.0;
        for (int j = a; j <= b; ++j) adm += G_.omega[ord[j]] + (j < b ? ew[j] : 0.0);
        out_.pieces.push_back({adm, L_});
        int s;
        TEdge link{};
        if (a == 0 && t0 >= 0) {
          s = t0;
          link = link0;
        } else if (b == r - 1 && t1 >= 0) {
          s = t1;
          link = link1;
        } else {
          s = new_sub(5);
          out_.subs[s].prefix = (a == 0 || b == r - 1);
          link.a = -1;
        }
        for (int j = a; j <= b; ++j) {
          add_node(s, ord[j]);
          if (j < b) out_.subs[s].tree.push_back({ord[j], ord[j + 1], ew[j]});
        }
        if (link.a >= 0 && out_.subs[s].step != 5) out_.subs[s].tree.push_back(link);
      }
    }
  }

  const LevelGraph& G_;
  double eps_, L_;
  Clustering out_;
  std::vector<int> loc_, comp_;
  int stamp_ = 0;
};

struct ClassResult {
  std::vector<EdgeId> edges;
  std::uint64_t ops = 0;
};

class HeavyBuilder {
 public:
  HeavyBuilder(const WeightedGraph& g, const SubdividedTree& t, const BuildOptions& opt,
               double eps, Spanner& out, LightTrace* trace)
      : g_(g), t_(t), opt_(opt), eps_(eps), out_(out), trace_(trace) {
    const int Vt = t.size();
    children_.assign(Vt, {});
    for (int v = 0; v < Vt; ++v)
      if (t.parent[v] >= 0) children_[t.parent[v]].push_back(v);
    tree_order_.resize(Vt);
    std::iota(tree_order_.begin(), tree_order_.end(), 0);
    std::stable_sort(tree_order_.begin(), tree_order_.end(),
                     [&](int a, int b) { return t.up_weight[a] < t.up_weight[b]; });
    // (2k-1)(1+6g eps'); nominal eps would push it past the promised stretch
    filter_ = opt.nominal ? target_stretch(opt.k, opt.eps) : target_stretch(opt.k, 6 * kGrowth * eps);
  }

  double filter_factor() const { return filter_; }

  void run_class(int sigma, const std::vector<Level>& levels, const BucketGrid& grid) {
    const int Vt = t_.size();
    const bool bounds = opt_.check && !opt_.nominal;
    long long i_first = levels.front().i, i_last = levels.back().i;
    ClassicUF uf(Vt);
    std::vector<double> phi(Vt, 0.0);
    double phi1 = initial_clusters(uf, phi, grid.level_scale(sigma, i_first - 1), sigma, bounds);
    if (opt_.check && phi1 > mst_weight_ * (1 + 1e-9))
      out_.violations.push_back(detail::fmt("potential: sigma=%d Phi_1=%.17g exceeds w(MST)=%.17g", sigma,
                                            phi1, mst_weight_));
    if (opt_.check && i_last > 4 * std::log2(std::max(2, g_.n())) + 20)
      out_.violations.push_back(detail::fmt("levels: sigma=%d i_max=%lld too large", sigma, i_last));

    double phi_prev = phi1, delta_total = 0.0, phi_final = phi1;
    std::vector<std::pair<int, double>> hadj_unused;
    std::size_t next = 0;
    for (long long i = i_first; i <= i_last; ++i) {
      static const std::vector<EdgeId> kNone;
      const std::vector<EdgeId>* bucket = &kNone;
      if (next < levels.size() && levels[next].i == i) bucket = &levels[next++].edges;
      LevelResult lr = run_level(uf, phi, sigma, i, grid.level_scale(sigma, i), *bucket, bounds);
      delta_total += lr.delta;
      if (opt_.check && std::abs((phi_prev - lr.phi_next) - lr.delta) > 1e-9 * std::max(1.0, phi_prev))
        out_.violations.push_back(detail::fmt(
            "potential: sigma=%d i=%lld Delta=%.17g differs from the sum of local changes %.17g", sigma, i,
            phi_prev - lr.phi_next, lr.delta));
      phi_prev = phi_final = lr.phi_next;
    }
    if (opt_.check && std::abs(delta_total - (phi1 - phi_final)) > 1e-9 * std::max(1.0, phi1))
      out_.violations.push_back(detail::fmt("potential: sigma=%d sum of Delta %.17g != Phi_1 - Phi_last %.17g",
                                            sigma, delta_total, phi1 - phi_final));
    if (opt_.instrument)
      out_.levels.push_back({{"kind", "heavy_class"}, {"sigma", sigma}, {"Phi_1", phi1},
                             {"Phi_last", phi_final}, {"delta_total", delta_total},
                             {"i_first", i_first}, {"i_max", i_last}});
  }

  void set_mst_weight(double w) { mst_weight_ = w; }
  std::vector<EdgeId>& edges() { return edges_; }
  std::uint64_t ops() const { return ops_; }

 private:
  struct LevelResult {
    double phi_next = 0.0;
    double delta = 0.0;  // sum of local potential changes
  };

  // Bottom-up cuts of the subdivided tree into subtrees of diameter in
  // [L, 14L]; returns Phi_1.
  double initial_clusters(ClassicUF& uf, std::vector<double>& phi, double L, int sigma, bool bounds) {
    const int Vt = t_.size();
    std::vector<double> best(Vt, 0.0);
    std::vector<char> closed(Vt, 0);
    for (int h = Vt - 1; h >= 0; --h) {
      int v = t_.order[h];
      for (int c : children_[v])
        if (!closed[c]) uf.unite(v, c);
      ops_ += children_[v].size() + 1;
      if (best[v] >= L) {
        closed[v] = 1;
      } else if (t_.parent[v] >= 0) {
        int p = t_.parent[v];
        best[p] = std::max(best[p], best[v] + t_.up_weight[v]);
      }
    }
    int root = t_.order.empty() ? -1 : t_.order[0];
    if (root >= 0 && !closed[root]) {
      int r = uf.find(root);
      for (int v = 0; v < Vt; ++v)
        if (t_.parent[v] >= 0 && closed[v] && uf.find(t_.parent[v]) == r) {
          uf.unite(v, root);
          break;
        }
    }
    // exact tree diameter of every cluster
    std::vector<double> down(Vt, 0.0), top1(Vt, 0.0), top2(Vt, 0.0), diam(Vt, 0.0);
    std::vector<int> rep(Vt);
    for (int v = 0; v < Vt; ++v) rep[v] = uf.find(v);
    for (int h = Vt - 1; h >= 0; --h) {
      int v = t_.order[h];
      down[v] = top1[v];
      diam[rep[v]] = std::max(diam[rep[v]], top1[v] + top2[v]);
      int p = t_.parent[v];
      if (p < 0 || rep[p] != rep[v]) continue;
      double arm = down[v] + t_.up_weight[v];
      if (arm > top1[p]) {
        top2[p] = top1[p];
        top1[p] = arm;
      } else if (arm > top2[p]) {
        top2[p] = arm;
      }
    }
    double total = 0.0;
    int clusters = 0;
    for (int v = 0; v < Vt; ++v)
      if (rep[v] == v) {
        phi[v] = diam[v];
        total += diam[v];
        ++clusters;
      }
    if (bounds && clusters > 1)
      for (int v = 0; v < Vt; ++v)
        if (rep[v] == v && (diam[v] < L * (1 - 1e-9) || diam[v] > 14 * L * (1 + 1e-9)))
          out_.violations.push_back(detail::fmt(
              "level-1 clusters: sigma=%d cluster diameter %.6g outside [L, 14L] with L=%.6g", sigma,
              diam[v], L));
    return total;
  }

  LevelResult run_level(ClassicUF& uf, std::vector<double>& phi, int sigma, long long i, double L,
                        const std::vector<EdgeId>& bucket, bool bounds) {
    const int Vt = t_.size();
    LevelGraph G;
    G.L = L;
    std::vector<int> nd(Vt), node_of(Vt, -1), root_of;
    for (int v = 0; v < Vt; ++v) {
      int r = uf.find(v);
      if (node_of[r] < 0) {
        node_of[r] = G.V++;
        root_of.push_back(r);
        G.omega.push_back(phi[r]);
        G.virt.push_back(1);
        G.host.push_back(-1);
      }
      nd[v] = node_of[r];
      if (!t_.is_virtual(v)) G.virt[nd[v]] = 0;
    }
    ops_ += 2 * Vt;
    for (int v = 0; v < Vt; ++v)
      if (t_.is_virtual(v)) G.host[nd[v]] = t_.host[v];
    for (int x = 0; x < G.V; ++x)
      if (!G.virt[x]) G.host[x] = -1;

    // level tree: Kruskal over the contracted subdivided tree
    ClassicUF kuf(G.V);
    G.tadj.assign(G.V, {});
    for (int v : tree_order_) {
      int p = t_.parent[v];
      if (p < 0) continue;
      int a = nd[v], b = nd[p];
      if (a != b && kuf.unite(a, b)) {
        G.tree.push_back({a, b, t_.up_weight[v]});
        G.tadj[a].push_back({b, t_.up_weight[v]});
        G.tadj[b].push_back({a, t_.up_weight[v]});
      }
    }
    ops_ += kuf.ops();
    TreeIndex ti;
    ti.build(G);

    // E_i: dedup by cluster pair, then the tree-distance filter
    std::unordered_map<std::uint64_t, std::size_t> slot;
    std::vector<CEdge> cand;
    for (EdgeId e : bucket) {
      int a = nd[g_.edge(e).u], b = nd[g_.edge(e).v];
      ++ops_;
      if (a == b) continue;
      auto [it, fresh] = slot.emplace(detail::pair_key(a, b), cand.size());
      if (fresh) {
        cand.push_back({a, b, g_.edge(e).w, e});
      } else {
        CEdge& cur = cand[it->second];
        if (g_.edge(e).w < cur.w || (g_.edge(e).w == cur.w && e < cur.src)) cur = {a, b, g_.edge(e).w, e};
      }
    }
    LightLevelSnapshot* snap = nullptr;
    if (trace_) {
      trace_->levels.push_back({});
      snap = &trace_->levels.back();
      snap->sigma = sigma;
      snap->i = i;
      snap->scale = L;
      snap->omega = G.omega;
      snap->is_virtual = G.virt;
      snap->host = G.host;
      for (const TEdge& e : G.tree) {
        snap->tree.push_back({e.a, e.b});
        snap->tree_w.push_back(e.w);
      }
    }
    G.cadj.assign(G.V, {});
    for (const CEdge& c : cand) {
      double d = ti.distance(c.a, c.b, G.omega);
      bool keep = d > filter_ * c.w;
      if (snap) snap->candidates.push_back({c.a, c.b, c.w, c.src, d, keep});
      if (!keep) continue;
      G.cadj[c.a].push_back(static_cast<int>(G.cedges.size()));
      G.cadj[c.b].push_back(static_cast<int>(G.cedges.size()));
      G.cedges.push_back(c);
    }
    ops_ += cand.size();

    Clustering cl = Clusterer(G, eps_).run();
    ops_ += G.V + G.cedges.size();
    for (const std::string& p : cl.problems)
      if (opt_.check)
        out_.violations.push_back(detail::fmt("clustering: sigma=%d i=%lld %s", sigma, i, p.c_str()));

    // degree classes
    enum Cls { kHigh, kLowPlus, kLowMinus };
    std::vector<int> cls(G.V, kLowPlus);
    for (int x = 0; x < G.V; ++x) {
      if (cl.degenerate) {
        cls[x] = kLowMinus;
      } else if (cl.high[x]) {
        cls[x] = kHigh;
      } else {
        const Sub& s = cl.subs[cl.owner[x]];
        if (s.step == 5 && !s.prefix) cls[x] = kLowMinus;
      }
    }

    // edge selection
    std::vector<EdgeId> added;
    std::size_t counts[3] = {0, 0, 0};
    std::vector<char> touched(G.V, 0);
    auto take = [&](int c) {
      added.push_back(G.cedges[c].src);
      touched[G.cedges[c].a] = touched[G.cedges[c].b] = 1;
    };
    for (const Sub& s : cl.subs) {
      if (!s.alive) continue;
      for (int c : s.cross) {
        take(c);
        ++counts[0];
      }
    }
    {
      std::vector<int> hid(G.V, -1);
      int hn = 0;
      for (int x = 0; x < G.V; ++x)
        if (cls[x] == kHigh) hid[x] = hn++;
      std::vector<std::pair<int, int>> kedges;
      std::vector<int> kc;
      for (int c = 0; c < static_cast<int>(G.cedges.size()); ++c) {
        int a = hid[G.cedges[c].a], b = hid[G.cedges[c].b];
        if (a >= 0 && b >= 0) {
          kedges.push_back({a, b});
          kc.push_back(c);
        }
      }
      if (!kedges.empty()) {
        HzResult hz = hz_spanner(hn, kedges, opt_.k);
        ops_ += hz.ops;
        for (int x : hz.kept) {
          take(kc[x]);
          ++counts[1];
        }
      }
    }
    for (int c = 0; c < static_cast<int>(G.cedges.size()); ++c)
      if (cls[G.cedges[c].a] != kHigh || cls[G.cedges[c].b] != kHigh) {
        take(c);
        ++counts[2];
      }
    std::sort(added.begin(), added.end());
    added.erase(std::unique(added.begin(), added.end()), added.end());
    edges_.insert(edges_.end(), added.begin(), added.end());
    double added_weight = 0.0;
    for (EdgeId e : added) added_weight += g_.edge(e).w;

    // potentials of the new clusters
    double phi_i = 0.0, phi_next = 0.0, delta = 0.0;
    for (double w : G.omega) phi_i += w;
    int nonvirtual = 0, y_count = 0, nonvirtual_next = 0, subs_alive = 0;
    for (int x = 0; x < G.V; ++x) {
      nonvirtual += !G.virt[x];
      y_count += touched[x];
    }
    std::vector<double> adm_of(cl.subs.size(), 0.0);
    std::vector<int> local(G.V, -1);
    for (std::size_t s = 0; s < cl.subs.size(); ++s) {
      const Sub& sub = cl.subs[s];
      if (!sub.alive) continue;
      ++subs_alive;
      std::vector<double> nw;
      for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
        local[sub.nodes[j]] = static_cast<int>(j);
        nw.push_back(G.omega[sub.nodes[j]]);
      }
      std::vector<TEdge> le;
      double tree_w = 0.0;
      for (const TEdge& e : sub.tree) {
        le.push_back({local[e.a], local[e.b], e.w});
        tree_w += e.w;
      }
      for (int c : sub.cross) le.push_back({local[G.cedges[c].a], local[G.cedges[c].b], G.cedges[c].w});
      double adm = augmented_diameter(nw, le);
      adm_of[s] = adm;
      double sum_w = std::accumulate(nw.begin(), nw.end(), 0.0);
      double local_delta = sum_w - adm;
      delta += local_delta;
      phi_next += adm;
      int nv = 0, ni = 0;
      for (int x : sub.nodes) {
        nv += !G.virt[x];
        ni += touched[x];
        local[x] = -1;
      }
      nonvirtual_next += nv > 0;
      if (!opt_.check) continue;
      if (!std::isfinite(adm))
        out_.violations.push_back(detail::fmt("P1': sigma=%d i=%lld subgraph is disconnected", sigma, i));
      if (bounds && local_delta + tree_w < -1e-9 * std::max(1.0, sum_w + tree_w))
        out_.violations.push_back(detail::fmt("potential: sigma=%d i=%lld corrected change %.6g < 0", sigma, i,
                                              local_delta + tree_w));
      if (ni > 0 && nv < 2)
        out_.violations.push_back(detail::fmt(
            "goodness: sigma=%d i=%lld subgraph with a non-isolated node has %d non-virtual nodes", sigma, i, nv));
      if (bounds) {
        bool lone = subs_alive == 1 && sub.nodes.size() == static_cast<std::size_t>(G.V);
        if (adm > kGrowth * L * (1 + 1e-9) || (!lone && cl.subs.size() > 1 && adm < L * (1 - 1e-9)))
          out_.violations.push_back(detail::fmt("P3': sigma=%d i=%lld step %d subgraph Adm=%.6g outside [L, gL], L=%.6g",
                                                sigma, i, sub.step, adm, L));
        if (sub.nodes.size() < 1.0 / (4 * eps_)) ++p2_warnings_;
      }
    }
    if (opt_.check) {
      std::vector<int> seen(G.V, 0);
      for (const Sub& s : cl.subs)
        if (s.alive)
          for (int x : s.nodes) ++seen[x];
      for (int x = 0; x < G.V; ++x)
        if (seen[x] != 1) {
          out_.violations.push_back(detail::fmt("P1': sigma=%d i=%lld node in %d subgraphs", sigma, i, seen[x]));
          break;
        }
      for (int x = 0; x < G.V; ++x)
        if (static_cast<bool>(touched[x]) != G.non_isolated(x)) {
          out_.violations.push_back(detail::fmt("selection: sigma=%d i=%lld node with E_i edges left without one",
                                                sigma, i));
          break;
        }
      if (2 * (nonvirtual - nonvirtual_next) < y_count)
        out_.violations.push_back(detail::fmt("reduction: sigma=%d i=%lld |N_i|-|N_i+1|=%d < |Y_i|/2 (|Y_i|=%d)",
                                              sigma, i, nonvirtual - nonvirtual_next, y_count));
      for (const CEdge& c : G.cedges) {
        int ca = cls[c.a], cb = cls[c.b];
        if (!cl.degenerate && ((ca == kHigh && cb == kLowMinus) || (ca == kLowMinus && cb == kHigh)))
          out_.violations.push_back(detail::fmt("separation: sigma=%d i=%lld E_i edge joins high and low-", sigma, i));
        if (!cl.degenerate && ca == kLowMinus && cb == kLowMinus)
          out_.violations.push_back(detail::fmt("separation: sigma=%d i=%lld E_i edge inside low- outside the degenerate case",
                                                sigma, i));
      }
      for (auto [adm, scale] : cl.pieces)
        if (bounds && (adm < scale * (1 - 1e-9) || adm > 7 * scale * (1 + 1e-9)))
          out_.violations.push_back(detail::fmt("step 5B: sigma=%d i=%lld piece Adm=%.6g outside [L, 7L], L=%.6g",
                                                sigma, i, adm, scale));
      check_cycle_property(G, ti, sigma, i);
    }

    // merge
    for (const Sub& s : cl.subs) {
      if (!s.alive) continue;
      for (std::size_t j = 1; j < s.nodes.size(); ++j) uf.unite(root_of[s.nodes[0]], root_of[s.nodes[j]]);
    }
    for (std::size_t s = 0; s < cl.subs.size(); ++s)
      if (cl.subs[s].alive) phi[uf.find(root_of[cl.subs[s].nodes[0]])] = adm_of[s];
    ops_ += G.V;

    if (opt_.check && Vt <= 4000) check_diameters(uf, phi, sigma, i);

    if (opt_.instrument)
      out_.levels.push_back({{"kind", "heavy_level"},
                             {"sigma", sigma},
                             {"i", i},
                             {"L", L},
                             {"V", G.V},
                             {"E", G.cedges.size()},
                             {"Y", y_count},
                             {"N", nonvirtual},
                             {"N_next", nonvirtual_next},
                             {"X", subs_alive},
                             {"Phi", phi_i},
                             {"delta", delta},
                             {"a_i", cl.degenerate ? added_weight : 0.0},
                             {"edges", added.size()},
                             {"step_edge_counts", {counts[0], counts[1], counts[2]}},
                             {"degenerate", cl.degenerate},
                             {"p2_warnings", p2_warnings_}});
    return {phi_next, delta};
  }

  // Every virtual node on the fundamental cycle of an E_i edge has a parent
  // edge no heavier than the E_i edge.
  void check_cycle_property(const LevelGraph& G, const TreeIndex& ti, int sigma, long long i) {
    for (const CEdge& c : G.cedges) {
      int l = ti.lca(c.a, c.b);
      for (int x : {c.a, c.b}) {
        for (int y = x;; y = ti.parent[y]) {
          if (G.virt[y] && g_.edge(G.host[y]).w > c.w * (1 + 1e-12)) {
            out_.violations.push_back(detail::fmt(
                "cycle property: sigma=%d i=%lld virtual node with parent edge %.6g on the cycle of an edge of weight %.6g",
                sigma, i, g_.edge(G.host[y]).w, c.w));
            return;
          }
          if (y == l) break;
        }
      }
    }
  }

  // Dm(H[C]) <= Phi(C), by Dijkstra inside each cluster on the subdivided
  // tree plus the heavy edges chosen so far in this class.
  void check_diameters(ClassicUF& uf, const std::vector<double>& phi, int sigma, long long i) {
    const int Vt = t_.size();
    std::vector<std::vector<std::pair<int, double>>> adj(Vt);
    for (int v = 0; v < Vt; ++v)
      if (t_.parent[v] >= 0) {
        adj[v].push_back({t_.parent[v], t_.up_weight[v]});
        adj[t_.parent[v]].push_back({v, t_.up_weight[v]});
      }
    for (std::size_t j = class_start_; j < edges_.size(); ++j) {
      const Edge& e = g_.edge(edges_[j]);
      adj[e.u].push_back({e.v, e.w});
      adj[e.v].push_back({e.u, e.w});
    }
    std::vector<int> rep(Vt);
    std::vector<std::vector<int>> members(Vt);
    for (int v = 0; v < Vt; ++v) {
      rep[v] = uf.find(v);
      members[rep[v]].push_back(v);
    }
    std::vector<double> dist(Vt, kInf);
    for (int r = 0; r < Vt; ++r) {
      const auto& mem = members[r];
      if (mem.size() < 2) continue;
      std::size_t sources = mem.size() <= 300 ? mem.size() : 3;
      for (std::size_t q = 0; q < sources; ++q) {
        int s = mem[q * (mem.size() / sources)];
        for (int v : mem) dist[v] = kInf;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[s] = 0.0;
        pq.push({0.0, s});
        double far = 0.0;
        while (!pq.empty()) {
          auto [d, x] = pq.top();
          pq.pop();
          if (d > dist[x]) continue;
          far = std::max(far, d);
          for (auto [y, w] : adj[x])
            if (rep[y] == r && d + w < dist[y]) {
              dist[y] = d + w;
              pq.push({dist[y], y});
            }
        }
        for (int v : mem) far = std::max(far, dist[v]);
        if (far > phi[r] * (1 + 1e-9) + 1e-12) {
          out_.violations.push_back(detail::fmt(
              "potential bound: sigma=%d i=%lld cluster of %zu vertices has diameter %.6g > Phi=%.6g", sigma, i,
              mem.size(), far, phi[r]));
          return;
        }
      }
    }
  }

 public:
  void begin_class() { class_start_ = edges_.size(); }
  std::size_t p2_warnings() const { return p2_warnings_; }

 private:
  const WeightedGraph& g_;
  const SubdividedTree& t_;
  const BuildOptions& opt_;
  double eps_;
  Spanner& out_;
  LightTrace* trace_;
  std::vector<std::vector<int>> children_;
  std::vector<int> tree_order_;
  double filter_ = 0.0;
  double mst_weight_ = 0.0;
  std::vector<EdgeId> edges_;
  std::size_t class_start_ = 0;
  std::size_t p2_warnings_ = 0;
  std::uint64_t ops_ = 0;
};

Spanner light_connected(const WeightedGraph& g, const BuildOptions& opt, LightTrace* trace) {
  Spanner out;
  out.algo = "light";
  out.k = opt.k;
  out.eps = opt.eps;
  out.nominal = opt.nominal;
  out.internal_eps = opt.nominal ? opt.eps : opt.eps / (10 * kGrowth + 1);
  if (g.m() == 0) return out;
  const double eps = out.internal_eps;

  MstResult mst = minimum_spanning_tree(g);
  out.ops += g.m();
  LightHeavySplit split = split_light_heavy(g, mst.weight, eps);
  std::vector<char> in_mst(g.m(), 0);
  for (EdgeId e : mst.edges) in_mst[e] = 1;

  // H_light: the pointer-machine construction on E_light and the MST
  std::vector<EdgeId> light_ids = split.light;
  for (EdgeId e : mst.edges)
    if (g.edge(e).w > split.threshold) light_ids.push_back(e);
  std::sort(light_ids.begin(), light_ids.end());
  WeightedGraph lg = g.subgraph(light_ids);
  Spanner pm = build_pm(lg, opt);
  for (EdgeId e : pm.edges) out.edges.push_back(light_ids[e]);
  for (const std::string& v : pm.violations) out.violations.push_back("light part: " + v);
  out.ops += pm.ops;
  out.edges.insert(out.edges.end(), mst.edges.begin(), mst.edges.end());

  std::vector<EdgeId> heavy;
  for (EdgeId e : split.heavy)
    if (!in_mst[e]) heavy.push_back(e);
  if (trace) {
    trace->threshold = split.threshold;
    trace->heavy = heavy;
  }
  if (opt.instrument)
    out.levels.push_back({{"kind", "split"}, {"threshold", split.threshold}, {"light", split.light.size()},
                          {"heavy", heavy.size()}, {"dropped", split.dropped.size()}});
  if (heavy.empty()) {
    detail::finish(out);
    return out;
  }

  // H_heavy on the subdivided MST. Grid base and granularity w(MST)/m keep
  // every heavy edge above level 0.
  const double granularity = mst.weight / g.m();
  SubdividedTree tree = subdivide_tree(g, mst, granularity);
  if (opt.check && tree.size() > 2 * (g.m() + 1))
    out.violations.push_back(detail::fmt("subdivision: %d vertices exceed 2(m+1)", tree.size()));
  LevelBuckets buckets = partition_edges(g, heavy, eps, granularity);
  HeavyBuilder hb(g, tree, opt, eps, out, trace);
  hb.set_mst_weight(mst.weight);
  if (trace) {
    trace->granularity = granularity;
    trace->vtilde = tree.size();
    trace->filter_factor = hb.filter_factor();
  }
  for (int s = 0; s < buckets.grid.mu(); ++s) {
    if (buckets.per_sigma[s].empty()) continue;
    hb.begin_class();
    hb.run_class(s, buckets.per_sigma[s], buckets.grid);
  }
  out.edges.insert(out.edges.end(), hb.edges().begin(), hb.edges().end());
  out.ops += hb.ops();
  detail::finish(out);
  return out;
}

}  // namespace

Spanner build_light(const WeightedGraph& g, const BuildOptions& opt, LightTrace* trace) {
  validate(opt);
  bool connected = is_connected(g);
  return detail::by_component(g, [&](const WeightedGraph& c) {
    return light_connected(c, opt, connected ? trace : nullptr);
  });
}

}  // namespace spanner
