#include "spanner/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "spanner/dsu.hpp"

namespace spanner {

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::vector<double> dijkstra(const WeightedGraph& g, Vertex source,
                             const std::vector<char>* allowed) {
  if (source < 0 || source >= g.n()) throw GraphError("source out of range");
  const Adjacency& adj = g.adjacency();
  std::vector<double> dist(g.n(), kInf);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    for (int p = adj.offset[x]; p < adj.offset[x + 1]; ++p) {
      EdgeId e = adj.edge[p];
      if (allowed && !(*allowed)[e]) continue;
      Vertex y = adj.to[p];
      double nd = d + g.edge(e).w;
      if (nd < dist[y]) {
        dist[y] = nd;
        pq.push({nd, y});
      }
    }
  }
  return dist;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw GraphError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(int n, const std::vector<Edge>& raw,
                                        IngestReport* report) {
  if (n < 0) throw GraphError("negative vertex count");
  WeightedGraph g(n);
  IngestReport rep;
  std::unordered_map<std::uint64_t, EdgeId> seen;
  seen.reserve(raw.size() * 2);
  for (const Edge& e : raw) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw GraphError("vertex id out of range in edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw GraphError("nonpositive or non-finite weight on edge (" + std::to_string(e.u) +
                       "," + std::to_string(e.v) + ")");
    if (e.u == e.v) {
      ++rep.self_loops;
      continue;
    }
    auto [it, fresh] = seen.emplace(pair_key(e.u, e.v), g.m());
    if (fresh) {
      g.edges_.push_back(e);
    } else {
      ++rep.collapsed;
      Edge& kept = g.edges_[it->second];
      if (e.w < kept.w) kept.w = e.w;
    }
  }
  if (report) *report = rep;
  return g;
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.w;
  return s;
}

const Adjacency& WeightedGraph::adjacency() const {
  if (adj_built_) return adj_;
  adj_.offset.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++adj_.offset[e.u + 1];
    ++adj_.offset[e.v + 1];
  }
  for (int v = 0; v < n_; ++v) adj_.offset[v + 1] += adj_.offset[v];
  adj_.to.assign(2 * edges_.size(), 0);
  adj_.edge.assign(2 * edges_.size(), 0);
  std::vector<int> fill(adj_.offset.begin(), adj_.offset.end() - 1);
  for (EdgeId id = 0; id < m(); ++id) {
    const Edge& e = edges_[id];
    adj_.to[fill[e.u]] = e.v;
    adj_.edge[fill[e.u]++] = id;
    adj_.to[fill[e.v]] = e.u;
    adj_.edge[fill[e.v]++] = id;
  }
  adj_built_ = true;
  return adj_;
}

WeightedGraph WeightedGraph::subgraph(const std::vector<EdgeId>& keep) const {
  WeightedGraph h(n_);
  h.edges_.reserve(keep.size());
  for (EdgeId e : keep) h.edges_.push_back(edges_.at(e));
  return h;
}

MstResult minimum_spanning_tree(const WeightedGraph& g, Vertex root) {
  const int n = g.n();
  MstResult r;
  r.root = root;
  r.parent.assign(n, -1);
  r.parent_edge.assign(n, -1);
  r.depth.assign(n, 0);
  if (n == 0) return r;
  if (root < 0 || root >= n) throw GraphError("root out of range");

  std::vector<EdgeId> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](EdgeId id) {
    const Edge& e = g.edge(id);
    return std::make_tuple(e.w, std::min(e.u, e.v), std::max(e.u, e.v));
  };
  std::sort(order.begin(), order.end(),
            [&](EdgeId a, EdgeId b) { return key(a) < key(b); });

  ClassicUF uf(n);
  for (EdgeId id : order) {
    const Edge& e = g.edge(id);
    if (uf.unite(e.u, e.v)) {
      r.edges.push_back(id);
      r.weight += e.w;
      if (static_cast<int>(r.edges.size()) == n - 1) break;
    }
  }
  if (static_cast<int>(r.edges.size()) != n - 1) {
    Vertex other = 0;
    Vertex base = uf.find(root);
    for (Vertex v = 0; v < n; ++v) {
      if (uf.find(v) != base) {
        other = v;
        break;
      }
    }
    throw DisconnectedError(root, other);
  }

  std::vector<std::vector<std::pair<Vertex, EdgeId>>> tree(n);
  for (EdgeId id : r.edges) {
    const Edge& e = g.edge(id);
    tree[e.u].push_back({e.v, id});
    tree[e.v].push_back({e.u, id});
  }
  for (auto& nb : tree) std::sort(nb.begin(), nb.end());
  std::vector<char> seen(n, 0);
  r.order.reserve(n);
  r.order.push_back(root);
  seen[root] = 1;
  for (std::size_t h = 0; h < r.order.size(); ++h) {
    Vertex x = r.order[h];
    for (auto [y, id] : tree[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      r.parent[y] = x;
      r.parent_edge[y] = id;
      r.depth[y] = r.depth[x] + 1;
      r.order.push_back(y);
    }
  }
  return r;
}

std::vector<double> sssp_distances(const WeightedGraph& g, Vertex source) {
  return dijkstra(g, source, nullptr);
}

std::vector<double> sssp_distances(const WeightedGraph& g, Vertex source,
                                   const std::vector<char>& allowed) {
  return dijkstra(g, source, &allowed);
}

std::pair<WeightedGraph, double> normalize_weights(const WeightedGraph& g) {
  if (g.m() == 0) throw GraphError("cannot normalize an empty edge set");
  double lo = kInf;
  for (const Edge& e : g.edges()) lo = std::min(lo, e.w);
  std::vector<Edge> scaled = g.edges();
  for (Edge& e : scaled) e.w = (e.w == lo) ? 1.0 : e.w / lo;
  return {WeightedGraph::from_edges(g.n(), scaled), lo};
}

bool is_connected(const WeightedGraph& g) {
  if (g.n() <= 1) return true;
  ClassicUF uf(g.n());
  int comps = g.n();
  for (const Edge& e : g.edges())
    if (uf.unite(e.u, e.v)) --comps;
  return comps == 1;
}

WeightedGraph parse_graph(const std::string& text, GraphFormat format,
                          IngestReport* report) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  std::vector<Edge> raw;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    char lead = line[first];
    std::istringstream ls(line);
    if (format == GraphFormat::kEdgeList) {
      if (lead == '#') continue;
      if (n < 0) {
        if (!(ls >> n >> m) || n < 0 || m < 0) parse_fail(lineno, "expected header \"n m\"");
        raw.reserve(static_cast<std::size_t>(m));
        continue;
      }
      long long u, v;
      double w;
      if (!(ls >> u >> v >> w)) parse_fail(lineno, "expected \"u v w\"");
      if (u < 0 || u >= n || v < 0 || v >= n) parse_fail(lineno, "vertex id out of range");
      if (!(w > 0.0) || !std::isfinite(w)) parse_fail(lineno, "nonpositive weight");
      raw.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    } else {
      if (lead == 'c') continue;
      std::string tag;
      ls >> tag;
      if (tag == "p") {
        std::string kind;
        if (!(ls >> kind >> n >> m) || n < 0 || m < 0)
          parse_fail(lineno, "expected \"p sp n m\"");
        continue;
      }
      if (tag != "a") parse_fail(lineno, "unknown record \"" + tag + "\"");
      if (n < 0) parse_fail(lineno, "arc before problem line");
      long long u, v;
      double w;
      if (!(ls >> u >> v >> w)) parse_fail(lineno, "expected \"a u v w\"");
      if (u < 1 || u > n || v < 1 || v > n) parse_fail(lineno, "vertex id out of range");
      if (!(w > 0.0) || !std::isfinite(w)) parse_fail(lineno, "nonpositive weight");
      raw.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
    }
  }
  if (n < 0) throw GraphError("missing header");
  if (format == GraphFormat::kEdgeList && static_cast<long long>(raw.size()) != m)
    throw GraphError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(raw.size()));
  return WeightedGraph::from_edges(static_cast<int>(n), raw, report);
}

WeightedGraph load_graph(const std::string& path, GraphFormat format, IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), format, report);
}

std::string to_edge_list(const WeightedGraph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  char buf[96];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.u, e.v, e.w);
    out += buf;
  }
  return out;
}

void save_edge_list(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << to_edge_list(g);
}

}  // namespace spanner
