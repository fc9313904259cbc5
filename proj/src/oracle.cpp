#include "spanner/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numeric>
#include <queue>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace spanner::oracle {

namespace {

constexpr double kTol = 1e-9;

struct Csr {
  std::vector<int> off, to;
  std::vector<double> w;
};

Csr make_csr(int n, const std::vector<Edge>& es) {
  Csr c;
  c.off.assign(n + 1, 0);
  for (const Edge& e : es) {
    ++c.off[e.u + 1];
    ++c.off[e.v + 1];
  }
  for (int v = 0; v < n; ++v) c.off[v + 1] += c.off[v];
  c.to.resize(c.off[n]);
  c.w.resize(c.off[n]);
  std::vector<int> f(c.off.begin(), c.off.end() - 1);
  for (const Edge& e : es) {
    c.to[f[e.u]] = e.v;
    c.w[f[e.u]++] = e.w;
    c.to[f[e.v]] = e.u;
    c.w[f[e.v]++] = e.w;
  }
  return c;
}

using Item = std::pair<double, int>;
using MinHeap = std::priority_queue<Item, std::vector<Item>, std::greater<Item>>;

// Distance from s to target in an adjacency-list graph, abandoning once the
// frontier passes limit (returns +inf then).
double bounded_distance(const std::vector<std::vector<std::pair<int, double>>>& adj, int s, int target,
                        double limit, std::vector<double>& dist, std::vector<int>& touched) {
  for (int x : touched) dist[x] = kInf;
  touched.clear();
  MinHeap pq;
  dist[s] = 0.0;
  touched.push_back(s);
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    if (d > limit) return kInf;
    if (x == target) return d;
    for (auto [y, w] : adj[x]) {
      double nd = d + w;
      if (nd < dist[y]) {
        if (dist[y] == kInf) touched.push_back(y);
        dist[y] = nd;
        pq.push({nd, y});
      }
    }
  }
  return kInf;
}

std::uint64_t key(int a, int b) {
  if (a > b) std::swap(a, b);
  return static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint32_t>(b);
}

int worker_count() {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SPANNER_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) hw = std::min(hw, cap);
  }
  return hw;
}

}  // namespace

std::vector<EdgeId> greedy_spanner(const WeightedGraph& g, double t) {
  if (!(t >= 1.0)) throw GraphError("greedy spanner needs t >= 1");
  std::vector<EdgeId> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });
  std::vector<std::vector<std::pair<int, double>>> adj(g.n());
  std::vector<double> dist(g.n(), kInf);
  std::vector<int> touched;
  std::vector<EdgeId> kept;
  for (EdgeId id : order) {
    const Edge& e = g.edge(id);
    double bound = t * e.w;
    if (bounded_distance(adj, e.u, e.v, bound, dist, touched) > bound) {
      kept.push_back(id);
      adj[e.u].push_back({e.v, e.w});
      adj[e.v].push_back({e.u, e.w});
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

StretchReport verify_stretch(const WeightedGraph& g, const WeightedGraph& h, double t) {
  if (h.n() != g.n()) throw GraphError("spanner vertex count differs from the graph");
  std::unordered_map<std::uint64_t, double> gw;
  gw.reserve(2 * g.m());
  for (const Edge& e : g.edges()) gw.emplace(key(e.u, e.v), e.w);
  for (const Edge& e : h.edges()) {
    auto it = gw.find(key(e.u, e.v));
    if (it == gw.end() || it->second != e.w)
      throw GraphError("spanner edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") is not an edge of the graph");
  }
  const int n = g.n();
  Csr hc = make_csr(n, h.edges());
  // every graph edge is checked from its smaller endpoint
  std::vector<std::vector<int>> pending(n);
  for (EdgeId id = 0; id < g.m(); ++id) {
    const Edge& e = g.edge(id);
    pending[std::min(e.u, e.v)].push_back(id);
  }
  std::vector<double> stretch(g.m(), 1.0);
  std::atomic<int> next{0};
  auto work = [&]() {
    std::vector<double> dist(n, kInf);
    std::vector<int> touched;
    std::vector<char> want(n, 0);
    for (;;) {
      int s = next.fetch_add(1);
      if (s >= n) break;
      if (pending[s].empty()) continue;
      int remaining = 0;
      for (EdgeId id : pending[s]) {
        int other = g.edge(id).u == s ? g.edge(id).v : g.edge(id).u;
        if (!want[other]) ++remaining;
        want[other] = 1;
      }
      for (int x : touched) dist[x] = kInf;
      touched.clear();
      MinHeap pq;
      dist[s] = 0.0;
      touched.push_back(s);
      pq.push({0.0, s});
      while (!pq.empty() && remaining > 0) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x]) continue;
        if (want[x]) {
          want[x] = 0;
          --remaining;
        }
        for (int p = hc.off[x]; p < hc.off[x + 1]; ++p) {
          int y = hc.to[p];
          double nd = d + hc.w[p];
          if (nd < dist[y]) {
            if (dist[y] == kInf) touched.push_back(y);
            dist[y] = nd;
            pq.push({nd, y});
          }
        }
      }
      for (EdgeId id : pending[s]) {
        const Edge& e = g.edge(id);
        int other = e.u == s ? e.v : e.u;
        want[other] = 0;
        stretch[id] = dist[other] / e.w;
      }
    }
  };
  int workers = std::min(worker_count(), std::max(1, n / 64));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  StretchReport r;
  r.target = t;
  r.histogram.upper = {1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 9.0, kInf};
  r.histogram.count.assign(r.histogram.upper.size(), 0);
  for (EdgeId id = 0; id < g.m(); ++id) {
    double s = stretch[id];
    if (s > r.max_stretch || (r.witness.u < 0 && s >= r.max_stretch)) {
      r.max_stretch = s;
      r.witness = g.edge(id);
    }
    std::size_t b = 0;
    while (s > r.histogram.upper[b] * (1 + kTol)) ++b;
    ++r.histogram.count[b];
  }
  r.pass = r.max_stretch <= t * (1 + kTol);
  return r;
}

StretchReport verify_stretch(const WeightedGraph& g, const std::vector<EdgeId>& h, double t) {
  return verify_stretch(g, g.subgraph(h), t);
}

double mst_weight(const WeightedGraph& g) {
  const int n = g.n();
  Csr c = make_csr(n, g.edges());
  std::vector<char> in(n, 0);
  std::vector<double> best(n, kInf);
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    if (in[s]) continue;
    MinHeap pq;
    best[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [d, x] = pq.top();
      pq.pop();
      if (in[x] || d > best[x]) continue;
      in[x] = 1;
      total += d;
      for (int p = c.off[x]; p < c.off[x + 1]; ++p) {
        int y = c.to[p];
        if (!in[y] && c.w[p] < best[y]) {
          best[y] = c.w[p];
          pq.push({c.w[p], y});
        }
      }
    }
  }
  return total;
}

QualityMetrics spanner_metrics(const WeightedGraph& g, const WeightedGraph& h) {
  QualityMetrics q;
  q.edges = h.edges().size();
  for (const Edge& e : h.edges()) q.weight += e.w;
  double tree = mst_weight(g);
  q.sparsity = g.n() > 1 ? static_cast<double>(q.edges) / (g.n() - 1) : 0.0;
  q.lightness = tree > 0 ? q.weight / tree : 0.0;
  return q;
}

QualityMetrics spanner_metrics(const WeightedGraph& g, const std::vector<EdgeId>& h) {
  return spanner_metrics(g, g.subgraph(h));
}

std::string report_json(const StretchReport& r) {
  nlohmann::json j;
  j["max_stretch"] = std::isinf(r.max_stretch) ? nlohmann::json("inf") : nlohmann::json(r.max_stretch);
  j["witness"] = {r.witness.u, r.witness.v, r.witness.w};
  j["target"] = r.target;
  j["pass"] = r.pass;
  nlohmann::json hb = nlohmann::json::array();
  for (std::size_t b = 0; b < r.histogram.upper.size(); ++b) {
    nlohmann::json u = std::isinf(r.histogram.upper[b]) ? nlohmann::json("inf")
                                                        : nlohmann::json(r.histogram.upper[b]);
    hb.push_back({{"le", u}, {"count", r.histogram.count[b]}});
  }
  j["histogram_buckets"] = hb;
  return j.dump(2);
}

}  // namespace spanner::oracle
