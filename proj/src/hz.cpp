#include "spanner/hz.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "spanner/graph.hpp"

namespace spanner {

HzResult hz_spanner(int n, const std::vector<std::pair<int, int>>& edges, int k) {
  if (k < 1) throw GraphError("hz_spanner: k must be at least 1");
  const int m = static_cast<int>(edges.size());
  std::vector<int> offset(n + 1, 0);
  {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2 * m);
    for (auto [a, b] : edges) {
      if (a < 0 || a >= n || b < 0 || b >= n) throw GraphError("hz_spanner: vertex out of range");
      if (a == b) throw GraphError("hz_spanner: input has a self-loop");
      auto lo = static_cast<std::uint64_t>(std::min(a, b)), hi = static_cast<std::uint64_t>(std::max(a, b));
      if (!seen.insert(lo << 32 | hi).second) throw GraphError("hz_spanner: input has parallel edges");
      ++offset[a + 1];
      ++offset[b + 1];
    }
  }
  for (int v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<int> to(2 * m), eid(2 * m);
  {
    std::vector<int> fill(offset.begin(), offset.end() - 1);
    for (int e = 0; e < m; ++e) {
      auto [a, b] = edges[e];
      to[fill[a]] = b;
      eid[fill[a]++] = e;
      to[fill[b]] = a;
      eid[fill[b]++] = e;
    }
  }

  HzResult res;
  const double growth = std::pow(static_cast<double>(std::max(n, 1)), 1.0 / k);
  std::vector<char> removed(n, 0), keep(m, 0);
  std::vector<int> stamp(n, -1), via(n, -1);
  std::vector<int> ball, next;
  for (int v = 0; v < n; ++v) {
    if (removed[v]) continue;
    // ball = B(r) in BFS order, next = B(r+1) \ B(r); via[x] = edge that discovered x
    ball.assign(1, v);
    stamp[v] = v;
    via[v] = -1;
    std::size_t scanned = 0;
    for (;;) {
      next.clear();
      for (std::size_t h = scanned; h < ball.size(); ++h) {
        int x = ball[h];
        for (int p = offset[x]; p < offset[x + 1]; ++p) {
          ++res.ops;
          int y = to[p];
          if (removed[y] || stamp[y] == v) continue;
          stamp[y] = v;
          via[y] = eid[p];
          next.push_back(y);
        }
      }
      scanned = ball.size();
      if (static_cast<double>(next.size()) <= growth * static_cast<double>(ball.size())) break;
      ball.insert(ball.end(), next.begin(), next.end());
    }
    for (int x : ball)
      if (via[x] >= 0) keep[via[x]] = 1;
    for (int y : next) {
      keep[via[y]] = 1;
      stamp[y] = -1;  // stays in the graph
    }
    for (int x : ball) removed[x] = 1;
  }
  for (int e = 0; e < m; ++e)
    if (keep[e]) res.kept.push_back(e);
  return res;
}

}  // namespace spanner
