#include "spanner/star_cover.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spanner {

StarCover star_cover(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> offset(n + 1, 0);
  for (auto [a, b] : edges) {
    ++offset[a + 1];
    ++offset[b + 1];
  }
  for (int v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<int> to(offset[n]), eid(offset[n]);
  std::vector<int> fill(offset.begin(), offset.end() - 1);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    auto [a, b] = edges[e];
    to[fill[a]] = b;
    eid[fill[a]++] = e;
    to[fill[b]] = a;
    eid[fill[b]++] = e;
  }
  // neighbors in ascending id so step 2 picks the smallest covered one
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<int, int>> nb;
    for (int p = offset[v]; p < offset[v + 1]; ++p) nb.push_back({to[p], eid[p]});
    std::sort(nb.begin(), nb.end());
    for (int p = offset[v], q = 0; p < offset[v + 1]; ++p, ++q) {
      to[p] = nb[q].first;
      eid[p] = nb[q].second;
    }
  }

  StarCover sc;
  sc.group.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (offset[v] == offset[v + 1])
      throw std::invalid_argument("star cover: vertex " + std::to_string(v) + " is isolated");
    if (sc.group[v] >= 0) continue;
    bool free = true;
    for (int p = offset[v]; p < offset[v + 1] && free; ++p) free = sc.group[to[p]] < 0;
    if (!free) continue;
    int g = sc.groups();
    sc.center.push_back(v);
    sc.group[v] = g;
    for (int p = offset[v]; p < offset[v + 1]; ++p) {
      sc.group[to[p]] = g;
      sc.used_edges.push_back(eid[p]);
    }
  }
  std::vector<int> step1 = sc.group;
  for (int v = 0; v < n; ++v) {
    if (step1[v] >= 0) continue;
    for (int p = offset[v]; p < offset[v + 1]; ++p) {
      if (step1[to[p]] >= 0) {
        sc.group[v] = step1[to[p]];
        sc.used_edges.push_back(eid[p]);
        break;
      }
    }
  }
  return sc;
}

}  // namespace spanner
