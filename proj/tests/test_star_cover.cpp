#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <stdexcept>

#include "spanner/star_cover.hpp"

using namespace spanner;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// partition, size >= 2, hop diameter <= 4 over the used edges, used edges inside groups
void check_cover(int n, const EdgeList& es, const StarCover& sc) {
  ASSERT_EQ(static_cast<int>(sc.group.size()), n);
  std::vector<int> size(sc.groups(), 0);
  for (int v = 0; v < n; ++v) {
    ASSERT_GE(sc.group[v], 0);
    ++size[sc.group[v]];
  }
  for (int s : size) ASSERT_GE(s, 2);
  std::vector<std::vector<int>> adj(n);
  for (int x : sc.used_edges) {
    auto [a, b] = es[x];
    ASSERT_EQ(sc.group[a], sc.group[b]);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int s = 0; s < n; ++s) {
    std::vector<int> d(n, -1);
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x])
        if (d[y] < 0) {
          d[y] = d[x] + 1;
          q.push(y);
        }
    }
    for (int v = 0; v < n; ++v)
      if (sc.group[v] == sc.group[s]) {
        ASSERT_GE(d[v], 0);
        ASSERT_LE(d[v], 4);
      }
  }
}

}  // namespace

TEST(StarCover, SingleEdge) {
  auto sc = star_cover(2, {{0, 1}});
  EXPECT_EQ(sc.groups(), 1);
  check_cover(2, {{0, 1}}, sc);
}

TEST(StarCover, StarIsOneGroup) {
  EdgeList es{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
  auto sc = star_cover(6, es);
  EXPECT_EQ(sc.groups(), 1);
  check_cover(6, es, sc);
}

TEST(StarCover, PathByHand) {
  EdgeList es{{0, 1}, {1, 2}, {2, 3}};
  auto sc = star_cover(4, es);
  // step 1: center 0 takes 1; 1 and 2 are blocked; 3 is blocked by nothing -> center 3 takes 2
  EXPECT_EQ(sc.center, (std::vector<int>{0, 3}));
  EXPECT_EQ(sc.group, (std::vector<int>{0, 0, 1, 1}));
  check_cover(4, es, sc);
}

TEST(StarCover, RandomGraphs) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 60);
    EdgeList es;
    for (int v = 1; v < n; ++v) es.push_back({static_cast<int>(rng() % v), v});
    int extra = static_cast<int>(rng() % (2 * n));
    for (int x = 0; x < extra; ++x) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b) es.push_back({a, b});
    }
    check_cover(n, es, star_cover(n, es));
  }
}

TEST(StarCover, IsolatedVertexRejected) { EXPECT_THROW(star_cover(3, {{0, 1}}), std::invalid_argument); }
