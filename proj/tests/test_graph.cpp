#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "helpers.hpp"
#include "spanner/graph.hpp"

using namespace spanner;
using testutil::make;

namespace {

std::set<std::pair<int, int>> tree_pairs(const WeightedGraph& g, const MstResult& r) {
  std::set<std::pair<int, int>> s;
  for (EdgeId e : r.edges) s.insert({std::min(g.edge(e).u, g.edge(e).v), std::max(g.edge(e).u, g.edge(e).v)});
  return s;
}

}  // namespace

TEST(Ingest, ReadsTriangle) {
  auto g = parse_graph("3 3\n0 1 1.0\n1 2 1.0\n0 2 2.0\n", GraphFormat::kEdgeList);
  EXPECT_EQ(g.n(), 3);
  EXPECT_EQ(g.m(), 3);
}

TEST(Ingest, CollapsesToLightest) {
  IngestReport rep;
  auto g = parse_graph("2 2\n0 1 5\n1 0 2\n", GraphFormat::kEdgeList, &rep);
  ASSERT_EQ(g.m(), 1);
  EXPECT_DOUBLE_EQ(g.edge(0).w, 2.0);
  EXPECT_EQ(rep.collapsed, 1u);
}

TEST(Ingest, DropsSelfLoops) {
  IngestReport rep;
  auto g = parse_graph("1 1\n0 0 1\n", GraphFormat::kEdgeList, &rep);
  EXPECT_EQ(g.m(), 0);
  EXPECT_EQ(rep.self_loops, 1u);
}

TEST(Ingest, ErrorsCarryLineNumbers) {
  try {
    parse_graph("2 1\n0 1 -3\n", GraphFormat::kEdgeList);
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_graph("2 1\n0 5 1\n", GraphFormat::kEdgeList), GraphError);
  EXPECT_THROW(parse_graph("2 1\n0 x 1\n", GraphFormat::kEdgeList), GraphError);
}

TEST(Ingest, DimacsIsOneBased) {
  auto g = parse_graph("c demo\np sp 3 2\na 1 2 4\na 2 3 5\n", GraphFormat::kDimacs);
  ASSERT_EQ(g.m(), 2);
  EXPECT_EQ(g.edge(0).u, 0);
  EXPECT_EQ(g.edge(1).v, 2);
}

TEST(Mst, Triangle) {
  auto g = make(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}});
  auto r = minimum_spanning_tree(g);
  EXPECT_DOUBLE_EQ(r.weight, 3.0);
  EXPECT_EQ(tree_pairs(g, r), (std::set<std::pair<int, int>>{{0, 1}, {1, 2}}));
}

TEST(Mst, UnitFourCycleTieBreak) {
  auto g = make(4, {{3, 0, 1}, {2, 3, 1}, {1, 2, 1}, {0, 1, 1}});
  // oracle: enumerate the four spanning trees (drop one edge each) and take the
  // lexicographically smallest sorted list of (w, min, max) keys
  std::vector<std::vector<std::tuple<double, int, int>>> trees;
  for (int drop = 0; drop < 4; ++drop) {
    std::vector<std::tuple<double, int, int>> t;
    for (int e = 0; e < 4; ++e)
      if (e != drop) t.push_back({g.edge(e).w, std::min(g.edge(e).u, g.edge(e).v), std::max(g.edge(e).u, g.edge(e).v)});
    std::sort(t.begin(), t.end());
    trees.push_back(t);
  }
  auto best = *std::min_element(trees.begin(), trees.end());
  std::set<std::pair<int, int>> want;
  for (auto [w, a, b] : best) want.insert({a, b});
  // (0,3) sorts before (1,2) under (w, min, max), so the cycle loses (2,3)
  EXPECT_EQ(want, (std::set<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}}));
  EXPECT_EQ(tree_pairs(g, minimum_spanning_tree(g)), want);
}

TEST(Mst, StarIsItsOwnTree) {
  auto g = make(5, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}});
  auto r = minimum_spanning_tree(g);
  EXPECT_DOUBLE_EQ(r.weight, 14.0);
  EXPECT_EQ(r.edges.size(), 4u);
  EXPECT_EQ(r.parent[3], 0);
}

TEST(Mst, DisconnectedNamesWitnesses) {
  auto g = make(4, {{0, 1, 1}, {2, 3, 1}});
  try {
    minimum_spanning_tree(g);
    FAIL();
  } catch (const DisconnectedError& e) {
    EXPECT_EQ(e.a(), 0);
    EXPECT_EQ(e.b(), 2);
  }
}

TEST(Mst, CyclePropertyExhaustive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + trial % 11;
    auto g = testutil::random_connected(n, 0.4, rng, 1, 5, true);
    auto r = minimum_spanning_tree(g);
    ASSERT_EQ(r.edges, minimum_spanning_tree(g).edges);
    std::vector<char> in(g.m(), 0);
    for (EdgeId e : r.edges) in[e] = 1;
    for (EdgeId e = 0; e < g.m(); ++e) {
      if (in[e]) continue;
      int a = g.edge(e).u, b = g.edge(e).v;
      while (a != b) {
        if (r.depth[a] < r.depth[b]) std::swap(a, b);
        ASSERT_LE(g.edge(r.parent_edge[a]).w, g.edge(e).w);
        a = r.parent[a];
      }
    }
  }
}

TEST(Sssp, Basics) {
  auto p = testutil::path(3);
  EXPECT_EQ(sssp_distances(p, 0), (std::vector<double>{0, 1, 2}));
  auto t = make(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 10}});
  EXPECT_DOUBLE_EQ(sssp_distances(t, 0)[2], 2.0);
  auto d = make(3, {{0, 1, 1}});
  EXPECT_TRUE(std::isinf(sssp_distances(d, 0)[2]));
}

TEST(Normalize, Examples) {
  auto [a, s1] = normalize_weights(make(4, {{0, 1, 2}, {1, 2, 4}, {2, 3, 6}}));
  EXPECT_DOUBLE_EQ(s1, 2.0);
  EXPECT_DOUBLE_EQ(a.edge(2).w, 3.0);
  auto [b, s2] = normalize_weights(make(3, {{0, 1, 1}, {1, 2, 5}}));
  EXPECT_DOUBLE_EQ(s2, 1.0);
  EXPECT_DOUBLE_EQ(b.edge(1).w, 5.0);
  auto [c, s3] = normalize_weights(make(3, {{0, 1, 0.5}, {1, 2, 0.5}}));
  EXPECT_DOUBLE_EQ(s3, 0.5);
  EXPECT_DOUBLE_EQ(c.edge(0).w, 1.0);
  EXPECT_THROW(normalize_weights(WeightedGraph(3)), GraphError);
}

TEST(Normalize, DistancesScaleBack) {
  std::mt19937_64 rng(5);
  auto g = testutil::random_connected(40, 0.1, rng, 0.3, 70.0);
  auto [h, scale] = normalize_weights(g);
  auto dg = sssp_distances(g, 0), dh = sssp_distances(h, 0);
  for (int v = 0; v < g.n(); ++v) EXPECT_NEAR(dh[v] * scale, dg[v], 1e-12 * std::max(1.0, dg[v]));
}
