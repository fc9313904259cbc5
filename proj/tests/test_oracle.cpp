#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "spanner/oracle.hpp"

using namespace spanner;
using testutil::make;

namespace {

// Floyd-Warshall over all vertex pairs
double all_pairs_stretch(const WeightedGraph& g, const WeightedGraph& h) {
  int n = g.n();
  auto fw = [&](const WeightedGraph& x) {
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (const Edge& e : x.edges()) d[e.u][e.v] = d[e.v][e.u] = std::min(d[e.u][e.v], e.w);
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
    return d;
  };
  auto dg = fw(g), dh = fw(h);
  double worst = 1.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (dg[a][b] < kInf) worst = std::max(worst, dh[a][b] / dg[a][b]);
  return worst;
}

}  // namespace

TEST(Greedy, Examples) {
  EXPECT_EQ(oracle::greedy_spanner(testutil::cycle(4), 3.0).size(), 3u);
  auto tri = make(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 2}});
  EXPECT_EQ(oracle::greedy_spanner(tri, 1.0), (std::vector<EdgeId>{0, 1}));
  std::mt19937_64 rng(1);
  auto tree = testutil::random_connected(30, 0.0, rng);
  EXPECT_EQ(oracle::greedy_spanner(tree, 5.0).size(), 29u);
}

TEST(Greedy, SelfConsistentAndMonotone) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 3 + static_cast<int>(rng() % 25);
    auto g = testutil::random_connected(n, 0.3, rng, 1, 20);
    double t = 1.0 + (rng() % 5);
    auto h = oracle::greedy_spanner(g, t);
    ASSERT_TRUE(oracle::verify_stretch(g, h, t).pass);
    ASSERT_LE(oracle::greedy_spanner(g, t + 1).size(), h.size());
  }
}

TEST(Verify, Examples) {
  auto k3 = testutil::complete(3);
  EXPECT_DOUBLE_EQ(oracle::verify_stretch(k3, k3, 1.0).max_stretch, 1.0);
  auto r = oracle::verify_stretch(k3, std::vector<EdgeId>{0, 1}, 3.0);
  EXPECT_DOUBLE_EQ(r.max_stretch, 2.0);
  auto p = testutil::path(4);
  auto cut = oracle::verify_stretch(p, std::vector<EdgeId>{0, 2}, 10.0);
  EXPECT_TRUE(std::isinf(cut.max_stretch));
  EXPECT_FALSE(cut.pass);
  EXPECT_EQ(cut.witness.u, 1);
  EXPECT_EQ(cut.witness.v, 2);
  EXPECT_THROW(oracle::verify_stretch(p, make(4, {{0, 3, 1}}), 3.0), GraphError);
  EXPECT_THROW(oracle::verify_stretch(p, make(4, {{0, 1, 2}}), 3.0), GraphError);
}

TEST(Verify, EdgeMaximumEqualsAllPairs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto g = testutil::random_connected(n, 0.5, rng, 1, 8, true);
    std::vector<EdgeId> keep;
    for (EdgeId e = 0; e < g.m(); ++e)
      if (rng() % 3) keep.push_back(e);
    auto h = g.subgraph(keep);
    double want = all_pairs_stretch(g, h);
    double got = oracle::verify_stretch(g, h, 100).max_stretch;
    if (std::isinf(want)) ASSERT_TRUE(std::isinf(got));
    else ASSERT_NEAR(got, want, 1e-12 * want);
  }
}

TEST(Metrics, Examples) {
  auto k4 = testutil::complete(4);
  auto q = oracle::spanner_metrics(k4, k4);
  EXPECT_DOUBLE_EQ(q.sparsity, 2.0);
  EXPECT_DOUBLE_EQ(q.lightness, 2.0);
  std::mt19937_64 rng(4);
  auto g = testutil::random_connected(50, 0.2, rng);
  auto mst = minimum_spanning_tree(g);
  auto m = oracle::spanner_metrics(g, mst.edges);
  EXPECT_DOUBLE_EQ(m.sparsity, 1.0);
  EXPECT_NEAR(m.lightness, 1.0, 1e-12);
  std::vector<EdgeId> half;
  double w = 0;
  for (EdgeId e = 0; e < g.m(); e += 2) {
    half.push_back(e);
    w += g.edge(e).w;
  }
  auto hm = oracle::spanner_metrics(g, half);
  EXPECT_NEAR(hm.lightness, w / mst.weight, 1e-12);
  EXPECT_DOUBLE_EQ(hm.sparsity, static_cast<double>(half.size()) / 49);
}
