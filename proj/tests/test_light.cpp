#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "spanner/io.hpp"
#include "spanner/light.hpp"
#include "spanner/oracle.hpp"
#include "spanner/spanner.hpp"

using namespace spanner;

namespace {

// Augmented distance between a and b in a level tree, by walking the unique
// path found with a BFS from a.
double brute_tree_distance(const LightLevelSnapshot& s, int a, int b, std::vector<int>* path = nullptr) {
  const int V = static_cast<int>(s.omega.size());
  std::vector<std::vector<std::pair<int, double>>> adj(V);
  for (std::size_t j = 0; j < s.tree.size(); ++j) {
    adj[s.tree[j].first].push_back({s.tree[j].second, s.tree_w[j]});
    adj[s.tree[j].second].push_back({s.tree[j].first, s.tree_w[j]});
  }
  std::vector<int> prev(V, -2);
  std::vector<double> via(V, 0.0);
  std::vector<int> queue{a};
  prev[a] = -1;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (auto [y, w] : adj[queue[h]])
      if (prev[y] == -2) {
        prev[y] = queue[h];
        via[y] = w;
        queue.push_back(y);
      }
  double d = 0.0;
  for (int x = b; x != -1; x = prev[x]) {
    d += s.omega[x] + via[x];
    if (path) path->push_back(x);
  }
  return d;
}

double piece_adm(const std::vector<PathNode>& nodes, const std::vector<double>& edge, int a, int b) {
  double s = 0.0;
  for (int j = a; j <= b; ++j) s += nodes[j].weight + (j < b ? edge[j] : 0.0);
  return s;
}

void expect_cover(const std::vector<std::pair<int, int>>& pieces, int r) {
  ASSERT_FALSE(pieces.empty());
  EXPECT_EQ(pieces.front().first, 0);
  EXPECT_EQ(pieces.back().second, r - 1);
  for (std::size_t q = 1; q < pieces.size(); ++q) EXPECT_EQ(pieces[q].first, pieces[q - 1].second + 1);
}

WeightedGraph heavy_instance(int n, double p, std::uint64_t seed) {
  io::GenSpec gs;
  gs.n = n;
  gs.p = p;
  gs.weights = "loguniform";
  gs.wmin = 1.0;
  gs.wmax = 1e5;
  gs.seed = seed;
  return io::generate(gs);
}

}  // namespace

TEST(LightSplit, ThresholdAndClasses) {
  // w(MST) = 3, m = 4, eps = 0.5 -> threshold 1.5
  auto g = testutil::make(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 2, 2}});
  auto s = split_light_heavy(g, 3.0, 0.5);
  EXPECT_DOUBLE_EQ(s.threshold, 1.5);
  EXPECT_EQ(s.light, (std::vector<EdgeId>{0, 1, 2}));
  EXPECT_EQ(s.heavy, (std::vector<EdgeId>{3}));
  EXPECT_TRUE(s.dropped.empty());
}

TEST(LightSplit, EdgeOfTwiceTheTreeWeightIsDropped) {
  auto g = testutil::make(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 6}});
  auto s = split_light_heavy(g, 3.0, 0.5);
  EXPECT_EQ(s.dropped, (std::vector<EdgeId>{3}));
  auto h = build_light(g, {2, 0.5, true});
  EXPECT_EQ(h.edges, (std::vector<EdgeId>{0, 1, 2}));
}

TEST(LightSubdivision, Pieces) {
  EXPECT_EQ(subdivision_pieces(5, 2), (std::vector<double>{2, 2, 1}));
  EXPECT_EQ(subdivision_pieces(2, 2), (std::vector<double>{2}));
  EXPECT_EQ(subdivision_pieces(4, 2), (std::vector<double>{2, 2}));
  EXPECT_EQ(subdivision_pieces(0.5, 2), (std::vector<double>{0.5}));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int t = 0; t < 200; ++t) {
    double w = u(rng), gran = u(rng) / 7;
    auto p = subdivision_pieces(w, gran);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), w, 1e-9 * w);
    EXPECT_EQ(p.size(), static_cast<std::size_t>(std::max(1.0, std::ceil(w / gran - 1e-12))));
    for (double x : p) {
      EXPECT_GT(x, 0.0);
      EXPECT_LE(x, gran * (1 + 1e-12));
    }
  }
  EXPECT_THROW(subdivision_pieces(1.0, 0.0), std::invalid_argument);
}

TEST(LightSubdivision, TreeKeepsPathWeights) {
  std::mt19937_64 rng(4);
  auto g = testutil::random_connected(30, 0.2, rng, 1, 20);
  auto mst = minimum_spanning_tree(g);
  auto t = subdivide_tree(g, mst, 1.5);
  EXPECT_EQ(t.real, 30);
  EXPECT_EQ(static_cast<int>(t.order.size()), t.size());
  double total = 0.0;
  for (int v = 0; v < t.size(); ++v) {
    if (t.parent[v] < 0) continue;
    total += t.up_weight[v];
    EXPECT_LE(t.up_weight[v], 1.5 + 1e-12);
    if (t.is_virtual(v)) EXPECT_GE(t.host[v], 0);
  }
  EXPECT_NEAR(total, mst.weight, 1e-9 * mst.weight);
  // each real vertex climbs back to its MST parent through its own edge's chain
  for (int v = 1; v < 30; ++v) {
    int x = t.parent[v];
    while (t.is_virtual(x)) {
      EXPECT_EQ(t.host[x], mst.parent_edge[v]);
      x = t.parent[x];
    }
    EXPECT_EQ(x, mst.parent[v]);
  }
}

TEST(LightBreakPath, AllVirtualPath) {
  const double L = 1.0;
  std::vector<PathNode> nodes(40, {0.1, true, false, false});
  nodes.front().is_virtual = nodes.back().is_virtual = false;
  std::vector<double> edge(39, 0.1);
  auto pieces = break_long_path(nodes, edge, L);
  expect_cover(pieces, 40);
  for (auto [a, b] : pieces) {
    double adm = piece_adm(nodes, edge, a, b);
    EXPECT_GE(adm, L);
    EXPECT_LE(adm, 2 * L);
  }
}

TEST(LightBreakPath, NonIsolatedNodeKeepsItsPartner) {
  const double L = 1.0;
  std::vector<PathNode> nodes(10, {0.2, true, false, false});
  for (int j : {0, 4, 5, 9}) nodes[j].is_virtual = false;
  nodes[5].non_isolated = true;
  std::vector<double> edge(9, 0.6);
  edge[4] = 0.5;  // the contracted edge (4,5) is at most L
  auto pieces = break_long_path(nodes, edge, L);
  expect_cover(pieces, 10);
  for (auto [a, b] : pieces) {
    double adm = piece_adm(nodes, edge, a, b);
    EXPECT_GE(adm, L);
    EXPECT_LE(adm, 7 * L);
    if (a <= 5 && 5 <= b) {
      int nv = 0;
      for (int j = a; j <= b; ++j) nv += !nodes[j].is_virtual;
      EXPECT_GE(nv, 2);
    }
  }
}

TEST(LightBreakPath, ExactlySixL) {
  std::vector<PathNode> nodes(7, {0.0, false, false, false});
  std::vector<double> edge(6, 1.0);
  auto pieces = break_long_path(nodes, edge, 1.0);
  expect_cover(pieces, 7);
  for (auto [a, b] : pieces) {
    EXPECT_GE(piece_adm(nodes, edge, a, b), 1.0);
    EXPECT_LE(piece_adm(nodes, edge, a, b), 7.0);
  }
}

TEST(LightBreakPath, RejectsShortOrMismatched) {
  std::vector<PathNode> nodes(3, {0.0, false, false, false});
  EXPECT_THROW(break_long_path(nodes, {1.0, 1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(break_long_path(nodes, {1.0}, 0.1), std::invalid_argument);
}

TEST(LightBreakPath, RandomPathsStayInBounds) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // weights stay small next to L, as tree pieces and virtual clusters do
  const double L = 1.0;
  int tried = 0;
  for (int t = 0; t < 300; ++t) {
    int r = 30 + static_cast<int>(u(rng) * 120);
    std::vector<PathNode> nodes(r);
    std::vector<double> edge(r - 1);
    double total = 0.0;
    for (int j = 0; j < r; ++j) {
      nodes[j].is_virtual = u(rng) < 0.6;
      nodes[j].weight = nodes[j].is_virtual ? 0.02 * u(rng) : 0.3 * u(rng);
      nodes[j].non_isolated = !nodes[j].is_virtual && u(rng) < 0.3;
      total += nodes[j].weight;
    }
    for (double& w : edge) {
      w = 0.2 * u(rng);
      total += w;
    }
    if (total < 6 * L) continue;
    ++tried;
    auto pieces = break_long_path(nodes, edge, L);
    expect_cover(pieces, r);
    for (auto [a, b] : pieces) {
      double adm = piece_adm(nodes, edge, a, b);
      EXPECT_GE(adm, L * (1 - 1e-12));
      EXPECT_LE(adm, 7 * L * (1 + 1e-12));
    }
  }
  EXPECT_GT(tried, 100);
}

TEST(Light, TreeInputComesBackWhole) {
  std::mt19937_64 rng(6);
  auto t = testutil::random_connected(50, 0.0, rng, 1, 100);
  auto s = build_light(t, {2, 0.25});
  EXPECT_EQ(s.edges.size(), 49u);
  EXPECT_DOUBLE_EQ(oracle::spanner_metrics(t, s.edges).lightness, 1.0);
}

TEST(Light, UnitK16) {
  auto g = testutil::complete(16);
  auto s = build_light(g, {2, 0.25});
  auto r = oracle::verify_stretch(g, s.edges, 3.75);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_stretch, 3.75);
}

TEST(Light, HeavyChordWithCheapDetour) {
  // path of ten unit edges; the chord (0,2) is heavy (threshold 10/(11*0.5))
  // and its tree detour has stretch 2/2.5
  std::vector<Edge> es;
  for (int v = 0; v < 10; ++v) es.push_back({v, v + 1, 1.0});
  es.push_back({0, 2, 2.5});
  auto g = testutil::make(11, es);
  LightTrace tr;
  auto s = build_light(g, {2, 0.5, true, false, true}, &tr);
  EXPECT_EQ(tr.heavy, (std::vector<EdgeId>{10}));
  EXPECT_EQ(s.edges.size(), 10u);
  EXPECT_TRUE(s.violations.empty());
  auto r = oracle::verify_stretch(g, s.edges, 3 * 1.5);
  EXPECT_TRUE(r.pass);
  std::vector<char> keep(g.m(), 0);
  for (EdgeId e : s.edges) keep[e] = 1;
  EXPECT_DOUBLE_EQ(sssp_distances(g, 0, keep)[2], 2.0);
}

TEST(Light, ContainsMstAndMeetsStretch) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed)
    for (bool nominal : {false, true}) {
      auto g = heavy_instance(70, 0.5, seed);
      BuildOptions o{seed % 2 ? 2 : 3, 0.5, nominal, false, !nominal};
      auto s = build_light(g, o);
      auto mst = minimum_spanning_tree(g);
      for (EdgeId e : mst.edges) EXPECT_TRUE(std::binary_search(s.edges.begin(), s.edges.end(), e));
      if (!nominal) {
        EXPECT_TRUE(oracle::verify_stretch(g, s.edges, target_stretch(o.k, o.eps)).pass) << seed;
        for (const auto& v : s.violations) ADD_FAILURE() << v;
      }
    }
}

TEST(Light, FilterMatchesBruteForceTreeDistance) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto g = heavy_instance(40, 0.4, seed);
    LightTrace tr;
    build_light(g, {2, 0.25, true}, &tr);
    ASSERT_GT(tr.filter_factor, 0.0);
    for (const auto& lv : tr.levels)
      for (const auto& c : lv.candidates) {
        double d = brute_tree_distance(lv, c.a, c.b);
        EXPECT_NEAR(c.tree_distance, d, 1e-9 * std::max(1.0, d));
        EXPECT_EQ(c.kept, d > tr.filter_factor * c.w);
        ++checked;
      }
  }
  EXPECT_GT(checked, 100);
}

TEST(Light, CyclePropertyOnLevelTrees) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    io::GenSpec gs;
    gs.n = 10 + 6 * static_cast<int>(seed);
    gs.p = 0.5;
    gs.weights = "loguniform";
    gs.wmax = 1e4;
    gs.seed = seed;
    auto g = io::generate(gs);
    LightTrace tr;
    build_light(g, {2, 0.5, true}, &tr);
    for (const auto& lv : tr.levels)
      for (const auto& c : lv.candidates) {
        if (!c.kept) continue;
        std::vector<int> path;
        brute_tree_distance(lv, c.a, c.b, &path);
        for (int x : path)
          if (lv.is_virtual[x]) {
            EXPECT_LE(g.edge(lv.host[x]).w, c.w);
            ++checked;
          }
      }
  }
  EXPECT_GT(checked, 0);
}

TEST(Light, CheckersPassInScaledMode) {
  // m > 421/eps so the heavy part is not empty
  auto g = heavy_instance(90, 0.45, 11);
  LightTrace tr;
  auto s = build_light(g, {2, 0.5, false, true, true}, &tr);
  EXPECT_FALSE(tr.heavy.empty());
  EXPECT_FALSE(tr.levels.empty());
  EXPECT_LE(tr.vtilde, 2 * (g.m() + 1));
  for (const auto& v : s.violations) ADD_FAILURE() << v;
  int levels = 0;
  for (const auto& lv : s.levels) {
    if (lv.value("kind", "") != "heavy_level") continue;
    ++levels;
    int high_edges = lv["step_edge_counts"][1];
    if (lv["degenerate"].get<bool>()) EXPECT_EQ(high_edges, 0);
    EXPECT_GE(2 * (lv["N"].get<int>() - lv["N_next"].get<int>()), lv["Y"].get<int>());
  }
  EXPECT_GT(levels, 0);
}

TEST(Light, DisconnectedInputRunsPerComponent) {
  auto g = testutil::make(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 2}, {4, 5, 2}, {3, 5, 2}});
  auto s = build_light(g, {2, 0.25});
  EXPECT_TRUE(oracle::verify_stretch(g, s.edges, 3.75).pass);
  EXPECT_GE(s.edges.size(), 4u);
}
