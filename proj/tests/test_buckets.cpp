#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "spanner/buckets.hpp"

using namespace spanner;

namespace {

// linear scan over thresholds base*(1+eps)^j computed by repeated multiplication
long long scan_index(double w, double eps, double base) {
  long long j = 0;
  double t = base;
  while (w > t) {
    t *= 1.0 + eps;
    ++j;
  }
  return j;
}

}  // namespace

TEST(Buckets, Examples) {
  EXPECT_EQ(bucket_index(1.0, 0.5, 1.0), (std::pair<int, long long>{0, 0}));
  EXPECT_EQ(bucket_index(1.5, 0.5, 1.0), (std::pair<int, long long>{1, 0}));
  EXPECT_EQ(bucket_index(3.375, 0.5, 1.0), (std::pair<int, long long>{1, 1}));
  BucketGrid grid(0.5, 1.0);
  EXPECT_EQ(grid.mu(), 2);
  EXPECT_THROW(grid.index(0.5), GraphError);
}

TEST(Buckets, AgreesWithThresholdScan) {
  std::mt19937_64 rng(1);
  for (double eps : {0.1, 0.25, 0.5}) {
    BucketGrid grid(eps, 1.0);
    std::uniform_real_distribution<double> lw(0.0, std::log(1e6));
    for (int t = 0; t < 100000; ++t) {
      double w = std::exp(lw(rng));
      long long j = grid.index(w);
      long long ref = scan_index(w, eps, 1.0);
      // repeated multiplication drifts by ulps; only disagree at an exact boundary
      if (j != ref) {
        ASSERT_LE(std::abs(j - ref), 1);
        ASSERT_NEAR(w, grid.threshold(std::min(j, ref)), 1e-9 * w);
      }
    }
  }
}

TEST(Buckets, GridConsistency) {
  for (double eps : {0.01, 0.1, 0.25, 0.5, 0.9}) {
    BucketGrid grid(eps, 1.0);
    for (long long j = 1; j < 200; ++j) {
      EXPECT_NEAR(grid.threshold(j) / grid.threshold(j - 1), 1 + eps, 1e-9);
      EXPECT_GE(grid.threshold(j + grid.mu()) / grid.threshold(j) * (1 + 1e-9), 1 / eps);
    }
    EXPECT_LT(std::pow(1 + eps, grid.mu() - 1), 1 / eps);
  }
}

TEST(Buckets, PartitionProperties) {
  std::mt19937_64 rng(9);
  auto g = testutil::random_connected(60, 0.2, rng, 1.0, 500.0);
  auto [h, s] = normalize_weights(g);
  for (double eps : {0.1, 0.5}) {
    auto b = partition_edges(h, eps);
    EXPECT_EQ(b.edge_count(), static_cast<std::size_t>(h.m()));
    std::set<EdgeId> seen;
    for (auto& cls : b.per_sigma) {
      for (std::size_t x = 0; x < cls.size(); ++x) {
        if (x > 0) EXPECT_LT(cls[x - 1].i, cls[x].i);
        double lo = kInf, hi = 0;
        for (EdgeId e : cls[x].edges) {
          EXPECT_TRUE(seen.insert(e).second);
          lo = std::min(lo, h.edge(e).w);
          hi = std::max(hi, h.edge(e).w);
        }
        EXPECT_LE(hi / lo, (1 + eps) * (1 + 1e-12));
      }
    }
  }
}

TEST(Buckets, SmallCases) {
  auto same = testutil::complete(5, 3.0);
  auto b = partition_edges(normalize_weights(same).first, 0.25);
  int nonempty = 0;
  for (auto& cls : b.per_sigma) nonempty += static_cast<int>(cls.size());
  EXPECT_EQ(nonempty, 1);

  auto two = testutil::make(3, {{0, 1, 1.0}, {1, 2, 4.0}});
  auto b2 = partition_edges(two, 0.5);
  auto j0 = b2.grid.index(1.0), j1 = b2.grid.index(4.0);
  EXPECT_NE(std::make_pair(b2.grid.sigma_of(j0), b2.grid.level_of(j0)),
            std::make_pair(b2.grid.sigma_of(j1), b2.grid.level_of(j1)));

  auto empty = partition_edges(WeightedGraph(4), 0.1);
  EXPECT_EQ(empty.edge_count(), 0u);
  EXPECT_EQ(empty.grid.mu(), static_cast<int>(std::ceil(std::log(10.0) / std::log(1.1))));
  EXPECT_EQ(b2.debug_csv(two).substr(0, 24), "sigma,i,count,minw,maxw\n");
}

TEST(Buckets, TreeLevels) {
  auto unit = testutil::path(5);
  BucketGrid grid(0.5, 1.0);
  auto mst = minimum_spanning_tree(unit);
  for (int s = 0; s < grid.mu(); ++s) {
    auto lv = mst_edge_levels(unit, mst.edges, grid, s);
    ASSERT_EQ(lv.size(), 1u);
    EXPECT_EQ(lv[0].i, 0);
  }
  auto two = testutil::make(3, {{0, 1, 1.0}, {1, 2, 10.0}});
  auto t2 = minimum_spanning_tree(two);
  for (int s = 0; s < grid.mu(); ++s) EXPECT_EQ(mst_edge_levels(two, t2.edges, grid, s).size(), 2u);
  for (int s = 0; s < grid.mu(); ++s) {
    for (double w : {1.0, 1.2, 2.0, 3.375, 10.0, 77.0}) {
      long long i = grid.level_in_class(w, s);
      EXPECT_GT(w, grid.level_scale(s, i - 1));
      EXPECT_LE(w, grid.level_scale(s, i));
    }
  }
}
