#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

// Geometric threshold grid T_j = base * (1+eps)^j. Index j is split into a
// class sigma = j mod mu and a level i = j div mu, where mu is the smallest
// integer with (1+eps)^mu >= 1/eps. Within a class, level i covers weights in
// (T_{sigma+(i-1)mu}, T_{sigma+i*mu}].
class BucketGrid {
 public:
  BucketGrid() = default;
  BucketGrid(double eps, double base);

  double eps() const { return eps_; }
  double base() const { return base_; }
  int mu() const { return mu_; }

  double threshold(long long j) const;
  // Unique j with w in (T_{j-1}, T_j]; throws GraphError when j < 0.
  long long index(double w) const;
  int sigma_of(long long j) const { return static_cast<int>(j % mu_); }
  long long level_of(long long j) const { return j / mu_; }
  // L_i of class sigma; i may be -1, which returns 0.
  double level_scale(int sigma, long long i) const;
  // Smallest level i >= 0 of class sigma with L_i >= w.
  long long level_in_class(double w, int sigma) const;

 private:
  double eps_ = 0.5, base_ = 1.0, log_step_ = 0.0;
  int mu_ = 1;
};

std::pair<int, long long> bucket_index(double w, double eps, double base);

struct Level {
  long long i = 0;
  std::vector<EdgeId> edges;
};

struct LevelBuckets {
  BucketGrid grid;
  // per_sigma[s] lists the non-empty levels of class s, ascending in i.
  std::vector<std::vector<Level>> per_sigma;
  std::size_t edge_count() const;
  std::string debug_csv(const WeightedGraph& g) const;
};

LevelBuckets partition_edges(const WeightedGraph& g, double eps, double base = 1.0);
// Same, over a subset of edge ids.
LevelBuckets partition_edges(const WeightedGraph& g, const std::vector<EdgeId>& ids,
                             double eps, double base = 1.0);

// Tree edges of class sigma grouped by level (B_i), sparse and ascending in i.
std::vector<Level> mst_edge_levels(const WeightedGraph& g, const std::vector<EdgeId>& tree_edges,
                                   const BucketGrid& grid, int sigma);

}  // namespace spanner
