#include "spanner/buckets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace spanner {

BucketGrid::BucketGrid(double eps, double base) : eps_(eps), base_(base) {
  if (!(eps > 0.0 && eps < 1.0)) throw GraphError("eps must lie in (0,1)");
  if (!(base > 0.0)) throw GraphError("grid base must be positive");
  log_step_ = std::log1p(eps);
  mu_ = static_cast<int>(std::ceil(std::log(1.0 / eps) / log_step_ - 1e-12));
  if (mu_ < 1) mu_ = 1;
  while (std::pow(1.0 + eps, mu_) * eps < 1.0) ++mu_;
}

double BucketGrid::threshold(long long j) const {
  return base_ * std::pow(1.0 + eps_, static_cast<double>(j));
}

long long BucketGrid::index(double w) const {
  if (!(w > 0.0)) throw GraphError("weight must be positive");
  auto j = static_cast<long long>(std::ceil(std::log(w / base_) / log_step_));
  while (w > threshold(j)) ++j;
  while (w <= threshold(j - 1)) --j;
  if (j < 0) throw GraphError("weight below the bucket range");
  return j;
}

double BucketGrid::level_scale(int sigma, long long i) const {
  if (i < 0) return 0.0;
  return threshold(sigma + i * mu_);
}

long long BucketGrid::level_in_class(double w, int sigma) const {
  long long j = index(w);
  if (j <= sigma) return 0;
  return (j - sigma + mu_ - 1) / mu_;
}

std::pair<int, long long> bucket_index(double w, double eps, double base) {
  BucketGrid grid(eps, base);
  long long j = grid.index(w);
  return {grid.sigma_of(j), grid.level_of(j)};
}

std::size_t LevelBuckets::edge_count() const {
  std::size_t c = 0;
  for (const auto& cls : per_sigma)
    for (const Level& l : cls) c += l.edges.size();
  return c;
}

std::string LevelBuckets::debug_csv(const WeightedGraph& g) const {
  std::string out = "sigma,i,count,minw,maxw\n";
  char buf[160];
  for (std::size_t s = 0; s < per_sigma.size(); ++s) {
    for (const Level& l : per_sigma[s]) {
      double lo = kInf, hi = 0.0;
      for (EdgeId e : l.edges) {
        lo = std::min(lo, g.edge(e).w);
        hi = std::max(hi, g.edge(e).w);
      }
      std::snprintf(buf, sizeof buf, "%zu,%lld,%zu,%.17g,%.17g\n", s, l.i, l.edges.size(), lo, hi);
      out += buf;
    }
  }
  return out;
}

LevelBuckets partition_edges(const WeightedGraph& g, const std::vector<EdgeId>& ids, double eps,
                             double base) {
  LevelBuckets b;
  b.grid = BucketGrid(eps, base);
  b.per_sigma.resize(b.grid.mu());
  std::vector<std::pair<long long, EdgeId>> keyed;
  keyed.reserve(ids.size());
  for (EdgeId e : ids) keyed.push_back({b.grid.index(g.edge(e).w), e});
  std::sort(keyed.begin(), keyed.end());
  for (auto [j, e] : keyed) {
    auto& cls = b.per_sigma[b.grid.sigma_of(j)];
    long long i = b.grid.level_of(j);
    if (cls.empty() || cls.back().i != i) cls.push_back({i, {}});
    cls.back().edges.push_back(e);
  }
  return b;
}

LevelBuckets partition_edges(const WeightedGraph& g, double eps, double base) {
  std::vector<EdgeId> ids(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) ids[e] = e;
  return partition_edges(g, ids, eps, base);
}

std::vector<Level> mst_edge_levels(const WeightedGraph& g, const std::vector<EdgeId>& tree_edges,
                                   const BucketGrid& grid, int sigma) {
  std::map<long long, std::vector<EdgeId>> by_level;
  for (EdgeId e : tree_edges) by_level[grid.level_in_class(g.edge(e).w, sigma)].push_back(e);
  std::vector<Level> out;
  out.reserve(by_level.size());
  for (auto& [i, es] : by_level) out.push_back({i, std::move(es)});
  return out;
}

}  // namespace spanner
