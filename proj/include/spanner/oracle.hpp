#pragma once

#include <string>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner::oracle {

// Kept edge ids of the greedy t-spanner: edges in nondecreasing weight (ties by
// id), an edge kept iff the current spanner distance exceeds t * w.
std::vector<EdgeId> greedy_spanner(const WeightedGraph& g, double t);

struct StretchHistogram {
  std::vector<double> upper;          // bucket upper bounds, last is +inf
  std::vector<std::size_t> count;
};

struct StretchReport {
  double max_stretch = 1.0;
  Edge witness{-1, -1, 0.0};
  double target = 1.0;
  bool pass = true;
  StretchHistogram histogram;
};

// Exact max over edges of g of d_h(u,v)/w(u,v). h must be a subgraph of g on
// the same vertex ids (every h edge present in g with the same weight);
// otherwise GraphError. Passes iff max <= t*(1+1e-9).
StretchReport verify_stretch(const WeightedGraph& g, const WeightedGraph& h, double t);
StretchReport verify_stretch(const WeightedGraph& g, const std::vector<EdgeId>& h, double t);

struct QualityMetrics {
  std::size_t edges = 0;
  double weight = 0.0;
  double sparsity = 0.0;
  double lightness = 0.0;
};

QualityMetrics spanner_metrics(const WeightedGraph& g, const WeightedGraph& h);
QualityMetrics spanner_metrics(const WeightedGraph& g, const std::vector<EdgeId>& h);

// Minimum spanning forest weight by Prim, independent of the library MST.
double mst_weight(const WeightedGraph& g);

std::string report_json(const StretchReport& r);

}  // namespace spanner::oracle
