#pragma once

#include <utility>
#include <vector>

#include "spanner/graph.hpp"
#include "spanner/spanner.hpp"

namespace spanner {

struct LightHeavySplit {
  double threshold = 0.0;       // w(MST) / (m * eps)
  std::vector<EdgeId> light;    // w <= threshold
  std::vector<EdgeId> heavy;    // threshold < w < w(MST)
  std::vector<EdgeId> dropped;  // w >= w(MST), above the threshold
};

LightHeavySplit split_light_heavy(const WeightedGraph& g, double mst_weight, double eps);

// Pieces of one tree edge: ceil(w/granularity) parts, all equal to the
// granularity except a lighter last one. A single piece when w <= granularity.
std::vector<double> subdivision_pieces(double w, double granularity);

// The MST with every edge heavier than the granularity replaced by a path
// through virtual vertices. Vertices [0, real) are the original ones.
struct SubdividedTree {
  int real = 0;
  double granularity = 0.0;
  std::vector<int> parent;        // -1 at the root (vertex 0)
  std::vector<double> up_weight;  // weight of (v, parent(v))
  std::vector<EdgeId> host;       // MST edge carrying (v, parent(v)); -1 at the root
  std::vector<int> order;         // BFS order from the root

  int size() const { return static_cast<int>(parent.size()); }
  bool is_virtual(int v) const { return v >= real; }
};

SubdividedTree subdivide_tree(const WeightedGraph& g, const MstResult& mst, double granularity);

// One node of a long path handed to break_long_path. weight is the node weight;
// connecting only matters at the two ends.
struct PathNode {
  double weight = 0.0;
  bool is_virtual = false;
  bool non_isolated = false;
  bool connecting = false;
};

// Splits a path (edge[j] joins nodes j and j+1) of augmented length >= 6L into
// consecutive pieces, returned as inclusive index ranges. Non-isolated nodes
// are kept in a piece with another non-virtual node or a path end. Throws
// std::invalid_argument when the path is shorter than 6L or sizes disagree.
std::vector<std::pair<int, int>> break_long_path(const std::vector<PathNode>& nodes,
                                                 const std::vector<double>& edge, double scale);

struct LightCandidate {
  int a = 0, b = 0;  // cluster nodes
  double w = 0.0;
  EdgeId source = -1;
  double tree_distance = 0.0;  // augmented distance in the level tree
  bool kept = false;           // survived the distance filter
};

struct LightLevelSnapshot {
  int sigma = 0;
  long long i = 0;
  double scale = 0.0;
  std::vector<double> omega;     // node weights
  std::vector<char> is_virtual;
  std::vector<EdgeId> host;      // MST edge hosting a virtual node, -1 otherwise
  std::vector<std::pair<int, int>> tree;  // level tree edges
  std::vector<double> tree_w;
  std::vector<LightCandidate> candidates;  // after parallel dedup, before the filter
};

struct LightTrace {
  double threshold = 0.0;
  double granularity = 0.0;
  int vtilde = 0;
  double filter_factor = 0.0;  // (2k-1)(1+6 g eps')
  std::vector<EdgeId> heavy;
  std::vector<LightLevelSnapshot> levels;
};

}  // namespace spanner
