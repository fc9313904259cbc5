#pragma once

#include <utility>
#include <vector>

namespace spanner {

struct StarCover {
  std::vector<int> group;        // group id per vertex
  std::vector<int> center;       // center vertex per group
  std::vector<int> used_edges;   // indices of input edges joining each group
  int groups() const { return static_cast<int>(center.size()); }
};

// Two-step cover of a graph without isolated vertices by vertex-disjoint
// subgraphs of at least 2 vertices and hop diameter at most 4.
// Step 1 scans vertices ascending; v becomes a center when v and all its
// neighbors are uncovered, and takes all of them. Step 2 attaches every
// uncovered vertex to its smallest-id neighbor covered in step 1.
// Throws std::invalid_argument on an isolated vertex.
StarCover star_cover(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace spanner
