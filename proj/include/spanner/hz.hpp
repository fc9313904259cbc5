#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace spanner {

struct HzResult {
  std::vector<int> kept;  // indices into the input edge list, ascending
  std::uint64_t ops = 0;  // adjacency entries scanned
};

// (2k-1)-spanner of a simple unweighted graph by ball growing. Vertices are
// scanned in ascending id; each ball grows while its next layer is larger
// than n^{1/k} times the ball. Throws GraphError on self-loops or parallel edges.
HzResult hz_spanner(int n, const std::vector<std::pair<int, int>>& edges, int k);

}  // namespace spanner
