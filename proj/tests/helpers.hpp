#pragma once

#include <random>
#include <vector>

#include "spanner/graph.hpp"

namespace testutil {

using spanner::Edge;
using spanner::WeightedGraph;

inline WeightedGraph make(int n, const std::vector<Edge>& es) { return WeightedGraph::from_edges(n, es); }

inline WeightedGraph cycle(int n, double w = 1.0) {
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v) es.push_back({v, (v + 1) % n, w});
  return make(n, es);
}

inline WeightedGraph path(int n, double w = 1.0) {
  std::vector<Edge> es;
  for (int v = 0; v + 1 < n; ++v) es.push_back({v, v + 1, w});
  return make(n, es);
}

inline WeightedGraph complete(int n, double w = 1.0) {
  std::vector<Edge> es;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) es.push_back({a, b, w});
  return make(n, es);
}

inline WeightedGraph petersen() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.push_back({i, (i + 1) % 5, 1.0});
    es.push_back({i, i + 5, 1.0});
    es.push_back({5 + i, 5 + (i + 2) % 5, 1.0});
  }
  return make(10, es);
}

// Connected random graph: a random spanning tree plus G(n,p) extras.
inline WeightedGraph random_connected(int n, double p, std::mt19937_64& rng, double wlo = 1.0, double whi = 10.0,
                                      bool integral = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto w = [&]() {
    double x = wlo + (whi - wlo) * u(rng);
    return integral ? std::floor(x) : x;
  };
  std::vector<Edge> es;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    es.push_back({pick(rng), v, w()});
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (u(rng) < p) es.push_back({a, b, w()});
  return make(n, es);
}

}  // namespace testutil
