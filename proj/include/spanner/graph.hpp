#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spanner {

using Vertex = int;
using EdgeId = int;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 0.0;
};

struct IngestReport {
  std::size_t collapsed = 0;
  std::size_t self_loops = 0;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Compressed adjacency: neighbors of v are entries [offset[v], offset[v+1]).
struct Adjacency {
  std::vector<int> offset;
  std::vector<Vertex> to;
  std::vector<EdgeId> edge;
};

class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n) : n_(n) {}

  // Builds a simple graph: self-loops dropped, parallel edges collapsed to
  // the lightest. Edge ids follow first appearance of each unordered pair.
  static WeightedGraph from_edges(int n, const std::vector<Edge>& raw,
                                  IngestReport* report = nullptr);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  double total_weight() const;

  const Adjacency& adjacency() const;

  // Subgraph on the same vertex set keeping the listed edges, in order.
  WeightedGraph subgraph(const std::vector<EdgeId>& keep) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  mutable Adjacency adj_;
  mutable bool adj_built_ = false;
};

struct MstResult {
  Vertex root = 0;
  std::vector<Vertex> parent;          // -1 at the root
  std::vector<EdgeId> parent_edge;     // -1 at the root
  std::vector<EdgeId> edges;           // tree edge ids, in Kruskal order
  std::vector<Vertex> order;           // BFS order from the root
  std::vector<int> depth;
  double weight = 0.0;
};

class DisconnectedError : public GraphError {
 public:
  DisconnectedError(Vertex a, Vertex b)
      : GraphError("graph is disconnected: no path between " + std::to_string(a) +
                   " and " + std::to_string(b)),
        a_(a),
        b_(b) {}
  Vertex a() const { return a_; }
  Vertex b() const { return b_; }

 private:
  Vertex a_, b_;
};

// Kruskal with ties broken by (w, min endpoint, max endpoint); rooted at 0.
MstResult minimum_spanning_tree(const WeightedGraph& g, Vertex root = 0);

// Exact Dijkstra; unreachable vertices get +infinity.
std::vector<double> sssp_distances(const WeightedGraph& g, Vertex source);

// Dijkstra restricted to edges with allowed[e] != 0.
std::vector<double> sssp_distances(const WeightedGraph& g, Vertex source,
                                   const std::vector<char>& allowed);

// Divides every weight by the minimum weight; returns the scale used.
std::pair<WeightedGraph, double> normalize_weights(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

enum class GraphFormat { kEdgeList, kDimacs };

WeightedGraph load_graph(const std::string& path, GraphFormat format,
                         IngestReport* report = nullptr);
WeightedGraph parse_graph(const std::string& text, GraphFormat format,
                          IngestReport* report = nullptr);
void save_edge_list(const std::string& path, const WeightedGraph& g);
std::string to_edge_list(const WeightedGraph& g);

}  // namespace spanner
