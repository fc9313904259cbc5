#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spanner/graph.hpp"
#include "spanner/spanner.hpp"

namespace spanner::io {

// FNV-1a of the canonical edge-list text, 16 hex digits.
std::string graph_hash(const WeightedGraph& g);

// "# algo=<a> k=<k> eps=<e> n=<n> source_hash=<h>" then the edge list of h.
std::string spanner_text(const WeightedGraph& g, const Spanner& s);

struct SpannerFile {
  std::string algo;
  int k = 1;
  double eps = 0.0;
  int n = 0;
  std::string source_hash;
  WeightedGraph h;
};

SpannerFile parse_spanner(const std::string& text);
SpannerFile read_spanner(const std::string& path);

struct GenSpec {
  std::string type = "gnp";        // gnp | grid | geometric
  int n = 100;
  double p = -1.0;                 // gnp edge probability, default 8/n
  double radius = -1.0;            // geometric, default 1.5*sqrt(ln n / n)
  std::string weights = "uniform"; // uniform | loguniform | unit
  double wmin = 1.0, wmax = 100.0;
  std::uint64_t seed = 1;
};

// Always connected: leftover components are joined by random edges.
WeightedGraph generate(const GenSpec& spec);

struct TraceOp {
  char kind = 'F';  // 'L' link, 'U' union, 'F' find
  int a = 0, b = 0;
};

std::vector<TraceOp> parse_trace(const std::string& text);
// Classic engine: U and F only. Static engine: L and F only, over tree_parent.
std::vector<int> replay_classic(int n, const std::vector<TraceOp>& ops, std::uint64_t* cost = nullptr);
std::vector<int> replay_static(const std::vector<int>& tree_parent, const std::vector<TraceOp>& ops,
                               std::uint64_t* cost = nullptr);

}  // namespace spanner::io
