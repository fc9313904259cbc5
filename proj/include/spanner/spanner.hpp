#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spanner/graph.hpp"

namespace spanner {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BuildOptions {
  int k = 2;
  double eps = 0.25;
  bool nominal = false;     // use eps as given instead of the scaled internal value
  bool instrument = false;  // fill Spanner::levels
  bool check = false;       // run the (slow) structural checkers
};

struct Spanner {
  std::string algo;
  int k = 1;
  double eps = 0.0;
  double internal_eps = 0.0;
  bool nominal = false;
  std::vector<EdgeId> edges;  // ascending, unique
  std::uint64_t ops = 0;
  nlohmann::json levels = nlohmann::json::array();
  // Checker findings, each naming the property that failed.
  std::vector<std::string> violations;
};

void validate(const BuildOptions& opt);

// (2k-1)(1+eps), the stretch every construction here promises.
inline double target_stretch(int k, double eps) { return (2.0 * k - 1.0) * (1.0 + eps); }

Spanner build_greedy(const WeightedGraph& g, const BuildOptions& opt);
// Ignores weights; stretch 2k-1 in hops.
Spanner build_hz(const WeightedGraph& g, const BuildOptions& opt);
Spanner build_pm(const WeightedGraph& g, const BuildOptions& opt);

struct LinearLevelSnapshot {
  int sigma = 0;
  long long i = 0;
  double scale = 0.0;             // L_i, in normalized weights
  std::vector<int> rep;           // cluster representative of each vertex before merging
  std::vector<int> forest_nodes;  // representatives incident to the level's forest edges
  std::vector<EdgeId> bucket;     // edges of the level's weight class
};

struct LinearTrace {
  std::vector<int> tree_parent;   // the MST the union-find runs on
  std::vector<double> tree_weight;  // normalized weight of (v, parent(v))
  double scale = 1.0;             // normalization divisor
  std::vector<LinearLevelSnapshot> levels;
};

// trace is only filled for connected inputs.
Spanner build_linear(const WeightedGraph& g, const BuildOptions& opt, LinearTrace* trace = nullptr);
struct LightTrace;
// trace is only filled for connected inputs.
Spanner build_light(const WeightedGraph& g, const BuildOptions& opt, LightTrace* trace = nullptr);

Spanner build(const std::string& algo, const WeightedGraph& g, const BuildOptions& opt);

}  // namespace spanner
