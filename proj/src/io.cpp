#include "spanner/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "spanner/dsu.hpp"

namespace spanner::io {

std::string graph_hash(const WeightedGraph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string spanner_text(const WeightedGraph& g, const Spanner& s) {
  char head[256];
  std::snprintf(head, sizeof head, "# algo=%s k=%d eps=%.17g n=%d source_hash=%s\n", s.algo.c_str(), s.k,
                s.eps, g.n(), graph_hash(g).c_str());
  return head + to_edge_list(g.subgraph(s.edges));
}

SpannerFile parse_spanner(const std::string& text) {
  SpannerFile f;
  std::istringstream in(text);
  std::string first;
  std::getline(in, first);
  if (first.rfind("# ", 0) != 0) throw GraphError("line 1: missing spanner header");
  std::istringstream hs(first.substr(2));
  std::string tok;
  bool have_k = false, have_eps = false;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "algo") f.algo = val;
      else if (key == "k") f.k = std::stoi(val), have_k = true;
      else if (key == "eps") f.eps = std::stod(val), have_eps = true;
      else if (key == "n") f.n = std::stoi(val);
      else if (key == "source_hash") f.source_hash = val;
    } catch (const std::exception&) {
      throw GraphError("line 1: bad header value for " + key);
    }
  }
  if (!have_k || !have_eps) throw GraphError("line 1: header lacks k or eps");
  f.h = parse_graph(text, GraphFormat::kEdgeList);
  return f;
}

SpannerFile read_spanner(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spanner(buf.str());
}

namespace {

double draw_weight(const GenSpec& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (s.weights == "unit") return 1.0;
  if (s.weights == "uniform") return s.wmin + (s.wmax - s.wmin) * u(rng);
  if (s.weights == "loguniform") return std::exp(std::log(s.wmin) + (std::log(s.wmax) - std::log(s.wmin)) * u(rng));
  throw GraphError("unknown weight law \"" + s.weights + "\"");
}

void join_components(int n, std::vector<Edge>& es, const std::function<double(int, int)>& weight,
                     std::mt19937_64& rng) {
  ClassicUF uf(n);
  for (const Edge& e : es) uf.unite(e.u, e.v);
  std::vector<int> reps;
  for (int v = 0; v < n; ++v)
    if (uf.find(v) == v) reps.push_back(v);
  for (std::size_t c = 1; c < reps.size(); ++c) {
    std::uniform_int_distribution<std::size_t> pick(0, c - 1);
    int a = reps[c], b = reps[pick(rng)];
    es.push_back({a, b, weight(a, b)});
  }
}

}  // namespace

WeightedGraph generate(const GenSpec& s) {
  if (s.n < 1) throw GraphError("generator needs n >= 1");
  if (!(s.wmin > 0.0) || s.wmax < s.wmin) throw GraphError("weight range must satisfy 0 < wmin <= wmax");
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> es;
  const int n = s.n;
  if (s.type == "gnp") {
    double p = s.p >= 0 ? s.p : std::min(1.0, 8.0 / n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (u(rng) < p) es.push_back({a, b, draw_weight(s, rng)});
    join_components(n, es, [&](int, int) { return draw_weight(s, rng); }, rng);
  } else if (s.type == "grid") {
    int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    int cols = (n + rows - 1) / rows;
    for (int v = 0; v < n; ++v) {
      int r = v / cols, c = v % cols;
      if (c + 1 < cols && v + 1 < n) es.push_back({v, v + 1, draw_weight(s, rng)});
      if (r + 1 < rows && v + cols < n) es.push_back({v, v + cols, draw_weight(s, rng)});
    }
    join_components(n, es, [&](int, int) { return draw_weight(s, rng); }, rng);
  } else if (s.type == "geometric") {
    double r = s.radius > 0 ? s.radius : 1.5 * std::sqrt(std::log(std::max(n, 2)) / n);
    std::vector<double> x(n), y(n);
    for (int v = 0; v < n; ++v) {
      x[v] = u(rng);
      y[v] = u(rng);
    }
    auto dist = [&](int a, int b) { return std::max(1e-9, std::hypot(x[a] - x[b], y[a] - y[b])); };
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (std::hypot(x[a] - x[b], y[a] - y[b]) <= r) es.push_back({a, b, dist(a, b)});
    join_components(n, es, dist, rng);
  } else {
    throw GraphError("unknown generator \"" + s.type + "\"");
  }
  return WeightedGraph::from_edges(n, es);
}

std::vector<TraceOp> parse_trace(const std::string& text) {
  std::vector<TraceOp> ops;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    TraceOp op;
    op.kind = kind[0];
    bool ok = kind.size() == 1;
    if (op.kind == 'U') ok = ok && static_cast<bool>(ls >> op.a >> op.b);
    else if (op.kind == 'L' || op.kind == 'F') ok = ok && static_cast<bool>(ls >> op.a);
    else ok = false;
    if (!ok) throw GraphError("line " + std::to_string(lineno) + ": expected \"L v\", \"U a b\" or \"F v\"");
    ops.push_back(op);
  }
  return ops;
}

std::vector<int> replay_classic(int n, const std::vector<TraceOp>& ops, std::uint64_t* cost) {
  ClassicUF uf(n);
  std::vector<int> answers;
  for (const TraceOp& op : ops) {
    if (op.kind == 'U') uf.unite(op.a, op.b);
    else if (op.kind == 'F') answers.push_back(uf.find(op.a));
    else throw UnionFindError("classic engine has no Link operation");
  }
  if (cost) *cost = uf.ops();
  return answers;
}

std::vector<int> replay_static(const std::vector<int>& tree_parent, const std::vector<TraceOp>& ops,
                               std::uint64_t* cost) {
  StaticTreeUF uf(tree_parent);
  std::vector<int> answers;
  for (const TraceOp& op : ops) {
    if (op.kind == 'L') uf.link(op.a);
    else if (op.kind == 'F') answers.push_back(uf.find(op.a));
    else throw UnionFindError("static tree engine accepts only Link and Find");
  }
  if (cost) *cost = uf.ops();
  return answers;
}

}  // namespace spanner::io
