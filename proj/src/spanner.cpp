#include "spanner/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "common.hpp"
#include "spanner/dsu.hpp"
#include "spanner/hz.hpp"
#include "spanner/oracle.hpp"

namespace spanner {

void validate(const BuildOptions& opt) {
  if (opt.k < 1) throw ConfigError("k must be at least 1");
  if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw ConfigError("eps must lie in (0,1)");
}

namespace detail {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void finish(Spanner& s) {
  std::sort(s.edges.begin(), s.edges.end());
  s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
}

Spanner by_component(const WeightedGraph& g, const std::function<Spanner(const WeightedGraph&)>& fn) {
  const int n = g.n();
  ClassicUF uf(n);
  int comps = n;
  for (const Edge& e : g.edges())
    if (uf.unite(e.u, e.v)) --comps;
  if (comps <= 1) return fn(g);

  std::vector<int> comp_of(n, -1), local(n, -1);
  std::vector<std::vector<int>> members;
  for (int v = 0; v < n; ++v) {
    int r = uf.find(v);
    if (comp_of[r] < 0) {
      comp_of[r] = static_cast<int>(members.size());
      members.emplace_back();
    }
    local[v] = static_cast<int>(members[comp_of[r]].size());
    members[comp_of[r]].push_back(v);
  }
  std::vector<std::vector<EdgeId>> comp_edges(members.size());
  for (EdgeId e = 0; e < g.m(); ++e) comp_edges[comp_of[uf.find(g.edge(e).u)]].push_back(e);

  Spanner out;
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (comp_edges[c].empty()) continue;
    std::vector<Edge> es;
    for (EdgeId e : comp_edges[c]) es.push_back({local[g.edge(e).u], local[g.edge(e).v], g.edge(e).w});
    WeightedGraph sub = WeightedGraph::from_edges(static_cast<int>(members[c].size()), es);
    Spanner part = fn(sub);
    out.algo = part.algo;
    out.k = part.k;
    out.eps = part.eps;
    out.internal_eps = part.internal_eps;
    out.nominal = part.nominal;
    out.ops += part.ops;
    for (EdgeId e : part.edges) out.edges.push_back(comp_edges[c][e]);
    for (auto& lv : part.levels) {
      lv["component"] = c;
      out.levels.push_back(lv);
    }
    for (auto& v : part.violations) out.violations.push_back("component " + std::to_string(c) + ": " + v);
  }
  finish(out);
  return out;
}

}  // namespace detail

Spanner build_greedy(const WeightedGraph& g, const BuildOptions& opt) {
  validate(opt);
  Spanner s;
  s.algo = "greedy";
  s.k = opt.k;
  s.eps = s.internal_eps = opt.eps;
  s.nominal = true;
  s.edges = oracle::greedy_spanner(g, target_stretch(opt.k, opt.eps));
  return s;
}

Spanner build_hz(const WeightedGraph& g, const BuildOptions& opt) {
  validate(opt);
  Spanner s;
  s.algo = "hz";
  s.k = opt.k;
  s.eps = s.internal_eps = opt.eps;
  std::vector<std::pair<int, int>> es;
  es.reserve(g.m());
  for (const Edge& e : g.edges()) es.push_back({e.u, e.v});
  HzResult r = hz_spanner(g.n(), es, opt.k);
  s.edges = r.kept;
  s.ops = r.ops;
  return s;
}

Spanner build(const std::string& algo, const WeightedGraph& g, const BuildOptions& opt) {
  if (algo == "greedy") return build_greedy(g, opt);
  if (algo == "hz") return build_hz(g, opt);
  if (algo == "pm") return build_pm(g, opt);
  if (algo == "linear") return build_linear(g, opt);
  if (algo == "light") return build_light(g, opt);
  throw ConfigError("unknown algorithm \"" + algo + "\"");
}

}  // namespace spanner
