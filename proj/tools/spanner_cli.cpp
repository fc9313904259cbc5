#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "spanner/io.hpp"
#include "spanner/oracle.hpp"
#include "spanner/spanner.hpp"

using namespace spanner;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

GraphFormat parse_format(const std::string& f) {
  if (f == "edgelist") return GraphFormat::kEdgeList;
  if (f == "dimacs") return GraphFormat::kDimacs;
  throw ConfigError("unknown format \"" + f + "\"");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct GenArgs {
  io::GenSpec spec;
  std::string out;
};

struct BuildArgs {
  std::string algo = "light";
  BuildOptions opt;
  std::string in, out, metrics, format = "edgelist";
};

struct VerifyArgs {
  std::string graph, spanner, report, format = "edgelist";
  double t = 0.0;
};

struct BenchArgs {
  std::vector<std::string> algos{"pm", "linear", "light"};
  std::vector<int> ns{128, 256};
  std::vector<int> ks{2};
  std::vector<double> eps{0.25};
  int seeds = 1;
  std::uint64_t seed = 1;
  std::string type = "gnp", weights = "uniform", out;
  double avg_degree = 8.0;
  bool nominal = false;
};

int run_gen(const GenArgs& a) {
  write_text(a.out, to_edge_list(io::generate(a.spec)));
  return kOk;
}

int run_build(const BuildArgs& a) {
  validate(a.opt);
  IngestReport rep;
  WeightedGraph g = load_graph(a.in, parse_format(a.format), &rep);
  auto t0 = std::chrono::steady_clock::now();
  Spanner s = build(a.algo, g, a.opt);
  double secs = seconds_since(t0);
  write_text(a.out, io::spanner_text(g, s));

  oracle::QualityMetrics q = oracle::spanner_metrics(g, s.edges);
  nlohmann::json j = {{"algo", s.algo},
                      {"k", s.k},
                      {"eps", s.eps},
                      {"internal_eps", s.internal_eps},
                      {"nominal", s.nominal},
                      {"n", g.n()},
                      {"m", g.m()},
                      {"self_loops_dropped", rep.self_loops},
                      {"parallel_collapsed", rep.collapsed},
                      {"edges", q.edges},
                      {"weight", q.weight},
                      {"sparsity", q.sparsity},
                      {"lightness", q.lightness},
                      {"ops", s.ops},
                      {"seconds", secs},
                      {"violations", s.violations}};
  if (a.opt.instrument) j["levels"] = s.levels;
  std::string metrics = a.metrics;
  if (metrics.empty() && !a.out.empty() && a.out != "-") metrics = a.out + ".json";
  if (!metrics.empty()) write_text(metrics, j.dump(2) + "\n");
  for (const std::string& v : s.violations) std::cerr << "violation: " << v << "\n";
  return s.violations.empty() ? kOk : kVerifyFailed;
}

int run_verify(const VerifyArgs& a) {
  WeightedGraph g = load_graph(a.graph, parse_format(a.format));
  io::SpannerFile f;
  try {
    f = io::parse_spanner(slurp(a.spanner));
  } catch (const GraphError& e) {
    throw ConfigError(a.spanner + ": " + e.what());
  }
  if (!f.source_hash.empty() && f.source_hash != io::graph_hash(g))
    throw ConfigError("spanner was built from a different graph (hash " + f.source_hash + ", graph " +
                      io::graph_hash(g) + ")");
  double t = a.t > 0.0 ? a.t : target_stretch(f.k, f.eps);
  oracle::StretchReport r;
  try {
    r = oracle::verify_stretch(g, f.h, t);
  } catch (const GraphError& e) {
    std::cerr << "spanner is not a subgraph of the input: " << e.what() << "\n";
    return kVerifyFailed;
  }
  write_text(a.report, oracle::report_json(r) + "\n");
  return r.pass ? kOk : kVerifyFailed;
}

struct Cell {
  std::string algo;
  int n, k;
  double eps;
  std::uint64_t seed;
};

int thread_cap() {
  const char* env = std::getenv("SPANNER_THREADS");
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (!env) return hw;
  int v = std::atoi(env);
  if (v < 1) throw ConfigError("SPANNER_THREADS must be a positive integer");
  return v;
}

int run_bench(const BenchArgs& a) {
  for (int k : a.ks)
    for (double e : a.eps) validate({k, e});
  for (const std::string& algo : a.algos)
    if (algo != "greedy" && algo != "hz" && algo != "pm" && algo != "linear" && algo != "light")
      throw ConfigError("unknown algorithm \"" + algo + "\"");
  std::vector<Cell> cells;
  for (int n : a.ns)
    for (int s = 0; s < a.seeds; ++s)
      for (int k : a.ks)
        for (double e : a.eps)
          for (const std::string& algo : a.algos) cells.push_back({algo, n, k, e, a.seed + s});

  std::vector<std::string> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mu;
  std::string err;
  auto worker = [&]() {
    for (std::size_t c; (c = next++) < cells.size();) {
      const Cell& cell = cells[c];
      try {
        io::GenSpec gs;
        gs.type = a.type;
        gs.n = cell.n;
        gs.weights = a.weights;
        gs.seed = cell.seed;
        if (a.type == "gnp") gs.p = std::min(1.0, a.avg_degree / cell.n);
        WeightedGraph g = io::generate(gs);
        BuildOptions opt{cell.k, cell.eps, a.nominal};
        auto t0 = std::chrono::steady_clock::now();
        Spanner s = build(cell.algo, g, opt);
        double secs = seconds_since(t0);
        oracle::QualityMetrics q = oracle::spanner_metrics(g, s.edges);
        oracle::StretchReport r = oracle::verify_stretch(g, s.edges, target_stretch(cell.k, cell.eps));
        if (!r.pass && cell.algo != "hz") failed = true;
        char buf[320];
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%.17g,%zu,%.6f,%.6f,%.6f,%llu,%.6f\n", cell.algo.c_str(),
                      g.n(), g.m(), cell.k, cell.eps, q.edges, q.sparsity, q.lightness, r.max_stretch,
                      static_cast<unsigned long long>(s.ops), secs);
        rows[c] = buf;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (err.empty()) err = e.what();
      }
    }
  };
  int threads = std::min<int>(thread_cap(), static_cast<int>(cells.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (!err.empty()) throw ConfigError(err);

  std::string csv = "algo,n,m,k,eps,edges,sparsity,lightness,max_stretch,ops,seconds\n";
  for (const std::string& r : rows) csv += r;
  write_text(a.out, csv);
  return failed ? kVerifyFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph spanner toolkit: generate graphs, build and verify spanners, benchmark."};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a connected random graph");
  g->add_option("--type", gen.spec.type, "gnp | grid | geometric")->check(CLI::IsMember({"gnp", "grid", "geometric"}));
  g->add_option("--n", gen.spec.n, "Vertex count")->check(CLI::PositiveNumber);
  g->add_option("--p", gen.spec.p, "Edge probability for gnp (default 8/n)");
  g->add_option("--radius", gen.spec.radius, "Connection radius for geometric");
  g->add_option("--weights", gen.spec.weights, "uniform | loguniform | unit")
      ->check(CLI::IsMember({"uniform", "loguniform", "unit"}));
  g->add_option("--wmin", gen.spec.wmin, "Smallest weight");
  g->add_option("--wmax", gen.spec.wmax, "Largest weight");
  g->add_option("--seed", gen.spec.seed, "Random seed");
  g->add_option("-o,--output", gen.out, "Output file (default stdout)");

  BuildArgs bld;
  auto* b = app.add_subcommand("build", "Build a spanner of a graph");
  b->add_option("--algo", bld.algo, "greedy | hz | pm | linear | light")
      ->check(CLI::IsMember({"greedy", "hz", "pm", "linear", "light"}));
  b->add_option("--k", bld.opt.k, "Stretch parameter, target (2k-1)(1+eps)");
  b->add_option("--eps", bld.opt.eps, "Accuracy in (0,1)");
  b->add_flag("--nominal", bld.opt.nominal, "Use eps as given instead of the scaled internal value");
  b->add_flag("--instrument", bld.opt.instrument, "Record per-level data in the metrics file");
  b->add_flag("--check", bld.opt.check, "Run the structural checkers; exit 1 on a violation");
  b->add_option("-i,--input", bld.in, "Input graph")->required();
  b->add_option("-o,--output", bld.out, "Spanner file (default stdout)");
  b->add_option("--metrics", bld.metrics, "Metrics JSON (default <output>.json)");
  b->add_option("--format", bld.format, "edgelist | dimacs");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check the stretch of a spanner file against its graph");
  v->add_option("-g,--graph", ver.graph, "Input graph")->required();
  v->add_option("-s,--spanner", ver.spanner, "Spanner file")->required();
  v->add_option("-t,--stretch", ver.t, "Target stretch (default from the spanner header)");
  v->add_option("-o,--output", ver.report, "Report JSON (default stdout)");
  v->add_option("--format", ver.format, "edgelist | dimacs");

  BenchArgs bn;
  auto* be = app.add_subcommand("bench", "Sweep algorithms over generated graphs and write CSV");
  be->add_option("--algos", bn.algos, "Algorithms")->delimiter(',');
  be->add_option("--n", bn.ns, "Vertex counts")->delimiter(',');
  be->add_option("--k", bn.ks, "Values of k")->delimiter(',');
  be->add_option("--eps", bn.eps, "Values of eps")->delimiter(',');
  be->add_option("--seeds", bn.seeds, "Instances per cell")->check(CLI::PositiveNumber);
  be->add_option("--seed", bn.seed, "First seed");
  be->add_option("--type", bn.type, "gnp | grid | geometric")->check(CLI::IsMember({"gnp", "grid", "geometric"}));
  be->add_option("--weights", bn.weights, "uniform | loguniform | unit")
      ->check(CLI::IsMember({"uniform", "loguniform", "unit"}));
  be->add_option("--degree", bn.avg_degree, "Expected degree for gnp");
  be->add_flag("--nominal", bn.nominal, "Use eps as given");
  be->add_option("-o,--output", bn.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*g) return run_gen(gen);
    if (*b) return run_build(bld);
    if (*v) return run_verify(ver);
    if (*be) return run_bench(bn);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
