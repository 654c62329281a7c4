// sqham: square-of-Hamilton-cycle experiments on randomly perturbed graphs.
//
// Every option of `run` can also be set through an SQHAM_<NAME> environment
// variable (SQHAM_HOST, SQHAM_N, SQHAM_K, SQHAM_TRIALS, SQHAM_SEED,
// SQHAM_WORKERS, SQHAM_MODE, SQHAM_TRACE, SQHAM_OUT). Command-line flags win.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sqham/harness.hpp"
#include "sqham/oracle.hpp"
#include "sqham/trace.hpp"

namespace {

using namespace sqham;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

std::vector<Vertex> load_witness(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_witness(in);
}

struct RunOptions {
  std::string host = "gnp:n=400,alpha=0.75";
  std::vector<std::size_t> ns;
  std::vector<double> Ks{8.0};
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string mode = "restricted";
  std::string trace_dir;
  std::string out;
  std::size_t max_rotations = 0;
  bool debug_validate = false;
  bool wall_time = false;
};

int cmd_run(const RunOptions& o) {
  ExperimentConfig cfg;
  cfg.host = parse_host_spec(o.host);
  cfg.ns = o.ns;
  cfg.Ks = o.Ks;
  cfg.trials = o.trials;
  cfg.master_seed = o.seed;
  cfg.workers = o.workers;
  cfg.mode = parse_edge_mode(o.mode);
  cfg.max_rotations_per_round = o.max_rotations;
  cfg.debug_validate = o.debug_validate;
  cfg.record_wall_time = o.wall_time;
  if (!o.trace_dir.empty()) cfg.trace_dir = o.trace_dir;
  validate_config(cfg);

  std::ofstream file;
  std::ostream* csv = &std::cout;
  if (!o.out.empty() && o.out != "-") {
    file.open(o.out);
    if (!file) throw std::runtime_error("cannot write " + o.out);
    csv = &file;
  }
  const auto records = run_experiment(cfg, csv);
  const Summary s = summarize(records);
  for (const CellSummary& c : s.cells) {
    std::cerr << "n=" << c.cell.n << " alpha=" << c.cell.alpha << " K=" << c.cell.K << ": "
              << c.successes << "/" << c.trials << " succeeded, mean rounds " << c.mean_rounds
              << ", Gamma2 connected " << c.gamma2_connectivity_rate << '\n';
  }
  return kExitOk;
}

int cmd_verify(const std::string& graph_path, const std::string& witness_path, std::size_t k) {
  const Graph g = load_graph(graph_path);
  const auto order = load_witness(witness_path);
  const bool ok = verify_square_ham(g, order, k);
  std::cout << (ok ? "VALID" : "INVALID") << '\n';
  return ok ? kExitOk : kExitNegative;
}

int cmd_oracle(const std::string& graph_path, std::size_t k, const std::string& out) {
  const Graph g = load_graph(graph_path);
  const auto found = brute_force_square_ham(g, k);
  if (!found) {
    std::cout << "NONE\n";
    return kExitNegative;
  }
  if (out.empty()) {
    write_witness(std::cout, found->order);
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    write_witness(f, found->order);
    std::cout << "FOUND\n";
  }
  return kExitOk;
}

int cmd_kst(std::size_t s, std::size_t t, std::size_t k, std::size_t trials, std::uint64_t seed,
            bool exhaustive) {
  KstCheckReport r;
  if (exhaustive) {
    r = bipartite_square_edge_bound_exhaustive(s, t, k);
  } else {
    Rng rng(seed);
    r = bipartite_square_edge_bound_check(s, t, k, trials, rng);
  }
  std::cout << "s=" << r.s << " t=" << r.t << " k=" << r.k << " orders=" << r.orders_checked
            << (r.exhaustive ? " (exhaustive)" : " (sampled)") << '\n'
            << "bound 2ks = " << r.bound << '\n'
            << "max AB edges of the k-th power: " << r.max_power_cross << '\n'
            << "max AB edges of the cycle: " << r.max_cycle_cross << '\n'
            << "violations: " << r.violations << '\n'
            << (r.pass() ? "PASS" : "FAIL") << '\n';
  return r.pass() ? kExitOk : kExitNegative;
}

Graph regenerate_gamma(const TraceFile& t) {
  auto need = [&](const char* key) {
    auto v = t.param(key);
    if (!v) throw std::runtime_error(std::string("trace header lacks ") + key);
    return *v;
  };
  ExperimentConfig cfg;
  cfg.host = parse_host_spec(need("host"));
  cfg.mode = parse_edge_mode(need("mode"));
  const double K = std::stod(need("K"));
  const std::uint64_t seed = std::stoull(need("seed"));
  TrialInstance ti = prepare_trial(cfg.host, t.n, seed, cfg);
  Rng rng(ti.era.seed);
  SampledInstance s = sample_instance(ti.host.graph, K, ti.era, rng);
  if (!s.instance) throw std::runtime_error("trace seed does not reproduce an instance");
  return s.instance->gamma;
}

int cmd_replay(const std::string& trace_path, const std::string& graph_path) {
  std::ifstream in(trace_path);
  if (!in) throw std::runtime_error("cannot open " + trace_path);
  const TraceFile t = read_trace(in);
  const Graph gamma = graph_path.empty() ? regenerate_gamma(t) : load_graph(graph_path);
  const ReplayReport r = replay_trace(gamma, t);
  if (!r.ok) {
    std::cout << "REPLAY FAILED at " << r.error << '\n';
    return kExitNegative;
  }
  std::cout << "REPLAY OK: " << r.moves_applied << " moves"
            << (r.cycle ? ", square cycle verified" : ", run ended in failure " + t.failure)
            << '\n';
  return kExitOk;
}

int cmd_summarize(const std::string& in_path, const std::string& out) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  const Summary s = summarize(read_csv(in));
  for (const std::string& w : s.warnings) std::cerr << "warning: " << w << '\n';
  if (out.empty() || out == "-") {
    write_summary(std::cout, s);
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    write_summary(f, s);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square Hamilton cycles in randomly perturbed graphs"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Run an experiment sweep and write per-trial CSV");
  run->add_option("--host", ro.host, "gnp:n=..,alpha=.. | complete:n=.. | kst:s=..,t=.. | file:PATH")
      ->envname("SQHAM_HOST")
      ->capture_default_str();
  run->add_option("--n", ro.ns, "Vertex counts (comma list); default is the host's own n")
      ->delimiter(',')
      ->envname("SQHAM_N")
      ->capture_default_str();
  run->add_option("--K", ro.Ks, "Sprinkle constants (comma list)")
      ->delimiter(',')
      ->envname("SQHAM_K")
      ->capture_default_str();
  run->add_option("--trials", ro.trials, "Trials per cell")->envname("SQHAM_TRIALS")->capture_default_str();
  run->add_option("--seed", ro.seed, "Master seed")->envname("SQHAM_SEED")->capture_default_str();
  run->add_option("--workers", ro.workers, "Concurrent trials")
      ->envname("SQHAM_WORKERS")
      ->capture_default_str();
  run->add_option("--mode", ro.mode, "restricted | all-edges")
      ->envname("SQHAM_MODE")
      ->check(CLI::IsMember({"restricted", "all-edges"}))
      ->capture_default_str();
  run->add_option("--trace", ro.trace_dir, "Directory for per-trial trace files")->envname("SQHAM_TRACE");
  run->add_option("--out", ro.out, "CSV output path (default stdout)")->envname("SQHAM_OUT");
  run->add_option("--max-rotations", ro.max_rotations, "Rotation cap per round (0 = 4n)")
      ->envname("SQHAM_MAX_ROTATIONS");
  run->add_flag("--debug-validate", ro.debug_validate, "Validate every intermediate 2-path");
  run->add_flag("--wall-time", ro.wall_time, "Record wall_time_ms (breaks byte-identical reruns)");

  std::string graph_path, witness_path, out_path;
  std::size_t k = 2;
  auto* verify = app.add_subcommand("verify", "Check a witness order against a graph");
  verify->add_option("--graph", graph_path, "Edge list file")->required();
  verify->add_option("--witness", witness_path, "Witness file")->required();
  verify->add_option("--k", k, "Power of the cycle")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive search on a small graph");
  oracle->add_option("--graph", graph_path, "Edge list file")->required();
  oracle->add_option("--k", k, "Power of the cycle")->capture_default_str();
  oracle->add_option("--out", out_path, "Write the witness here instead of stdout");

  std::size_t s = 3, t = 9, kst_trials = 100000;
  std::uint64_t kst_seed = 1;
  bool exhaustive = false;
  auto* kst = app.add_subcommand("kst-check", "Bound AB edges of powered cycles on K_{s,t}");
  kst->add_option("--s", s)->capture_default_str();
  kst->add_option("--t", t)->capture_default_str();
  kst->add_option("--k", k)->capture_default_str();
  kst->add_option("--trials", kst_trials)->capture_default_str();
  kst->add_option("--seed", kst_seed)->capture_default_str();
  kst->add_flag("--exhaustive", exhaustive, "Enumerate every cyclic order");

  std::string trace_path;
  auto* replay = app.add_subcommand("replay", "Re-validate every move of a trace file");
  replay->add_option("--trace", trace_path, "Trace file")->required();
  replay->add_option("--graph", graph_path, "Use this graph instead of regenerating it");

  std::string csv_path;
  auto* summ = app.add_subcommand("summarize", "Aggregate a trial CSV per cell");
  summ->add_option("--in", csv_path, "Trial CSV")->required();
  summ->add_option("--out", out_path, "Summary CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*run) return cmd_run(ro);
    if (*verify) return cmd_verify(graph_path, witness_path, k);
    if (*oracle) return cmd_oracle(graph_path, k, out_path);
    if (*kst) return cmd_kst(s, t, k, kst_trials, kst_seed, exhaustive);
    if (*replay) return cmd_replay(trace_path, graph_path);
    if (*summ) return cmd_summarize(csv_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
