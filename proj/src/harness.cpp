#include "sqham/harness.hpp"

#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sqham/trace.hpp"

namespace sqham {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::vector<std::size_t> cell_orders(const ExperimentConfig& cfg) {
  if (cfg.ns.empty()) return {cfg.host.order(std::nullopt)};
  std::vector<std::size_t> out;
  for (std::size_t n : cfg.ns) out.push_back(cfg.host.order(n));
  return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, double K, std::size_t trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(K));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.Ks.empty()) throw std::invalid_argument("no K values given");
  for (double K : cfg.Ks) {
    if (!(K > 0.0)) throw std::invalid_argument("K values must be positive, got " + format_double(K));
  }
  for (std::size_t n : cell_orders(cfg)) {
    for (double K : cfg.Ks) {
      const std::string cell = "cell n=" + std::to_string(n) + ", K=" + format_double(K);
      if (n < 6) throw std::invalid_argument(cell + ": n must be at least 6");
      try {
        SprinkleParams::make(n, K);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(cell + ": " + e.what());
      }
    }
  }
}

TrialInstance prepare_trial(const HostSpec& spec, std::size_t n, std::uint64_t seed,
                            const ExperimentConfig& cfg) {
  Rng host_rng(derive_seed(seed, 0));
  Host host = make_host(spec, n, host_rng);
  EraConfig era;
  era.seed = derive_seed(seed, 1);
  era.alpha = host.alpha_declared;
  era.mode = cfg.mode;
  era.max_rotations_per_round = cfg.max_rotations_per_round;
  era.debug_validate = cfg.debug_validate;
  return TrialInstance{std::move(host), era};
}

TrialRecord run_trial(const HostSpec& spec, std::size_t n, double K, std::size_t trial_index,
                      const ExperimentConfig& cfg) {
  TrialRecord rec;
  rec.n = n;
  rec.K = K;
  rec.seed = trial_seed(cfg.master_seed, n, K, trial_index);
  rec.alpha_declared = spec.kind == HostSpec::Kind::gnp_conditioned ? spec.alpha : 0.0;
  const auto started = std::chrono::steady_clock::now();
  try {
    TrialInstance ti = prepare_trial(spec, n, rec.seed, cfg);
    rec.alpha_declared = ti.host.alpha_declared;
    EraRun run = run_era(ti.host.graph, K, ti.era);
    rec.realized_x = run.sampled.realized_x;
    rec.rounds = run.outcome.rounds;
    if (const auto& inst = run.sampled.instance) {
      rec.pi_min_degree = inst->step1.base.order() ? min_degree(inst->step1.base) : 0;
      rec.gamma2_connected = is_connected(inst->step2);
      if (run.outcome.success() && !verify_square_ham(inst->gamma, run.outcome.cycle->order, 2)) {
        throw std::logic_error("successful trial failed verification");
      }
      if (cfg.trace_dir) {
        std::filesystem::create_directories(*cfg.trace_dir);
        const auto file = *cfg.trace_dir / ("n" + std::to_string(n) + "_K" + format_double(K) +
                                            "_t" + std::to_string(trial_index) + ".trace");
        std::ofstream out(file);
        if (!out) throw std::runtime_error("cannot write trace " + file.string());
        write_trace(out,
                    {{"host", spec.to_string()},
                     {"n", std::to_string(n)},
                     {"K", format_double(K)},
                     {"seed", std::to_string(rec.seed)},
                     {"mode", std::string(to_string(cfg.mode))},
                     {"max_rotations", std::to_string(cfg.max_rotations_per_round)}},
                    *inst, run.outcome);
      }
    }
    rec.success = run.outcome.success();
    rec.failure_reason = std::string(to_string(run.outcome.failure));
  } catch (const GeneratorError&) {
    rec.success = false;
    rec.failure_reason = "host";
  } catch (const std::exception&) {
    rec.success = false;
    rec.failure_reason = "internal";
  }
  if (cfg.record_wall_time) {
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  }
  return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, std::ostream* csv) {
  validate_config(cfg);
  struct Task {
    std::size_t n;
    double K;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (std::size_t n : cell_orders(cfg)) {
    for (double K : cfg.Ks) {
      for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({n, K, t});
    }
  }

  std::vector<TrialRecord> records(tasks.size());
  std::vector<bool> done(tasks.size(), false);
  std::size_t flushed = 0;
  std::mutex mu;
  std::atomic<std::size_t> next{0};

  if (csv) write_csv_header(*csv);
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      TrialRecord rec = run_trial(cfg.host, tasks[i].n, tasks[i].K, tasks[i].trial, cfg);
      std::lock_guard lock(mu);
      records[i] = std::move(rec);
      done[i] = true;
      while (flushed < tasks.size() && done[flushed]) {
        if (csv) write_csv_row(*csv, records[flushed]);
        ++flushed;
      }
      if (csv) csv->flush();
    }
  };
  const std::size_t threads = std::min(cfg.workers, std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  return records;
}

void write_csv_header(std::ostream& out) {
  out << kCsvVersionLine << '\n'
      << "n,alpha_declared,K,seed,success,failure_reason,rounds,realized_x,pi_min_degree,"
         "gamma2_connected,wall_time_ms\n";
}

void write_csv_row(std::ostream& out, const TrialRecord& r) {
  out << r.n << ',' << format_double(r.alpha_declared) << ',' << format_double(r.K) << ','
      << r.seed << ',' << (r.success ? 1 : 0) << ',' << r.failure_reason << ',' << r.rounds << ','
      << r.realized_x << ',' << r.pi_min_degree << ',' << (r.gamma2_connected ? 1 : 0) << ','
      << format_double(r.wall_time_ms) << '\n';
}

namespace {

template <class T>
T parse_field(const std::string& text, std::size_t line_no, const char* name) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + name + " '" + text +
                             "'");
  }
  return value;
}

bool parse_flag(const std::string& text, std::size_t line_no, const char* name) {
  if (text == "0") return false;
  if (text == "1") return true;
  throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + name + " '" + text + "'");
}

}  // namespace

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("n,alpha_declared,", 0) != 0) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": missing CSV header");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string item;
    while (std::getline(ls, item, ',')) f.push_back(item);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 11 fields, got " +
                               std::to_string(f.size()));
    }
    TrialRecord r;
    r.n = parse_field<std::size_t>(f[0], line_no, "n");
    r.alpha_declared = parse_field<double>(f[1], line_no, "alpha_declared");
    r.K = parse_field<double>(f[2], line_no, "K");
    r.seed = parse_field<std::uint64_t>(f[3], line_no, "seed");
    r.success = parse_flag(f[4], line_no, "success");
    r.failure_reason = f[5];
    r.rounds = parse_field<std::size_t>(f[6], line_no, "rounds");
    r.realized_x = parse_field<std::size_t>(f[7], line_no, "realized_x");
    r.pi_min_degree = parse_field<std::size_t>(f[8], line_no, "pi_min_degree");
    r.gamma2_connected = parse_flag(f[9], line_no, "gamma2_connected");
    r.wall_time_ms = parse_field<double>(f[10], line_no, "wall_time_ms");
    if (r.success != r.failure_reason.empty()) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": success and failure_reason disagree");
    }
    out.push_back(std::move(r));
  }
  return out;
}

Summary summarize(const std::vector<TrialRecord>& records, const std::vector<CellKey>& expected) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  Summary s;
  struct Acc {
    std::size_t trials = 0, successes = 0, connected = 0, rounds = 0;
  };
  std::vector<std::pair<CellKey, Acc>> acc;
  auto slot = [&](const CellKey& key) -> Acc& {
    for (auto& [k, a] : acc) {
      if (k == key) return a;
    }
    return acc.emplace_back(key, Acc{}).second;
  };
  for (const TrialRecord& r : records) {
    Acc& a = slot({r.n, r.alpha_declared, r.K});
    ++a.trials;
    a.successes += r.success ? 1 : 0;
    a.connected += r.gamma2_connected ? 1 : 0;
    a.rounds += r.rounds;
  }
  for (const CellKey& key : expected) {
    const bool present = std::any_of(acc.begin(), acc.end(),
                                     [&](const auto& kv) { return kv.first == key; });
    if (!present) {
      s.warnings.push_back("cell n=" + std::to_string(key.n) + ", alpha=" +
                           format_double(key.alpha) + ", K=" + format_double(key.K) +
                           " has no trials; excluded");
    }
  }
  for (const auto& [key, a] : acc) {
    const double t = static_cast<double>(a.trials);
    s.cells.push_back({key, a.trials, a.successes, static_cast<double>(a.successes) / t,
                       static_cast<double>(a.rounds) / t, static_cast<double>(a.connected) / t});
  }
  return s;
}

void write_summary(std::ostream& out, const Summary& summary) {
  out << "n,alpha_declared,K,trials,successes,success_rate,mean_rounds,gamma2_connectivity_rate\n";
  for (const CellSummary& c : summary.cells) {
    out << c.cell.n << ',' << format_double(c.cell.alpha) << ',' << format_double(c.cell.K) << ','
        << c.trials << ',' << c.successes << ',' << format_double(c.success_rate) << ','
        << format_double(c.mean_rounds) << ',' << format_double(c.gamma2_connectivity_rate)
        << '\n';
  }
}

double fisher_decrease_pvalue(std::size_t successes_a, std::size_t trials_a,
                              std::size_t successes_b, std::size_t trials_b) {
  if (successes_a > trials_a || successes_b > trials_b) {
    throw std::invalid_argument("fisher: successes exceed trials");
  }
  const std::size_t total = trials_a + trials_b;
  const std::size_t hits = successes_a + successes_b;
  auto log_choose = [](double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
  };
  const double denom = log_choose(static_cast<double>(total), static_cast<double>(trials_a));
  const std::size_t hi = std::min(hits, trials_a);
  double p = 0.0;
  for (std::size_t x = successes_a; x <= hi; ++x) {
    if (hits - x > trials_b) continue;
    p += std::exp(log_choose(static_cast<double>(hits), static_cast<double>(x)) +
                  log_choose(static_cast<double>(total - hits), static_cast<double>(trials_a - x)) -
                  denom);
  }
  return std::min(1.0, p);
}

}  // namespace sqham
