#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "sqham/harness.hpp"
#include "sqham/trace.hpp"

namespace sqham {
namespace {

ExperimentConfig complete_cfg(std::size_t n, std::vector<double> Ks, std::size_t trials) {
  ExperimentConfig cfg;
  cfg.host = parse_host_spec("complete:n=" + std::to_string(n));
  cfg.Ks = std::move(Ks);
  cfg.trials = trials;
  cfg.master_seed = 11;
  return cfg;
}

std::string run_to_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  run_experiment(cfg, &out);
  return out.str();
}

TEST(Seeds, StableAndDistinct) {
  EXPECT_EQ(trial_seed(1, 400, 8.0, 0), trial_seed(1, 400, 8.0, 0));
  EXPECT_NE(trial_seed(1, 400, 8.0, 0), trial_seed(1, 400, 8.0, 1));
  EXPECT_NE(trial_seed(1, 400, 8.0, 0), trial_seed(2, 400, 8.0, 0));
  EXPECT_NE(trial_seed(1, 400, 8.0, 0), trial_seed(1, 401, 8.0, 0));
  EXPECT_NE(trial_seed(1, 400, 8.0, 0), trial_seed(1, 400, 8.000001, 0));
  EXPECT_NE(derive_seed(5, 0), derive_seed(5, 1));
}

TEST(Config, Validation) {
  ExperimentConfig cfg = complete_cfg(12, {3.0}, 1);
  EXPECT_NO_THROW(validate_config(cfg));
  cfg.trials = 0;
  EXPECT_THROW(validate_config(cfg), std::invalid_argument);
  cfg = complete_cfg(12, {}, 1);
  EXPECT_THROW(validate_config(cfg), std::invalid_argument);
  cfg = complete_cfg(12, {-1.0}, 1);
  EXPECT_THROW(validate_config(cfg), std::invalid_argument);
  cfg = complete_cfg(12, {3.0}, 1);
  cfg.ns = {5};
  EXPECT_THROW(validate_config(cfg), std::invalid_argument);
}

TEST(Config, ProbabilityAtLeastOneNamesTheCell) {
  ExperimentConfig cfg = complete_cfg(12, {1.0, 4.0}, 1);
  try {
    validate_config(cfg);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cell n=12, K=4"), std::string::npos) << e.what();
  }
}

TEST(Experiment, CompleteHostTwelveAllSucceed) {
  const auto records = run_experiment(complete_cfg(12, {3.0}, 5));
  ASSERT_EQ(records.size(), 5u);
  for (const TrialRecord& r : records) {
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.failure_reason, "");
    EXPECT_EQ(r.n, 12u);
    EXPECT_DOUBLE_EQ(r.alpha_declared, 1.0);
    EXPECT_LE(r.rounds, 6u);
    EXPECT_TRUE(r.gamma2_connected);
    EXPECT_EQ(r.wall_time_ms, 0.0);
  }
}

TEST(Experiment, RecordsInCellOrderWithSplitSeeds) {
  ExperimentConfig cfg = complete_cfg(12, {2.0, 3.0}, 3);
  cfg.ns = {12, 14};
  const auto records = run_experiment(cfg);
  ASSERT_EQ(records.size(), 12u);
  std::size_t i = 0;
  for (std::size_t n : {12u, 14u}) {
    for (double K : {2.0, 3.0}) {
      for (std::size_t t = 0; t < 3; ++t, ++i) {
        EXPECT_EQ(records[i].n, n);
        EXPECT_EQ(records[i].K, K);
        EXPECT_EQ(records[i].seed, trial_seed(11, n, K, t));
      }
    }
  }
}

TEST(Experiment, WorkerCountDoesNotChangeOutput) {
  ExperimentConfig cfg;
  cfg.host = parse_host_spec("gnp:alpha=0.75");
  cfg.ns = {60, 61};
  cfg.Ks = {1.0, 3.0};
  cfg.trials = 4;
  cfg.master_seed = 3;
  const std::string one = run_to_csv(cfg);
  cfg.workers = 4;
  EXPECT_EQ(run_to_csv(cfg), one);
  EXPECT_EQ(run_to_csv(cfg), one);
}

TEST(Experiment, TrialFailureDoesNotAbortSweep) {
  // An empty host with sparse sprinkles: no square cycle is reachable.
  const auto path = std::filesystem::temp_directory_path() / "sqham_harness_host.txt";
  {
    std::ofstream out(path);
    out << "6 0\n";
  }
  ExperimentConfig cfg;
  cfg.host = parse_host_spec("file:" + path.string());
  cfg.Ks = {1.0};
  cfg.trials = 2;
  const auto records = run_experiment(cfg);
  ASSERT_EQ(records.size(), 2u);
  for (const TrialRecord& r : records) {
    EXPECT_FALSE(r.success);
    EXPECT_TRUE(r.failure_reason == "matching" || r.failure_reason == "stuck_round")
        << r.failure_reason;
  }
  std::filesystem::remove(path);
}

TEST(Experiment, TraceFilesReplay) {
  const auto dir = std::filesystem::temp_directory_path() / "sqham_harness_traces";
  std::filesystem::remove_all(dir);
  ExperimentConfig cfg = complete_cfg(13, {3.0}, 2);
  cfg.trace_dir = dir;
  const auto records = run_experiment(cfg);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(entry.path());
    const TraceFile t = read_trace(in);
    ASSERT_TRUE(t.param("seed"));
    ASSERT_TRUE(t.param("host"));
    TrialInstance ti = prepare_trial(parse_host_spec(*t.param("host")), t.n,
                                     std::stoull(*t.param("seed")), cfg);
    Rng rng(ti.era.seed);
    const SampledInstance s = sample_instance(ti.host.graph, std::stod(*t.param("K")), ti.era, rng);
    ASSERT_TRUE(s.instance);
    const ReplayReport rep = replay_trace(s.instance->gamma, t);
    EXPECT_TRUE(rep.ok) << rep.error;
    EXPECT_EQ(rep.cycle.has_value(), t.success);
    ++files;
  }
  EXPECT_EQ(files, records.size());
  std::filesystem::remove_all(dir);
}

TEST(Csv, VersionedHeaderAndRoundTrip) {
  ExperimentConfig cfg = complete_cfg(12, {1.0, 3.0}, 4);
  const std::string csv = run_to_csv(cfg);
  EXPECT_EQ(csv.rfind(std::string(kCsvVersionLine) + "\n", 0), 0u);
  std::istringstream in(csv);
  const auto back = read_csv(in);
  EXPECT_EQ(back, run_experiment(cfg));
}

TEST(Csv, MalformedRowsNameTheLine) {
  const std::string head = std::string(kCsvVersionLine) +
                           "\nn,alpha_declared,K,seed,success,failure_reason,rounds,realized_x,"
                           "pi_min_degree,gamma2_connected,wall_time_ms\n";
  const std::string good = "12,1,3,5,1,,6,40,5,1,0\n";
  {
    std::istringstream in(head + good);
    EXPECT_EQ(read_csv(in).size(), 1u);
  }
  for (const std::string bad :
       {"12,1,3,5,1,,6,40,5,1\n", "12,1,3,x,1,,6,40,5,1,0\n", "12,1,3,5,2,,6,40,5,1,0\n",
        "12,1,3,5,1,matching,6,40,5,1,0\n", "12,1,3,5,0,,6,40,5,1,0\n"}) {
    std::istringstream in(head + good + bad);
    try {
      read_csv(in);
      ADD_FAILURE() << bad;
    } catch (const std::runtime_error& e) {
      EXPECT_EQ(std::string(e.what()).rfind("line 4:", 0), 0u) << e.what();
    }
  }
  std::istringstream no_header(good);
  EXPECT_THROW(read_csv(no_header), std::runtime_error);
}

TEST(Summary, ExactAggregation) {
  std::vector<TrialRecord> recs;
  for (int i = 0; i < 5; ++i) {
    TrialRecord r;
    r.n = 12;
    r.alpha_declared = 1.0;
    r.K = 3.0;
    r.success = true;
    r.rounds = 6;
    r.gamma2_connected = true;
    recs.push_back(r);
  }
  const Summary s = summarize(recs);
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_EQ(s.cells[0].successes, 5u);
  EXPECT_DOUBLE_EQ(s.cells[0].success_rate, 1.0);
  EXPECT_DOUBLE_EQ(s.cells[0].mean_rounds, 6.0);
  EXPECT_THROW(summarize({}), std::invalid_argument);
}

TEST(Summary, EmptyExpectedCellWarns) {
  TrialRecord r;
  r.n = 12;
  r.alpha_declared = 1.0;
  r.K = 3.0;
  const Summary s = summarize({r}, {{12, 1.0, 3.0}, {12, 1.0, 5.0}});
  EXPECT_EQ(s.cells.size(), 1u);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("K=5"), std::string::npos);
}

TEST(Summary, MatchesIndependentRecomputationFromCsv) {
  ExperimentConfig cfg = complete_cfg(12, {1.0, 2.0}, 10);
  cfg.ns = {12, 13};
  const std::string csv = run_to_csv(cfg);

  // Second pass straight over the text, without read_csv.
  std::map<std::pair<std::string, std::string>, std::array<double, 4>> acc;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string item;
    while (std::getline(ls, item, ',')) f.push_back(item);
    auto& a = acc[{f[0], f[2]}];
    a[0] += 1;
    a[1] += f[4] == "1";
    a[2] += std::stod(f[6]);
    a[3] += f[9] == "1";
  }
  std::istringstream in2(csv);
  const Summary s = summarize(read_csv(in2));
  ASSERT_EQ(s.cells.size(), acc.size());
  for (const CellSummary& c : s.cells) {
    std::ostringstream n, K;
    n << c.cell.n;
    K << c.cell.K;
    const auto& a = acc.at({n.str(), K.str()});
    EXPECT_EQ(c.trials, a[0]);
    EXPECT_DOUBLE_EQ(c.success_rate, a[1] / a[0]);
    EXPECT_DOUBLE_EQ(c.mean_rounds, a[2] / a[0]);
    EXPECT_DOUBLE_EQ(c.gamma2_connectivity_rate, a[3] / a[0]);
  }
}

TEST(Fisher, KnownValues) {
  // Equal outcomes carry no evidence of a decrease.
  EXPECT_DOUBLE_EQ(fisher_decrease_pvalue(20, 20, 20, 20), 1.0);
  // 10/10 vs 0/10: P = 1 / C(20,10).
  EXPECT_NEAR(fisher_decrease_pvalue(10, 10, 0, 10), 1.0 / 184756.0, 1e-12);
  // 3/3 vs 0/3: hypergeometric tail 1/20.
  EXPECT_NEAR(fisher_decrease_pvalue(3, 3, 0, 3), 0.05, 1e-12);
  // Reversed direction is never significant.
  EXPECT_GT(fisher_decrease_pvalue(0, 10, 10, 10), 0.99);
  EXPECT_THROW(fisher_decrease_pvalue(5, 4, 0, 4), std::invalid_argument);
}

}  // namespace
}  // namespace sqham
