#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sqham/generators.hpp"

namespace sqham {
namespace {

TEST(Sprinkle, ProbabilityFormula) {
  const double n = 400.0;
  EXPECT_DOUBLE_EQ(sprinkle_probability(400, 8.0),
                   8.0 * std::pow(std::log(n), 1.0 / 3.0) / std::pow(n, 2.0 / 3.0));
  EXPECT_NEAR(sprinkle_probability(400, 8.0), 0.2676, 1e-3);
}

TEST(Sprinkle, MakeRejectsProbabilityAtOrAboveOne) {
  EXPECT_NO_THROW(SprinkleParams::make(400, 29.0));
  EXPECT_THROW(SprinkleParams::make(400, 30.0), std::invalid_argument);
  EXPECT_THROW(SprinkleParams::make(12, 0.0), std::invalid_argument);
  EXPECT_THROW(SprinkleParams::make(1, 1.0), std::invalid_argument);
}

TEST(Gnp, DeterministicPerSeed) {
  Rng a(42), b(42), c(43);
  const Graph g1 = gnp(200, 0.1, a);
  EXPECT_EQ(g1, gnp(200, 0.1, b));
  EXPECT_FALSE(g1 == gnp(200, 0.1, c));
}

TEST(Gnp, Extremes) {
  Rng rng(1);
  EXPECT_EQ(gnp(50, 0.0, rng).size(), 0u);
  EXPECT_EQ(gnp(50, 1.0, rng).size(), 50u * 49 / 2);
  EXPECT_THROW(gnp(5, 1.5, rng), std::invalid_argument);
}

TEST(Gnp, EdgeCountWithinFiveSigma) {
  Rng rng(7);
  for (double p : {0.01, 0.1, 0.5, 0.9}) {
    const std::size_t n = 300;
    const double pairs = n * (n - 1) / 2.0;
    const double mean = pairs * p;
    const double sd = std::sqrt(pairs * p * (1 - p));
    const double m = static_cast<double>(gnp(n, p, rng).size());
    EXPECT_LT(std::abs(m - mean), 5 * sd) << "p=" << p;
  }
}

TEST(Gnp, EveryPairReachable) {
  // Both the first and last pair of the row-major scan must be sampled.
  Rng rng(9);
  std::size_t first = 0, last = 0;
  for (int i = 0; i < 400; ++i) {
    const Graph g = gnp(6, 0.5, rng);
    first += g.has_edge(0, 1);
    last += g.has_edge(4, 5);
  }
  EXPECT_GT(first, 150u);
  EXPECT_GT(last, 150u);
}

TEST(Sprinkle, CountDependsOnParity) {
  Rng rng(3);
  EXPECT_EQ(sample_sprinkles(SprinkleParams::make(12, 2.0), 3, rng).size(), 3u);
  EXPECT_EQ(sample_sprinkles(SprinkleParams::make(13, 2.0), 4, rng).size(), 4u);
  EXPECT_THROW(sample_sprinkles(SprinkleParams::make(12, 2.0), 4, rng), std::invalid_argument);
  EXPECT_THROW(sample_sprinkles(SprinkleParams::make(13, 2.0), 3, rng), std::invalid_argument);
}

TEST(Host, MinDegreeHostMeetsTarget) {
  Rng rng(5);
  for (std::size_t n : {100u, 400u}) {
    const HostGraph h = min_degree_host(n, 0.75, rng);
    EXPECT_GE(h.min_degree, static_cast<std::size_t>(std::ceil(0.75 * n)));
    EXPECT_EQ(h.min_degree, min_degree(h.graph));
    EXPECT_LT(h.graph.size(), n * (n - 1) / 2) << "host should not be complete";
    EXPECT_GE(h.attempts, 1);
  }
}

TEST(Host, MinDegreeHostBudgetExhaustion) {
  Rng rng(5);
  EXPECT_THROW(min_degree_host(400, 0.75, rng, 0), GeneratorError);
  EXPECT_THROW(min_degree_host(400, 0.4, rng), std::invalid_argument);
}

TEST(Host, CompleteBipartite) {
  const Graph g = complete_bipartite(3, 9);
  EXPECT_EQ(g.order(), 12u);
  EXPECT_EQ(g.size(), 27u);
  EXPECT_TRUE(g.has_edge(0, 3));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(3, 4));
}

TEST(HostSpec, ParsesEveryKind) {
  HostSpec s = parse_host_spec("gnp:n=400,alpha=0.75");
  EXPECT_EQ(s.kind, HostSpec::Kind::gnp_conditioned);
  EXPECT_EQ(s.order(std::nullopt), 400u);
  EXPECT_EQ(s.order(100), 100u);
  EXPECT_DOUBLE_EQ(s.alpha, 0.75);
  EXPECT_EQ(parse_host_spec(s.to_string()).to_string(), s.to_string());

  s = parse_host_spec("kst:s=40,t=360");
  EXPECT_EQ(s.kind, HostSpec::Kind::complete_bipartite);
  EXPECT_EQ(s.order(std::nullopt), 400u);

  s = parse_host_spec("complete:n=12");
  EXPECT_EQ(s.order(std::nullopt), 12u);
  EXPECT_EQ(s.to_string(), "complete:n=12");

  s = parse_host_spec("file:/tmp/x.txt");
  EXPECT_EQ(s.kind, HostSpec::Kind::file);
  EXPECT_EQ(s.path, "/tmp/x.txt");
}

TEST(HostSpec, RejectsMalformed) {
  for (const char* bad : {"gnp:n=400", "gnp:n=400,alpha=0.3", "gnp:n=4x,alpha=0.75",
                          "kst:s=3", "torus:n=4", "complete:q=1", "file:", "gnp:alpha"}) {
    EXPECT_THROW(parse_host_spec(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(parse_host_spec("gnp:alpha=0.75").order(std::nullopt), std::invalid_argument);
}

TEST(HostSpec, MakeHostDeclaredAlpha) {
  Rng rng(1);
  EXPECT_DOUBLE_EQ(make_host(parse_host_spec("complete:n=12"), std::nullopt, rng).alpha_declared,
                   1.0);
  const Host kst = make_host(parse_host_spec("kst:s=3,t=9"), std::nullopt, rng);
  EXPECT_DOUBLE_EQ(kst.alpha_declared, 0.25);
  EXPECT_THROW(make_host(parse_host_spec("kst:s=3,t=9"), 20, rng), std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "sqham_host_test.txt";
  {
    std::ofstream out(path);
    out << "4 4\n0 1\n0 3\n1 2\n2 3\n";
  }
  const Host file = make_host(parse_host_spec("file:" + path.string()), std::nullopt, rng);
  EXPECT_EQ(file.graph.size(), 4u);
  EXPECT_DOUBLE_EQ(file.alpha_declared, 0.5);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace sqham
