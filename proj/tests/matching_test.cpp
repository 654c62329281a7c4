#include <gtest/gtest.h>

#include <sstream>

#include "sqham/matching.hpp"
#include "test_util.hpp"

namespace sqham {
namespace {

using namespace sqham::testing;

TEST(Matching, CanonicalPairsAndLookups) {
  const Matching m(6, {make_edge(5, 4), make_edge(0, 3)});
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.mate(4), 5u);
  EXPECT_EQ(m.mate(3), 0u);
  EXPECT_FALSE(m.matched(1));
  EXPECT_TRUE(m.is_pillar(3, 0));
  EXPECT_FALSE(m.is_pillar(3, 4));
  EXPECT_EQ(m.pair(m.pillar_of(5)), make_edge(4, 5));
}

TEST(Matching, RejectsOverlapAndRange) {
  EXPECT_THROW(Matching(4, {make_edge(0, 1), make_edge(1, 2)}), std::invalid_argument);
  EXPECT_THROW(Matching(4, {make_edge(0, 4)}), std::invalid_argument);
}

TEST(PerfectMatching, ForcedByPerfectMatchingGraph) {
  GraphBuilder b(6);
  b.add_edge(0, 1);
  b.add_edge(2, 3);
  b.add_edge(4, 5);
  Rng rng(1);
  const auto m = find_perfect_matching(std::move(b).build(), 4, rng);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->pairs(), (std::vector<Edge>{{0, 1}, {2, 3}, {4, 5}}));
}

TEST(PerfectMatching, K4GivesOneOfThree) {
  const Graph k4 = complete_graph(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto m = find_perfect_matching(k4, 1, rng);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->size(), 2u);
    EXPECT_TRUE(is_valid_matching(k4, *m));
  }
}

TEST(PerfectMatching, RandomGraphValidates) {
  Rng rng(100);
  const Graph g = random_graph(100, 0.3, rng);
  const auto m = find_perfect_matching(g, 8, rng);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->size(), 50u);
  EXPECT_TRUE(is_valid_matching(g, *m));
  for (const Edge& e : m->pairs()) EXPECT_TRUE(g.has_edge(e.u, e.v));
}

TEST(PerfectMatching, ExistenceAgreesWithExhaustiveSearchOnSmallGraphs) {
  // NotFound is allowed only when the effort runs out, so with a generous
  // budget on n <= 12 it should coincide with non-existence.
  Rng rng(7);
  std::size_t found = 0, absent = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 2 * (2 + trial % 5);
    const double p = 0.15 + 0.05 * (trial % 7);
    const auto a = random_matrix(n, p, rng);
    const Graph g = from_matrix(a);
    const auto m = find_perfect_matching(g, 32, rng);
    const bool exists = has_perfect_matching(a);
    if (m) {
      EXPECT_TRUE(is_valid_matching(g, *m));
      EXPECT_EQ(m->size(), n / 2);
    }
    EXPECT_EQ(m.has_value(), exists) << "n=" << n << " trial=" << trial;
    (exists ? found : absent) += 1;
  }
  EXPECT_GT(found, 50u);
  EXPECT_GT(absent, 50u);
}

TEST(PerfectMatching, RestrictedDomain) {
  Rng rng(3);
  const Graph g = complete_graph(9);
  VertexSet domain(9);
  for (Vertex v : {0u, 2u, 4u, 6u}) domain.set(v);
  const auto m = find_perfect_matching(g, 4, rng, &domain);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->size(), 2u);
  EXPECT_TRUE(is_valid_matching(g, *m, &domain));
  for (Vertex v : {1u, 3u, 5u, 7u, 8u}) EXPECT_FALSE(m->matched(v));
}

TEST(PerfectMatching, ContractViolations) {
  Rng rng(3);
  EXPECT_THROW(find_perfect_matching(complete_graph(5), 4, rng), std::invalid_argument);
  EXPECT_THROW(find_perfect_matching(complete_graph(6), 0, rng), std::invalid_argument);
}

TEST(PiGraph, MatchesSixEdgeCriterion) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + 2 * (trial % 9);
    const auto a = random_matrix(n, 0.5 + 0.05 * (trial % 8), rng);
    const Graph h = from_matrix(a);
    const Matching m = random_matching(n, rng);
    const PiGraph pi = build_pi_graph(h, m);
    ASSERT_EQ(pi.base.order(), m.size());
    for (PillarId i = 0; i < m.size(); ++i) {
      for (PillarId j = i + 1; j < m.size(); ++j) {
        EXPECT_EQ(pi.base.has_edge(i, j), naive_pi_adjacent(a, m.pair(i), m.pair(j)));
      }
    }
  }
}

TEST(PiGraph, CompleteHostGivesCompletePi) {
  Rng rng(2);
  const Matching m = random_matching(20, rng);
  const PiGraph pi = build_pi_graph(complete_graph(20), m);
  EXPECT_EQ(pi.base.size(), 45u);
  EXPECT_TRUE(is_connected(pi));
}

TEST(PiGraph, DegreeDiagnostic) {
  Rng rng(2);
  const Matching m = random_matching(40, rng);
  const PiGraph pi = build_pi_graph(complete_graph(40), m);
  const PiDegreeReport r = pi_degree_diagnostic(pi, 0.75);
  EXPECT_EQ(r.min_degree, 19u);
  EXPECT_DOUBLE_EQ(r.beta1_n, 0.125 / 2.0 * 40.0);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(pi_degree_diagnostic(pi, 0.5), std::invalid_argument);
}

TEST(PiGraph, DisconnectedWhenPillarsIsolated) {
  GraphBuilder b(8);
  b.add_edge(0, 1);
  b.add_edge(2, 3);
  b.add_edge(4, 5);
  b.add_edge(6, 7);
  const Matching m(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  EXPECT_FALSE(is_connected(build_pi_graph(std::move(b).build(), m)));
}

TEST(MatchingIo, RoundTripAndErrors) {
  Rng rng(5);
  const Matching m = random_matching(16, rng);
  std::stringstream ss;
  write_matching(ss, m);
  EXPECT_EQ(read_matching(ss, 16, 8), m);
  std::istringstream truncated("0 1\n");
  EXPECT_THROW(read_matching(truncated, 4, 2), std::runtime_error);
  std::istringstream garbage("0 x\n");
  EXPECT_THROW(read_matching(garbage, 4, 1), std::runtime_error);
}

}  // namespace
}  // namespace sqham
