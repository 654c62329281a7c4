#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sqham/generators.hpp"
#include "sqham/graph.hpp"

namespace sqham {

using PillarId = std::uint32_t;

inline constexpr std::int32_t kUnmatched = -1;

/// A set of vertex-disjoint edges ("pillars"), indexed 0..size()-1.
class Matching {
 public:
  Matching() = default;
  /// Throws std::invalid_argument if pairs overlap or leave [0, n).
  Matching(std::size_t n, std::vector<Edge> pairs);

  std::size_t order() const { return pair_of_.size(); }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<Edge>& pairs() const { return pairs_; }
  const Edge& pair(PillarId i) const { return pairs_[i]; }

  bool matched(Vertex v) const { return pair_of_[v] != kUnmatched; }
  /// Pillar containing v; v must be matched.
  PillarId pillar_of(Vertex v) const { return static_cast<PillarId>(pair_of_[v]); }
  Vertex mate(Vertex v) const {
    const Edge& e = pairs_[pillar_of(v)];
    return e.u == v ? e.v : e.u;
  }
  bool is_pillar(Vertex a, Vertex b) const {
    return a < order() && b < order() && matched(a) && pair_of_[a] == pair_of_[b] && a != b;
  }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> pairs_;
  std::vector<std::int32_t> pair_of_;
};

/// Disjointness holds by construction; checks that every pair is an edge of
/// g and, if `domain` is given, that exactly the domain vertices are covered.
bool is_valid_matching(const Graph& g, const Matching& m, const VertexSet* domain = nullptr);

/// Randomised greedy matching with length-3 augmenting repair and full
/// restarts, restricted to the vertices of `domain` (all vertices when
/// null). The domain size must be even. Returns nullopt once `effort`
/// restarts are exhausted; that does not certify non-existence.
/// Pairs are returned sorted, so pillar 0 holds the smallest matched vertex.
std::optional<Matching> find_perfect_matching(const Graph& g, int effort, Rng& rng,
                                              const VertexSet* domain = nullptr);

/// Contraction graph on the pillars of a matching: pillars i and j are
/// adjacent iff their four endpoints span a K4 in the host graph.
struct PiGraph {
  Graph base;
  Matching matching;
};

PiGraph build_pi_graph(const Graph& host, const Matching& m);

struct PiDegreeReport {
  std::size_t min_degree = 0;
  double beta1_n = 0.0;
  bool pass = false;
};

/// Observed minimum degree against beta1 * n with beta1 = (2 alpha - 1)^3 / 2
/// and n = 2m. Requires 1/2 < alpha <= 1.
PiDegreeReport pi_degree_diagnostic(const PiGraph& pi, double alpha);

bool is_connected(const PiGraph& pi);

/// One pair per line, "u v".
void write_matching(std::ostream& out, const Matching& m);
Matching read_matching(std::istream& in, std::size_t n, std::size_t pairs);

}  // namespace sqham
