#pragma once

// Independent reference implementations and planted-instance builders shared
// by the unit tests and the acceptance binary. Nothing here calls the
// library's own predicates; everything works on a plain adjacency matrix.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "sqham/era.hpp"
#include "sqham/graph.hpp"
#include "sqham/matching.hpp"
#include "sqham/twopath.hpp"

namespace sqham::testing {

using AdjMatrix = std::vector<std::vector<bool>>;

inline AdjMatrix to_matrix(const Graph& g) {
  AdjMatrix a(g.order(), std::vector<bool>(g.order(), false));
  for (const Edge& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

inline Graph from_matrix(const AdjMatrix& a) {
  GraphBuilder b(a.size());
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = u + 1; v < a.size(); ++v) {
      if (a[u][v]) b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return std::move(b).build();
}

inline AdjMatrix random_matrix(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  AdjMatrix a(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) a[u][v] = a[v][u] = coin(rng);
  }
  return a;
}

inline Graph random_graph(std::size_t n, double p, Rng& rng) {
  return from_matrix(random_matrix(n, p, rng));
}

/// Cyclic k-th power check written directly from the definition.
inline bool naive_is_power_cycle(const AdjMatrix& a, const std::vector<Vertex>& order,
                                 std::size_t k) {
  const std::size_t n = order.size();
  if (n != a.size()) return false;
  std::vector<bool> seen(n, false);
  for (Vertex v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= k; ++d) {
      if (!a[order[i]][order[(i + d) % n]]) return false;
    }
  }
  return true;
}

/// Pillars i and j are Pi-adjacent iff all six pairs among their endpoints
/// are edges.
inline bool naive_pi_adjacent(const AdjMatrix& a, const Edge& e, const Edge& f) {
  const Vertex w[4] = {e.u, e.v, f.u, f.v};
  for (int x = 0; x < 4; ++x) {
    for (int y = x + 1; y < 4; ++y) {
      if (w[x] == w[y] || !a[w[x]][w[y]]) return false;
    }
  }
  return true;
}

/// Exhaustive perfect-matching existence by always matching the lowest
/// unmatched vertex.
inline bool has_perfect_matching(const AdjMatrix& a, std::vector<bool>& used) {
  const std::size_t n = a.size();
  std::size_t u = 0;
  while (u < n && used[u]) ++u;
  if (u == n) return true;
  used[u] = true;
  for (std::size_t v = u + 1; v < n; ++v) {
    if (!used[v] && a[u][v]) {
      used[v] = true;
      if (has_perfect_matching(a, used)) return true;
      used[v] = false;
    }
  }
  used[u] = false;
  return false;
}

inline bool has_perfect_matching(const AdjMatrix& a) {
  std::vector<bool> used(a.size(), false);
  return has_perfect_matching(a, used);
}

/// Matching pairing a random permutation of [0, n) consecutively.
inline Matching random_matching(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i + 1 < n; i += 2) pairs.push_back(make_edge(perm[i], perm[i + 1]));
  return Matching(n, std::move(pairs));
}

/// Adds every pair at distance one or two along `seq`.
inline void add_square_path(AdjMatrix& a, const std::vector<Vertex>& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t d = 1; d <= 2 && i + d < seq.size(); ++d) {
      a[seq[i]][seq[i + d]] = a[seq[i + d]][seq[i]] = true;
    }
  }
}

inline void set_edge(AdjMatrix& a, Vertex u, Vertex v, bool on = true) {
  a[u][v] = a[v][u] = on;
}

/// A random 2-path over `k` random pillars of `m`, each in a random
/// orientation. Returns the vertex sequence.
inline std::vector<Vertex> random_pillar_sequence(const Matching& m, std::size_t k, Rng& rng) {
  std::vector<PillarId> ids(m.size());
  std::iota(ids.begin(), ids.end(), PillarId{0});
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<Vertex> seq;
  std::bernoulli_distribution flip(0.5);
  for (std::size_t i = 0; i < k; ++i) {
    Edge e = m.pair(ids[i]);
    if (flip(rng)) std::swap(e.u, e.v);
    seq.push_back(e.u);
    seq.push_back(e.v);
  }
  return seq;
}

/// A planted instance: a 2-path `seq` on the square of its own sequence,
/// optional random noise edges that avoid `forbidden`, plus extra required
/// edges for the move under test.
struct Planted {
  std::size_t n = 0;
  Matching matching;
  std::vector<Vertex> seq;
  AdjMatrix adj;
  std::vector<Edge> required;

  Graph graph() const { return from_matrix(adj); }
  TwoPath path() const { return TwoPath(n, seq); }
};

inline Planted planted_path(std::size_t n, std::size_t k, Rng& rng) {
  Planted p;
  p.n = n;
  p.matching = random_matching(n, rng);
  p.seq = random_pillar_sequence(p.matching, k, rng);
  p.adj.assign(n, std::vector<bool>(n, false));
  for (const Edge& e : p.matching.pairs()) set_edge(p.adj, e.u, e.v);
  add_square_path(p.adj, p.seq);
  return p;
}

inline void require(Planted& p, Vertex u, Vertex v) {
  set_edge(p.adj, u, v);
  p.required.push_back(make_edge(u, v));
}

}  // namespace sqham::testing
