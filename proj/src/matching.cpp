#include "sqham/matching.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace sqham {

Matching::Matching(std::size_t n, std::vector<Edge> pairs)
    : pairs_(std::move(pairs)), pair_of_(n, kUnmatched) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    Edge& e = pairs_[i];
    e = make_edge(e.u, e.v);
    for (Vertex x : {e.u, e.v}) {
      if (x >= n) throw std::invalid_argument("matching: vertex out of range");
      if (pair_of_[x] != kUnmatched) {
        throw std::invalid_argument("matching: vertex " + std::to_string(x) +
                                    " used by two pairs");
      }
      pair_of_[x] = static_cast<std::int32_t>(i);
    }
  }
}

bool is_valid_matching(const Graph& g, const Matching& m, const VertexSet* domain) {
  if (m.order() != g.order()) return false;
  for (const Edge& e : m.pairs()) {
    if (!g.adjacent(e.u, e.v)) return false;
    if (domain && (!domain->test(e.u) || !domain->test(e.v))) return false;
  }
  if (domain) {
    bool covered = true;
    domain->for_each([&](Vertex v) { covered = covered && m.matched(v); });
    return covered;
  }
  return true;
}

namespace {

Vertex pick_random(const VertexSet& candidates, Rng& rng) {
  const std::size_t c = candidates.count();
  std::size_t target = std::uniform_int_distribution<std::size_t>(0, c - 1)(rng);
  Vertex chosen = 0;
  candidates.for_each([&](Vertex v) {
    if (target == 0) chosen = v;
    --target;
  });
  return chosen;
}

class MatchingAttempt {
 public:
  MatchingAttempt(const Graph& g, const VertexSet& domain)
      : g_(g), domain_(domain), mate_(g.order(), kNone), free_(domain) {}

  void greedy(Rng& rng) {
    std::vector<Vertex> order = domain_.to_vector();
    std::shuffle(order.begin(), order.end(), rng);
    for (Vertex u : order) {
      if (!free_.test(u)) continue;
      VertexSet cand = g_.neighbors(u);
      cand &= free_;
      if (cand.empty()) continue;
      link(u, pick_random(cand, rng));
    }
  }

  // Augmenting paths u - w = w' - v with u, v free and {w, w'} matched.
  void repair(Rng& rng) {
    bool progress = true;
    while (progress && !free_.empty()) {
      progress = false;
      for (Vertex u : free_.to_vector()) {
        if (!free_.test(u)) continue;
        VertexSet direct = g_.neighbors(u);
        direct &= free_;
        if (!direct.empty()) {
          link(u, pick_random(direct, rng));
          progress = true;
          continue;
        }
        VertexSet via = g_.neighbors(u);
        via &= domain_;
        bool augmented = false;
        via.for_each([&](Vertex w) {
          if (augmented || mate_[w] == kNone) return;
          const Vertex w2 = mate_[w];
          VertexSet ends = g_.neighbors(w2);
          ends &= free_;
          ends.reset(u);
          if (ends.empty()) return;
          const Vertex v = pick_random(ends, rng);
          link(u, w);
          link(w2, v);
          augmented = true;
        });
        progress = progress || augmented;
      }
    }
  }

  bool perfect() const { return free_.empty(); }

  Matching result() const {
    std::vector<Edge> pairs;
    domain_.for_each([&](Vertex v) {
      if (v < mate_[v]) pairs.push_back({v, mate_[v]});
    });
    return Matching(g_.order(), std::move(pairs));
  }

 private:
  static constexpr Vertex kNone = static_cast<Vertex>(-1);

  void link(Vertex a, Vertex b) {
    mate_[a] = b;
    mate_[b] = a;
    free_.reset(a);
    free_.reset(b);
  }

  const Graph& g_;
  const VertexSet& domain_;
  std::vector<Vertex> mate_;
  VertexSet free_;
};

}  // namespace

std::optional<Matching> find_perfect_matching(const Graph& g, int effort, Rng& rng,
                                              const VertexSet* domain) {
  if (effort < 1) throw std::invalid_argument("find_perfect_matching: effort must be >= 1");
  VertexSet all(g.order());
  if (domain == nullptr) {
    for (Vertex v = 0; v < g.order(); ++v) all.set(v);
    domain = &all;
  } else if (domain->capacity() != g.order()) {
    throw std::invalid_argument("find_perfect_matching: domain capacity differs from n");
  }
  if (domain->count() % 2 != 0) {
    throw std::invalid_argument("find_perfect_matching: domain has an odd number of vertices");
  }
  for (int attempt = 0; attempt < effort; ++attempt) {
    MatchingAttempt run(g, *domain);
    run.greedy(rng);
    run.repair(rng);
    if (run.perfect()) return run.result();
  }
  return std::nullopt;
}

PiGraph build_pi_graph(const Graph& host, const Matching& m) {
  if (m.order() != host.order()) {
    throw std::invalid_argument("build_pi_graph: matching and host orders differ");
  }
  const std::size_t k = m.size();
  // common[i] = vertices adjacent to both ends of pillar i.
  std::vector<VertexSet> common;
  common.reserve(k);
  for (const Edge& e : m.pairs()) {
    VertexSet c = host.neighbors(e.u);
    c &= host.row(e.v);
    common.push_back(std::move(c));
  }
  GraphBuilder b(k);
  for (PillarId i = 0; i < k; ++i) {
    const Edge& e = m.pair(i);
    if (!host.adjacent(e.u, e.v)) continue;
    for (PillarId j = i + 1; j < k; ++j) {
      const Edge& f = m.pair(j);
      if (host.adjacent(f.u, f.v) && common[i].test(f.u) && common[i].test(f.v)) {
        b.add_edge(i, j);
      }
    }
  }
  return PiGraph{std::move(b).build(), m};
}

PiDegreeReport pi_degree_diagnostic(const PiGraph& pi, double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) {
    throw std::invalid_argument("pi_degree_diagnostic: alpha must lie in (1/2, 1]");
  }
  const double beta1 = std::pow(2.0 * alpha - 1.0, 3) / 2.0;
  PiDegreeReport r;
  r.beta1_n = beta1 * 2.0 * static_cast<double>(pi.matching.size());
  r.min_degree = pi.base.order() == 0 ? 0 : min_degree(pi.base);
  r.pass = static_cast<double>(r.min_degree) >= r.beta1_n;
  return r;
}

bool is_connected(const PiGraph& pi) { return connected_components(pi.base).size() == 1; }

void write_matching(std::ostream& out, const Matching& m) {
  for (const Edge& e : m.pairs()) out << e.u << ' ' << e.v << '\n';
}

Matching read_matching(std::istream& in, std::size_t n, std::size_t pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs);
  std::string line;
  while (edges.size() < pairs && std::getline(in, line)) {
    std::istringstream ls(line);
    Vertex u = 0, v = 0;
    if (!(ls >> u >> v)) throw std::runtime_error("matching: expected \"u v\", got '" + line + "'");
    edges.push_back(make_edge(u, v));
  }
  if (edges.size() != pairs) throw std::runtime_error("matching: truncated pair list");
  return Matching(n, std::move(edges));
}

}  // namespace sqham
