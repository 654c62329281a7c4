#include "sqham/twopath.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace sqham {

bool gadget_edges_present(const Graph& g, const Gadget& x) {
  const Vertex vs[5] = {x.a, x.b, x.c, x.d, x.e};
  for (int i = 0; i < 5; ++i) {
    if (vs[i] >= g.order()) return false;
    for (int j = i + 1; j < 5; ++j) {
      if (vs[i] == vs[j]) return false;
    }
  }
  return g.adjacent(x.a, x.b) && g.adjacent(x.a, x.c) && g.adjacent(x.b, x.c) &&
         g.adjacent(x.a, x.d) && g.adjacent(x.b, x.e) && g.adjacent(x.c, x.d) &&
         g.adjacent(x.c, x.e);
}

TwoPath::TwoPath(std::size_t n, std::vector<Vertex> seq, std::optional<Gadget> gadget)
    : seq_(std::move(seq)), pos_(n, -1), gadget_(gadget) {
  if (seq_.empty() || seq_.size() % 2 != 0) {
    throw std::invalid_argument("TwoPath: sequence length must be positive and even");
  }
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    const Vertex v = seq_[i];
    if (v >= n) throw std::invalid_argument("TwoPath: vertex out of range");
    if (pos_[v] >= 0) throw std::invalid_argument("TwoPath: repeated vertex " + std::to_string(v));
    pos_[v] = static_cast<std::int32_t>(i);
  }
  if (gadget_ && (gadget_->c >= n || pos_[gadget_->c] >= 0)) {
    throw std::invalid_argument("TwoPath: gadget centre must be off the sequence");
  }
}

bool TwoPath::glued_after(std::size_t pillar) const {
  if (!gadget_ || 2 * pillar + 2 >= seq_.size()) return false;
  const Vertex q = seq_[2 * pillar + 1];
  const Vertex r = seq_[2 * pillar + 2];
  return (q == gadget_->a && r == gadget_->b) || (q == gadget_->b && r == gadget_->a);
}

std::vector<Vertex> TwoPath::expanded() const {
  std::vector<Vertex> out;
  out.reserve(seq_.size() + 1);
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    out.push_back(seq_[i]);
    if (i % 2 == 1 && glued_after(i / 2)) out.push_back(gadget_->c);
  }
  return out;
}

void TwoPath::reverse() { reverse_suffix(0); }

void TwoPath::reverse_suffix(std::size_t from) {
  std::reverse(seq_.begin() + static_cast<std::ptrdiff_t>(from), seq_.end());
  for (std::size_t i = from; i < seq_.size(); ++i) pos_[seq_[i]] = static_cast<std::int32_t>(i);
}

void TwoPath::append(Vertex u, Vertex v) {
  if (u == v || pos_[u] >= 0 || pos_[v] >= 0 || (gadget_ && (u == gadget_->c || v == gadget_->c))) {
    throw std::invalid_argument("TwoPath::append: vertex already used");
  }
  pos_[u] = static_cast<std::int32_t>(seq_.size());
  seq_.push_back(u);
  pos_[v] = static_cast<std::int32_t>(seq_.size());
  seq_.push_back(v);
}

FreePillars::FreePillars(const Matching& m, std::span<const PillarId> ids)
    : pillars_(m.size()), vertices_(m.order()) {
  for (PillarId p : ids) {
    pillars_.set(p);
    vertices_.set(m.pair(p).u);
    vertices_.set(m.pair(p).v);
  }
}

FreePillars FreePillars::complement_of(const Matching& m, const TwoPath& path) {
  std::vector<PillarId> ids;
  for (PillarId p = 0; p < m.size(); ++p) {
    const Edge& e = m.pair(p);
    if (!path.contains(e.u) && !path.contains(e.v)) ids.push_back(p);
  }
  return FreePillars(m, ids);
}

void FreePillars::remove(const Matching& m, PillarId p) {
  pillars_.reset(p);
  vertices_.reset(m.pair(p).u);
  vertices_.reset(m.pair(p).v);
}

namespace {

std::string edge_text(Vertex a, Vertex b) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

std::optional<std::string> check_glued_boundary(const TwoPath& p, std::size_t j,
                                                const Graph& gamma) {
  const Gadget& g = *p.gadget();
  const Vertex w = p[2 * j], x = p[2 * j + 1], y = p[2 * j + 2], z = p[2 * j + 3];
  const bool forward = w == g.d && x == g.a && y == g.b && z == g.e;
  const bool backward = w == g.e && x == g.b && y == g.a && z == g.d;
  if (!forward && !backward) return "gadget block is not traversed as (d,a,c,b,e)";
  if (!gadget_edges_present(gamma, g)) return std::string("gadget edges missing");
  return std::nullopt;
}

}  // namespace

std::optional<std::string> find_violation(const TwoPath& p, const Graph& gamma,
                                          const Matching& m) {
  if (p.order() != gamma.order() || m.order() != gamma.order()) {
    return std::string("order mismatch between path, graph and matching");
  }
  const std::size_t k = p.pillar_count();
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex x = p[2 * i], y = p[2 * i + 1];
    if (!m.is_pillar(x, y)) return "pillar " + std::to_string(i) + " " + edge_text(x, y) +
                                   " is not a matching edge";
    if (!gamma.adjacent(x, y)) return "pillar edge " + edge_text(x, y) + " missing";
  }
  std::size_t glued = 0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (p.glued_after(j)) {
      ++glued;
      if (auto bad = check_glued_boundary(p, j, gamma)) return bad;
      continue;
    }
    const Vertex w = p[2 * j], x = p[2 * j + 1], y = p[2 * j + 2], z = p[2 * j + 3];
    if (!gamma.adjacent(x, y)) return "path edge " + edge_text(x, y) + " missing";
    if (!gamma.adjacent(w, y)) return "skip edge " + edge_text(w, y) + " missing";
    if (!gamma.adjacent(x, z)) return "skip edge " + edge_text(x, z) + " missing";
  }
  if (p.gadget() && glued != 1) return std::string("gadget block broken or absent");
  return std::nullopt;
}

bool validate(const TwoPath& p, const Graph& gamma, const Matching& m) {
  return !find_violation(p, gamma, m).has_value();
}

namespace {

bool closing_edges_present(const TwoPath& p, const Graph& gamma) {
  const std::size_t len = p.length();
  const Vertex first = p[0], second = p[1];
  const Vertex last = p[len - 1], penultimate = p[len - 2];
  return gamma.adjacent(penultimate, first) && gamma.adjacent(first, last) &&
         gamma.adjacent(last, second);
}

}  // namespace

bool validate(const ClosedCycle& c, const Graph& gamma, const Matching& m) {
  return c.pillar_count() >= 3 && validate(c.path(), gamma, m) &&
         closing_edges_present(c.path(), gamma);
}

bool can_rotate(const TwoPath& p, std::size_t pillar, const Graph& gamma) {
  const std::size_t k = p.pillar_count();
  if (k < 3 || pillar > k - 3 || p.glued_after(pillar)) return false;
  const Vertex left = p[2 * pillar], right = p[2 * pillar + 1];
  const Vertex end_inner = p[2 * k - 2], end_outer = p[2 * k - 1];
  return gamma.adjacent(left, end_outer) && gamma.adjacent(right, end_inner) &&
         gamma.adjacent(right, end_outer);
}

TwoPath rotate(const TwoPath& p, std::size_t pillar, const Graph& gamma) {
  if (!can_rotate(p, pillar, gamma)) {
    throw PreconditionFailed("rotate: pillar " + std::to_string(pillar) +
                             " is not a usable rotation point");
  }
  TwoPath out = p;
  out.reverse_suffix(2 * pillar + 2);
  return out;
}

TwoPath reversed(const TwoPath& p) {
  TwoPath out = p;
  out.reverse();
  return out;
}

std::optional<TwoPath> try_simple_extension(const TwoPath& p, const Graph& gamma,
                                            const Matching& m, const FreePillars& free) {
  if (free.empty()) return std::nullopt;
  const Vertex inner = p[p.length() - 2];
  const Vertex outer = p.back();

  VertexSet cand = gamma.neighbors(outer);
  cand &= gamma.row(inner);
  cand &= free.vertices();

  std::optional<PillarId> best;
  Vertex best_u = 0;
  cand.for_each([&](Vertex u) {
    const Vertex v = m.mate(u);
    if (!gamma.adjacent(outer, v)) return;
    const PillarId pid = m.pillar_of(u);
    if (!best || pid < *best || (pid == *best && u < best_u)) {
      best = pid;
      best_u = u;
    }
  });
  if (!best) return std::nullopt;

  TwoPath out = p;
  out.append(best_u, m.mate(best_u));
  assert(validate(out, gamma, m));
  return out;
}

std::optional<ClosedCycle> try_close(const TwoPath& p, const Graph& gamma) {
  if (p.pillar_count() < 3) {
    throw std::invalid_argument("try_close: a closed 2-path needs at least 3 pillars");
  }
  if (!closing_edges_present(p, gamma)) return std::nullopt;
  return ClosedCycle(p);
}

std::optional<CycleExtension> try_cycle_extension(const ClosedCycle& c, const Graph& gamma,
                                                  const Matching& m, const FreePillars& free) {
  if (free.empty()) return std::nullopt;
  const TwoPath& p = c.path();
  const std::size_t k = p.pillar_count();
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (p.glued_after(j)) continue;
    const Vertex left = p[2 * j], right = p[2 * j + 1];
    VertexSet cand = gamma.neighbors(left);
    cand &= gamma.row(right);
    cand &= free.vertices();

    std::optional<PillarId> best;
    Vertex best_u = 0;
    cand.for_each([&](Vertex u) {
      if (!gamma.adjacent(right, m.mate(u))) return;
      const PillarId pid = m.pillar_of(u);
      if (!best || pid < *best || (pid == *best && u < best_u)) {
        best = pid;
        best_u = u;
      }
    });
    if (!best) continue;

    std::vector<Vertex> seq;
    seq.reserve(p.length() + 2);
    const auto s = p.sequence();
    seq.insert(seq.end(), s.begin() + static_cast<std::ptrdiff_t>(2 * j + 2), s.end());
    seq.insert(seq.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(2 * j + 2));
    seq.push_back(best_u);
    seq.push_back(m.mate(best_u));
    CycleExtension ext{TwoPath(p.order(), std::move(seq), p.gadget()), j, *best};
    assert(validate(ext.path, gamma, m));
    return ext;
  }
  return std::nullopt;
}

}  // namespace sqham
