#include "sqham/era.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace sqham {

std::string_view to_string(EdgeMode mode) {
  return mode == EdgeMode::restricted ? "restricted" : "all-edges";
}

EdgeMode parse_edge_mode(std::string_view text) {
  if (text == "restricted") return EdgeMode::restricted;
  if (text == "all-edges") return EdgeMode::all_edges;
  throw std::invalid_argument("unknown mode '" + std::string(text) +
                              "' (expected restricted or all-edges)");
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::none: return "";
    case FailureReason::matching: return "matching";
    case FailureReason::stuck_round: return "stuck_round";
    case FailureReason::gadget: return "gadget";
  }
  return "unknown";
}

std::string format_move(const Move& move) {
  switch (move.kind) {
    case Move::Kind::rotate: return "ROT " + std::to_string(move.position);
    case Move::Kind::reverse: return "REV";
    case Move::Kind::extend: return "EXT " + std::to_string(move.pillar);
    case Move::Kind::close: return "CLOSE";
    case Move::Kind::cycle_extend:
      return "CEXT " + std::to_string(move.position) + " " + std::to_string(move.pillar);
  }
  return "?";
}

Move parse_move(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string word;
  in >> word;
  Move m;
  bool ok = true;
  if (word == "ROT") {
    m.kind = Move::Kind::rotate;
    ok = static_cast<bool>(in >> m.position);
  } else if (word == "REV") {
    m.kind = Move::Kind::reverse;
  } else if (word == "EXT") {
    m.kind = Move::Kind::extend;
    ok = static_cast<bool>(in >> m.pillar);
  } else if (word == "CLOSE") {
    m.kind = Move::Kind::close;
  } else if (word == "CEXT") {
    m.kind = Move::Kind::cycle_extend;
    ok = static_cast<bool>(in >> m.position >> m.pillar);
  } else {
    ok = false;
  }
  std::string extra;
  if (!ok || (in >> extra)) throw std::invalid_argument("bad move line '" + std::string(line) + "'");
  return m;
}

namespace {

std::vector<Move> with(std::vector<Move> moves, Move next) {
  moves.push_back(next);
  return moves;
}

/// Rotation pool for one round. Pool entries are stored as the moves that
/// lead from the round's starting path to them.
class RoundExplorer {
 public:
  RoundExplorer(const TwoPath& start, const EraInstance& inst, const FreePillars* free,
                const EraConfig& cfg, RoundLog* log)
      : start_(start),
        inst_(inst),
        free_(free),
        cfg_(cfg),
        log_(log),
        cap_(cfg.max_rotations_per_round ? cfg.max_rotations_per_round
                                         : 4 * inst.gamma.order()) {}

  /// Rotation layers with an eager simple-extension check after each path.
  std::optional<RoundResult> grow() {
    add_to_pool(start_, {});
    if (auto r = check_extension(start_, {})) return r;
    if (auto r = rotate_layer(start_, {}, inst_.step1.base)) return r;

    const std::size_t first_layer = pool_.size();
    const std::size_t rotated = first_layer - 1;
    if (log_) log_->pool_target = rotated * rotated / 2;

    for (std::size_t i = 0; i < first_layer; ++i) {
      const TwoPath reversed_path = reversed(rebuild(pool_[i]));
      const auto prefix = with(pool_[i], {Move::Kind::reverse});
      if (auto r = check_extension(reversed_path, prefix)) return r;
      if (auto r = rotate_layer(reversed_path, prefix, inst_.step2.base)) return r;
    }
    return std::nullopt;
  }

  /// Closes pooled paths in order; with free pillars, also reopens each
  /// closed cycle through a free pillar.
  std::optional<RoundResult> close_pooled() {
    if (start_.pillar_count() < 3) return std::nullopt;
    for (const auto& moves : pool_) {
      TwoPath p = rebuild(moves);
      auto closed = try_close(p, inst_.gamma);
      if (!closed) continue;
      auto closed_moves = with(moves, {Move::Kind::close});
      if (free_ == nullptr || free_->empty()) {
        return RoundResult{std::move(p), std::move(closed_moves), ExtensionKind::close};
      }
      if (auto ext = try_cycle_extension(*closed, inst_.gamma, inst_.matching, *free_)) {
        return RoundResult{
            std::move(ext->path),
            with(std::move(closed_moves), {Move::Kind::cycle_extend, ext->boundary, ext->pillar}),
            ExtensionKind::cycle};
      }
    }
    return std::nullopt;
  }

  void finish(const std::optional<RoundResult>& result) {
    if (!log_) return;
    log_->rotations = rotations_;
    log_->pool_size = pool_.size();
    log_->cap_hit = cap_hit_;
    if (result) {
      log_->result = result->kind;
      log_->moves = result->moves;
    }
  }

 private:
  std::uint64_t end_key(const TwoPath& p) const {
    const auto& m = inst_.matching;
    return static_cast<std::uint64_t>(m.pillar_of(p.front())) * m.size() + m.pillar_of(p.back());
  }

  bool add_to_pool(const TwoPath& p, std::vector<Move> moves) {
    if (!seen_.insert(end_key(p)).second) return false;
    pool_.push_back(std::move(moves));
    return true;
  }

  TwoPath rebuild(const std::vector<Move>& moves) const {
    TwoPath p = start_;
    for (const Move& m : moves) {
      if (m.kind == Move::Kind::rotate) {
        p.reverse_suffix(2 * m.position + 2);
      } else if (m.kind == Move::Kind::reverse) {
        p.reverse();
      }
    }
    return p;
  }

  bool eligible(const TwoPath& p, std::size_t j, const Graph& pillar_graph) const {
    if (cfg_.mode == EdgeMode::restricted) {
      const auto& m = inst_.matching;
      if (p.glued_after(j) || !pillar_graph.adjacent(m.pillar_of(p[2 * j]), m.pillar_of(p.back()))) {
        return false;
      }
    }
    return can_rotate(p, j, inst_.gamma);
  }

  std::optional<RoundResult> check_extension(const TwoPath& p, const std::vector<Move>& moves) {
    if (free_ == nullptr || free_->empty()) return std::nullopt;
    auto ext = try_simple_extension(p, inst_.gamma, inst_.matching, *free_);
    if (!ext) return std::nullopt;
    const PillarId added = inst_.matching.pillar_of(ext->back());
    return RoundResult{std::move(*ext), with(moves, {Move::Kind::extend, 0, added}),
                       ExtensionKind::simple};
  }

  std::optional<RoundResult> rotate_layer(const TwoPath& source, const std::vector<Move>& prefix,
                                          const Graph& pillar_graph) {
    const std::size_t k = source.pillar_count();
    if (k < 3) return std::nullopt;
    for (std::size_t j = 0; j + 3 <= k; ++j) {
      if (!eligible(source, j, pillar_graph)) continue;
      if (rotations_ >= cap_) {
        cap_hit_ = true;
        return std::nullopt;
      }
      ++rotations_;
      TwoPath q = source;
      q.reverse_suffix(2 * j + 2);
      auto moves = with(prefix, {Move::Kind::rotate, j});
      if (!add_to_pool(q, moves)) continue;
      if (auto r = check_extension(q, moves)) return r;
    }
    return std::nullopt;
  }

  const TwoPath& start_;
  const EraInstance& inst_;
  const FreePillars* free_;
  const EraConfig& cfg_;
  RoundLog* log_;
  std::size_t cap_;
  std::size_t rotations_ = 0;
  bool cap_hit_ = false;
  std::vector<std::vector<Move>> pool_;
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace

std::optional<RoundResult> run_round(const TwoPath& path, const EraInstance& inst,
                                     const FreePillars& free, const EraConfig& cfg,
                                     RoundLog* log) {
  if (free.empty()) throw std::invalid_argument("run_round: no free pillars");
  if (log) log->pillars = path.pillar_count();
  RoundExplorer explorer(path, inst, &free, cfg, log);
  auto result = explorer.grow();
  if (!result) result = explorer.close_pooled();
  explorer.finish(result);
  return result;
}

std::optional<ClosedCycle> run_closing_round(const TwoPath& path, const EraInstance& inst,
                                             const EraConfig& cfg, RoundLog* log) {
  if (log) log->pillars = path.pillar_count();
  RoundExplorer explorer(path, inst, nullptr, cfg, log);
  auto result = explorer.grow();
  if (!result) result = explorer.close_pooled();
  explorer.finish(result);
  if (!result) return std::nullopt;
  return try_close(result->path, inst.gamma);
}

std::optional<Gadget> find_gadget(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<Vertex> centres(n);
  std::iota(centres.begin(), centres.end(), Vertex{0});
  const auto deg = degrees(g);
  std::stable_sort(centres.begin(), centres.end(),
                   [&](Vertex x, Vertex y) { return deg[x] > deg[y]; });

  for (Vertex c : centres) {
    if (deg[c] < 4) break;
    const VertexSet around = g.neighbors(c);
    std::optional<Gadget> found;
    around.for_each([&](Vertex a) {
      if (found) return;
      VertexSet with_a = around;
      with_a &= g.row(a);  // adjacent to both a and c
      with_a.for_each([&](Vertex b) {
        if (found || b < a) return;
        VertexSet ds = with_a;
        ds.reset(b);
        VertexSet es = around;
        es &= g.row(b);
        es.reset(a);
        ds.for_each([&](Vertex d) {
          if (found) return;
          es.for_each([&](Vertex e) {
            if (!found && e != d) found = Gadget{a, b, c, d, e};
          });
        });
      });
    });
    if (found) return found;
  }
  return std::nullopt;
}

SquareHamCycle assemble_output(const ClosedCycle& final_cycle,
                               const std::optional<Gadget>& gadget) {
  const TwoPath& p = final_cycle.path();
  if (p.gadget() != gadget) throw std::logic_error("assemble_output: gadget mismatch");
  std::vector<Vertex> order = p.expanded();
  if (order.size() != p.order()) {
    throw std::logic_error("assemble_output: cycle covers " + std::to_string(order.size()) +
                           " of " + std::to_string(p.order()) + " vertices");
  }
  return SquareHamCycle{std::move(order)};
}

EraInstance planted_instance(Graph gamma, Matching matching, std::optional<Gadget> gadget) {
  PiGraph pi = build_pi_graph(gamma, matching);
  EraInstance inst{std::move(gamma), std::move(matching), pi, pi, gadget};
  return inst;
}

SampledInstance sample_instance(const Graph& host, double K, const EraConfig& cfg, Rng& rng) {
  const std::size_t n = host.order();
  const bool odd = n % 2 == 1;
  const auto params = SprinkleParams::make(n, K);
  std::vector<Graph> xs = sample_sprinkles(params, odd ? 4 : 3, rng);

  GraphBuilder all_x(n);
  for (const Graph& x : xs) all_x.add_all(x);
  const Graph x_union = std::move(all_x).build();

  SampledInstance out;
  out.realized_x = x_union.size();
  Graph gamma = graph_union(host, x_union);

  VertexSet domain(n);
  for (Vertex v = 0; v < n; ++v) domain.set(v);
  std::optional<Gadget> gadget;
  if (odd) {
    gadget = find_gadget(gamma);
    if (!gadget) {
      out.failure = FailureReason::gadget;
      return out;
    }
    for (Vertex v : {gadget->a, gadget->b, gadget->c, gadget->d, gadget->e}) domain.reset(v);
  }

  auto x1_matching = find_perfect_matching(xs[0], cfg.matching_effort, rng, &domain);
  if (!x1_matching) {
    out.failure = FailureReason::matching;
    return out;
  }
  std::vector<Edge> pairs = x1_matching->pairs();
  if (gadget) {
    pairs.push_back(make_edge(gadget->a, gadget->d));
    pairs.push_back(make_edge(gadget->b, gadget->e));
  }
  std::sort(pairs.begin(), pairs.end());
  Matching matching(n, std::move(pairs));

  const Graph host_x1 = graph_union(host, xs[0]);
  PiGraph step1 = build_pi_graph(host_x1, matching);
  PiGraph step2 = build_pi_graph(graph_union(host_x1, xs[1]), matching);
  out.instance = EraInstance{std::move(gamma), std::move(matching), std::move(step1),
                             std::move(step2), gadget};
  return out;
}

namespace {

TwoPath initial_path(const EraInstance& inst) {
  const std::size_t n = inst.gamma.order();
  if (inst.gadget) {
    const Gadget& g = *inst.gadget;
    return TwoPath(n, {g.d, g.a, g.b, g.e}, g);
  }
  const Edge& first = inst.matching.pair(0);
  return TwoPath(n, {first.u, first.v});
}

void check_path(const TwoPath& p, const EraInstance& inst, const char* where) {
  if (auto bad = find_violation(p, inst.gamma, inst.matching)) {
    throw std::logic_error(std::string(where) + ": invalid 2-path: " + *bad);
  }
}

}  // namespace

EraOutcome run_era(const EraInstance& inst, const EraConfig& cfg) {
  const std::size_t n = inst.gamma.order();
  if (n < 6) throw std::invalid_argument("run_era: need at least 6 vertices");
  if (inst.matching.order() != n) throw std::invalid_argument("run_era: matching order differs");
  const std::size_t covered = 2 * inst.matching.size() + (inst.gadget ? 1 : 0);
  if (covered != n) throw std::invalid_argument("run_era: matching does not cover the vertices");
  if (n % 2 == 1 && !inst.gadget) throw std::invalid_argument("run_era: odd n needs a gadget");

  EraOutcome outcome;
  TwoPath path = initial_path(inst);
  check_path(path, inst, "initial path");
  outcome.trace.start.assign(path.sequence().begin(), path.sequence().end());
  FreePillars free = FreePillars::complement_of(inst.matching, path);

  for (;;) {
    ++outcome.rounds;
    RoundLog log;
    if (free.empty()) {
      auto closed = run_closing_round(path, inst, cfg, &log);
      outcome.trace.rounds.push_back(std::move(log));
      if (!closed) {
        outcome.failure = FailureReason::stuck_round;
        return outcome;
      }
      SquareHamCycle cycle = assemble_output(*closed, inst.gadget);
      if (!verify_square_ham(inst.gamma, cycle.order, 2)) {
        throw std::logic_error("run_era: assembled cycle fails verification");
      }
      outcome.cycle = std::move(cycle);
      return outcome;
    }

    auto result = run_round(path, inst, free, cfg, &log);
    outcome.trace.rounds.push_back(std::move(log));
    if (!result) {
      outcome.failure = FailureReason::stuck_round;
      return outcome;
    }
    if (cfg.debug_validate) check_path(result->path, inst, "round result");
    if (result->path.pillar_count() != path.pillar_count() + 1) {
      throw std::logic_error("run_era: round did not add exactly one pillar");
    }
    free.remove(inst.matching, inst.matching.pillar_of(result->path.back()));
    path = std::move(result->path);
  }
}

EraRun run_era(const Graph& host, double K, const EraConfig& cfg) {
  Rng rng(cfg.seed);
  EraRun run;
  run.host_below_alpha = cfg.alpha > 0.0 && host.order() > 0 &&
                         static_cast<double>(min_degree(host)) <
                             cfg.alpha * static_cast<double>(host.order());
  run.sampled = sample_instance(host, K, cfg, rng);
  if (!run.sampled.instance) {
    run.outcome.failure = run.sampled.failure;
    return run;
  }
  run.outcome = run_era(*run.sampled.instance, cfg);
  return run;
}

}  // namespace sqham
