#include "sqham/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace sqham {

std::optional<std::string> TraceFile::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void write_trace(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& params,
                 const EraInstance& inst, const EraOutcome& outcome) {
  out << "# sqham-trace v1\n# n=" << inst.gamma.order();
  for (const auto& [k, v] : params) {
    if (k != "n") out << ' ' << k << '=' << v;
  }
  out << "\nMATCHING " << inst.matching.size() << '\n';
  write_matching(out, inst.matching);
  if (inst.gadget) {
    const Gadget& g = *inst.gadget;
    out << "GADGET " << g.a << ' ' << g.b << ' ' << g.c << ' ' << g.d << ' ' << g.e << '\n';
  }
  out << "START";
  for (Vertex v : outcome.trace.start) out << ' ' << v;
  out << '\n';
  for (const RoundLog& round : outcome.trace.rounds) {
    for (const Move& m : round.moves) out << format_move(m) << '\n';
  }
  if (outcome.success()) {
    out << "END success\n";
  } else {
    out << "END failure " << to_string(outcome.failure) << '\n';
  }
}

TraceFile read_trace(std::istream& in) {
  TraceFile t;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + what);
  };
  bool have_matching = false, have_start = false, have_end = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string item;
      while (ls >> item) {
        const auto eq = item.find('=');
        if (eq != std::string::npos) t.params.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      }
      continue;
    }
    if (have_end) fail("content after END");
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "MATCHING") {
      std::size_t m = 0;
      if (!(ls >> m)) fail("MATCHING needs a pair count");
      const auto n_text = t.param("n");
      if (!n_text) fail("header must give n before MATCHING");
      t.n = std::stoul(*n_text);
      std::vector<Edge> pairs;
      for (std::size_t i = 0; i < m; ++i) {
        if (!std::getline(in, line)) fail("truncated matching");
        ++line_no;
        std::istringstream ps(line);
        Vertex u = 0, v = 0;
        if (!(ps >> u >> v)) fail("expected \"u v\"");
        pairs.push_back(make_edge(u, v));
      }
      t.matching = Matching(t.n, std::move(pairs));
      have_matching = true;
    } else if (word == "GADGET") {
      Gadget g;
      if (!(ls >> g.a >> g.b >> g.c >> g.d >> g.e)) fail("GADGET needs five vertices");
      t.gadget = g;
    } else if (word == "START") {
      Vertex v = 0;
      while (ls >> v) t.start.push_back(v);
      have_start = true;
    } else if (word == "END") {
      std::string status;
      ls >> status;
      if (status == "success") {
        t.success = true;
      } else if (status == "failure") {
        ls >> t.failure;
      } else {
        fail("END must be success or failure");
      }
      have_end = true;
    } else {
      try {
        t.moves.push_back(parse_move(line));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
  }
  if (!have_matching || !have_start || !have_end) throw std::runtime_error("trace: incomplete file");
  return t;
}

namespace {

struct ReplayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_valid(const TwoPath& p, const Graph& gamma, const Matching& m) {
  if (auto bad = find_violation(p, gamma, m)) throw ReplayError(*bad);
}

std::pair<Vertex, Vertex> orientations(const Matching& m, PillarId p) {
  return {m.pair(p).u, m.pair(p).v};
}

}  // namespace

ReplayReport replay_trace(const Graph& gamma, const TraceFile& trace) {
  ReplayReport report;
  const Matching& m = trace.matching;
  try {
    if (gamma.order() != trace.n) throw ReplayError("graph order does not match trace");
    TwoPath cur(trace.n, trace.start, trace.gadget);
    require_valid(cur, gamma, m);
    FreePillars free = FreePillars::complement_of(m, cur);

    auto take_pillar = [&](PillarId p, auto&& build) {
      if (p >= m.size() || !free.contains(p)) throw ReplayError("pillar is not free");
      const auto [lo, hi] = orientations(m, p);
      for (auto [u, v] : {std::pair{lo, hi}, std::pair{hi, lo}}) {
        TwoPath cand = build(u, v);
        if (validate(cand, gamma, m)) {
          free.remove(m, p);
          return cand;
        }
      }
      throw ReplayError("no orientation of pillar " + std::to_string(p) + " fits");
    };

    for (std::size_t i = 0; i < trace.moves.size(); ++i) {
      const Move& mv = trace.moves[i];
      switch (mv.kind) {
        case Move::Kind::rotate:
          cur = rotate(cur, mv.position, gamma);
          require_valid(cur, gamma, m);
          break;
        case Move::Kind::reverse:
          cur = reversed(cur);
          break;
        case Move::Kind::extend:
          cur = take_pillar(mv.pillar, [&](Vertex u, Vertex v) {
            TwoPath next = cur;
            next.append(u, v);
            return next;
          });
          break;
        case Move::Kind::close: {
          if (cur.pillar_count() < 3) throw ReplayError("CLOSE with fewer than 3 pillars");
          auto closed = try_close(cur, gamma);
          if (!closed) throw ReplayError("CLOSE: closing edges missing");
          const bool reopen = i + 1 < trace.moves.size() &&
                              trace.moves[i + 1].kind == Move::Kind::cycle_extend;
          if (!reopen) {
            if (!free.empty() || i + 1 != trace.moves.size()) {
              throw ReplayError("CLOSE before every pillar is used");
            }
            report.cycle = assemble_output(*closed, trace.gadget);
            if (!verify_square_ham(gamma, report.cycle->order, 2)) {
              throw ReplayError("final cycle fails verification");
            }
            break;
          }
          const Move& ext = trace.moves[++i];
          ++report.moves_applied;
          const std::size_t j = ext.position;
          if (j + 1 >= cur.pillar_count() || cur.glued_after(j)) {
            throw ReplayError("CEXT boundary out of range");
          }
          const auto s = cur.sequence();
          cur = take_pillar(ext.pillar, [&](Vertex u, Vertex v) {
            std::vector<Vertex> seq(s.begin() + static_cast<std::ptrdiff_t>(2 * j + 2), s.end());
            seq.insert(seq.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(2 * j + 2));
            seq.push_back(u);
            seq.push_back(v);
            return TwoPath(trace.n, std::move(seq), trace.gadget);
          });
          break;
        }
        case Move::Kind::cycle_extend:
          throw ReplayError("CEXT without a preceding CLOSE");
      }
      ++report.moves_applied;
    }
    if (trace.success && !report.cycle) throw ReplayError("trace claims success but never closes");
    report.ok = true;
  } catch (const std::exception& e) {
    report.error = "move " + std::to_string(report.moves_applied) + ": " + e.what();
  }
  return report;
}

}  // namespace sqham
