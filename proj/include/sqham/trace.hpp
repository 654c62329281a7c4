#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqham/era.hpp"

namespace sqham {

/// Parsed trace file:
///
///   # sqham-trace v1
///   # key=value key=value ...        (parameters and seed)
///   MATCHING m
///   u v                              (m lines)
///   GADGET a b c d e                 (odd n only)
///   START x1 x2 ...
///   ROT j | REV | EXT p | CLOSE | CEXT j p
///   END success | END failure <reason>
struct TraceFile {
  std::vector<std::pair<std::string, std::string>> params;
  std::size_t n = 0;
  Matching matching;
  std::optional<Gadget> gadget;
  std::vector<Vertex> start;
  std::vector<Move> moves;
  bool success = false;
  std::string failure;

  std::optional<std::string> param(const std::string& key) const;
};

void write_trace(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& params,
                 const EraInstance& inst, const EraOutcome& outcome);

TraceFile read_trace(std::istream& in);

struct ReplayReport {
  bool ok = false;
  std::size_t moves_applied = 0;
  std::string error;
  std::optional<SquareHamCycle> cycle;
};

/// Re-applies every move against gamma, validating the path after each one.
/// A trace that ends in success must finish with a verified square cycle.
ReplayReport replay_trace(const Graph& gamma, const TraceFile& trace);

}  // namespace sqham
