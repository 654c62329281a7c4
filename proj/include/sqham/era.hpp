#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqham/generators.hpp"
#include "sqham/graph.hpp"
#include "sqham/matching.hpp"
#include "sqham/oracle.hpp"
#include "sqham/twopath.hpp"

namespace sqham {

/// Which edges may drive rotations. `restricted` uses Pi(G+X1) for the
/// first rotation layer and Pi(G+X1+X2) for the second; `all_edges` accepts
/// any rotation whose three edges are present in the full graph.
enum class EdgeMode { restricted, all_edges };

std::string_view to_string(EdgeMode mode);
EdgeMode parse_edge_mode(std::string_view text);

struct EraConfig {
  /// 0 means 4n.
  std::size_t max_rotations_per_round = 0;
  std::uint64_t seed = 0;
  bool debug_validate = false;
  /// Declared host minimum-degree fraction; diagnostics only.
  double alpha = 0.0;
  EdgeMode mode = EdgeMode::restricted;
  int matching_effort = 32;
};

enum class FailureReason { none, matching, stuck_round, gadget };

std::string_view to_string(FailureReason reason);

/// One step on the way from a round's starting path to its result.
struct Move {
  enum class Kind { rotate, reverse, extend, close, cycle_extend };

  Kind kind = Kind::rotate;
  std::size_t position = 0;  ///< pillar position for rotate / cycle_extend
  PillarId pillar = 0;       ///< appended pillar for extend / cycle_extend

  friend bool operator==(const Move&, const Move&) = default;
};

/// "ROT j", "REV", "EXT p", "CLOSE", "CEXT j p".
std::string format_move(const Move& move);
Move parse_move(std::string_view line);

enum class ExtensionKind { none, simple, cycle, close };

struct RoundLog {
  std::size_t pillars = 0;  ///< k at the start of the round
  std::size_t rotations = 0;
  std::size_t pool_size = 0;
  std::size_t pool_target = 0;  ///< L * L / 2 for L first-layer rotations
  bool cap_hit = false;
  ExtensionKind result = ExtensionKind::none;
  std::vector<Move> moves;
};

struct EraTrace {
  std::vector<Vertex> start;  ///< sequence of the initial path
  std::vector<RoundLog> rounds;
};

/// The graphs ERA reads. gamma is G + X; step1 and step2 are pillar graphs
/// (Pi(G+X1) and Pi(G+X1+X2) when sampled).
struct EraInstance {
  Graph gamma;
  Matching matching;
  PiGraph step1;
  PiGraph step2;
  std::optional<Gadget> gadget;
};

struct SampledInstance {
  std::optional<EraInstance> instance;
  FailureReason failure = FailureReason::none;
  std::size_t realized_x = 0;
};

/// Samples X_1..X_3 (X_4 for odd n) at p = K ln^(1/3) n / n^(2/3), finds the
/// odd-n gadget in the full graph and a perfect matching inside X_1 on the
/// remaining vertices, and builds the pillar graphs.
SampledInstance sample_instance(const Graph& host, double K, const EraConfig& cfg, Rng& rng);

/// Instance with a given graph and matching and no random edges; both pillar
/// graphs are Pi(gamma).
EraInstance planted_instance(Graph gamma, Matching matching,
                             std::optional<Gadget> gadget = std::nullopt);

struct RoundResult {
  TwoPath path;
  std::vector<Move> moves;
  ExtensionKind kind = ExtensionKind::none;
};

/// One extension round from `path`: first-layer rotations with the start
/// pillar fixed, second-layer rotations from every reversed first-layer
/// path, checking for a simple extension after every new path; failing
/// that, closes pooled paths and looks for a cycle extension. `free` must
/// be non-empty. nullopt means the round is stuck.
std::optional<RoundResult> run_round(const TwoPath& path, const EraInstance& inst,
                                     const FreePillars& free, const EraConfig& cfg,
                                     RoundLog* log = nullptr);

/// Final round once every pillar is used: same rotation pool, looking only
/// for a closable path.
std::optional<ClosedCycle> run_closing_round(const TwoPath& path, const EraInstance& inst,
                                             const EraConfig& cfg, RoundLog* log = nullptr);

/// Scans centres by decreasing degree for the five-vertex odd-n gadget.
std::optional<Gadget> find_gadget(const Graph& g);

/// Flattens a closed cycle covering every vertex; the gadget centre is
/// spliced between a and b. Throws std::logic_error on a coverage shortfall.
SquareHamCycle assemble_output(const ClosedCycle& final_cycle, const std::optional<Gadget>& gadget);

struct EraOutcome {
  std::optional<SquareHamCycle> cycle;
  FailureReason failure = FailureReason::none;
  EraTrace trace;
  std::size_t rounds = 0;

  bool success() const { return cycle.has_value(); }
};

EraOutcome run_era(const EraInstance& inst, const EraConfig& cfg);

struct EraRun {
  SampledInstance sampled;
  EraOutcome outcome;
  /// Host minimum degree fell below cfg.alpha * n (not an error).
  bool host_below_alpha = false;
};

/// sample_instance with Rng(cfg.seed), then run_era.
EraRun run_era(const Graph& host, double K, const EraConfig& cfg);

}  // namespace sqham
