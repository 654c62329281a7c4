#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqham/graph.hpp"

namespace sqham {

using Rng = std::mt19937_64;

/// Per-sprinkle edge probability p = K * ln(n)^(1/3) / n^(2/3).
double sprinkle_probability(std::size_t n, double K);

struct SprinkleParams {
  std::size_t n = 0;
  double K = 0.0;

  /// Throws std::invalid_argument unless n >= 2, K > 0 and 0 < p < 1.
  static SprinkleParams make(std::size_t n, double K);
  double p() const { return sprinkle_probability(n, K); }
};

/// Raised when a generator cannot meet its postcondition within budget.
class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Erdos-Renyi G(n, p); deterministic for a given generator state.
Graph gnp(std::size_t n, double p, Rng& rng);

/// Independent G(n, p) sprinkles X_1..X_count. count must be 4 for odd n
/// and 3 for even n.
std::vector<Graph> sample_sprinkles(const SprinkleParams& params, int count, Rng& rng);

struct HostGraph {
  Graph graph;
  std::size_t min_degree = 0;
  int attempts = 0;
};

/// Additive slack used when sampling a host with minimum degree >= alpha*n.
double host_density_margin(std::size_t n, double alpha);

/// Samples G(n, q), q = min(1, alpha + margin), until the minimum degree is
/// at least ceil(alpha * n). Throws GeneratorError when the budget runs out.
HostGraph min_degree_host(std::size_t n, double alpha, Rng& rng, int max_attempts = 64);

/// K_{s,t} with A = [0, s) and B = [s, s + t).
Graph complete_bipartite(std::size_t s, std::size_t t);

/// Host graph description: "gnp:n=400,alpha=0.75", "complete:n=12",
/// "kst:s=40,t=360" or "file:PATH". n may be omitted for gnp/complete and
/// supplied per experiment cell.
struct HostSpec {
  enum class Kind { gnp_conditioned, complete, complete_bipartite, file };

  Kind kind = Kind::complete;
  std::optional<std::size_t> n;
  double alpha = 0.0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::string path;

  /// Vertex count for a cell, combining the host's own n with an override.
  std::size_t order(std::optional<std::size_t> override_n) const;
  std::string to_string() const;
};

HostSpec parse_host_spec(std::string_view text);

struct Host {
  Graph graph;
  /// Declared min-degree fraction; for file hosts the realised one.
  double alpha_declared = 0.0;
};

Host make_host(const HostSpec& spec, std::optional<std::size_t> n, Rng& rng);

}  // namespace sqham
