#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sqham/generators.hpp"
#include "sqham/graph.hpp"

namespace sqham {

/// Cyclic vertex order pi(0), ..., pi(n-1) covering every vertex once.
struct SquareHamCycle {
  std::vector<Vertex> order;

  friend bool operator==(const SquareHamCycle&, const SquareHamCycle&) = default;
};

/// True iff {pi(i), pi(j)} is an edge whenever 0 < j - i <= k, indices taken
/// cyclically. Requires k >= 1, n >= 2k + 1 and a bijective order.
bool verify_square_ham(const Graph& g, std::span<const Vertex> order, std::size_t k = 2);

inline constexpr std::size_t kBruteForceMaxOrder = 14;

/// Exhaustive backtracking search for the k-th power of a Hamilton cycle.
/// Rejects graphs with more than kBruteForceMaxOrder vertices.
std::optional<SquareHamCycle> brute_force_square_ham(const Graph& g, std::size_t k = 2);

/// Edges {i, i+d mod n}, 1 <= d <= k, of the k-th power of the cycle
/// 0..n-1 whose endpoints carry different labels.
std::size_t count_cross_power_edges(std::span<const std::uint8_t> in_a, std::size_t k);

struct KstCheckReport {
  std::size_t s = 0, t = 0, k = 0;
  std::uint64_t orders_checked = 0;
  bool exhaustive = false;
  std::size_t bound = 0;              ///< 2ks
  std::size_t max_power_cross = 0;    ///< AB edges of the k-th power
  std::size_t max_cycle_cross = 0;    ///< AB edges of the cycle itself
  std::uint64_t violations = 0;       ///< orders with max_power_cross > bound
  bool pass() const { return violations == 0; }
};

/// Random cyclic orders of the vertices of K_{s,t} (A = [0, s)). Requires
/// s <= t and s + t >= 2k + 1.
KstCheckReport bipartite_square_edge_bound_check(std::size_t s, std::size_t t, std::size_t k,
                                                 std::uint64_t trials, Rng& rng);

/// Every cyclic order up to rotation, enumerated through its A/B label
/// pattern (the crossing counts depend on nothing else).
KstCheckReport bipartite_square_edge_bound_exhaustive(std::size_t s, std::size_t t, std::size_t k);

void write_witness(std::ostream& out, std::span<const Vertex> order);
/// Single line of space-separated ids.
std::vector<Vertex> read_witness(std::istream& in);

}  // namespace sqham
