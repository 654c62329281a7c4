#include "sqham/oracle.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace sqham {

namespace {

void require_bijection(std::size_t n, std::span<const Vertex> order) {
  if (order.size() != n) throw std::invalid_argument("cycle length differs from graph order");
  std::vector<bool> seen(n, false);
  for (Vertex v : order) {
    if (v >= n || seen[v]) throw std::invalid_argument("cycle is not a permutation of [0, n)");
    seen[v] = true;
  }
}

}  // namespace

bool verify_square_ham(const Graph& g, std::span<const Vertex> order, std::size_t k) {
  const std::size_t n = g.order();
  if (k < 1) throw std::invalid_argument("verify_square_ham: k must be >= 1");
  if (n < 2 * k + 1) throw std::invalid_argument("verify_square_ham: need n >= 2k + 1");
  require_bijection(n, order);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= k; ++d) {
      if (!g.adjacent(order[i], order[(i + d) % n])) return false;
    }
  }
  return true;
}

namespace {

class PowerCycleSearch {
 public:
  PowerCycleSearch(const Graph& g, std::size_t k) : g_(g), n_(g.order()), k_(k), seq_(n_) {
    for (Vertex v = 0; v < n_; ++v) rows_.push_back(g.row(v)[0]);
  }

  bool run() {
    // Rotations are equivalent, so vertex 0 opens the cycle.
    seq_[0] = 0;
    return extend(1, Word{1});
  }

  std::vector<Vertex> witness() const { return seq_; }

 private:
  bool extend(std::size_t i, Word used) {
    if (i == n_) return true;
    Word cand = ~used & (n_ == 64 ? ~Word{0} : (Word{1} << n_) - 1);
    for (std::size_t d = 1; d <= k_ && d <= i; ++d) cand &= rows_[seq_[i - d]];
    // Positions near the end also wrap onto the first few.
    for (std::size_t d = 1; d <= k_; ++d) {
      if (i + d >= n_) cand &= rows_[seq_[i + d - n_]];
    }
    while (cand != 0) {
      const auto v = static_cast<Vertex>(std::countr_zero(cand));
      cand &= cand - 1;
      seq_[i] = v;
      if (extend(i + 1, used | (Word{1} << v))) return true;
    }
    return false;
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Word> rows_;
  std::vector<Vertex> seq_;
};

}  // namespace

std::optional<SquareHamCycle> brute_force_square_ham(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (n > kBruteForceMaxOrder) {
    throw std::invalid_argument("brute_force_square_ham: n = " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(kBruteForceMaxOrder));
  }
  if (k < 1) throw std::invalid_argument("brute_force_square_ham: k must be >= 1");
  if (n < 2 * k + 1) throw std::invalid_argument("brute_force_square_ham: need n >= 2k + 1");
  PowerCycleSearch search(g, k);
  if (!search.run()) return std::nullopt;
  return SquareHamCycle{search.witness()};
}

std::size_t count_cross_power_edges(std::span<const std::uint8_t> in_a, std::size_t k) {
  const std::size_t n = in_a.size();
  if (n < 2 * k + 1) throw std::invalid_argument("count_cross_power_edges: need n >= 2k + 1");
  std::size_t cross = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= k; ++d) cross += in_a[i] != in_a[(i + d) % n] ? 1 : 0;
  }
  return cross;
}

namespace {

void check_kst_args(std::size_t s, std::size_t t, std::size_t k) {
  if (s < 1 || s > t) throw std::invalid_argument("kst check: need 1 <= s <= t");
  if (k < 1 || s + t < 2 * k + 1) throw std::invalid_argument("kst check: need s + t >= 2k + 1");
}

void record(KstCheckReport& r, std::span<const std::uint8_t> labels) {
  const std::size_t power = count_cross_power_edges(labels, r.k);
  const std::size_t cycle = count_cross_power_edges(labels, 1);
  r.max_power_cross = std::max(r.max_power_cross, power);
  r.max_cycle_cross = std::max(r.max_cycle_cross, cycle);
  if (power > r.bound) ++r.violations;
  ++r.orders_checked;
}

}  // namespace

KstCheckReport bipartite_square_edge_bound_check(std::size_t s, std::size_t t, std::size_t k,
                                                 std::uint64_t trials, Rng& rng) {
  check_kst_args(s, t, k);
  const std::size_t n = s + t;
  KstCheckReport r{s, t, k, 0, false, 2 * k * s};
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::vector<std::uint8_t> labels(n);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < n; ++i) labels[i] = order[i] < s ? 1 : 0;
    record(r, labels);
  }
  return r;
}

KstCheckReport bipartite_square_edge_bound_exhaustive(std::size_t s, std::size_t t,
                                                      std::size_t k) {
  check_kst_args(s, t, k);
  const std::size_t n = s + t;
  KstCheckReport r{s, t, k, 0, true, 2 * k * s};
  // Rotate so an A vertex comes first; enumerate the remaining n-1 labels.
  std::vector<std::uint8_t> rest(n - 1, 0);
  std::fill(rest.end() - static_cast<std::ptrdiff_t>(s - 1), rest.end(), 1);
  std::vector<std::uint8_t> labels(n);
  labels[0] = 1;
  do {
    std::copy(rest.begin(), rest.end(), labels.begin() + 1);
    record(r, labels);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return r;
}

void write_witness(std::ostream& out, std::span<const Vertex> order) {
  for (std::size_t i = 0; i < order.size(); ++i) out << (i ? " " : "") << order[i];
  out << '\n';
}

std::vector<Vertex> read_witness(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::istringstream ls(line);
  std::vector<Vertex> out;
  long long v = 0;
  while (ls >> v) {
    if (v < 0) throw std::runtime_error("witness: negative vertex id");
    out.push_back(static_cast<Vertex>(v));
  }
  if (!ls.eof()) throw std::runtime_error("witness: non-numeric token");
  return out;
}

}  // namespace sqham
