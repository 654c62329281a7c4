#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqham/graph.hpp"
#include "sqham/matching.hpp"

namespace sqham {

/// Five vertices carrying a-b, a-c, b-c, a-d, b-e, c-d, c-e. Used for odd n:
/// {a,d} and {b,e} become pillars and the centre c rides between them, so
/// the block is traversed (d, a, c, b, e).
struct Gadget {
  Vertex a = 0, b = 0, c = 0, d = 0, e = 0;

  friend bool operator==(const Gadget&, const Gadget&) = default;
};

bool gadget_edges_present(const Graph& g, const Gadget& gadget);

/// Raised by rotate when the requested pillar cannot be used.
class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vertex sequence (x_1, ..., x_2k) whose consecutive pairs at positions
/// (2i-1, 2i) are matching edges ("pillars"), and in which every pair at
/// distance one or two is an edge of the host graph.
///
/// Pillar positions are 0-based throughout: pillar j occupies seq[2j] and
/// seq[2j+1], and "boundary j" is the junction between pillar j and j+1.
/// With a gadget, the boundary between {d,a} and {b,e} carries the hidden
/// centre c; that boundary is never split.
class TwoPath {
 public:
  TwoPath() = default;
  /// Checks shape only (even, non-empty, distinct, in range). Graph
  /// conditions are checked by validate().
  TwoPath(std::size_t n, std::vector<Vertex> seq, std::optional<Gadget> gadget = std::nullopt);

  std::size_t order() const { return pos_.size(); }
  std::size_t pillar_count() const { return seq_.size() / 2; }
  std::size_t length() const { return seq_.size(); }
  std::span<const Vertex> sequence() const { return seq_; }
  Vertex operator[](std::size_t i) const { return seq_[i]; }
  Vertex front() const { return seq_.front(); }
  Vertex back() const { return seq_.back(); }

  bool contains(Vertex v) const { return pos_[v] >= 0; }
  /// Index of v in the sequence, or -1.
  std::int32_t position(Vertex v) const { return pos_[v]; }

  const std::optional<Gadget>& gadget() const { return gadget_; }
  bool glued_after(std::size_t pillar) const;

  /// Vertex sequence with the gadget centre (if any) spliced in.
  std::vector<Vertex> expanded() const;

  void reverse();
  /// Reverses seq[from, end) in place.
  void reverse_suffix(std::size_t from);
  void append(Vertex u, Vertex v);

  friend bool operator==(const TwoPath& x, const TwoPath& y) {
    return x.seq_ == y.seq_ && x.gadget_ == y.gadget_;
  }

 private:
  std::vector<Vertex> seq_;
  std::vector<std::int32_t> pos_;
  std::optional<Gadget> gadget_;
};

/// A 2-path whose wrap-around boundary (last pillar to first) also holds:
/// {y_2k-1, y_1}, {y_1, y_2k}, {y_2k, y_2} are edges.
class ClosedCycle {
 public:
  const TwoPath& path() const { return path_; }
  std::size_t pillar_count() const { return path_.pillar_count(); }

 private:
  friend std::optional<ClosedCycle> try_close(const TwoPath&, const Graph&);
  explicit ClosedCycle(TwoPath p) : path_(std::move(p)) {}

  TwoPath path_;
};

/// Pillars not yet used by the current path, with the matching vertex mask
/// used for word-parallel candidate search.
class FreePillars {
 public:
  FreePillars() = default;
  FreePillars(const Matching& m, std::span<const PillarId> ids);
  /// Every pillar of m with no vertex on `path`.
  static FreePillars complement_of(const Matching& m, const TwoPath& path);

  bool contains(PillarId p) const { return pillars_.test(p); }
  void remove(const Matching& m, PillarId p);
  std::size_t size() const { return pillars_.count(); }
  bool empty() const { return pillars_.empty(); }
  const VertexSet& vertices() const { return vertices_; }
  const VertexSet& pillars() const { return pillars_; }

 private:
  VertexSet pillars_;
  VertexSet vertices_;
};

/// First violated condition, or nullopt when `p` is a valid 2-path.
std::optional<std::string> find_violation(const TwoPath& p, const Graph& gamma,
                                          const Matching& m);
bool validate(const TwoPath& p, const Graph& gamma, const Matching& m);
bool validate(const ClosedCycle& c, const Graph& gamma, const Matching& m);

/// True iff rotating at pillar j is allowed: 0 <= j <= k-3, boundary j is
/// not glued, and {x_2j+1, x_2k}, {x_2j+2, x_2k-1}, {x_2j+2, x_2k} (1-based
/// x) are edges of gamma.
bool can_rotate(const TwoPath& p, std::size_t pillar, const Graph& gamma);

/// Keeps pillars 0..j and reverses the rest:
/// (x_1..x_2j+2, x_2k, x_2k-1, ..., x_2j+3). Throws PreconditionFailed
/// unless can_rotate holds.
TwoPath rotate(const TwoPath& p, std::size_t pillar, const Graph& gamma);

TwoPath reversed(const TwoPath& p);

/// Appends a free pillar {u,v} at the back if (.., y_2k-1, y_2k, u, v) is a
/// 2-path. Picks the lowest free pillar id, then the orientation starting
/// at the smaller vertex.
std::optional<TwoPath> try_simple_extension(const TwoPath& p, const Graph& gamma,
                                            const Matching& m, const FreePillars& free);

/// Requires k >= 3.
std::optional<ClosedCycle> try_close(const TwoPath& p, const Graph& gamma);

struct CycleExtension {
  TwoPath path;
  std::size_t boundary = 0;  ///< the cycle is reopened after this pillar
  PillarId pillar = 0;       ///< the free pillar appended
};

/// Finds the lowest boundary j (0 <= j <= k-2, not glued) and free pillar
/// {u,v} with {y_2j+1, u}, {u, y_2j+2}, {y_2j+2, v} edges, and returns the
/// reopened path (y_2j+3, ..., y_2k, y_1, ..., y_2j+2, u, v).
std::optional<CycleExtension> try_cycle_extension(const ClosedCycle& c, const Graph& gamma,
                                                  const Matching& m, const FreePillars& free);

}  // namespace sqham
