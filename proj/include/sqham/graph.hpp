#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sqham/vertex_set.hpp"

namespace sqham {

/// Undirected edge in canonical order (u < v).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Builds the canonical form of {a, b}; throws on a self-loop.
Edge make_edge(Vertex a, Vertex b);

/// Simple undirected graph on [0, n) with bit-packed adjacency rows.
///
/// Graphs are immutable once built; GraphBuilder accumulates edges and
/// freezes them. A frozen graph can be shared freely between threads.
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph on n vertices.
  explicit Graph(std::size_t n);

  std::size_t order() const { return n_; }
  std::size_t size() const { return edge_count_; }
  std::size_t words_per_row() const { return stride_; }

  /// Throws std::out_of_range for vertices outside [0, n).
  bool has_edge(Vertex u, Vertex v) const;

  /// Unchecked variant for inner loops.
  bool adjacent(Vertex u, Vertex v) const {
    return (rows_[u * stride_ + v / kWordBits] >> (v % kWordBits)) & 1U;
  }

  std::span<const Word> row(Vertex u) const {
    return {rows_.data() + u * stride_, stride_};
  }
  VertexSet neighbors(Vertex u) const { return VertexSet(n_, row(u)); }
  std::size_t degree(Vertex u) const;

  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  friend class GraphBuilder;

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<Word> rows_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n);
  /// Starts from an existing graph's edge set.
  explicit GraphBuilder(const Graph& g);

  std::size_t order() const { return graph_.n_; }

  /// Adds {u, v}. Returns false if the edge was already present.
  /// Throws on self-loops and out-of-range vertices.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const { return graph_.has_edge(u, v); }

  /// Adds every edge of g (same order required).
  void add_all(const Graph& g);

  Graph build() &&;

 private:
  Graph graph_;
};

Graph complete_graph(std::size_t n);

/// Edge-set union; both graphs must have the same order.
Graph graph_union(const Graph& a, const Graph& b);

/// True iff all six pairs of `quad` are edges. The four vertices must be
/// distinct.
bool is_k4(const Graph& g, const std::array<Vertex, 4>& quad);

/// { w : w ~ u and w ~ v }; u != v.
VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v);

std::vector<std::size_t> degrees(const Graph& g);
std::size_t min_degree(const Graph& g);

/// Partition of [0, n) into connected components. Each component is sorted
/// and components are ordered by their smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

/// Edge-list text format: "n m" followed by m lines "u v" with u < v.
/// The reader rejects duplicates, self-loops, reversed pairs and
/// out-of-range ids.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace sqham
