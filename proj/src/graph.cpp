#include "sqham/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sqham {

namespace {

void check_vertex(std::size_t n, Vertex v) {
  if (v >= n) {
    throw std::out_of_range("vertex " + std::to_string(v) +
                            " out of range for graph of order " + std::to_string(n));
  }
}

}  // namespace

Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("self-loop {" + std::to_string(a) + "," +
                                          std::to_string(a) + "}");
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(std::size_t n) : n_(n), stride_(words_for(n)), rows_(n * stride_, 0) {}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check_vertex(n_, u);
  check_vertex(n_, v);
  return adjacent(u, v);
}

std::size_t Graph::degree(Vertex u) const {
  check_vertex(n_, u);
  std::size_t d = 0;
  for (Word w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u) {
    for_each_bit(row(u), [&](Vertex v) {
      if (u < v) out.push_back({u, v});
    });
  }
  return out;
}

GraphBuilder::GraphBuilder(std::size_t n) : graph_(n) {}

GraphBuilder::GraphBuilder(const Graph& g) : graph_(g) {}

bool GraphBuilder::add_edge(Vertex u, Vertex v) {
  check_vertex(graph_.n_, u);
  check_vertex(graph_.n_, v);
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (graph_.adjacent(u, v)) return false;
  const std::size_t s = graph_.stride_;
  graph_.rows_[u * s + v / kWordBits] |= Word{1} << (v % kWordBits);
  graph_.rows_[v * s + u / kWordBits] |= Word{1} << (u % kWordBits);
  ++graph_.edge_count_;
  return true;
}

bool GraphBuilder::remove_edge(Vertex u, Vertex v) {
  check_vertex(graph_.n_, u);
  check_vertex(graph_.n_, v);
  if (u == v || !graph_.adjacent(u, v)) return false;
  const std::size_t s = graph_.stride_;
  graph_.rows_[u * s + v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  graph_.rows_[v * s + u / kWordBits] &= ~(Word{1} << (u % kWordBits));
  --graph_.edge_count_;
  return true;
}

void GraphBuilder::add_all(const Graph& g) {
  if (g.order() != graph_.n_) throw std::invalid_argument("add_all: order mismatch");
  for (std::size_t i = 0; i < graph_.rows_.size(); ++i) graph_.rows_[i] |= g.rows_[i];
  std::size_t twice = 0;
  for (Word w : graph_.rows_) twice += static_cast<std::size_t>(std::popcount(w));
  graph_.edge_count_ = twice / 2;
}

Graph GraphBuilder::build() && { return std::move(graph_); }

Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  return std::move(b).build();
}

Graph graph_union(const Graph& a, const Graph& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("graph_union: orders differ (" + std::to_string(a.order()) +
                                " vs " + std::to_string(b.order()) + ")");
  }
  GraphBuilder builder(a);
  builder.add_all(b);
  return std::move(builder).build();
}

bool is_k4(const Graph& g, const std::array<Vertex, 4>& quad) {
  for (std::size_t i = 0; i < 4; ++i) {
    check_vertex(g.order(), quad[i]);
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (quad[i] == quad[j]) throw std::invalid_argument("is_k4: repeated vertex");
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (!g.adjacent(quad[i], quad[j])) return false;
    }
  }
  return true;
}

VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v) {
  check_vertex(g.order(), u);
  check_vertex(g.order(), v);
  if (u == v) throw std::invalid_argument("common_neighbors: u == v");
  VertexSet out = g.neighbors(u);
  out &= g.row(v);
  return out;
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> out(g.order());
  for (Vertex u = 0; u < g.order(); ++u) out[u] = g.degree(u);
  return out;
}

std::size_t min_degree(const Graph& g) {
  if (g.order() == 0) throw std::invalid_argument("min_degree: empty graph");
  std::size_t best = g.order();
  for (Vertex u = 0; u < g.order(); ++u) best = std::min(best, g.degree(u));
  return best;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const std::size_t n = g.order();
  VertexSet unseen(n);
  for (Vertex v = 0; v < n; ++v) unseen.set(v);

  std::vector<std::vector<Vertex>> components;
  std::vector<Vertex> frontier;
  while (auto root = unseen.first()) {
    std::vector<Vertex> component{*root};
    unseen.reset(*root);
    frontier.assign(1, *root);
    while (!frontier.empty()) {
      const Vertex u = frontier.back();
      frontier.pop_back();
      VertexSet next = g.neighbors(u);
      next &= unseen;
      next.for_each([&](Vertex w) {
        unseen.reset(w);
        component.push_back(w);
        frontier.push_back(w);
      });
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
  };

  if (!next_line()) throw std::runtime_error("edge list: missing header");
  std::size_t n = 0, m = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> n >> m)) fail("expected header \"n m\"");
  }
  GraphBuilder b(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_line()) fail("expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest)) fail("expected \"u v\"");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      fail("vertex out of range");
    }
    if (u == v) fail("self-loop");
    if (u > v) fail("edge must be written with u < v");
    if (!b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) fail("duplicate edge");
  }
  if (next_line()) fail("trailing content after " + std::to_string(m) + " edges");
  return std::move(b).build();
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace sqham
