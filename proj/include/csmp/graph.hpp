#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csmp {

using Vertex = int;

/// Base class for all errors raised by the library.
class CsmpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive search hits its configured work budget.
class CapExceeded : public CsmpError {
 public:
  using CsmpError::CsmpError;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Immutable simple undirected graph on the dense vertex set [0, n).
class Graph {
 public:
  Graph() = default;
  /// Throws CsmpError on self-loops, duplicate edges or out-of-range endpoints.
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(Vertex a, Vertex b) const;
  bool contains(Vertex v) const { return v >= 0 && v < n_; }

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;               // sorted
  std::vector<std::vector<Vertex>> adj_;  // sorted per vertex
};

/// A graph with labelled roots. Vertices outside the root set implicitly
/// carry `plain_label` (0 means "no label").
struct RootedGraph {
  Graph graph;
  std::map<Vertex, int> root_labels;
  int plain_label = 0;

  bool is_root(Vertex v) const { return root_labels.contains(v); }
  int label_of(Vertex v) const {
    auto it = root_labels.find(v);
    return it == root_labels.end() ? plain_label : it->second;
  }
};

/// Simple path, listed as its vertex sequence. A single vertex is a path of
/// length zero.
using Path = std::vector<Vertex>;

/// True if `p` is non-empty, repeats no vertex and follows edges of `g`.
bool is_simple_path(const Graph& g, const Path& p);

struct Contraction {
  Graph graph;
  /// remap[old vertex] = vertex id in the contracted graph.
  std::vector<Vertex> remap;
};

/// Merges the endpoints of `e` into the smaller id and compacts ids.
Contraction contract_edge(const Graph& g, Edge e);

/// Removes the given vertices and compacts ids; remap[v] = -1 for removed ones.
Contraction delete_vertices(const Graph& g, const std::vector<bool>& removed);

/// Induced subgraph on `keep` (compacted). `remap` maps old to new (-1 if dropped).
Contraction induced_subgraph(const Graph& g, const std::vector<bool>& keep);

/// A maximal path whose internal vertices all have degree two and are not
/// forbidden. `closed` marks a chain whose two ends coincide (a cycle opened at
/// its cut vertex, or a loop hanging off a single vertex).
struct Chain {
  Path vertices;
  bool closed = false;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  std::span<const Vertex> internal() const {
    return std::span<const Vertex>(vertices).subspan(1, vertices.size() - 2);
  }
};

/// Chains with at least one internal vertex. Each eligible vertex (degree two,
/// not forbidden) is internal to exactly one chain, except the cut vertex of a
/// chain that forms a whole cycle component.
std::vector<Chain> degree2_chains(const Graph& g, const std::vector<bool>& forbidden);

inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// Minimum number of weight-one vertices (endpoints included) on a v-w path.
/// Vertices with `avoid[x]` set are not used (except as endpoints). Returns
/// kInfinity when no such path exists.
int weighted_distance(const Graph& g, const std::vector<int>& weight, Vertex v, Vertex w,
                      const std::vector<bool>& avoid = {});

/// Same as weighted_distance but also returns a witnessing path; among the
/// optimal paths the returned one is deterministic.
std::optional<Path> weighted_shortest_path(const Graph& g, const std::vector<int>& weight,
                                           Vertex v, Vertex w,
                                           const std::vector<bool>& avoid = {});

/// All weighted distances from `source`.
std::vector<int> weighted_distances_from(const Graph& g, const std::vector<int>& weight,
                                         Vertex source, const std::vector<bool>& avoid = {});

/// Hop distances from `source` restricted to vertices with `allowed[v]` (empty = all).
std::vector<int> bfs_distances(const Graph& g, Vertex source,
                               const std::vector<bool>& allowed = {});

/// Lexicographically smallest shortest path inside `allowed` (empty = all).
std::optional<Path> shortest_path(const Graph& g, Vertex from, Vertex to,
                                  const std::vector<bool>& allowed = {});

/// Connected components of g[keep]; each component sorted, list ordered by
/// smallest member.
std::vector<std::vector<Vertex>> components(const Graph& g, const std::vector<bool>& keep);

bool is_connected(const Graph& g);

enum class Planarity { kPlausible, kRejected };

/// Edge-count bound plus, for at most ten vertices, an exhaustive search for a
/// K5 or K3,3 subdivision. Not a planarity certificate for larger graphs.
Planarity planarity_sanity(const Graph& g);

/// Removes repeated vertices from a walk by cutting out every closed sub-walk.
Path erase_loops(const Path& walk);

std::string to_string(const Path& p);

}  // namespace csmp
