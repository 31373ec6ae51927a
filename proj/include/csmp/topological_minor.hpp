#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "csmp/graph.hpp"

namespace csmp {

/// Witness that H is a topological minor of G: an injective vertex image and
/// one path per edge of H (indexed like H.edges()).
struct Realization {
  std::vector<Vertex> vertex_image;
  std::vector<Path> edge_image;
};

enum class SearchStatus { kFound, kNone, kCapExceeded };

struct MinorSearchResult {
  SearchStatus status = SearchStatus::kNone;
  std::optional<Realization> realization;
  std::uint64_t work = 0;
};

struct MinorSearchOptions {
  /// compatible(h, g): may H-vertex h map onto G-vertex g.
  std::function<bool(Vertex, Vertex)> compatible;
  /// Pairs (a, b) requiring image(a) < image(b); used for symmetry breaking.
  std::vector<std::pair<Vertex, Vertex>> increasing;
  std::uint64_t work_cap = 50'000'000;
};

/// Backtracking search for a realization of H in G. Vertex images are tried in
/// increasing order and edge paths in DFS order over sorted adjacency, so the
/// first realization returned is the lexicographically first one.
MinorSearchResult find_topological_minor(const Graph& h, const Graph& g,
                                         const MinorSearchOptions& options);

/// Checks the four conditions of a realization (endpoints, internal
/// disjointness, images not internal to any path, injectivity) except labels.
bool is_valid_realization(const Graph& h, const Graph& g, const Realization& r);

}  // namespace csmp
