#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "csmp/schedule.hpp"

namespace csmp {

/// Strong q-haven: a path of length q starting at a given vertex with an
/// anchor w of degree >= 3 in its middle third, plus the three-part split
/// C1, C2, C3 meeting exactly in w.
struct HavenWitness {
  int q = 0;
  Path path;              // q + 1 vertices
  int anchor_index = 0;   // path[anchor_index] == anchor
  Vertex anchor = 0;
  Vertex third = 0;       // neighbour of w used for the extra edge
  std::vector<Vertex> c1, c2, c3;  // sorted vertex sets
  /// Ĥ_w: the path edges plus the edge anchor-third.
  std::vector<Vertex> extended_vertices;  // sorted
  std::vector<Edge> extended_edges;
};

/// Checks the witness invariants for k robots.
bool is_valid_haven(const Graph& g, const HavenWitness& h, int k);

/// Exhaustive search over paths of length q from v. Throws CapExceeded after
/// work_cap path extensions.
std::optional<HavenWitness> find_strong_haven(const Instance& inst, Vertex v, int q,
                                              std::uint64_t work_cap = 10'000'000);

struct TransferResult {
  std::vector<Move> moves;
  std::uint64_t states = 0;
  long soft_bound = 0;  // 10 * k^2 * q
  bool within_soft_bound = true;
};

/// Moves the robots inside Ĥ_w from `positions` to `target` using only edges of
/// Ĥ_w; robots outside are static. Destination robots must reach their exact
/// target vertex, free robots only need to cover the target blocker set.
/// Throws CsmpError if `target` is unreachable, CapExceeded on the state cap.
TransferResult haven_transfer(const Instance& inst, const HavenWitness& hw,
                              const std::vector<Vertex>& positions,
                              const std::vector<Vertex>& target,
                              std::uint64_t state_cap = 2'000'000);

/// Local search inside the subgraph `local` (same vertex ids as the host):
/// returns the shortest move sequence that moves only robots standing on
/// vertices with allowed[v] and reaches a configuration accepted by `goal`.
std::optional<std::vector<Move>> local_search(
    const Graph& local, const std::vector<bool>& allowed, const std::vector<Vertex>& positions,
    const std::function<bool(const std::vector<Vertex>&)>& goal, std::uint64_t state_cap,
    std::uint64_t* states = nullptr);

struct MetaRoute {
  std::vector<Move> moves;
  /// Vertex sets of the merged havens, in the order the robot visits them.
  std::vector<std::vector<Vertex>> meta_havens;
  /// For each visited meta-haven: [first, last] move index during which the
  /// robot is inside it.
  std::vector<std::pair<int, int>> inside_span;
};

/// Routes `robot` from its start to its target along a shortest path,
/// crossing each merged haven once via local search. Segments outside havens
/// must be free; otherwise CsmpError is thrown.
MetaRoute meta_haven_route(const Instance& inst, const std::vector<HavenWitness>& havens,
                           int robot, std::uint64_t state_cap = 2'000'000);

}  // namespace csmp
