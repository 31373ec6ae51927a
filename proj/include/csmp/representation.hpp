#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csmp/schedule.hpp"
#include "csmp/topological_minor.hpp"

namespace csmp {

/// H_S: one vertex per important (or stop) vertex of G_S, one edge per
/// corridor. Terminals keep their labels from relabel_terminals.
struct Representation {
  RootedGraph h;
  /// origin[x] = vertex of G that H-vertex x stands for (ascending).
  std::vector<Vertex> origin;
  /// corridor[e] = G path for h.graph.edges()[e], oriented from origin of
  /// edge.u to origin of edge.v.
  std::vector<Path> corridor;
  /// Further corridors joining already-adjacent H vertices.
  std::vector<Path> parallel;
  /// Corridors leaving and re-entering the same H vertex.
  std::vector<Path> loops;
  /// Moves of S rewritten on H vertex ids.
  std::vector<Move> moves;

  bool flagged() const { return !parallel.empty() || !loops.empty(); }
  int vertex_of(Vertex g) const;  // -1 if g is not an origin
};

/// Throws CsmpError on an invalid schedule.
Representation extract_representation(const Instance& inst, const Schedule& s);

/// `REPR 1`, `v <id> <label>`, `e <u> <v>` and, as an extension, one
/// `s <step> <robot> <h-vertices...>` line per move of the schedule on H.
std::string serialize_representation(const Representation& r);
/// Reads the format above. Vertices carrying plain_label are not roots. Only
/// h, its labels and moves are restored.
Representation parse_representation(std::istream& in, int plain_label);
Representation parse_representation(const std::string& text, int plain_label);

/// Label-respecting realization search of H in G.
MinorSearchResult find_realization(const RootedGraph& h, const RootedGraph& g,
                                   std::uint64_t work_cap = 50'000'000);

/// All four realization conditions plus label equality.
bool is_valid_rooted_realization(const RootedGraph& h, const RootedGraph& g, const Realization& r);

/// Maps every move on H through the realization. Throws CsmpError if `r` is
/// not a valid realization of rep.h in the rooted instance graph.
Schedule schedule_from_realization(const Instance& inst, const Representation& rep,
                                   const Realization& r, const std::vector<Move>& moves_on_h);

struct ReprSolveResult {
  enum class Status { kSolved, kNoWithinCaps, kCapExceeded } status = Status::kNoWithinCaps;
  Schedule schedule;
  RootedGraph representation;
  std::uint64_t candidates = 0;   // distinct rooted graphs examined
  std::uint64_t feasible = 0;     // of which solvable on H within the budget
  bool solved() const { return status == Status::kSolved; }
};

/// Enumerates rooted graphs with at most repr_cap vertices over the terminal
/// labels of inst (deduplicated up to label-preserving isomorphism), solves
/// the instance on each candidate within `budget` moves, and realizes the
/// first solvable candidate in G.
ReprSolveResult solve_by_representation(const Instance& inst, int repr_cap, int budget,
                                        std::uint64_t work_cap = 50'000'000);

}  // namespace csmp
