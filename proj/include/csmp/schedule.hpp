#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csmp/instance.hpp"

namespace csmp {

/// One robot slides along `path` (length at least one) in a single time step.
struct Move {
  int robot = 0;
  Path path;
  bool operator==(const Move&) const = default;
};

/// Serial schedule: move i happens at time step i+1.
struct Schedule {
  std::vector<Move> moves;
  int makespan() const { return static_cast<int>(moves.size()); }
  bool operator==(const Schedule&) const = default;
};

/// Raised for references to unknown robots or vertices.
class ScheduleStructureError : public CsmpError {
 public:
  using CsmpError::CsmpError;
};

struct Violation {
  int step = 0;  // 1-based time step; 0 for end-of-schedule checks
  std::string rule;
  std::string detail;
};

struct ValidationOptions {
  bool check_budget = true;
  bool check_targets = true;
};

/// Empty optional means the schedule is valid. Throws ScheduleStructureError
/// for structural problems.
std::optional<Violation> validate(const Instance& inst, const Schedule& s,
                                  const ValidationOptions& opt = {});
std::string to_string(const Violation& v);

/// positions[j][r] = vertex of robot r after j moves, for j = 0..q. Throws
/// CsmpError if the schedule is not replayable (budget and targets ignored).
std::vector<std::vector<Vertex>> replay(const Instance& inst, const Schedule& s);

/// Same replay from an arbitrary start placement (robot id -> vertex).
std::vector<std::vector<Vertex>> replay_from(const Graph& g, std::vector<Vertex> start,
                                             const std::vector<Move>& moves);

Schedule parse_schedule(std::istream& in);
Schedule parse_schedule(const std::string& text);
std::string serialize_schedule(const Schedule& s);
Schedule read_schedule_file(const std::string& path);

/// Graph on the same vertex ids holding exactly the edges traversed by the
/// first j moves (j = -1 means all moves).
Graph traversed_subgraph(const Instance& inst, const Schedule& s, int j = -1);

/// Vertices v such that some robot stays on v from step j'-1 to j' for some
/// j' in [1, j], plus every robot position at time j. Sorted.
std::vector<Vertex> waiting_vertices(const Instance& inst, const Schedule& s, int j);
/// Vertices of degree at least three in G_{S,j}. Sorted.
std::vector<Vertex> intersection_vertices(const Instance& inst, const Schedule& s, int j);
/// Terminals, waiting and intersection vertices within [0, j]. Sorted.
std::vector<Vertex> important_vertices(const Instance& inst, const Schedule& s, int j);
/// Every vertex occupied at some time in [0, j]. Sorted.
std::vector<Vertex> stop_vertices(const Instance& inst, const Schedule& s, int j);

}  // namespace csmp
