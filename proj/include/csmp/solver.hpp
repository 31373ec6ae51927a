#pragma once

#include <cstdint>
#include <vector>

#include "csmp/schedule.hpp"

namespace csmp {

/// Canonical world state: destination robots stay labelled, free robots are
/// an unordered (sorted) vertex set.
struct Configuration {
  std::vector<Vertex> dest;
  std::vector<Vertex> blockers;  // sorted
  bool operator==(const Configuration&) const = default;
};

Configuration initial_configuration(const Instance& inst);
bool is_goal(const Instance& inst, const Configuration& c);

struct SearchStats {
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  int depth = 0;
  double seconds = 0;
};

enum class SolveStatus { kSolved, kNoWithinDepth, kInfeasible, kCapExceeded };
const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::kNoWithinDepth;
  Schedule schedule;  // set when solved
  SearchStats stats;
  bool solved() const { return status == SolveStatus::kSolved; }
};

enum class Algorithm { kBfs, kIddfs };

struct SolveOptions {
  Algorithm algorithm = Algorithm::kBfs;
  std::uint64_t state_cap = 10'000'000;
};

/// One successor per (robot, reachable vertex). Blocker moves carry the robot
/// id |M| + (rank of the blocker's vertex in the sorted blocker set). The
/// witnessing path is the lexicographically smallest shortest free path.
/// Ordered by (robot, destination vertex).
std::vector<std::pair<Move, Configuration>> successors(const Graph& g, const Configuration& c);

/// Minimum-makespan schedule with at most cap_depth moves (budget ignored).
/// kInfeasible means the reachable state space was exhausted.
SolveResult solve_optimal(const Instance& inst, int cap_depth, const SolveOptions& opt = {});

/// solve_optimal with cap_depth = inst.budget.
SolveResult solve(const Instance& inst, const SolveOptions& opt = {});

/// Restricts to the ball of radius budget*(lambda+1) around the main robot's
/// start, drops robots outside it and solves there. Requires |M| = 1.
SolveResult solve_bounded_ball(const Instance& inst, int budget, int lambda,
                               const SolveOptions& opt = {});

enum class Feasibility { kFeasible, kInfeasible, kUnknownAtCap };
const char* to_string(Feasibility f);

/// Ignores the budget; searches up to cap_depth moves.
Feasibility feasibility(const Instance& inst, int cap_depth, const SolveOptions& opt = {});

/// Reference search: every robot labelled, no canonicalization, separate
/// move generator. Shares no search code with solve.
SolveResult oracle_solve(const Instance& inst, int budget, std::uint64_t state_cap = 10'000'000);

}  // namespace csmp
