#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csmp/schedule.hpp"
#include "csmp/solver.hpp"

namespace csmp {

// Single-destination pipeline. Robot 0 is the main robot; every free robot is
// a blocker. blockd counts blocker vertices on a path, endpoints included; the
// main robot's vertex has weight 0.

struct FreeAnalysis {
  std::vector<bool> free;                       // initially unoccupied vertices
  std::vector<std::vector<Vertex>> components;  // of G[free], by smallest vertex
  std::vector<int> component_of;                // -1 for occupied vertices
  int lambda = 0;                               // largest component size
  std::vector<bool> touches_s, touches_t;       // component adjacent to / contains s, t
};

/// Throws CsmpError unless the instance has exactly one destination robot.
FreeAnalysis free_analysis(const Instance& inst);

/// Weight 1 on blocker vertices, 0 elsewhere.
std::vector<int> blocker_weights(const Instance& inst);
int blockd(const Instance& inst, Vertex a, Vertex b, const std::vector<bool>& avoid = {});

/// Moves every blocker on `route` (an s-t path) to a distinct vertex of
/// `parking`, then slides the main robot along the route. Blocker paths stay
/// inside `allowed` (empty = all). Returns a validated schedule of at most
/// `budget` moves, or nothing.
std::optional<Schedule> park_and_slide(const Instance& inst, const Path& route,
                                       const std::vector<Vertex>& parking, int budget,
                                       const std::vector<bool>& allowed = {});

struct ResilienceResult {
  std::optional<Schedule> solution;
  // pair that produced the solution
  Vertex x = -1, y = -1;
  Path detour;
  std::uint64_t pairs_checked = 0;
  // a qualifying detour exists but the parking construction failed
  bool unresolved = false;
  bool resilient() const { return !solution.has_value() && !unresolved; }
};

/// For every pair x, y on Q at Q-distance >= budget, looks for an x-y path
/// outside Q carrying at most budget - blockd(s,x) - blockd(y,t) - 1 blockers.
/// Q must consist of free vertices.
ResilienceResult resilient_or_solve(const Instance& inst, const Path& q);

struct StructureOutcome {
  enum class Kind { kSolved, kNoSolutionThroughC, kPath, kInconclusive } kind = Kind::kInconclusive;
  Schedule solution;
  Path q_prime;   // shortest p-q path in C for kPath
  Vertex p = -1, q = -1;
};

/// Three-way outcome for a free component C (|C| >= 3 * budget).
StructureOutcome structure_lemma(const Instance& inst, const std::vector<Vertex>& c);

/// (threshold + 1) * (budget - 1) + 3 * (budget + 2).
long clean_premise(int budget, long threshold);
/// 32 l^6 2^(14 l^2) + 1, saturating.
long default_threshold(int budget);

struct CleanPathWitness {
  std::vector<Vertex> component;
  Path q;                    // from u' to v'
  Vertex u_prime = -1, v_prime = -1;
  Vertex p = -1, q_end = -1; // endpoints of the structure path
  long threshold = 0;
};

struct CleanOutcome {
  enum class Kind { kSolved, kIrrelevant, kWitness, kInconclusive } kind = Kind::kInconclusive;
  Schedule solution;
  CleanPathWitness witness;
  std::string reason;
};

/// Throws CsmpError("premise unmet") when |C| is below clean_premise.
CleanOutcome clean_path(const Instance& inst, const std::vector<Vertex>& c, long threshold);

/// Connected rooted graph: vertex 0 is the root u, vertex 1 the root v, the
/// remaining vertices are free or occupied.
struct Roadmap {
  Graph graph;
  std::vector<bool> occupied;
  int occupied_count() const;
};

/// All roadmaps with at most max_vertices vertices and at most max_occupied
/// occupied vertices, one per label-preserving isomorphism class.
std::vector<Roadmap> enumerate_roadmaps(int max_vertices, int max_occupied);

struct HostWitness {
  std::vector<Vertex> vertex_image;  // per roadmap vertex
  std::vector<Path> edge_image;      // per roadmap edge (graph.edges() order)
  std::vector<Vertex> on_q;          // images lying on Q, in Q order
};

struct HostResult {
  enum class Status { kFound, kNone, kCapExceeded } status = Status::kNone;
  std::optional<HostWitness> host;
  std::uint64_t work = 0;
};

/// max(0, budget - blockd(s,u) - blockd(v,t) - 1).
int occupied_bound(const Instance& inst, Vertex u, Vertex v);

/// Leftmost host of U between u and v on Q (Q listed from u' to v'). Throws
/// CsmpError when U has more occupied vertices than occupied_bound allows.
HostResult host_test(const Instance& inst, const Path& q, Vertex u, Vertex v, const Roadmap& u_map,
                     std::uint64_t work_cap = 10'000'000);

/// Checks the separation and edge-shape conditions of a host independently.
bool is_valid_host(const Instance& inst, const Path& q, Vertex u, Vertex v, const Roadmap& u_map,
                   const HostWitness& h);

struct MarkResult {
  enum class Status { kContracted, kNoUnmarkedEdge, kCapExceeded } status = Status::kNoUnmarkedEdge;
  Instance contracted;
  std::vector<Vertex> remap;   // old -> new vertex ids
  Edge edge;                   // contracted edge (old ids)
  std::vector<Vertex> marked;  // in Q order
  std::uint64_t pairs = 0, roadmaps = 0, hosts = 0;
};

MarkResult mark_and_contract(const Instance& inst, const CleanPathWitness& w, int roadmap_cap,
                             std::uint64_t work_cap = 50'000'000);

struct KernelOptions {
  long threshold = -1;   // -1: default_threshold(budget)
  int roadmap_cap = -1;  // -1: 2 * budget^2
  std::uint64_t work_cap = 50'000'000;
  std::uint64_t state_cap = 10'000'000;
  int max_rounds = 10'000;
  bool keep_history = false;  // record the instance after every contraction

  static KernelOptions desk_scale() {
    KernelOptions o;
    o.threshold = 12;
    o.roadmap_cap = 5;
    return o;
  }
};

struct KernelResult {
  enum class Status { kYes, kNo, kCapExceeded } status = Status::kNo;
  Schedule schedule;           // valid for the input instance
  Instance kernel;
  std::vector<std::string> trace;
  int contractions = 0;
  int max_consecutive_contractions = 0;
  std::vector<Instance> history;  // input first, then one per contraction
};

KernelResult kernelize_and_solve(const Instance& inst, const KernelOptions& opt = {});

/// Expands a schedule on the graph obtained by contracting `e` in `g` back to
/// `g` (remap as returned by contract_edge).
Schedule lift_schedule(const Graph& g, Edge e, const std::vector<Vertex>& remap, const Schedule& s);

/// Q^S_uv: u, v and every component of G_S - {u, v} containing neither s nor t.
std::vector<Vertex> pending_part(const Instance& inst, const Schedule& s, Vertex u, Vertex v);

/// Rewrites s so that at most `budget` vertices of Q^S_uv lie off Q, by
/// parking blockers in a connected set Y next to Q. Throws CsmpError when the
/// construction does not apply.
Schedule canonicalize_solution(const Instance& inst, const Schedule& s, const Path& q, Vertex u,
                               Vertex v);

}  // namespace csmp
