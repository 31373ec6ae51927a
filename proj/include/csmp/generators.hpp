#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csmp/instance.hpp"

namespace csmp {

enum class OccupancyPattern { kRandom, kCorridor, kExplicit };

struct GridOccupancy {
  OccupancyPattern pattern = OccupancyPattern::kRandom;
  /// kRandom: fraction of vertices holding blockers (main robot not counted).
  double density = 0.3;
  /// kExplicit: robots given directly (vertex ids r * cols + c).
  std::vector<DestRobot> dest;
  std::vector<Vertex> blockers;
  int budget = 1;
};

/// rows x cols grid; vertex (r, c) has id r * cols + c.
///   kRandom: one main robot with random start and target, blockers at random.
///   kCorridor: main robot crosses the middle row left to right, every other
///              row is filled with blockers at the given density.
///   kExplicit: the robots in `occ`.
/// Throws CsmpError when no free vertex would remain.
Instance grid_instance(int rows, int cols, const GridOccupancy& occ, std::uint64_t seed);

/// Random grid subgraph (vertices kept with probability keep_prob, largest
/// component retained) with one main robot and blockers; declared planar.
Instance random_subgrid_instance(int rows, int cols, double keep_prob, int blockers, int budget,
                                 std::uint64_t seed);

struct RandomSpec {
  int min_vertices = 4;
  int max_vertices = 10;
  double extra_edge_prob = 0.2;
  int max_dest = 2;
  int max_robots = 3;
  int max_budget = 5;
};

/// Connected random graph (random tree plus extra edges) with random robots.
Instance random_instance(const RandomSpec& spec, std::uint64_t seed);

using Point = std::pair<int, int>;  // (x, y)

struct RstGadget {
  Instance instance;
  std::vector<Point> points;          // after normalisation and deduplication
  std::vector<Vertex> point_vertex;   // vertex of each point
  Vertex s = 0;
  bool normalized = false;            // input had to be shifted or deduplicated
};

/// Grid over the bounding box of the points, plus the approach path
/// s, q_1..q_{n-1} left of p_1 on its row. Main robot s -> p_1; every vertex
/// other than s and the points holds a blocker; budget ell + 1.
RstGadget rst_gadget(std::vector<Point> points, int ell);

/// Minimum rectilinear Steiner length by exhaustive search over connected
/// vertex sets of the bounding-box lattice. At most 4 points, box at most 5x5.
int steiner_oracle(std::vector<Point> points);

/// Long free corridor of `corridor` vertices between the main robot's start
/// and a gate blocker next to the target. `parking` gives the gate blocker a
/// free dead end. `pendants` puts blockers on leaves hanging off the corridor
/// at evenly spaced positions. Declared planar.
Instance corridor_fixture(int corridor, bool parking, int pendants, int budget);

}  // namespace csmp
