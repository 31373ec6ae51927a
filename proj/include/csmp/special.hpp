#pragma once

#include <vector>

#include "csmp/schedule.hpp"

namespace csmp {

/// Maximal paths of G_{S,j} whose internal vertices are neither important in
/// [0, j] nor ever occupied by a robot during S. A corridor may be closed
/// (front == back).
std::vector<Path> corridors(const Instance& inst, const Schedule& s, int j);

/// Vertices of degree >= 3 in the graph formed by E(p) and E(q), in the order
/// they appear along p.
std::vector<Vertex> crossing_points(const Path& p, const Path& q);

struct SpecialStats {
  int splices = 0;
};

/// Rewrites move paths so that every move has at most four crossing points
/// with every corridor of every earlier prefix. Positions after every step
/// are unchanged. Throws CsmpError if splicing does not converge.
Schedule make_special(const Instance& inst, const Schedule& s, SpecialStats* stats = nullptr);

/// Largest crossing count of move j (1-based) with any corridor of a prefix
/// j' < j.
int max_crossings(const Instance& inst, const Schedule& s, int j);

}  // namespace csmp
