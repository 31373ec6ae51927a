#pragma once

#include <functional>
#include <random>

#include "csmp/graph.hpp"
#include "csmp/instance.hpp"

namespace fx {

using namespace csmp;

inline Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

/// Vertex (r, c) has id r * cols + c.
inline Graph grid_graph(int rows, int cols) {
  std::vector<Edge> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) e.emplace_back(r * cols + c, (r + 1) * cols + c);
    }
  return Graph(rows * cols, e);
}

/// Center 0, leaves 1..leaves.
inline Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

inline Instance make_instance(Graph g, std::vector<DestRobot> dest, std::vector<Vertex> blockers,
                              int budget) {
  Instance inst;
  inst.graph = std::move(g);
  inst.dest = std::move(dest);
  inst.free_starts = std::move(blockers);
  inst.budget = budget;
  check_instance(inst);
  return inst;
}

/// Every simple path between a and b (tiny graphs only).
inline void all_simple_paths(const Graph& g, Vertex a, Vertex b,
                             const std::function<void(const Path&)>& fn) {
  std::vector<bool> seen(g.vertex_count(), false);
  Path cur{a};
  seen[a] = true;
  std::function<void(Vertex)> rec = [&](Vertex x) {
    if (x == b) {
      fn(cur);
      return;
    }
    for (Vertex y : g.neighbors(x)) {
      if (seen[y]) continue;
      seen[y] = true;
      cur.push_back(y);
      rec(y);
      cur.pop_back();
      seen[y] = false;
    }
  };
  rec(a);
}

}  // namespace fx

namespace fx {

/// Adds a new path of `len` edges between existing vertices a and b.
inline Instance append_chain(const Instance& inst, Vertex a, Vertex b, int len) {
  std::vector<Edge> e = inst.graph.edges();
  int n = inst.graph.vertex_count();
  Vertex prev = a;
  for (int i = 1; i < len; ++i) {
    e.emplace_back(prev, n);
    prev = n++;
  }
  e.emplace_back(prev, b);
  Instance out = inst;
  out.graph = Graph(n, e);
  return out;
}

/// Length of the longest terminal-free chain.
inline int longest_free_chain(const Instance& inst) {
  int best = 0;
  for (const Chain& c : degree2_chains(inst.graph, inst.terminal_mask()))
    best = std::max(best, c.length());
  return best;
}

}  // namespace fx
