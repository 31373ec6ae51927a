// Reference search used to cross-check the main solver. Robots are all
// labelled and moves are found by plain recursive DFS, so nothing here is
// shared with the canonical search.
#include <chrono>
#include <map>

#include "csmp/solver.hpp"

namespace csmp {

namespace {

struct OracleNode {
  std::vector<Vertex> pos;
  long parent;
  Move move;
};

void dfs_reach(const Graph& g, const std::vector<int>& owner, Vertex x, std::vector<Path>& paths,
               std::vector<bool>& seen, Path& cur) {
  for (Vertex y : g.neighbors(x)) {
    if (seen[y] || owner[y] >= 0) continue;
    seen[y] = true;
    cur.push_back(y);
    paths.push_back(cur);
    dfs_reach(g, owner, y, paths, seen, cur);
    cur.pop_back();
  }
}

}  // namespace

SolveResult oracle_solve(const Instance& inst, int budget, std::uint64_t state_cap) {
  auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  const Graph& g = inst.graph;
  const int k = inst.robot_count();
  auto done = [&](const std::vector<Vertex>& p) {
    for (int r = 0; r < inst.dest_count(); ++r)
      if (p[r] != inst.dest[r].target) return false;
    return true;
  };
  auto stop = [&](SolveStatus st) {
    res.status = st;
    res.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };
  std::vector<OracleNode> nodes{{inst.starts(), -1, {}}};
  std::map<std::vector<Vertex>, int> depth_of{{nodes[0].pos, 0}};
  if (done(nodes[0].pos)) return stop(SolveStatus::kSolved);
  std::size_t head = 0;
  while (head < nodes.size()) {
    std::vector<Vertex> pos = nodes[head].pos;
    int d = depth_of[pos];
    if (d >= budget) {
      ++head;
      continue;
    }
    ++res.stats.expanded;
    std::vector<int> owner(g.vertex_count(), -1);
    for (int r = 0; r < k; ++r) owner[pos[r]] = r;
    for (int r = 0; r < k; ++r) {
      std::vector<Path> paths;
      std::vector<bool> seen(g.vertex_count(), false);
      seen[pos[r]] = true;
      Path cur{pos[r]};
      dfs_reach(g, owner, pos[r], paths, seen, cur);
      for (Path& p : paths) {
        std::vector<Vertex> next = pos;
        next[r] = p.back();
        ++res.stats.generated;
        if (depth_of.contains(next)) continue;
        depth_of[next] = d + 1;
        nodes.push_back({next, static_cast<long>(head), Move{r, std::move(p)}});
        if (done(next)) {
          std::vector<Move> moves;
          for (long x = static_cast<long>(nodes.size()) - 1; x > 0; x = nodes[x].parent) {
            moves.push_back(nodes[x].move);
          }
          res.schedule.moves.assign(moves.rbegin(), moves.rend());
          res.stats.depth = d + 1;
          return stop(SolveStatus::kSolved);
        }
        if (nodes.size() > state_cap) return stop(SolveStatus::kCapExceeded);
      }
    }
    ++head;
  }
  // Every state within the budget was expanded.
  bool any_cut = false;
  for (const auto& [p, d] : depth_of) any_cut = any_cut || d >= budget;
  return stop(any_cut ? SolveStatus::kNoWithinDepth : SolveStatus::kInfeasible);
}

}  // namespace csmp
