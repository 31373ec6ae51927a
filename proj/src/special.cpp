#include "csmp/special.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace csmp {

std::vector<Path> corridors(const Instance& inst, const Schedule& s, int j) {
  Graph g = traversed_subgraph(inst, s, j);
  const int n = g.vertex_count();
  std::vector<bool> anchor(n, false);
  for (Vertex v : important_vertices(inst, s, j)) anchor[v] = true;
  for (Vertex v : stop_vertices(inst, s, s.makespan())) anchor[v] = true;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) != 2) anchor[v] = true;
  std::set<Edge> used;
  std::vector<Path> out;
  for (Vertex a = 0; a < n; ++a) {
    if (!anchor[a] || g.degree(a) == 0) continue;
    for (Vertex b : g.neighbors(a)) {
      if (used.contains(Edge(a, b))) continue;
      Path p{a};
      Vertex prev = a, cur = b;
      used.insert(Edge(a, b));
      while (true) {
        p.push_back(cur);
        if (anchor[cur]) break;
        auto nb = g.neighbors(cur);
        Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
        used.insert(Edge(cur, nxt));
        prev = cur;
        cur = nxt;
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Vertex> crossing_points(const Path& p, const Path& q) {
  std::set<Edge> edges;
  for (std::size_t i = 1; i < p.size(); ++i) edges.insert(Edge(p[i - 1], p[i]));
  for (std::size_t i = 1; i < q.size(); ++i) edges.insert(Edge(q[i - 1], q[i]));
  std::map<Vertex, int> deg;
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  std::vector<Vertex> out;
  for (Vertex v : p)
    if (deg[v] >= 3 && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

namespace {

// Subpath of q between x and y, oriented from x to y. For closed corridors
// the shorter way that avoids wrapping past the endpoint is used.
Path subpath(const Path& q, Vertex x, Vertex y) {
  auto ix = std::find(q.begin(), q.end(), x) - q.begin();
  auto iy = std::find(q.begin(), q.end(), y) - q.begin();
  if (q.front() == q.back() && (x == q.front() || y == q.front())) {
    // closed corridor with one end on the anchor: pick the nearer copy
    auto last = static_cast<long>(q.size()) - 1;
    if (x == q.front() && std::abs(last - iy) < iy) ix = last;
    if (y == q.front() && std::abs(last - ix) < ix) iy = last;
  }
  Path out;
  if (ix <= iy) {
    out.assign(q.begin() + ix, q.begin() + iy + 1);
  } else {
    out.assign(q.begin() + iy, q.begin() + ix + 1);
    std::reverse(out.begin(), out.end());
  }
  return out;
}

Path splice(const Path& p, Vertex x, Vertex y, const Path& q) {
  auto ix = std::find(p.begin(), p.end(), x) - p.begin();
  auto iy = std::find(p.begin(), p.end(), y) - p.begin();
  Path mid = subpath(q, x, y);
  Path out(p.begin(), p.begin() + ix);
  out.insert(out.end(), mid.begin(), mid.end());
  out.insert(out.end(), p.begin() + iy + 1, p.end());
  return erase_loops(out);
}

}  // namespace

int max_crossings(const Instance& inst, const Schedule& s, int j) {
  const Path& p = s.moves[j - 1].path;
  int best = 0;
  for (int jp = 1; jp < j; ++jp)
    for (const Path& q : corridors(inst, s, jp))
      best = std::max(best, static_cast<int>(crossing_points(p, q).size()));
  return best;
}

Schedule make_special(const Instance& inst, const Schedule& s, SpecialStats* stats) {
  Schedule out = s;
  const int cap = 64;
  for (int j = 2; j <= out.makespan(); ++j) {
    for (int round = 0;; ++round) {
      if (round >= cap) throw CsmpError("make_special did not converge at step " + std::to_string(j));
      Path& p = out.moves[j - 1].path;
      bool changed = false;
      for (int jp = 1; jp < j && !changed; ++jp) {
        for (const Path& q : corridors(inst, out, jp)) {
          auto cp = crossing_points(p, q);
          if (cp.size() <= 4) continue;
          // Splice between the second and third crossing points; when that
          // does not lower the count, splice between the second and the
          // second-to-last one instead.
          Path next = splice(p, cp[1], cp[2], q);
          if (crossing_points(next, q).size() >= cp.size()) {
            next = splice(p, cp[1], cp[cp.size() - 2], q);
          }
          p = std::move(next);
          if (stats) ++stats->splices;
          changed = true;
          break;
        }
      }
      if (!changed) break;
    }
  }
  return out;
}

}  // namespace csmp
