#include "csmp/havens.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace csmp {

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool connected_set(const Graph& g, const std::vector<Vertex>& set,
                   const std::vector<Edge>& extra) {
  if (set.empty()) return false;
  std::set<Vertex> in(set.begin(), set.end());
  std::set<Vertex> seen{set[0]};
  std::vector<Vertex> stack{set[0]};
  auto visit = [&](Vertex y) {
    if (in.contains(y) && seen.insert(y).second) stack.push_back(y);
  };
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : g.neighbors(x)) visit(y);
    for (const Edge& e : extra) {
      if (e.u == x) visit(e.v);
      if (e.v == x) visit(e.u);
    }
  }
  return seen.size() == in.size();
}

// Builds C1, C2, C3 for anchor index i with extra neighbour u; empty optional
// when the size conditions fail.
std::optional<HavenWitness> decompose(const Graph& g, const Path& p, int i, Vertex u, int k) {
  const int q = static_cast<int>(p.size()) - 1;
  const Vertex w = p[i];
  HavenWitness h;
  h.q = q;
  h.path = p;
  h.anchor_index = i;
  h.anchor = w;
  h.third = u;
  auto pos = std::find(p.begin(), p.end(), u);
  if (pos == p.end()) {
    h.c1.assign(p.begin(), p.begin() + i + 1);
    h.c2.assign(p.begin() + i, p.end());
    h.c3 = {w, u};
  } else {
    int j = static_cast<int>(pos - p.begin());
    if (j > i + 1) {
      h.c1.assign(p.begin(), p.begin() + i + 1);
      h.c3 = {w, p[i + 1]};
      h.c2.assign(p.begin() + i + 2, p.end());
      h.c2.push_back(w);
    } else if (j < i - 1) {
      h.c2.assign(p.begin() + i, p.end());
      h.c3 = {w, p[i - 1]};
      h.c1.assign(p.begin(), p.begin() + i - 1);
      h.c1.push_back(w);
    } else {
      return std::nullopt;
    }
  }
  h.c1 = sorted_unique(h.c1);
  h.c2 = sorted_unique(h.c2);
  h.c3 = sorted_unique(h.c3);
  if (static_cast<int>(h.c1.size()) < k + 1 || static_cast<int>(h.c2.size()) < k + 1 ||
      h.c3.size() < 2) {
    return std::nullopt;
  }
  for (std::size_t a = 1; a < p.size(); ++a) h.extended_edges.emplace_back(p[a - 1], p[a]);
  h.extended_edges.emplace_back(w, u);
  std::sort(h.extended_edges.begin(), h.extended_edges.end());
  h.extended_edges.erase(std::unique(h.extended_edges.begin(), h.extended_edges.end()),
                         h.extended_edges.end());
  std::vector<Vertex> ext = p;
  ext.push_back(u);
  h.extended_vertices = sorted_unique(ext);
  (void)g;
  return h;
}

Graph extended_graph(int n, const HavenWitness& h) { return Graph(n, h.extended_edges); }

}  // namespace

bool is_valid_haven(const Graph& g, const HavenWitness& h, int k) {
  const int q = h.q;
  if (static_cast<int>(h.path.size()) != q + 1 || !is_simple_path(g, h.path)) return false;
  if (h.path[h.anchor_index] != h.anchor || g.degree(h.anchor) < 3) return false;
  if (h.anchor_index < (q + 2) / 3 || h.anchor_index > 2 * q / 3) return false;
  if (!g.has_edge(h.anchor, h.third)) return false;
  auto inter = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };
  std::vector<Vertex> w{h.anchor};
  if (inter(h.c1, h.c2) != w || inter(h.c1, h.c3) != w || inter(h.c2, h.c3) != w) return false;
  if (static_cast<int>(h.c1.size()) < k + 1 || static_cast<int>(h.c2.size()) < k + 1 ||
      h.c3.size() < 2) {
    return false;
  }
  Graph ext(g.vertex_count(), h.extended_edges);
  for (const Edge& e : h.extended_edges)
    if (!g.has_edge(e.u, e.v)) return false;
  auto connected_in_ext = [&](const std::vector<Vertex>& c) {
    return connected_set(ext, c, {});
  };
  return connected_in_ext(h.c1) && connected_in_ext(h.c2) && connected_in_ext(h.c3);
}

std::optional<HavenWitness> find_strong_haven(const Instance& inst, Vertex v, int q,
                                              std::uint64_t work_cap) {
  if (q < 3) throw CsmpError("haven length must be at least 3");
  const Graph& g = inst.graph;
  const int k = inst.robot_count();
  const int lo = (q + 2) / 3;
  const int hi = 2 * q / 3;
  std::uint64_t work = 0;
  std::vector<bool> on_path(g.vertex_count(), false);
  Path p{v};
  on_path[v] = true;
  std::optional<HavenWitness> found;
  std::function<bool()> rec = [&]() -> bool {
    if (++work > work_cap) throw CapExceeded("haven search");
    if (static_cast<int>(p.size()) == q + 1) {
      for (int i = lo; i <= hi; ++i) {
        Vertex w = p[i];
        if (g.degree(w) < 3) continue;
        // Prefer a neighbour off the path, then on-path ones, by id.
        std::vector<Vertex> thirds;
        for (Vertex y : g.neighbors(w))
          if (!on_path[y]) thirds.push_back(y);
        for (Vertex y : g.neighbors(w))
          if (on_path[y] && y != p[i - 1] && y != p[i + 1]) thirds.push_back(y);
        for (Vertex u : thirds) {
          if (auto h = decompose(g, p, i, u, k)) {
            found = std::move(h);
            return true;
          }
        }
      }
      return false;
    }
    for (Vertex y : g.neighbors(p.back())) {
      if (on_path[y]) continue;
      on_path[y] = true;
      p.push_back(y);
      if (rec()) return true;
      p.pop_back();
      on_path[y] = false;
    }
    return false;
  };
  rec();
  return found;
}

std::optional<std::vector<Move>> local_search(
    const Graph& local, const std::vector<bool>& allowed, const std::vector<Vertex>& positions,
    const std::function<bool(const std::vector<Vertex>&)>& goal, std::uint64_t state_cap,
    std::uint64_t* states) {
  const int k = static_cast<int>(positions.size());
  struct Node {
    std::vector<Vertex> pos;
    long parent;
    Move move;
  };
  std::vector<Node> nodes{{positions, -1, {}}};
  std::map<std::vector<Vertex>, long> seen{{positions, 0}};
  auto finish = [&](long x) {
    if (states) *states = nodes.size();
    std::vector<Move> out;
    for (; x > 0; x = nodes[x].parent) out.push_back(nodes[x].move);
    std::reverse(out.begin(), out.end());
    return out;
  };
  if (goal(positions)) return finish(0);
  std::vector<int> owner(local.vertex_count(), -1);
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const std::vector<Vertex> pos = nodes[head].pos;
    std::fill(owner.begin(), owner.end(), -1);
    for (int r = 0; r < k; ++r) owner[pos[r]] = r;
    for (int r = 0; r < k; ++r) {
      if (!allowed[pos[r]]) continue;
      std::vector<bool> free_here(local.vertex_count(), false);
      for (Vertex x = 0; x < local.vertex_count(); ++x) free_here[x] = allowed[x] && owner[x] < 0;
      free_here[pos[r]] = true;
      auto dist = bfs_distances(local, pos[r], free_here);
      for (Vertex to = 0; to < local.vertex_count(); ++to) {
        if (to == pos[r] || dist[to] == kInfinity) continue;
        std::vector<Vertex> next = pos;
        next[r] = to;
        if (seen.contains(next)) continue;
        seen[next] = static_cast<long>(nodes.size());
        Path path = *shortest_path(local, pos[r], to, free_here);
        nodes.push_back({next, static_cast<long>(head), Move{r, path}});
        if (goal(next)) return finish(static_cast<long>(nodes.size()) - 1);
        if (nodes.size() > state_cap) throw CapExceeded("local search");
      }
    }
  }
  if (states) *states = nodes.size();
  return std::nullopt;
}

TransferResult haven_transfer(const Instance& inst, const HavenWitness& hw,
                              const std::vector<Vertex>& positions,
                              const std::vector<Vertex>& target, std::uint64_t state_cap) {
  const Graph& g = inst.graph;
  const int k = inst.robot_count();
  const int m = inst.dest_count();
  std::vector<bool> allowed(g.vertex_count(), false);
  for (Vertex x : hw.extended_vertices) allowed[x] = true;
  std::vector<Vertex> in_blockers, out_blockers;
  for (int r = 0; r < k; ++r) {
    if (allowed[positions[r]] != allowed[target[r]] && r < m) {
      throw CsmpError("transfer changes which robots are inside the haven");
    }
    if (r >= m && allowed[target[r]]) in_blockers.push_back(target[r]);
    if (r < m && !allowed[positions[r]] && positions[r] != target[r]) {
      throw CsmpError("robot outside the haven cannot change position");
    }
  }
  std::sort(in_blockers.begin(), in_blockers.end());
  int blockers_inside = 0;
  for (int r = m; r < k; ++r) blockers_inside += allowed[positions[r]] ? 1 : 0;
  if (blockers_inside != static_cast<int>(in_blockers.size())) {
    throw CsmpError("transfer changes the number of robots inside the haven");
  }
  auto goal = [&](const std::vector<Vertex>& pos) {
    for (int r = 0; r < m; ++r)
      if (pos[r] != target[r]) return false;
    std::vector<Vertex> b;
    for (int r = m; r < k; ++r)
      if (allowed[pos[r]]) b.push_back(pos[r]);
    std::sort(b.begin(), b.end());
    return b == in_blockers;
  };
  Graph local = extended_graph(g.vertex_count(), hw);
  TransferResult res;
  auto moves = local_search(local, allowed, positions, goal, state_cap, &res.states);
  if (!moves) throw CsmpError("haven transfer: target configuration unreachable inside the haven");
  res.moves = std::move(*moves);
  res.soft_bound = 10L * k * k * hw.q;
  res.within_soft_bound = static_cast<long>(res.moves.size()) <= res.soft_bound;
  return res;
}

MetaRoute meta_haven_route(const Instance& inst, const std::vector<HavenWitness>& havens,
                           int robot, std::uint64_t state_cap) {
  const Graph& g = inst.graph;
  if (!inst.is_dest(robot)) throw CsmpError("meta-haven routing needs a destination robot");
  const int n = g.vertex_count();
  // Merge havens whose extended vertex sets overlap.
  const int h = static_cast<int>(havens.size());
  std::vector<int> parent(h);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int a = 0; a < h; ++a)
    for (int b = a + 1; b < h; ++b) {
      std::vector<Vertex> common;
      std::set_intersection(havens[a].extended_vertices.begin(), havens[a].extended_vertices.end(),
                            havens[b].extended_vertices.begin(), havens[b].extended_vertices.end(),
                            std::back_inserter(common));
      if (!common.empty()) parent[find(a)] = find(b);
    }
  std::vector<int> meta_of(n, -1);
  std::map<int, std::vector<Edge>> meta_edges;
  for (int a = 0; a < h; ++a) {
    int root = find(a);
    for (Vertex x : havens[a].extended_vertices) meta_of[x] = root;
    auto& e = meta_edges[root];
    e.insert(e.end(), havens[a].extended_edges.begin(), havens[a].extended_edges.end());
  }

  const Vertex s = inst.dest[robot].start;
  const Vertex t = inst.dest[robot].target;
  auto route = shortest_path(g, s, t);
  if (!route) throw CsmpError("target unreachable");
  const Path& p = *route;

  MetaRoute out;
  std::vector<Vertex> pos = inst.starts();
  auto apply = [&](const Move& mv) {
    pos[mv.robot] = mv.path.back();
    out.moves.push_back(mv);
  };
  auto occupied_by_other = [&](Vertex x) {
    for (int r = 0; r < inst.robot_count(); ++r)
      if (r != robot && pos[r] == x) return true;
    return false;
  };
  // Slides the robot along p[from..to]; every vertex must be free.
  auto slide = [&](int from, int to) {
    if (from == to) return;
    Path seg(p.begin() + from, p.begin() + to + 1);
    for (Vertex x : seg)
      if (occupied_by_other(x)) {
        throw CsmpError("meta-haven route blocked outside havens at vertex " + std::to_string(x));
      }
    apply(Move{robot, seg});
  };

  int cur = 0;
  int i = 0;
  const int len = static_cast<int>(p.size());
  std::set<int> visited;
  while (i < len) {
    int z = meta_of[p[i]];
    if (z < 0 || visited.contains(z)) {
      if (z >= 0) throw CsmpError("shortest path re-enters a meta-haven");
      ++i;
      continue;
    }
    int last = i;
    for (int j = i; j < len; ++j)
      if (meta_of[p[j]] == z) last = j;
    std::vector<bool> allowed(n, false);
    for (Vertex x = 0; x < n; ++x) allowed[x] = meta_of[x] == z;
    Graph local(n, [&] {
      auto e = meta_edges[z];
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
      return e;
    }());
    const Vertex entry = p[i];
    const Vertex exit = p[last];
    int first_move = static_cast<int>(out.moves.size());
    if (pos[robot] != entry) {
      // Free the entry vertex, then slide in.
      auto clear = local_search(local, allowed, pos,
                                [&](const std::vector<Vertex>& q) {
                                  for (Vertex x : q)
                                    if (x == entry) return false;
                                  return true;
                                },
                                state_cap);
      if (!clear) throw CsmpError("cannot free the entry of a meta-haven");
      for (const Move& mv : *clear) apply(mv);
      first_move = static_cast<int>(out.moves.size());
      slide(cur, i);
    }
    auto cross = local_search(local, allowed, pos,
                              [&](const std::vector<Vertex>& q) { return q[robot] == exit; },
                              state_cap);
    if (!cross) throw CsmpError("cannot cross a meta-haven");
    for (const Move& mv : *cross) apply(mv);
    std::vector<Vertex> zset;
    for (Vertex x = 0; x < n; ++x)
      if (allowed[x]) zset.push_back(x);
    out.meta_havens.push_back(zset);
    out.inside_span.emplace_back(first_move, static_cast<int>(out.moves.size()) - 1);
    visited.insert(z);
    cur = last;
    i = last + 1;
  }
  slide(cur, len - 1);
  // The robot is inside each meta-haven during one contiguous block of moves.
  for (std::size_t a = 0; a < out.meta_havens.size(); ++a) {
    std::set<Vertex> zs(out.meta_havens[a].begin(), out.meta_havens[a].end());
    auto replayed = replay_from(g, inst.starts(), out.moves);
    int first = -1, lastin = -1;
    for (int step = 0; step < static_cast<int>(replayed.size()); ++step) {
      if (zs.contains(replayed[step][robot])) {
        if (first < 0) first = step;
        if (lastin >= 0 && lastin != step - 1) throw CsmpError("robot re-enters a meta-haven");
        lastin = step;
      }
    }
  }
  return out;
}

}  // namespace csmp
