#include "csmp/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <sstream>

#include "csmp/topological_minor.hpp"

namespace csmp {

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
  if (vertex_count < 0) throw CsmpError("negative vertex count");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= n_) {
      throw CsmpError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                      std::to_string(e.v));
    }
    if (e.u == e.v) throw CsmpError("self-loop at vertex " + std::to_string(e.u));
  }
  std::sort(edges.begin(), edges.end());
  if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
    throw CsmpError("duplicate edge " + std::to_string(it->u) + " " + std::to_string(it->v));
  }
  edges_ = std::move(edges);
  adj_.assign(n_, {});
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (!contains(a) || !contains(b)) return false;
  const auto& na = adj_[a];
  return std::binary_search(na.begin(), na.end(), b);
}

bool is_simple_path(const Graph& g, const Path& p) {
  if (p.empty()) return false;
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!g.contains(p[i]) || seen[p[i]]) return false;
    seen[p[i]] = true;
    if (i > 0 && !g.has_edge(p[i - 1], p[i])) return false;
  }
  return true;
}

namespace {

Contraction rebuild(const Graph& g, std::vector<Vertex> remap, int new_n) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    Vertex a = remap[e.u];
    Vertex b = remap[e.v];
    if (a < 0 || b < 0 || a == b) continue;
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {Graph(new_n, std::move(edges)), std::move(remap)};
}

}  // namespace

Contraction contract_edge(const Graph& g, Edge e) {
  if (!g.has_edge(e.u, e.v)) {
    throw CsmpError("edge not in graph: " + std::to_string(e.u) + " " + std::to_string(e.v));
  }
  std::vector<Vertex> remap(g.vertex_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (x == e.v) {
      remap[x] = e.u;
    } else {
      remap[x] = x > e.v ? x - 1 : x;
    }
  }
  return rebuild(g, std::move(remap), g.vertex_count() - 1);
}

Contraction delete_vertices(const Graph& g, const std::vector<bool>& removed) {
  std::vector<bool> keep(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) keep[v] = !removed[v];
  return induced_subgraph(g, keep);
}

Contraction induced_subgraph(const Graph& g, const std::vector<bool>& keep) {
  std::vector<Vertex> remap(g.vertex_count(), -1);
  int next = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (keep[v]) remap[v] = next++;
  }
  return rebuild(g, std::move(remap), next);
}

std::vector<Chain> degree2_chains(const Graph& g, const std::vector<bool>& forbidden) {
  const int n = g.vertex_count();
  auto eligible = [&](Vertex v) {
    return g.degree(v) == 2 && !(v < static_cast<int>(forbidden.size()) && forbidden[v]);
  };
  std::vector<bool> used(n, false);
  std::vector<Chain> chains;

  // Walk from `from` into `next` until a non-eligible vertex (or `stop`) is reached.
  auto walk = [&](Vertex from, Vertex next, Vertex stop) {
    Path out;
    Vertex prev = from;
    Vertex cur = next;
    while (true) {
      out.push_back(cur);
      if (!eligible(cur) || cur == stop) break;
      auto nb = g.neighbors(cur);
      Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = nxt;
    }
    return out;
  };

  for (Vertex v = 0; v < n; ++v) {
    if (!eligible(v) || used[v]) continue;
    auto nb = g.neighbors(v);
    Path left = walk(v, nb[0], v);
    if (left.back() == v) {
      // The whole component is a cycle of eligible vertices; open it at v,
      // the smallest id met in ascending scan order.
      Chain c;
      c.closed = true;
      c.vertices.push_back(v);
      for (Vertex x : left) c.vertices.push_back(x);
      for (Vertex x : c.vertices) used[x] = true;
      chains.push_back(std::move(c));
      continue;
    }
    Path right = walk(v, nb[1], v);
    Chain c;
    c.vertices.assign(left.rbegin(), left.rend());
    c.vertices.push_back(v);
    c.vertices.insert(c.vertices.end(), right.begin(), right.end());
    if (c.vertices.front() > c.vertices.back()) {
      std::reverse(c.vertices.begin(), c.vertices.end());
    }
    c.closed = c.vertices.front() == c.vertices.back();
    for (std::size_t i = 1; i + 1 < c.vertices.size(); ++i) used[c.vertices[i]] = true;
    chains.push_back(std::move(c));
  }
  return chains;
}

namespace {

struct ZeroOneResult {
  std::vector<int> dist;
  std::vector<Vertex> parent;
};

// 0-1 BFS where entering vertex x costs weight[x]. Neighbours are scanned in
// ascending order so parents are deterministic.
ZeroOneResult zero_one_bfs(const Graph& g, const std::vector<int>& weight, Vertex source,
                           const std::vector<bool>& avoid, Vertex target) {
  const int n = g.vertex_count();
  ZeroOneResult r{std::vector<int>(n, kInfinity), std::vector<Vertex>(n, -1)};
  auto w = [&](Vertex x) { return x < static_cast<int>(weight.size()) ? weight[x] : 0; };
  auto blocked = [&](Vertex x) {
    return x != target && x != source && x < static_cast<int>(avoid.size()) && avoid[x];
  };
  std::deque<Vertex> dq;
  r.dist[source] = w(source);
  dq.push_back(source);
  std::vector<bool> done(n, false);
  while (!dq.empty()) {
    Vertex x = dq.front();
    dq.pop_front();
    if (done[x]) continue;
    done[x] = true;
    if (x != source && blocked(x)) continue;
    for (Vertex y : g.neighbors(x)) {
      if (blocked(y)) continue;
      int nd = r.dist[x] + w(y);
      if (nd < r.dist[y]) {
        r.dist[y] = nd;
        r.parent[y] = x;
        if (w(y) == 0) {
          dq.push_front(y);
        } else {
          dq.push_back(y);
        }
      }
    }
  }
  return r;
}

}  // namespace

int weighted_distance(const Graph& g, const std::vector<int>& weight, Vertex v, Vertex w,
                      const std::vector<bool>& avoid) {
  return zero_one_bfs(g, weight, v, avoid, w).dist[w];
}

std::vector<int> weighted_distances_from(const Graph& g, const std::vector<int>& weight,
                                         Vertex source, const std::vector<bool>& avoid) {
  return zero_one_bfs(g, weight, source, avoid, -1).dist;
}

std::optional<Path> weighted_shortest_path(const Graph& g, const std::vector<int>& weight,
                                           Vertex v, Vertex w, const std::vector<bool>& avoid) {
  auto r = zero_one_bfs(g, weight, v, avoid, w);
  if (r.dist[w] == kInfinity) return std::nullopt;
  Path p;
  for (Vertex x = w; x != -1; x = r.parent[x]) {
    p.push_back(x);
    if (x == v) break;
  }
  std::reverse(p.begin(), p.end());
  return p;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source, const std::vector<bool>& allowed) {
  std::vector<int> dist(g.vertex_count(), kInfinity);
  auto ok = [&](Vertex x) { return allowed.empty() || allowed[x]; };
  if (!ok(source)) return dist;
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (Vertex y : g.neighbors(x)) {
      if (ok(y) && dist[y] == kInfinity) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

std::optional<Path> shortest_path(const Graph& g, Vertex from, Vertex to,
                                  const std::vector<bool>& allowed) {
  auto ok = [&](Vertex x) { return allowed.empty() || allowed[x]; };
  if (!ok(from) || !ok(to)) return std::nullopt;
  std::vector<Vertex> parent(g.vertex_count(), -2);
  std::queue<Vertex> q;
  parent[from] = -1;
  q.push(from);
  while (!q.empty() && parent[to] == -2) {
    Vertex x = q.front();
    q.pop();
    for (Vertex y : g.neighbors(x)) {
      if (ok(y) && parent[y] == -2) {
        parent[y] = x;
        q.push(y);
      }
    }
  }
  if (parent[to] == -2) return std::nullopt;
  Path p;
  for (Vertex x = to; x != -1; x = parent[x]) p.push_back(x);
  std::reverse(p.begin(), p.end());
  return p;
}

std::vector<std::vector<Vertex>> components(const Graph& g, const std::vector<bool>& keep) {
  const int n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Vertex>> out;
  for (Vertex v = 0; v < n; ++v) {
    if (!keep[v] || seen[v]) continue;
    std::vector<Vertex> comp;
    std::queue<Vertex> q;
    q.push(v);
    seen[v] = true;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      comp.push_back(x);
      for (Vertex y : g.neighbors(x)) {
        if (keep[y] && !seen[y]) {
          seen[y] = true;
          q.push(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  return components(g, std::vector<bool>(g.vertex_count(), true)).size() == 1;
}

namespace {

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

Graph complete_bipartite33() {
  std::vector<Edge> e;
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) e.emplace_back(a, b);
  return Graph(6, e);
}

bool contains_subdivision(const Graph& h, const Graph& g,
                          std::vector<std::pair<Vertex, Vertex>> increasing) {
  MinorSearchOptions opt;
  opt.compatible = [](Vertex, Vertex) { return true; };
  opt.increasing = std::move(increasing);
  return find_topological_minor(h, g, opt).status == SearchStatus::kFound;
}

}  // namespace

Planarity planarity_sanity(const Graph& g) {
  const int n = g.vertex_count();
  if (n >= 3 && g.edge_count() > 3 * n - 6) return Planarity::kRejected;
  if (n > 10) return Planarity::kPlausible;
  // K5 and K3,3 are vertex-transitive within their sides, so images can be
  // forced increasing along those symmetries.
  if (n >= 5 && contains_subdivision(complete_graph(5), g, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})) {
    return Planarity::kRejected;
  }
  if (n >= 6 &&
      contains_subdivision(complete_bipartite33(), g, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}})) {
    return Planarity::kRejected;
  }
  return Planarity::kPlausible;
}

Path erase_loops(const Path& walk) {
  Path out;
  std::map<Vertex, std::size_t> pos;
  for (Vertex x : walk) {
    auto it = pos.find(x);
    if (it != pos.end()) {
      for (std::size_t i = it->second + 1; i < out.size(); ++i) pos.erase(out[i]);
      out.resize(it->second + 1);
      continue;
    }
    pos[x] = out.size();
    out.push_back(x);
  }
  return out;
}

std::string to_string(const Path& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ' ';
    os << p[i];
  }
  return os.str();
}

}  // namespace csmp
