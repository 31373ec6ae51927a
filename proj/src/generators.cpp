#include "csmp/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace csmp {

namespace {

Graph make_grid(int rows, int cols) {
  std::vector<Edge> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) e.emplace_back(r * cols + c, (r + 1) * cols + c);
    }
  return Graph(rows * cols, e);
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Instance grid_instance(int rows, int cols, const GridOccupancy& occ, std::uint64_t seed) {
  if (rows < 1 || cols < 1 || rows * cols < 2) throw CsmpError("grid needs at least two vertices");
  std::mt19937_64 rng(seed);
  const int n = rows * cols;
  Instance inst;
  inst.graph = make_grid(rows, cols);
  inst.budget = occ.budget;
  inst.planar = true;
  switch (occ.pattern) {
    case OccupancyPattern::kExplicit:
      inst.dest = occ.dest;
      inst.free_starts = occ.blockers;
      break;
    case OccupancyPattern::kRandom: {
      std::vector<Vertex> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      Vertex s = order[0];
      Vertex t = order[1];
      inst.dest.push_back({s, t});
      int want = static_cast<int>(occ.density * (n - 1) + 0.5);
      if (want >= n - 1) throw CsmpError("over-occupancy: no free vertex left");
      // Blockers avoid s; t may hold a blocker.
      std::vector<Vertex> rest(order.begin() + 1, order.end());
      std::shuffle(rest.begin(), rest.end(), rng);
      rest.resize(want);
      std::sort(rest.begin(), rest.end());
      inst.free_starts = rest;
      break;
    }
    case OccupancyPattern::kCorridor: {
      if (rows < 2) throw CsmpError("corridor pattern needs at least two rows");
      int mid = rows / 2;
      inst.dest.push_back({mid * cols, mid * cols + cols - 1});
      std::bernoulli_distribution coin(occ.density);
      for (Vertex v = 0; v < n; ++v) {
        if (v / cols == mid) continue;
        if (coin(rng)) inst.free_starts.push_back(v);
      }
      break;
    }
  }
  if (inst.robot_count() >= n) throw CsmpError("over-occupancy: no free vertex left");
  check_instance(inst);
  return inst;
}

Instance random_subgrid_instance(int rows, int cols, double keep_prob, int blockers, int budget,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph grid = make_grid(rows, cols);
  std::bernoulli_distribution coin(keep_prob);
  std::vector<bool> keep(grid.vertex_count());
  for (Vertex v = 0; v < grid.vertex_count(); ++v) keep[v] = coin(rng);
  auto comps = components(grid, keep);
  if (comps.empty()) throw CsmpError("empty subgrid");
  auto best = std::max_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size();
  });
  std::vector<bool> in_best(grid.vertex_count(), false);
  for (Vertex v : *best) in_best[v] = true;
  auto sub = induced_subgraph(grid, in_best);
  const int n = sub.graph.vertex_count();
  if (n < 2 || blockers + 1 >= n) throw CsmpError("over-occupancy: subgrid too small");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Instance inst;
  inst.graph = sub.graph;
  inst.dest.push_back({order[0], order[1]});
  std::vector<Vertex> rest(order.begin() + 1, order.end());
  std::shuffle(rest.begin(), rest.end(), rng);
  rest.resize(blockers);
  std::sort(rest.begin(), rest.end());
  inst.free_starts = rest;
  inst.budget = budget;
  inst.planar = true;
  check_instance(inst);
  return inst;
}

Instance random_instance(const RandomSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = uniform(rng, spec.min_vertices, spec.max_vertices);
  std::set<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace(v, uniform(rng, 0, v - 1));
  std::bernoulli_distribution extra(spec.extra_edge_prob);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (extra(rng)) edges.emplace(a, b);
  // Relabel so the tree shape does not correlate with ids.
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> e;
  for (const Edge& x : edges) e.emplace_back(perm[x.u], perm[x.v]);
  Instance inst;
  inst.graph = Graph(n, e);
  int k = uniform(rng, 1, std::min(spec.max_robots, n - 1));
  int m = uniform(rng, 1, std::min(spec.max_dest, k));
  std::vector<Vertex> starts(n), targets(n);
  std::iota(starts.begin(), starts.end(), 0);
  std::iota(targets.begin(), targets.end(), 0);
  std::shuffle(starts.begin(), starts.end(), rng);
  std::shuffle(targets.begin(), targets.end(), rng);
  for (int i = 0; i < m; ++i) inst.dest.push_back({starts[i], targets[i]});
  for (int i = m; i < k; ++i) inst.free_starts.push_back(starts[i]);
  inst.budget = uniform(rng, 0, spec.max_budget);
  check_instance(inst);
  return inst;
}

RstGadget rst_gadget(std::vector<Point> points, int ell) {
  if (points.empty()) throw CsmpError("rst gadget needs at least one point");
  RstGadget out;
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  out.normalized = sorted.size() != points.size();
  // p_1 is the leftmost point (smallest x, then smallest y) and sits at x = 0.
  int minx = sorted.front().first;
  int miny = sorted.front().second;
  for (const auto& p : sorted) miny = std::min(miny, p.second);
  if (minx != 0 || miny != 0) out.normalized = true;
  for (auto& p : sorted) p = {p.first - minx, p.second - miny};
  int maxx = 0, maxy = 0;
  for (const auto& p : sorted) {
    maxx = std::max(maxx, p.first);
    maxy = std::max(maxy, p.second);
  }
  const int w = maxx + 1;
  const int h = maxy + 1;
  const int n = static_cast<int>(sorted.size());
  auto id = [&](int x, int y) { return y * w + x; };
  std::vector<Edge> e;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) e.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < h) e.emplace_back(id(x, y), id(x, y + 1));
    }
  // Approach path s = q_0, q_1, ..., q_{n-1}, then p_1.
  const int grid_n = w * h;
  const Vertex s = grid_n;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(grid_n + i, grid_n + i + 1);
  const Vertex p1 = id(sorted[0].first, sorted[0].second);
  e.emplace_back(grid_n + n - 1, p1);
  Instance inst;
  inst.graph = Graph(grid_n + n, e);
  inst.dest.push_back({s, p1});
  std::vector<bool> special(grid_n + n, false);
  special[s] = true;
  for (const auto& p : sorted) {
    out.point_vertex.push_back(id(p.first, p.second));
    special[id(p.first, p.second)] = true;
  }
  for (Vertex v = 0; v < grid_n + n; ++v)
    if (!special[v]) inst.free_starts.push_back(v);
  inst.budget = ell + 1;
  inst.planar = true;
  check_instance(inst);
  out.instance = std::move(inst);
  out.points = std::move(sorted);
  out.s = s;
  return out;
}

int steiner_oracle(std::vector<Point> points) {
  if (points.empty()) throw CsmpError("steiner oracle needs at least one point");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() > 4) throw CsmpError("steiner oracle: scale exceeded (more than 4 points)");
  int minx = points[0].first, maxx = minx, miny = points[0].second, maxy = miny;
  for (const auto& p : points) {
    minx = std::min(minx, p.first);
    maxx = std::max(maxx, p.first);
    miny = std::min(miny, p.second);
    maxy = std::max(maxy, p.second);
  }
  const int w = maxx - minx + 1;
  const int h = maxy - miny + 1;
  if (w > 5 || h > 5) throw CsmpError("steiner oracle: scale exceeded (box larger than 5x5)");
  const int n = w * h;
  Graph g = make_grid(h, w);  // vertex (row y, col x) = y * w + x
  std::uint32_t required = 0;
  for (const auto& p : points) required |= 1u << ((p.second - miny) * w + (p.first - minx));
  std::vector<int> optional;
  for (int v = 0; v < n; ++v)
    if (!(required >> v & 1u)) optional.push_back(v);
  auto connected = [&](std::uint32_t set) {
    int first = __builtin_ctz(set);
    std::uint32_t seen = 1u << first;
    std::vector<int> stack{first};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if ((set >> y & 1u) && !(seen >> y & 1u)) {
          seen |= 1u << y;
          stack.push_back(y);
        }
      }
    }
    return seen == set;
  };
  int best = n;
  const std::uint32_t combos = 1u << optional.size();
  for (std::uint32_t mask = 0; mask < combos; ++mask) {
    int extra = __builtin_popcount(mask);
    int size = static_cast<int>(points.size()) + extra;
    if (size - 1 >= best) continue;
    std::uint32_t set = required;
    for (std::size_t i = 0; i < optional.size(); ++i)
      if (mask >> i & 1u) set |= 1u << optional[i];
    if (connected(set)) best = size - 1;
  }
  return best;
}

Instance corridor_fixture(int corridor, bool parking, int pendants, int budget) {
  if (corridor < 2) throw CsmpError("corridor too short");
  // 0 = s, 1..corridor = corridor, then gate blocker b, target t, parking f,
  // then pendant leaves.
  std::vector<Edge> e;
  const Vertex s = 0;
  e.emplace_back(s, 1);
  for (int i = 1; i < corridor; ++i) e.emplace_back(i, i + 1);
  const Vertex b = corridor + 1;
  const Vertex t = corridor + 2;
  e.emplace_back(corridor, b);
  e.emplace_back(b, t);
  Vertex next = corridor + 3;
  Vertex f = -1;
  if (parking) {
    f = next++;
    e.emplace_back(b, f);
  }
  std::vector<Vertex> blockers{b};
  for (int i = 0; i < pendants; ++i) {
    int at = 1 + (i + 1) * corridor / (pendants + 1);
    Vertex leaf = next++;
    e.emplace_back(at, leaf);
    blockers.push_back(leaf);
  }
  Instance inst;
  inst.graph = Graph(next, e);
  inst.dest.push_back({s, t});
  inst.free_starts = blockers;
  inst.budget = budget;
  inst.planar = true;
  check_instance(inst);
  return inst;
}

}  // namespace csmp
