#include "csmp/planar.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

namespace csmp {

namespace {

void require_single(const Instance& inst) {
  if (inst.dest_count() != 1) throw CsmpError("planar pipeline needs exactly one destination robot");
}

// 0-1 BFS from src. Vertices with stop[v] set (other than src) get a distance
// but are not expanded, so every path found is internally disjoint from them.
std::vector<int> dist01(const Graph& g, const std::vector<int>& w, Vertex src,
                        const std::vector<bool>& stop = {}) {
  std::vector<int> d(g.vertex_count(), kInfinity);
  std::vector<bool> done(g.vertex_count(), false);
  std::deque<Vertex> dq;
  d[src] = w[src];
  dq.push_back(src);
  while (!dq.empty()) {
    Vertex x = dq.front();
    dq.pop_front();
    if (done[x]) continue;
    done[x] = true;
    if (x != src && !stop.empty() && stop[x]) continue;
    for (Vertex y : g.neighbors(x)) {
      int nd = d[x] + w[y];
      if (nd < d[y]) {
        d[y] = nd;
        if (w[y] == 0)
          dq.push_front(y);
        else
          dq.push_back(y);
      }
    }
  }
  return d;
}

std::vector<bool> mask_of(int n, const std::vector<Vertex>& vs) {
  std::vector<bool> m(n, false);
  for (Vertex v : vs) m[v] = true;
  return m;
}

Path concat(Path a, const Path& b) {
  a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

std::vector<int> occupant(const Instance& inst) {
  std::vector<int> at(inst.graph.vertex_count(), -1);
  for (int r = 0; r < inst.robot_count(); ++r) at[inst.start_of(r)] = r;
  return at;
}

Instance apply_contraction(const Instance& inst, const Contraction& c) {
  Instance out = inst;
  out.graph = c.graph;
  for (auto& d : out.dest) {
    d.start = c.remap[d.start];
    d.target = c.remap[d.target];
  }
  for (Vertex& v : out.free_starts) v = c.remap[v];
  return out;
}

}  // namespace

FreeAnalysis free_analysis(const Instance& inst) {
  require_single(inst);
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  FreeAnalysis fa;
  fa.free.assign(n, true);
  for (int r = 0; r < inst.robot_count(); ++r) fa.free[inst.start_of(r)] = false;
  fa.components = components(g, fa.free);
  fa.component_of.assign(n, -1);
  const Vertex s = inst.dest[0].start, t = inst.dest[0].target;
  for (std::size_t i = 0; i < fa.components.size(); ++i) {
    bool ts = false, tt = false;
    for (Vertex v : fa.components[i]) {
      fa.component_of[v] = static_cast<int>(i);
      if (v == t || g.has_edge(v, t)) tt = true;
      if (g.has_edge(v, s)) ts = true;
    }
    fa.touches_s.push_back(ts);
    fa.touches_t.push_back(tt);
    fa.lambda = std::max(fa.lambda, static_cast<int>(fa.components[i].size()));
  }
  return fa;
}

std::vector<int> blocker_weights(const Instance& inst) {
  std::vector<int> w(inst.graph.vertex_count(), 0);
  for (Vertex v : inst.free_starts) w[v] = 1;
  return w;
}

int blockd(const Instance& inst, Vertex a, Vertex b, const std::vector<bool>& avoid) {
  return weighted_distance(inst.graph, blocker_weights(inst), a, b, avoid);
}

std::optional<Schedule> park_and_slide(const Instance& inst, const Path& route,
                                       const std::vector<Vertex>& parking, int budget,
                                       const std::vector<bool>& allowed) {
  require_single(inst);
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  if (route.empty() || route.front() != inst.dest[0].start || route.back() != inst.dest[0].target)
    return std::nullopt;
  if (!is_simple_path(g, route)) return std::nullopt;
  std::vector<int> at = occupant(inst);
  std::vector<bool> on_route = mask_of(n, route);
  std::vector<int> todo;
  for (std::size_t i = 1; i < route.size(); ++i)
    if (at[route[i]] >= 0) todo.push_back(at[route[i]]);
  if (static_cast<int>(todo.size()) + 1 > budget) return std::nullopt;
  std::vector<Vertex> spots;
  for (Vertex p : parking)
    if (!on_route[p] && (allowed.empty() || allowed[p])) spots.push_back(p);
  std::sort(spots.begin(), spots.end());
  std::vector<Vertex> pos(inst.robot_count());
  for (int r = 0; r < inst.robot_count(); ++r) pos[r] = inst.start_of(r);
  std::vector<bool> done(todo.size(), false);
  Schedule sched;

  std::function<bool(std::size_t)> dfs = [&](std::size_t placed) -> bool {
    if (placed == todo.size()) {
      sched.moves.push_back({0, route});
      if (!validate(inst, sched).has_value()) return true;
      sched.moves.pop_back();
      return false;
    }
    for (std::size_t i = 0; i < todo.size(); ++i) {
      if (done[i]) continue;
      int r = todo[i];
      Vertex from = pos[r];
      std::vector<bool> ok(n, false);
      for (Vertex v = 0; v < n; ++v) ok[v] = at[v] < 0 && (allowed.empty() || allowed[v]);
      ok[from] = true;
      auto d = bfs_distances(g, from, ok);
      Vertex best = -1;
      for (Vertex p : spots)
        if (at[p] < 0 && d[p] != kInfinity && (best < 0 || d[p] < d[best])) best = p;
      if (best < 0) continue;
      auto path = shortest_path(g, from, best, ok);
      if (!path) continue;
      sched.moves.push_back({r, *path});
      at[from] = -1;
      at[best] = r;
      pos[r] = best;
      done[i] = true;
      if (dfs(placed + 1)) return true;
      done[i] = false;
      pos[r] = from;
      at[best] = -1;
      at[from] = r;
      sched.moves.pop_back();
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return sched;
}

ResilienceResult resilient_or_solve(const Instance& inst, const Path& q) {
  require_single(inst);
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  const int ell = inst.budget;
  const Vertex s = inst.dest[0].start, t = inst.dest[0].target;
  auto w = blocker_weights(inst);
  ResilienceResult res;
  const int len = static_cast<int>(q.size());
  if (len - 1 < ell) return res;
  auto ds = dist01(g, w, s);
  auto dt = dist01(g, w, t);
  std::vector<bool> in_q = mask_of(n, q);
  for (int ix = 0; ix < len; ++ix) {
    auto dx = dist01(g, w, q[ix], in_q);
    for (int iy = 0; iy < len; ++iy) {
      if (std::abs(ix - iy) < ell) continue;
      ++res.pairs_checked;
      const Vertex x = q[ix], y = q[iy];
      if (ds[x] == kInfinity || dt[y] == kInfinity || dx[y] == kInfinity) continue;
      if (dx[y] > ell - ds[x] - dt[y] - 1) continue;
      const int lo = std::min(ix, iy), hi = std::max(ix, iy);
      std::vector<bool> interior(n, false);
      std::vector<Vertex> parking;
      for (int i = lo + 1; i < hi; ++i) {
        interior[q[i]] = true;
        parking.push_back(q[i]);
      }
      auto psx = weighted_shortest_path(g, w, s, x, interior);
      auto z = weighted_shortest_path(g, w, x, y, in_q);
      auto pyt = weighted_shortest_path(g, w, y, t, interior);
      if (psx && z && pyt) {
        Path route = erase_loops(concat(concat(*psx, *z), *pyt));
        if (auto sol = park_and_slide(inst, route, parking, ell)) {
          res.solution = std::move(sol);
          res.x = x;
          res.y = y;
          res.detour = *z;
          res.unresolved = false;
          return res;
        }
      }
      res.unresolved = true;
    }
  }
  return res;
}

StructureOutcome structure_lemma(const Instance& inst, const std::vector<Vertex>& c) {
  require_single(inst);
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  const int ell = inst.budget;
  const int size = static_cast<int>(c.size());
  const Vertex s = inst.dest[0].start, t = inst.dest[0].target;
  auto w = blocker_weights(inst);
  std::vector<bool> in_c = mask_of(n, c);
  StructureOutcome out;

  auto b1 = dist01(g, w, s, in_c);
  std::vector<int> b2(n, kInfinity);
  if (in_c[t]) {
    b2[t] = 0;
  } else {
    b2 = dist01(g, w, t, in_c);
  }
  std::vector<Vertex> ps, qs;
  for (Vertex v : c) {
    if (b1[v] <= ell - 1) ps.push_back(v);
    if (b2[v] <= ell - 1) qs.push_back(v);
  }
  std::map<Vertex, std::vector<int>> dist_c;
  for (Vertex p : ps) dist_c[p] = bfs_distances(g, p, in_c);

  struct Pair {
    int sum, dist;
    Vertex p, q;
    auto operator<=>(const Pair&) const = default;
  };
  std::vector<Pair> near, far;
  for (Vertex p : ps)
    for (Vertex q : qs) {
      int sum = b1[p] + b2[q];
      int d = dist_c[p][q];
      if (sum > ell - 1 || d == kInfinity) continue;
      (d <= size - ell ? near : far).push_back({sum, d, p, q});
    }
  std::sort(near.begin(), near.end());

  // disjoint paths through C, parking in the rest of C
  const std::size_t attempts = 64;
  bool near_failed = false;
  for (std::size_t i = 0; i < near.size(); ++i) {
    if (i >= attempts) {
      near_failed = true;
      break;
    }
    const Pair& pr = near[i];
    std::vector<bool> avoid_p = in_c;
    auto psp = weighted_shortest_path(g, w, s, pr.p, avoid_p);
    auto qpq = shortest_path(g, pr.p, pr.q, in_c);
    std::optional<Path> pqt = pr.q == t ? Path{t} : weighted_shortest_path(g, w, pr.q, t, in_c);
    if (!psp || !qpq || !pqt) {
      near_failed = true;
      continue;
    }
    Path route = erase_loops(concat(concat(*psp, *qpq), *pqt));
    std::vector<bool> on_route = mask_of(n, route);
    std::vector<Vertex> parking;
    for (Vertex v : c)
      if (!on_route[v]) parking.push_back(v);
    if (auto sol = park_and_slide(inst, route, parking, ell)) {
      out.kind = StructureOutcome::Kind::kSolved;
      out.solution = std::move(*sol);
      out.p = pr.p;
      out.q = pr.q;
      return out;
    }
    near_failed = true;
  }

  // s-t route avoiding C, parking inside C
  bool joined_possible = false;
  if (!in_c[t]) {
    auto route = weighted_shortest_path(g, w, s, t, in_c);
    if (route) {
      int blockers = 0;
      for (Vertex v : *route) blockers += w[v];
      if (blockers <= ell - 1) {
        joined_possible = true;
        bool touches = false;
        for (Vertex v : c)
          for (Vertex y : g.neighbors(v))
            if (!in_c[y]) touches = true;
        if (touches && blockers > 0) {
          if (auto sol = park_and_slide(inst, *route, c, ell)) {
            out.kind = StructureOutcome::Kind::kSolved;
            out.solution = std::move(*sol);
            return out;
          }
        }
      }
    }
  }

  std::vector<Pair> cand;
  for (const Pair& pr : far)
    if (pr.dist >= size - ell + 1) cand.push_back(pr);
  if (near_failed || joined_possible) return out;  // inconclusive
  if (cand.empty()) {
    out.kind = near.empty() && far.empty() ? StructureOutcome::Kind::kNoSolutionThroughC
                                           : StructureOutcome::Kind::kInconclusive;
    return out;
  }
  auto best = std::min_element(cand.begin(), cand.end(), [](const Pair& a, const Pair& b) {
    return std::tie(b.dist, a.p, a.q) < std::tie(a.dist, b.p, b.q);
  });
  out.kind = StructureOutcome::Kind::kPath;
  out.p = best->p;
  out.q = best->q;
  out.q_prime = *shortest_path(g, best->p, best->q, in_c);
  return out;
}

long clean_premise(int budget, long threshold) {
  if (threshold >= LONG_MAX / std::max(1, budget)) return LONG_MAX;
  return (threshold + 1) * (budget - 1) + 3L * (budget + 2);
}

long default_threshold(int budget) {
  long l6 = 1;
  for (int i = 0; i < 6; ++i) l6 *= budget;
  long e = 14L * budget * budget;
  if (e + 5 >= 62 || l6 > (LONG_MAX >> (e + 5))) return LONG_MAX;
  return 32 * l6 * (1L << e) + 1;
}

CleanOutcome clean_path(const Instance& inst, const std::vector<Vertex>& c, long threshold) {
  require_single(inst);
  const int ell = inst.budget;
  if (static_cast<long>(c.size()) < clean_premise(ell, threshold) ||
      static_cast<int>(c.size()) < 3 * ell)
    throw CsmpError("premise unmet");
  CleanOutcome out;
  auto st = structure_lemma(inst, c);
  switch (st.kind) {
    case StructureOutcome::Kind::kSolved:
      out.kind = CleanOutcome::Kind::kSolved;
      out.solution = std::move(st.solution);
      out.reason = "structure";
      return out;
    case StructureOutcome::Kind::kNoSolutionThroughC:
      out.kind = CleanOutcome::Kind::kIrrelevant;
      out.reason = "no solution through component";
      return out;
    case StructureOutcome::Kind::kInconclusive:
      out.reason = "structure inconclusive";
      return out;
    case StructureOutcome::Kind::kPath: break;
  }
  const Graph& g = inst.graph;
  std::vector<bool> in_c = mask_of(g.vertex_count(), c);
  const Path& qp = st.q_prime;
  if (static_cast<int>(qp.size()) - 1 < static_cast<int>(c.size()) - ell + 1)
    throw CsmpError("structure path shorter than |C| - budget + 1");
  auto deg_c = [&](Vertex v) {
    int d = 0;
    for (Vertex y : g.neighbors(v)) d += in_c[y] ? 1 : 0;
    return d;
  };
  int best_lo = -1, best_len = 0;
  for (int i = 0; i < static_cast<int>(qp.size());) {
    if (deg_c(qp[i]) != 2) {
      ++i;
      continue;
    }
    int j = i;
    while (j < static_cast<int>(qp.size()) && deg_c(qp[j]) == 2) ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_lo = i;
    }
    i = j;
  }
  if (best_lo < 0) {
    out.reason = "no degree-2 stretch";
    return out;
  }
  Path q(qp.begin() + best_lo, qp.begin() + best_lo + best_len);
  auto rs = resilient_or_solve(inst, q);
  if (rs.solution) {
    out.kind = CleanOutcome::Kind::kSolved;
    out.solution = std::move(*rs.solution);
    out.reason = "detour";
    return out;
  }
  if (rs.unresolved) {
    out.reason = "detour without parking";
    return out;
  }
  if (static_cast<long>(q.size()) <= threshold) {
    out.reason = "stretch too short";
    return out;
  }
  out.kind = CleanOutcome::Kind::kWitness;
  out.witness.component = c;
  out.witness.q = q;
  out.witness.u_prime = q.front();
  out.witness.v_prime = q.back();
  out.witness.p = st.p;
  out.witness.q_end = st.q;
  out.witness.threshold = threshold;
  return out;
}

int Roadmap::occupied_count() const {
  return static_cast<int>(std::count(occupied.begin(), occupied.end(), true));
}

std::vector<Roadmap> enumerate_roadmaps(int max_vertices, int max_occupied) {
  std::vector<Roadmap> out;
  for (int c = 2; c <= max_vertices; ++c) {
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < c; ++a)
      for (int b = a + 1; b < c; ++b) slots.emplace_back(a, b);
    const int plain = c - 2;
    for (int occ = 0; occ <= std::min(plain, max_occupied); ++occ) {
      // occupied plain vertices are 2..2+occ-1; permutations inside each group
      std::vector<std::vector<int>> perms;
      std::vector<int> pi(c);
      std::iota(pi.begin(), pi.end(), 0);
      do {
        bool keeps = true;
        for (int x = 2; x < c; ++x)
          if ((x < 2 + occ) != (pi[x] < 2 + occ)) keeps = false;
        if (keeps && pi[0] == 0 && pi[1] == 1) perms.push_back(pi);
      } while (std::next_permutation(pi.begin() + 2, pi.end()));
      const std::uint32_t masks = 1u << slots.size();
      for (std::uint32_t m = 0; m < masks; ++m) {
        bool canonical = true;
        for (const auto& p : perms) {
          std::uint32_t pm = 0;
          for (std::size_t e = 0; e < slots.size(); ++e) {
            if (!(m >> e & 1)) continue;
            int a = p[slots[e].first], b = p[slots[e].second];
            if (a > b) std::swap(a, b);
            auto idx = std::find(slots.begin(), slots.end(), std::make_pair(a, b)) - slots.begin();
            pm |= 1u << idx;
          }
          if (pm < m) {
            canonical = false;
            break;
          }
        }
        if (!canonical) continue;
        std::vector<Edge> edges;
        for (std::size_t e = 0; e < slots.size(); ++e)
          if (m >> e & 1) edges.emplace_back(slots[e].first, slots[e].second);
        Graph g(c, edges);
        if (!is_connected(g)) continue;
        Roadmap r;
        r.graph = std::move(g);
        r.occupied.assign(c, false);
        for (int x = 2; x < 2 + occ; ++x) r.occupied[x] = true;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

int occupied_bound(const Instance& inst, Vertex u, Vertex v) {
  require_single(inst);
  int a = blockd(inst, inst.dest[0].start, u);
  int b = blockd(inst, v, inst.dest[0].target);
  if (a == kInfinity || b == kInfinity) return 0;
  return std::max(0, inst.budget - a - b - 1);
}

namespace {

// Placement pattern of U on Q: which roadmap vertices sit on Q, their order,
// the Q-distance between consecutive ones (0 = large) and the fragments left
// after cutting at large gaps.
struct Signature {
  std::vector<int> order;
  std::vector<int> gap;
  struct Fragment {
    int first = 0, last = 0;           // indices into order
    std::vector<int> offset;           // Q offset of order[first..last]
    std::vector<std::vector<int>> off_q;  // components of U - U*, BFS order
  };
  std::vector<Fragment> fragments;
};

std::vector<Signature> signatures_of(const Roadmap& r, int ell) {
  const Graph& u = r.graph;
  const int c = u.vertex_count();
  std::vector<Signature> out;
  std::vector<int> plain_free;
  for (int x = 2; x < c; ++x)
    if (!r.occupied[x]) plain_free.push_back(x);
  const int pf = static_cast<int>(plain_free.size());
  for (int sub = 0; sub < (1 << pf); ++sub) {
    std::vector<int> mid;
    for (int i = 0; i < pf; ++i)
      if (sub >> i & 1) mid.push_back(plain_free[i]);
    std::vector<bool> star(c, false);
    star[0] = star[1] = true;
    for (int x : mid) star[x] = true;
    // components of U - U*
    std::vector<int> comp(c, -1);
    std::vector<std::vector<int>> comps;
    for (int x = 0; x < c; ++x) {
      if (star[x] || comp[x] >= 0) continue;
      std::vector<int> list{x};
      comp[x] = static_cast<int>(comps.size());
      for (std::size_t i = 0; i < list.size(); ++i)
        for (Vertex y : u.neighbors(list[i]))
          if (!star[y] && comp[y] < 0) {
            comp[y] = comp[x];
            list.push_back(y);
          }
      comps.push_back(list);
    }
    std::sort(mid.begin(), mid.end());
    do {
      std::vector<int> order{0};
      order.insert(order.end(), mid.begin(), mid.end());
      order.push_back(1);
      const int m = static_cast<int>(order.size());
      std::vector<int> rank(c, -1);
      for (int i = 0; i < m; ++i) rank[order[i]] = i;
      bool ok = true;
      for (const Edge& e : u.edges())
        if (star[e.u] && star[e.v] && std::abs(rank[e.u] - rank[e.v]) != 1) ok = false;
      if (!ok) continue;
      std::vector<std::pair<int, int>> span;  // per off-Q component
      for (const auto& k : comps) {
        int lo = m, hi = -1;
        for (int x : k)
          for (Vertex y : u.neighbors(x))
            if (star[y]) {
              lo = std::min(lo, rank[y]);
              hi = std::max(hi, rank[y]);
            }
        span.emplace_back(lo, hi);
      }
      std::vector<int> gap(m - 1, 1);
      std::function<void(int)> rec = [&](int i) {
        if (i == m - 1) {
          for (std::size_t k = 0; k < comps.size(); ++k) {
            int total = 0;
            for (int j = span[k].first; j < span[k].second; ++j) {
              if (gap[j] == 0) return;
              total += gap[j];
            }
            if (total > ell) return;
          }
          Signature sg;
          sg.order = order;
          sg.gap = gap;
          int first = 0;
          for (int j = 0; j <= m - 1; ++j) {
            if (j == m - 1 || gap[j] == 0) {
              Signature::Fragment f;
              f.first = first;
              f.last = j;
              int off = 0;
              for (int a = first; a <= j; ++a) {
                f.offset.push_back(off);
                if (a < j) off += gap[a];
              }
              for (std::size_t k = 0; k < comps.size(); ++k) {
                if (span[k].first < first || span[k].first > j) continue;
                // BFS from the attachment so each vertex has a placed neighbour
                std::vector<int> seq;
                std::vector<bool> seen(c, false);
                std::vector<int> frontier;
                for (int x : comps[k])
                  for (Vertex y : u.neighbors(x))
                    if (star[y] && !seen[x]) {
                      seen[x] = true;
                      frontier.push_back(x);
                    }
                for (std::size_t a = 0; a < frontier.size(); ++a) {
                  seq.push_back(frontier[a]);
                  for (Vertex y : u.neighbors(frontier[a]))
                    if (!star[y] && !seen[y]) {
                      seen[y] = true;
                      frontier.push_back(y);
                    }
                }
                f.off_q.push_back(seq);
              }
              sg.fragments.push_back(std::move(f));
              first = j + 1;
            }
          }
          out.push_back(std::move(sg));
          return;
        }
        for (int d = 0; d <= ell; ++d) {
          if (d == 0 && !u.has_edge(order[i], order[i + 1])) continue;
          gap[i] = d;
          rec(i + 1);
        }
      };
      rec(0);
    } while (std::next_permutation(mid.begin(), mid.end()));
  }
  return out;
}

struct RoadmapLibrary {
  std::vector<Roadmap> maps;
  std::vector<std::vector<Signature>> sigs;
};

std::shared_ptr<const RoadmapLibrary> library(int max_vertices, int max_occupied, int ell) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const RoadmapLibrary>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(max_vertices, max_occupied, ell);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto lib = std::make_shared<RoadmapLibrary>();
  lib->maps = enumerate_roadmaps(max_vertices, max_occupied);
  for (const auto& r : lib->maps) lib->sigs.push_back(signatures_of(r, ell));
  cache[key] = lib;
  return lib;
}

struct HostContext {
  const Instance* inst = nullptr;
  const Path* q = nullptr;
  int iu = 0, iv = 0;
  std::vector<int> qpos;        // -1 off Q
  std::vector<bool> pocket;     // off-Q vertices usable by Γ
  std::vector<bool> occupied;   // blocker start
};

HostContext make_context(const Instance& inst, const Path& q, Vertex u, Vertex v) {
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  HostContext ctx;
  ctx.inst = &inst;
  ctx.q = &q;
  ctx.qpos.assign(n, -1);
  for (int i = 0; i < static_cast<int>(q.size()); ++i) ctx.qpos[q[i]] = i;
  if (ctx.qpos[u] < 0 || ctx.qpos[v] < 0 || ctx.qpos[u] >= ctx.qpos[v])
    throw CsmpError("host test needs u before v on Q");
  ctx.iu = ctx.qpos[u];
  ctx.iv = ctx.qpos[v];
  std::vector<bool> keep(n, true);
  keep[u] = keep[v] = false;
  std::vector<bool> reach(n, false);
  for (Vertex end : {q.front(), q.back()}) {
    if (end == u || end == v) continue;
    auto d = bfs_distances(g, end, keep);
    for (Vertex x = 0; x < n; ++x)
      if (d[x] != kInfinity) reach[x] = true;
  }
  ctx.occupied.assign(n, false);
  for (Vertex b : inst.free_starts) ctx.occupied[b] = true;
  ctx.pocket.assign(n, false);
  for (Vertex x = 0; x < n; ++x)
    ctx.pocket[x] = ctx.qpos[x] < 0 && !reach[x] && x != inst.dest[0].start &&
                    x != inst.dest[0].target;
  return ctx;
}

HostResult run_host(const HostContext& ctx, const Roadmap& r, const std::vector<Signature>& sigs,
                    std::uint64_t work_cap) {
  const Graph& g = ctx.inst->graph;
  const Graph& u = r.graph;
  const int c = u.vertex_count();
  const int ell = ctx.inst->budget;
  const Path& q = *ctx.q;
  HostResult res;
  std::vector<Vertex> img(c, -1);
  std::vector<bool> used(g.vertex_count(), false);

  auto bump = [&]() {
    if (++res.work > work_cap) throw CapExceeded("cap-exceeded: host test work cap");
  };

  std::function<bool(const Signature&, std::size_t, int)> place;

  // matches off-Q component vertices one by one
  std::function<bool(const Signature&, std::size_t, std::size_t, std::size_t, int)> match =
      [&](const Signature& sg, std::size_t f, std::size_t k, std::size_t idx, int next_min) -> bool {
    const auto& frag = sg.fragments[f];
    if (k == frag.off_q.size()) return place(sg, f + 1, next_min);
    const auto& seq = frag.off_q[k];
    if (idx == seq.size()) return match(sg, f, k + 1, 0, next_min);
    const int x = seq[idx];
    Vertex anchor = -1;
    for (Vertex y : u.neighbors(x))
      if (img[y] >= 0) {
        anchor = img[y];
        break;
      }
    if (anchor < 0) return false;
    for (Vertex cand : g.neighbors(anchor)) {
      bump();
      if (used[cand] || !ctx.pocket[cand] || ctx.occupied[cand] != r.occupied[x]) continue;
      bool fits = true;
      for (Vertex y : u.neighbors(x))
        if (img[y] >= 0 && !g.has_edge(cand, img[y])) fits = false;
      if (!fits) continue;
      img[x] = cand;
      used[cand] = true;
      if (match(sg, f, k, idx + 1, next_min)) return true;
      used[cand] = false;
      img[x] = -1;
    }
    return false;
  };

  place = [&](const Signature& sg, std::size_t f, int min_start) -> bool {
    if (f == sg.fragments.size()) return true;
    const auto& frag = sg.fragments[f];
    const int span = frag.offset.back();
    const bool first = f == 0, last = f + 1 == sg.fragments.size();
    int lo = first ? ctx.iu : min_start;
    int hi = last ? ctx.iv - span : ctx.iv - 1 - span;
    if (first) hi = std::min(hi, ctx.iu);
    if (last) lo = std::max(lo, ctx.iv - span);
    if (first && last && ctx.iu + span != ctx.iv) return false;
    for (int st = lo; st <= hi; ++st) {
      bump();
      for (int a = frag.first; a <= frag.last; ++a) {
        Vertex gv = q[st + frag.offset[a - frag.first]];
        img[sg.order[a]] = gv;
        used[gv] = true;
      }
      if (match(sg, f, 0, 0, st + span + ell + 1)) return true;
      for (const auto& seq : frag.off_q)
        for (int x : seq) img[x] = -1;
      for (int a = frag.first; a <= frag.last; ++a) {
        used[img[sg.order[a]]] = false;
        img[sg.order[a]] = -1;
      }
    }
    return false;
  };

  for (const Signature& sg : sigs) {
    std::fill(img.begin(), img.end(), -1);
    std::fill(used.begin(), used.end(), false);
    bool found = false;
    try {
      found = place(sg, 0, ctx.iu);
    } catch (const CapExceeded&) {
      res.status = HostResult::Status::kCapExceeded;
      return res;
    }
    if (!found) continue;
    HostWitness h;
    h.vertex_image = img;
    for (const Edge& e : u.edges()) {
      int pa = ctx.qpos[img[e.u]], pb = ctx.qpos[img[e.v]];
      bool both_star = pa >= 0 && pb >= 0 &&
                       std::find(sg.order.begin(), sg.order.end(), e.u) != sg.order.end() &&
                       std::find(sg.order.begin(), sg.order.end(), e.v) != sg.order.end();
      Path p;
      if (both_star) {
        if (pa <= pb)
          p.assign(q.begin() + pa, q.begin() + pb + 1);
        else {
          p.assign(q.begin() + pb, q.begin() + pa + 1);
          std::reverse(p.begin(), p.end());
        }
      } else {
        p = {img[e.u], img[e.v]};
      }
      h.edge_image.push_back(std::move(p));
    }
    for (int x : sg.order) h.on_q.push_back(img[x]);
    res.status = HostResult::Status::kFound;
    res.host = std::move(h);
    return res;
  }
  return res;
}

}  // namespace

HostResult host_test(const Instance& inst, const Path& q, Vertex u, Vertex v, const Roadmap& u_map,
                     std::uint64_t work_cap) {
  require_single(inst);
  if (u_map.occupied_count() > occupied_bound(inst, u, v))
    throw CsmpError("roadmap has more occupied vertices than the blocker bound allows");
  auto ctx = make_context(inst, q, u, v);
  return run_host(ctx, u_map, signatures_of(u_map, inst.budget), work_cap);
}

bool is_valid_host(const Instance& inst, const Path& q, Vertex u, Vertex v, const Roadmap& u_map,
                   const HostWitness& h) {
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  const Graph& um = u_map.graph;
  if (static_cast<int>(h.vertex_image.size()) != um.vertex_count()) return false;
  if (h.edge_image.size() != um.edges().size()) return false;
  if (h.vertex_image[0] != u || h.vertex_image[1] != v) return false;
  std::vector<int> qpos(n, -1);
  for (int i = 0; i < static_cast<int>(q.size()); ++i) qpos[q[i]] = i;
  if (qpos[u] < 0 || qpos[v] < 0) return false;
  const int iu = qpos[u], iv = qpos[v];
  std::vector<bool> occ(n, false);
  for (Vertex b : inst.free_starts) occ[b] = true;
  std::set<Vertex> images;
  for (int x = 0; x < um.vertex_count(); ++x) {
    Vertex gv = h.vertex_image[x];
    if (gv < 0 || gv >= n || !images.insert(gv).second) return false;
    if (occ[gv] != u_map.occupied[x]) return false;
    if (gv == inst.dest[0].start) return false;
  }
  std::set<Vertex> interior;
  std::set<Vertex> gamma(images);
  for (std::size_t e = 0; e < um.edges().size(); ++e) {
    const Path& p = h.edge_image[e];
    const Edge& ue = um.edges()[e];
    if (p.size() < 2 || p.front() != h.vertex_image[ue.u] || p.back() != h.vertex_image[ue.v])
      return false;
    if (!is_simple_path(g, p)) return false;
    if (p.size() > 2) {
      // must be a contiguous stretch of Q
      for (std::size_t i = 0; i < p.size(); ++i)
        if (qpos[p[i]] < 0) return false;
      for (std::size_t i = 1; i < p.size(); ++i)
        if (std::abs(qpos[p[i]] - qpos[p[i - 1]]) != 1) return false;
      for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (images.contains(p[i]) || !interior.insert(p[i]).second) return false;
    }
    gamma.insert(p.begin(), p.end());
  }
  // separation: Γ stays between u and v on Q or in a pocket cut off by u, v
  std::vector<bool> keep(n, true);
  keep[u] = keep[v] = false;
  std::vector<bool> reach(n, false);
  for (Vertex end : {q.front(), q.back()}) {
    if (end == u || end == v) continue;
    auto d = bfs_distances(g, end, keep);
    for (Vertex x = 0; x < n; ++x)
      if (d[x] != kInfinity) reach[x] = true;
  }
  for (Vertex x : gamma) {
    if (x == u || x == v) continue;
    if (qpos[x] >= 0 && (qpos[x] < iu || qpos[x] > iv)) return false;
    if (reach[x]) return false;
    if (x == inst.dest[0].target) return false;
  }
  return true;
}

MarkResult mark_and_contract(const Instance& inst, const CleanPathWitness& w, int roadmap_cap,
                             std::uint64_t work_cap) {
  require_single(inst);
  const int ell = inst.budget;
  const Path& q = w.q;
  const int len = static_cast<int>(q.size());
  MarkResult res;
  const int reach = ell * ell + 1;
  const int max_vertices = std::min(2 * ell * ell, roadmap_cap);
  std::vector<std::pair<int, int>> z;
  int max_bound = 0;
  std::vector<int> bound;
  for (int a = 0; a <= std::min(reach, len - 1); ++a)
    for (int b = std::max(0, len - 1 - reach); b < len; ++b) {
      if (a >= b) continue;
      z.emplace_back(a, b);
      bound.push_back(occupied_bound(inst, q[a], q[b]));
      max_bound = std::max(max_bound, bound.back());
    }
  res.pairs = z.size();
  auto lib = library(max_vertices, max_bound, ell);
  res.roadmaps = lib->maps.size();
  std::vector<bool> marked(inst.graph.vertex_count(), false);
  marked[inst.dest[0].start] = marked[inst.dest[0].target] = true;
  std::uint64_t work = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    auto ctx = make_context(inst, q, q[z[i].first], q[z[i].second]);
    for (std::size_t m = 0; m < lib->maps.size(); ++m) {
      if (lib->maps[m].occupied_count() > bound[i]) continue;
      if (work > work_cap) {
        res.status = MarkResult::Status::kCapExceeded;
        return res;
      }
      auto hr = run_host(ctx, lib->maps[m], lib->sigs[m], work_cap - work);
      work += hr.work;
      if (hr.status == HostResult::Status::kCapExceeded) {
        res.status = MarkResult::Status::kCapExceeded;
        return res;
      }
      if (hr.status != HostResult::Status::kFound) continue;
      ++res.hosts;
      for (Vertex x : hr.host->on_q) marked[x] = true;
    }
  }
  for (Vertex x : q)
    if (marked[x]) res.marked.push_back(x);
  for (int i = 0; i + 1 < len; ++i) {
    if (marked[q[i]] || marked[q[i + 1]]) continue;
    res.edge = Edge(q[i], q[i + 1]);
    auto c = contract_edge(inst.graph, res.edge);
    res.contracted = apply_contraction(inst, c);
    res.remap = std::move(c.remap);
    res.status = MarkResult::Status::kContracted;
    return res;
  }
  res.status = MarkResult::Status::kNoUnmarkedEdge;
  return res;
}

Schedule lift_schedule(const Graph& g, Edge e, const std::vector<Vertex>& remap, const Schedule& s) {
  const Vertex a = e.u, b = e.v;
  const Vertex merged = remap[a];
  std::vector<Vertex> back(g.vertex_count(), -1);
  for (Vertex x = 0; x < g.vertex_count(); ++x)
    if (x != a && x != b) back[remap[x]] = x;
  Schedule out;
  for (const Move& mv : s.moves) {
    Move m{mv.robot, {}};
    const int len = static_cast<int>(mv.path.size());
    for (int i = 0; i < len; ++i) {
      Vertex w = mv.path[i];
      if (w != merged) {
        m.path.push_back(back[w]);
        continue;
      }
      Vertex enter = a;
      if (i > 0 && !g.has_edge(m.path.back(), a)) enter = b;
      Vertex exit = a;
      if (i + 1 < len) {
        Vertex nxt = back[mv.path[i + 1]];
        exit = g.has_edge(enter, nxt) ? enter : (enter == a ? b : a);
      }
      m.path.push_back(enter);
      if (exit != enter) m.path.push_back(exit);
    }
    out.moves.push_back(std::move(m));
  }
  return out;
}

KernelResult kernelize_and_solve(const Instance& inst, const KernelOptions& opt) {
  require_single(inst);
  if (!inst.planar) throw CsmpError("kernelization needs an instance declared planar");
  if (planarity_sanity(inst.graph) == Planarity::kRejected)
    throw CsmpError("instance fails the planarity sanity check");
  const int ell = inst.budget;
  const long thr = opt.threshold < 0 ? default_threshold(ell) : opt.threshold;
  const int cap = opt.roadmap_cap < 0 ? 2 * ell * ell : opt.roadmap_cap;
  KernelResult res;
  struct Step {
    Graph before;
    Edge e;
    std::vector<Vertex> remap;
  };
  std::vector<Step> steps;
  Instance cur = inst;
  if (opt.keep_history) res.history.push_back(cur);
  int consecutive = 0;

  auto contract = [&](Edge e, Contraction c) {
    res.trace.push_back("contract " + std::to_string(e.u) + " " + std::to_string(e.v));
    steps.push_back({cur.graph, e, c.remap});
    cur = apply_contraction(cur, c);
    ++res.contractions;
    if (opt.keep_history) res.history.push_back(cur);
  };
  auto finish_yes = [&](Schedule sch) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
      sch = lift_schedule(it->before, it->e, it->remap, sch);
    if (auto v = validate(inst, sch)) throw CsmpError("lifted schedule invalid: " + to_string(*v));
    res.status = KernelResult::Status::kYes;
    res.schedule = std::move(sch);
    res.kernel = cur;
    res.trace.push_back("solve yes");
    return res;
  };

  const long premise = clean_premise(ell, thr);
  for (int round = 0; round < opt.max_rounds; ++round) {
    auto fa = free_analysis(cur);
    bool changed = false;
    for (const auto& c : fa.components) {
      if (static_cast<long>(c.size()) < premise || static_cast<int>(c.size()) < 3 * ell) continue;
      auto co = clean_path(cur, c, thr);
      if (co.kind == CleanOutcome::Kind::kSolved) return finish_yes(co.solution);
      if (co.kind == CleanOutcome::Kind::kIrrelevant) {
        const Vertex t = cur.dest[0].target;
        if (std::binary_search(c.begin(), c.end(), t)) {
          res.kernel = cur;
          res.trace.push_back("solve no");
          return res;
        }
        std::optional<Edge> pick;
        for (const Edge& e : cur.graph.edges())
          if (std::binary_search(c.begin(), c.end(), e.u) &&
              std::binary_search(c.begin(), c.end(), e.v)) {
            pick = e;
            break;
          }
        if (!pick) continue;
        contract(*pick, contract_edge(cur.graph, *pick));
        consecutive = 0;
        changed = true;
        break;
      }
      if (co.kind != CleanOutcome::Kind::kWitness) continue;
      auto mr = mark_and_contract(cur, co.witness, cap, opt.work_cap);
      if (mr.status == MarkResult::Status::kCapExceeded) {
        res.status = KernelResult::Status::kCapExceeded;
        res.kernel = cur;
        res.trace.push_back("solve cap-exceeded");
        return res;
      }
      for (Vertex x : mr.marked) res.trace.push_back("mark " + std::to_string(x));
      if (mr.status != MarkResult::Status::kContracted) continue;
      contract(mr.edge, Contraction{mr.contracted.graph, mr.remap});
      res.max_consecutive_contractions = std::max(res.max_consecutive_contractions, ++consecutive);
      changed = true;
      break;
    }
    if (!changed) break;
  }

  auto fa = free_analysis(cur);
  SolveOptions so;
  so.state_cap = opt.state_cap;
  auto r = solve_bounded_ball(cur, ell, fa.lambda, so);
  if (r.solved()) return finish_yes(r.schedule);
  res.kernel = cur;
  if (r.status == SolveStatus::kCapExceeded) {
    res.status = KernelResult::Status::kCapExceeded;
    res.trace.push_back("solve cap-exceeded");
  } else {
    res.trace.push_back("solve no");
  }
  return res;
}

std::vector<Vertex> pending_part(const Instance& inst, const Schedule& s, Vertex u, Vertex v) {
  require_single(inst);
  Graph gs = traversed_subgraph(inst, s);
  const int n = gs.vertex_count();
  std::vector<bool> keep(n, false);
  for (Vertex x = 0; x < n; ++x) keep[x] = gs.degree(x) > 0 && x != u && x != v;
  const Vertex st = inst.dest[0].start, tt = inst.dest[0].target;
  std::vector<Vertex> out{u, v};
  for (const auto& comp : components(gs, keep)) {
    if (std::binary_search(comp.begin(), comp.end(), st) ||
        std::binary_search(comp.begin(), comp.end(), tt))
      continue;
    out.insert(out.end(), comp.begin(), comp.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Schedule canonicalize_solution(const Instance& inst, const Schedule& s, const Path& q, Vertex u,
                               Vertex v) {
  require_single(inst);
  if (auto bad = validate(inst, s)) throw CsmpError("premise unmet: " + to_string(*bad));
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  const int ell = inst.budget;
  std::vector<int> qpos(n, -1);
  for (int i = 0; i < static_cast<int>(q.size()); ++i) qpos[q[i]] = i;
  if (qpos[u] < 0 || qpos[v] < 0 || u == v) throw CsmpError("premise unmet: u, v not on Q");
  Graph gs = traversed_subgraph(inst, s);
  bool meets = false;
  for (Vertex x : q) meets = meets || gs.degree(x) > 0;
  if (!meets) throw CsmpError("premise unmet: schedule does not meet Q");

  auto pend = pending_part(inst, s, u, v);
  std::vector<Vertex> excess;
  for (Vertex x : pend)
    if (qpos[x] < 0) excess.push_back(x);
  if (static_cast<int>(excess.size()) <= ell) return s;

  const int lo = std::min(qpos[u], qpos[v]), hi = std::max(qpos[u], qpos[v]);
  std::vector<bool> in_excess = mask_of(n, excess);
  std::vector<bool> seg(n, false);
  for (int i = lo; i <= hi; ++i) seg[q[i]] = true;
  // Y: the first ell excess vertices in BFS order from the u-v stretch of Q
  std::vector<Vertex> y;
  {
    std::vector<bool> seen = seg;
    std::vector<Vertex> frontier(q.begin() + lo, q.begin() + hi + 1);
    for (std::size_t i = 0; i < frontier.size() && static_cast<int>(y.size()) < ell; ++i)
      for (Vertex nb : g.neighbors(frontier[i])) {
        if (seen[nb] || !in_excess[nb]) continue;
        seen[nb] = true;
        frontier.push_back(nb);
        y.push_back(nb);
        if (static_cast<int>(y.size()) == ell) break;
      }
  }
  // route: s to u and v to t inside G_S away from the pending part, u-v along Q
  auto w = blocker_weights(inst);
  std::vector<bool> avoid(n, false);
  for (Vertex x = 0; x < n; ++x) avoid[x] = gs.degree(x) == 0 || in_excess[x] || seg[x];
  avoid[inst.dest[0].start] = avoid[inst.dest[0].target] = false;
  Vertex a = qpos[u] < qpos[v] ? u : v;
  Vertex b = a == u ? v : u;
  std::optional<Schedule> best;
  for (int orient = 0; orient < 2 && !best; ++orient) {
    auto psa = weighted_shortest_path(g, w, inst.dest[0].start, a, avoid);
    auto pbt = weighted_shortest_path(g, w, b, inst.dest[0].target, avoid);
    if (psa && pbt) {
      Path mid(q.begin() + qpos[a], q.begin() + qpos[b] + 1);
      if (qpos[a] > qpos[b]) {
        mid.assign(q.begin() + qpos[b], q.begin() + qpos[a] + 1);
        std::reverse(mid.begin(), mid.end());
      }
      Path route = erase_loops(concat(concat(*psa, mid), *pbt));
      std::vector<bool> allowed(n, true);
      for (Vertex x : excess) allowed[x] = false;
      for (Vertex x : y) allowed[x] = true;
      best = park_and_slide(inst, route, y, ell, allowed);
    }
    std::swap(a, b);
  }
  if (!best) throw CsmpError("premise unmet: blockers cannot be parked next to Q");
  if (best->makespan() > s.makespan()) throw CsmpError("premise unmet: rewrite is longer");
  return *best;
}

}  // namespace csmp
