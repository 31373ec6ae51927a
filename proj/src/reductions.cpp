#include "csmp/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace csmp {

namespace {

// Builds the instance on the kept vertices with the given extra edges (old ids).
ReducedInstance rebuild(const Instance& inst, const std::vector<bool>& removed,
                        const std::vector<Edge>& extra) {
  const Graph& g = inst.graph;
  std::vector<Vertex> remap(g.vertex_count(), -1);
  int next = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!removed[v]) remap[v] = next++;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!removed[e.u] && !removed[e.v]) edges.emplace_back(remap[e.u], remap[e.v]);
  for (const Edge& e : extra) edges.emplace_back(remap[e.u], remap[e.v]);
  ReducedInstance out;
  out.instance.graph = Graph(next, edges);
  for (const auto& r : inst.dest) out.instance.dest.push_back({remap[r.start], remap[r.target]});
  for (Vertex s : inst.free_starts) out.instance.free_starts.push_back(remap[s]);
  out.instance.budget = inst.budget;
  out.instance.planar = inst.planar;
  out.remap = std::move(remap);
  return out;
}

}  // namespace

ReducedInstance shorten_paths(const Instance& inst) {
  const Graph& g = inst.graph;
  const int k = inst.robot_count();
  std::vector<bool> removed(g.vertex_count(), false);
  if (k == 0) return rebuild(inst, removed, {});
  const int keep_len = 2 * k + 1;
  std::vector<Edge> extra;
  std::vector<std::string> log;
  for (const Chain& c : degree2_chains(g, inst.terminal_mask())) {
    if (c.length() <= keep_len) continue;
    const Path& p = c.vertices;
    // keep p[0..2k] and p.back(); drop p[2k+1 .. len-1]
    for (int i = keep_len; i < c.length(); ++i) removed[p[i]] = true;
    extra.emplace_back(p[keep_len - 1], p.back());
    log.push_back("reduced shorten " + std::to_string(p.front()) + " " +
                  std::to_string(p.back()) + " " + std::to_string(c.length()) + " -> " +
                  std::to_string(keep_len));
  }
  auto out = rebuild(inst, removed, extra);
  out.log = std::move(log);
  return out;
}

PruneResult prune_component(const Instance& inst, const std::vector<Vertex>& separator) {
  const Graph& g = inst.graph;
  const int k = inst.robot_count();
  std::vector<bool> in_x(g.vertex_count(), false);
  for (Vertex x : separator) in_x[x] = true;
  std::vector<bool> keep(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) keep[v] = !in_x[v];
  auto terminal = inst.terminal_mask();
  std::map<std::vector<Vertex>, std::vector<int>> groups;
  auto comps = components(g, keep);
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    std::vector<Vertex> nb;
    for (Vertex v : comps[i])
      for (Vertex y : g.neighbors(v))
        if (in_x[y]) nb.push_back(y);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    groups[nb].push_back(i);
  }
  PruneResult res;
  for (const auto& [nb, members] : groups) {
    if (static_cast<int>(members.size()) < 3 * k + 1) continue;
    std::vector<int> clean;
    for (int i : members) {
      bool has_terminal = std::any_of(comps[i].begin(), comps[i].end(),
                                      [&](Vertex v) { return terminal[v]; });
      if (!has_terminal) clean.push_back(i);
    }
    if (static_cast<int>(clean.size()) < k + 1) continue;
    const auto& victim = comps[clean[k]];
    std::vector<bool> removed(g.vertex_count(), false);
    for (Vertex v : victim) removed[v] = true;
    res.applied = true;
    res.reduced = rebuild(inst, removed, {});
    res.certificate = {separator, nb, victim, static_cast<int>(members.size()),
                       static_cast<int>(clean.size())};
    std::string x;
    for (Vertex v : separator) x += (x.empty() ? "" : ",") + std::to_string(v);
    res.reduced.log.push_back("reduced prune X={" + x + "} removed " +
                              std::to_string(victim.size()) + " vertices from group of " +
                              std::to_string(members.size()));
    return res;
  }
  return res;
}

ReducedInstance reduce_bounded_treedepth(const Instance& inst, int d, std::uint64_t work_cap) {
  ReducedInstance cur;
  cur.instance = inst;
  cur.remap.resize(inst.graph.vertex_count());
  for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) cur.remap[v] = v;
  std::uint64_t work = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    const int n = cur.instance.graph.vertex_count();
    std::vector<Vertex> x;
    // Enumerate subsets of size 0..d in lexicographic order.
    std::function<bool(int, int)> rec = [&](int from, int left) -> bool {
      if (++work > work_cap) throw CapExceeded("treedepth reduction: separator enumeration");
      auto r = prune_component(cur.instance, x);
      if (r.applied) {
        for (Vertex& v : cur.remap)
          if (v >= 0) v = r.reduced.remap[v];
        cur.instance = std::move(r.reduced.instance);
        cur.log.insert(cur.log.end(), r.reduced.log.begin(), r.reduced.log.end());
        return true;
      }
      if (left == 0) return false;
      for (Vertex v = from; v < n; ++v) {
        x.push_back(v);
        if (rec(v + 1, left - 1)) return true;
        x.pop_back();
      }
      return false;
    };
    changed = rec(0, d);
  }
  return cur;
}

int exact_treedepth(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 20) throw CsmpError("exact treedepth limited to 20 vertices");
  std::unordered_map<std::uint32_t, int> memo;
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  std::function<int(std::uint32_t)> td = [&](std::uint32_t set) -> int {
    if (set == 0) return 0;
    if (auto it = memo.find(set); it != memo.end()) return it->second;
    // split into components first
    int first = __builtin_ctz(set);
    std::uint32_t comp = 1u << first, frontier = comp;
    while (frontier) {
      int x = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      std::uint32_t nb = adj[x] & set & ~comp;
      comp |= nb;
      frontier |= nb;
    }
    int best;
    if (comp != set) {
      best = std::max(td(comp), td(set & ~comp));
    } else {
      best = n + 1;
      for (std::uint32_t rest = set; rest; rest &= rest - 1) {
        int v = __builtin_ctz(rest);
        best = std::min(best, 1 + td(set & ~(1u << v)));
      }
    }
    memo[set] = best;
    return best;
  };
  return td(n == 32 ? ~0u : (1u << n) - 1);
}

}  // namespace csmp
