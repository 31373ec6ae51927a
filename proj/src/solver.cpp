#include "csmp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace csmp {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSolved: return "solved";
    case SolveStatus::kNoWithinDepth: return "no";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kCapExceeded: return "cap-exceeded";
  }
  return "?";
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible: return "feasible";
    case Feasibility::kInfeasible: return "infeasible";
    case Feasibility::kUnknownAtCap: return "unknown-at-cap";
  }
  return "?";
}

Configuration initial_configuration(const Instance& inst) {
  Configuration c;
  for (const auto& r : inst.dest) c.dest.push_back(r.start);
  c.blockers = inst.free_starts;
  std::sort(c.blockers.begin(), c.blockers.end());
  return c;
}

bool is_goal(const Instance& inst, const Configuration& c) {
  for (int i = 0; i < inst.dest_count(); ++i) {
    if (c.dest[i] != inst.dest[i].target) return false;
  }
  return true;
}

namespace {

using Packed = std::vector<Vertex>;  // dest positions then sorted blockers

Packed pack(const Configuration& c) {
  Packed p = c.dest;
  p.insert(p.end(), c.blockers.begin(), c.blockers.end());
  return p;
}

Configuration unpack(const Packed& p, int m) {
  return {Packed(p.begin(), p.begin() + m), Packed(p.begin() + m, p.end())};
}

// Calls fn(slot, to, next) for every successor of `state` in (slot, to) order.
template <typename Fn>
void expand(const Graph& g, const Packed& state, int m, std::vector<char>& occupied,
            std::vector<int>& mark, int& stamp, std::vector<Vertex>& queue, Fn&& fn) {
  const int k = static_cast<int>(state.size());
  for (Vertex v : state) occupied[v] = 1;
  std::vector<Vertex> reach;
  for (int slot = 0; slot < k; ++slot) {
    Vertex from = state[slot];
    ++stamp;
    queue.clear();
    queue.push_back(from);
    mark[from] = stamp;
    reach.clear();
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (Vertex y : g.neighbors(queue[h])) {
        if (occupied[y] || mark[y] == stamp) continue;
        mark[y] = stamp;
        queue.push_back(y);
        reach.push_back(y);
      }
    }
    std::sort(reach.begin(), reach.end());
    for (Vertex to : reach) {
      Packed next = state;
      if (slot < m) {
        next[slot] = to;
      } else {
        next[slot] = to;
        std::sort(next.begin() + m, next.end());
      }
      fn(slot, to, std::move(next));
    }
  }
  for (Vertex v : state) occupied[v] = 0;
}

struct PackedHash {
  std::size_t operator()(const Packed& p) const {
    std::size_t h = 1469598103934665603ull;
    for (Vertex v : p) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

std::vector<bool> free_mask(const Graph& g, const std::vector<Vertex>& occupied_by,
                            Vertex mover) {
  std::vector<bool> allowed(g.vertex_count(), true);
  for (Vertex v : occupied_by) allowed[v] = false;
  allowed[mover] = true;
  return allowed;
}

// Rebuilds a labelled schedule from a sequence of canonical states.
Schedule schedule_from_states(const Instance& inst, const std::vector<Packed>& states) {
  Schedule s;
  std::vector<Vertex> pos = inst.starts();
  for (std::size_t i = 1; i < states.size(); ++i) {
    const Packed& a = states[i - 1];
    const Packed& b = states[i];
    std::vector<Vertex> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::vector<Vertex> gone, came;
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(gone));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(came));
    if (gone.size() != 1 || came.size() != 1) throw CsmpError("internal: bad state transition");
    Vertex from = gone[0];
    Vertex to = came[0];
    int robot = static_cast<int>(std::find(pos.begin(), pos.end(), from) - pos.begin());
    auto path = shortest_path(inst.graph, from, to, free_mask(inst.graph, pos, from));
    if (!path) throw CsmpError("internal: no witnessing path");
    s.moves.push_back({robot, *path});
    pos[robot] = to;
  }
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolveResult bfs_search(const Instance& inst, int cap_depth, std::uint64_t state_cap) {
  auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  const Graph& g = inst.graph;
  const int m = inst.dest_count();
  Packed start = pack(initial_configuration(inst));
  auto goal = [&](const Packed& p) {
    for (int i = 0; i < m; ++i)
      if (p[i] != inst.dest[i].target) return false;
    return true;
  };
  auto finish = [&](SolveStatus st) {
    res.status = st;
    res.stats.seconds = seconds_since(t0);
    return res;
  };
  if (goal(start)) return finish(SolveStatus::kSolved);

  std::vector<Packed> states{start};
  std::vector<std::uint32_t> parent{0};
  std::unordered_map<Packed, std::uint32_t, PackedHash> index{{start, 0}};
  std::vector<char> occupied(g.vertex_count(), 0);
  std::vector<int> mark(g.vertex_count(), 0);
  std::vector<Vertex> queue;
  int stamp = 0;
  std::size_t begin = 0;
  std::size_t end = 1;
  for (int depth = 0; depth < cap_depth; ++depth) {
    if (begin == end) return finish(SolveStatus::kInfeasible);
    res.stats.depth = depth + 1;
    std::optional<std::uint32_t> found;
    for (std::size_t i = begin; i < end && !found; ++i) {
      ++res.stats.expanded;
      const Packed cur = states[i];
      expand(g, cur, m, occupied, mark, stamp, queue, [&](int, Vertex, Packed next) {
        if (found) return;
        ++res.stats.generated;
        auto [it, inserted] = index.emplace(next, static_cast<std::uint32_t>(states.size()));
        if (!inserted) return;
        states.push_back(std::move(next));
        parent.push_back(static_cast<std::uint32_t>(i));
        if (goal(states.back())) found = it->second;
      });
      if (states.size() > state_cap) return finish(SolveStatus::kCapExceeded);
    }
    if (found) {
      std::vector<Packed> chain;
      for (std::uint32_t x = *found; x != 0; x = parent[x]) chain.push_back(states[x]);
      chain.push_back(states[0]);
      std::reverse(chain.begin(), chain.end());
      res.schedule = schedule_from_states(inst, chain);
      return finish(SolveStatus::kSolved);
    }
    begin = end;
    end = states.size();
  }
  return finish(begin == end ? SolveStatus::kInfeasible : SolveStatus::kNoWithinDepth);
}

class Iddfs {
 public:
  Iddfs(const Instance& inst, std::uint64_t cap) : inst_(inst), cap_(cap) {
    occupied_.assign(inst.graph.vertex_count(), 0);
    mark_.assign(inst.graph.vertex_count(), 0);
  }

  SolveResult run(int cap_depth) {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    Packed start = pack(initial_configuration(inst_));
    try {
      for (int limit = 0; limit <= cap_depth; ++limit) {
        seen_.clear();
        hit_limit_ = false;
        path_ = {start};
        res.stats.depth = limit;
        if (dfs(start, limit, res.stats)) {
          res.schedule = schedule_from_states(inst_, path_);
          res.status = SolveStatus::kSolved;
          res.stats.seconds = seconds_since(t0);
          return res;
        }
        if (!hit_limit_) {
          res.status = SolveStatus::kInfeasible;
          res.stats.seconds = seconds_since(t0);
          return res;
        }
      }
      res.status = SolveStatus::kNoWithinDepth;
    } catch (const CapExceeded&) {
      res.status = SolveStatus::kCapExceeded;
    }
    res.stats.seconds = seconds_since(t0);
    return res;
  }

 private:
  bool goal(const Packed& p) const {
    for (int i = 0; i < inst_.dest_count(); ++i)
      if (p[i] != inst_.dest[i].target) return false;
    return true;
  }

  bool dfs(const Packed& cur, int remaining, SearchStats& stats) {
    if (goal(cur)) return true;
    if (remaining == 0) {
      hit_limit_ = true;
      return false;
    }
    auto [it, inserted] = seen_.emplace(cur, remaining);
    if (!inserted) {
      if (it->second >= remaining) return false;
      it->second = remaining;
    }
    if (++stats.expanded > cap_) throw CapExceeded("iddfs");
    std::vector<Packed> children;
    expand(inst_.graph, cur, inst_.dest_count(), occupied_, mark_, stamp_, queue_,
           [&](int, Vertex, Packed next) { children.push_back(std::move(next)); });
    stats.generated += children.size();
    for (const Packed& next : children) {
      path_.push_back(next);
      if (dfs(next, remaining - 1, stats)) return true;
      path_.pop_back();
    }
    return false;
  }

  const Instance& inst_;
  std::uint64_t cap_;
  std::unordered_map<Packed, int, PackedHash> seen_;
  std::vector<Packed> path_;
  bool hit_limit_ = false;
  std::vector<char> occupied_;
  std::vector<int> mark_;
  std::vector<Vertex> queue_;
  int stamp_ = 0;
};

}  // namespace

std::vector<std::pair<Move, Configuration>> successors(const Graph& g, const Configuration& c) {
  const int m = static_cast<int>(c.dest.size());
  Packed state = pack(c);
  std::vector<char> occupied(g.vertex_count(), 0);
  std::vector<int> mark(g.vertex_count(), 0);
  std::vector<Vertex> queue;
  int stamp = 0;
  std::vector<std::pair<Move, Configuration>> out;
  expand(g, state, m, occupied, mark, stamp, queue, [&](int slot, Vertex to, Packed next) {
    Vertex from = state[slot];
    auto path = shortest_path(g, from, to, free_mask(g, state, from));
    out.push_back({Move{slot, *path}, unpack(next, m)});
  });
  return out;
}

SolveResult solve_optimal(const Instance& inst, int cap_depth, const SolveOptions& opt) {
  if (opt.algorithm == Algorithm::kIddfs) return Iddfs(inst, opt.state_cap).run(cap_depth);
  return bfs_search(inst, cap_depth, opt.state_cap);
}

SolveResult solve(const Instance& inst, const SolveOptions& opt) {
  return solve_optimal(inst, inst.budget, opt);
}

SolveResult solve_bounded_ball(const Instance& inst, int budget, int lambda,
                               const SolveOptions& opt) {
  if (inst.dest_count() != 1) throw CsmpError("bounded-ball search needs exactly one main robot");
  const Graph& g = inst.graph;
  long long radius = static_cast<long long>(budget) * (lambda + 1);
  auto dist = bfs_distances(g, inst.dest[0].start);
  std::vector<bool> keep(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) keep[v] = dist[v] != kInfinity && dist[v] <= radius;
  if (!keep[inst.dest[0].target]) {
    SolveResult r;
    r.status = SolveStatus::kNoWithinDepth;
    return r;
  }
  auto sub = induced_subgraph(g, keep);
  std::vector<Vertex> back(sub.graph.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (sub.remap[v] >= 0) back[sub.remap[v]] = v;
  Instance local;
  local.graph = sub.graph;
  local.budget = budget;
  local.planar = inst.planar;
  local.dest.push_back({sub.remap[inst.dest[0].start], sub.remap[inst.dest[0].target]});
  std::vector<int> robot_back{0};
  for (std::size_t i = 0; i < inst.free_starts.size(); ++i) {
    Vertex s = inst.free_starts[i];
    if (sub.remap[s] < 0) continue;
    local.free_starts.push_back(sub.remap[s]);
    robot_back.push_back(1 + static_cast<int>(i));
  }
  SolveResult r = solve_optimal(local, budget, opt);
  for (Move& mv : r.schedule.moves) {
    mv.robot = robot_back[mv.robot];
    for (Vertex& v : mv.path) v = back[v];
  }
  return r;
}

Feasibility feasibility(const Instance& inst, int cap_depth, const SolveOptions& opt) {
  switch (solve_optimal(inst, cap_depth, opt).status) {
    case SolveStatus::kSolved: return Feasibility::kFeasible;
    case SolveStatus::kInfeasible: return Feasibility::kInfeasible;
    default: return Feasibility::kUnknownAtCap;
  }
}

}  // namespace csmp
