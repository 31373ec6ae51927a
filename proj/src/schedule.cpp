#include "csmp/schedule.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace csmp {

namespace {

void check_structure(const Graph& g, int robots, const Move& m, int step) {
  if (m.robot < 0 || m.robot >= robots) {
    throw ScheduleStructureError("step " + std::to_string(step) + ": unknown robot " +
                                 std::to_string(m.robot));
  }
  for (Vertex v : m.path) {
    if (!g.contains(v)) {
      throw ScheduleStructureError("step " + std::to_string(step) + ": unknown vertex " +
                                   std::to_string(v));
    }
  }
}

// Checks one move against the current occupancy; returns the violated rule.
std::optional<Violation> check_move(const Graph& g, const std::vector<int>& owner,
                                    const std::vector<Vertex>& pos, const Move& m, int step) {
  auto bad = [&](std::string rule, std::string detail) {
    return Violation{step, std::move(rule), std::move(detail)};
  };
  if (m.path.size() < 2) return bad("empty-move", "path has no edge");
  if (m.path.front() != pos[m.robot]) {
    return bad("wrong-origin", "robot " + std::to_string(m.robot) + " is at " +
                                   std::to_string(pos[m.robot]) + ", path starts at " +
                                   std::to_string(m.path.front()));
  }
  if (!is_simple_path(g, m.path)) return bad("not-a-path", "path is not a simple path in G");
  for (std::size_t i = 1; i < m.path.size(); ++i) {
    Vertex v = m.path[i];
    if (owner[v] >= 0) {
      return bad("blocked", "path hits stationary robot at " + std::to_string(v));
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const Instance& inst, const Schedule& s,
                                  const ValidationOptions& opt) {
  const Graph& g = inst.graph;
  const int k = inst.robot_count();
  for (int i = 0; i < s.makespan(); ++i) check_structure(g, k, s.moves[i], i + 1);
  std::vector<Vertex> pos = inst.starts();
  std::vector<int> owner(g.vertex_count(), -1);
  for (int r = 0; r < k; ++r) owner[pos[r]] = r;
  for (int i = 0; i < s.makespan(); ++i) {
    const Move& m = s.moves[i];
    if (auto v = check_move(g, owner, pos, m, i + 1)) return v;
    owner[pos[m.robot]] = -1;
    pos[m.robot] = m.path.back();
    owner[pos[m.robot]] = m.robot;
  }
  if (opt.check_budget && s.makespan() > inst.budget) {
    return Violation{s.makespan(), "budget", "makespan " + std::to_string(s.makespan()) +
                                                 " exceeds budget " + std::to_string(inst.budget)};
  }
  if (opt.check_targets) {
    for (int r = 0; r < inst.dest_count(); ++r) {
      if (pos[r] != inst.dest[r].target) {
        return Violation{0, "target", "robot " + std::to_string(r) + " ends at " +
                                          std::to_string(pos[r]) + " instead of " +
                                          std::to_string(inst.dest[r].target)};
      }
    }
  }
  return std::nullopt;
}

std::string to_string(const Violation& v) {
  return "step " + std::to_string(v.step) + ": " + v.rule + ": " + v.detail;
}

std::vector<std::vector<Vertex>> replay_from(const Graph& g, std::vector<Vertex> pos,
                                             const std::vector<Move>& moves) {
  const int k = static_cast<int>(pos.size());
  std::vector<int> owner(g.vertex_count(), -1);
  for (int r = 0; r < k; ++r) {
    if (!g.contains(pos[r]) || owner[pos[r]] >= 0) throw CsmpError("bad start placement");
    owner[pos[r]] = r;
  }
  std::vector<std::vector<Vertex>> out{pos};
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Move& m = moves[i];
    int step = static_cast<int>(i) + 1;
    check_structure(g, k, m, step);
    if (auto v = check_move(g, owner, pos, m, step)) throw CsmpError(to_string(*v));
    owner[pos[m.robot]] = -1;
    pos[m.robot] = m.path.back();
    owner[pos[m.robot]] = m.robot;
    out.push_back(pos);
  }
  return out;
}

std::vector<std::vector<Vertex>> replay(const Instance& inst, const Schedule& s) {
  return replay_from(inst.graph, inst.starts(), s.moves);
}

Schedule parse_schedule(std::istream& in) {
  std::string raw;
  int line = 0;
  bool header = false;
  long long last_step = 0;
  Schedule s;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw ParseError("line " + std::to_string(line) + ": " + msg);
    };
    if (!header) {
      int version = 0;
      if (key != "SCHEDULE" || !(ls >> version) || version != 1) {
        fail("missing header 'SCHEDULE 1'");
      }
      header = true;
      continue;
    }
    if (key != "s") fail("unknown directive '" + key + "'");
    long long step;
    int robot;
    if (!(ls >> step >> robot)) fail("expected time step and robot id");
    if (step <= last_step) fail("time steps must be strictly increasing");
    last_step = step;
    Move m{robot, {}};
    long long v;
    while (ls >> v) m.path.push_back(static_cast<Vertex>(v));
    if (!ls.eof()) fail("bad vertex token");
    if (m.path.size() < 2) fail("move path needs at least two vertices");
    s.moves.push_back(std::move(m));
  }
  if (!header) throw ParseError("line 1: missing header 'SCHEDULE 1'");
  return s;
}

Schedule parse_schedule(const std::string& text) {
  std::istringstream in(text);
  return parse_schedule(in);
}

std::string serialize_schedule(const Schedule& s) {
  std::ostringstream os;
  os << "SCHEDULE 1\n";
  for (int i = 0; i < s.makespan(); ++i) {
    os << "s " << i + 1 << ' ' << s.moves[i].robot;
    for (Vertex v : s.moves[i].path) os << ' ' << v;
    os << "\n";
  }
  return os.str();
}

Schedule read_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsmpError("cannot open " + path);
  return parse_schedule(in);
}

Graph traversed_subgraph(const Instance& inst, const Schedule& s, int j) {
  if (j < 0 || j > s.makespan()) j = s.makespan();
  std::set<Edge> edges;
  for (int i = 0; i < j; ++i) {
    const Path& p = s.moves[i].path;
    for (std::size_t a = 1; a < p.size(); ++a) edges.emplace(p[a - 1], p[a]);
  }
  return Graph(inst.graph.vertex_count(), {edges.begin(), edges.end()});
}

std::vector<Vertex> waiting_vertices(const Instance& inst, const Schedule& s, int j) {
  auto pos = replay(inst, s);
  j = std::clamp(j, 0, s.makespan());
  std::set<Vertex> out(pos[j].begin(), pos[j].end());
  for (int t = 1; t <= j; ++t) {
    for (int r = 0; r < inst.robot_count(); ++r) {
      if (pos[t - 1][r] == pos[t][r]) out.insert(pos[t][r]);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Vertex> intersection_vertices(const Instance& inst, const Schedule& s, int j) {
  Graph gs = traversed_subgraph(inst, s, j);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < gs.vertex_count(); ++v) {
    if (gs.degree(v) >= 3) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> important_vertices(const Instance& inst, const Schedule& s, int j) {
  std::set<Vertex> out;
  auto mask = inst.terminal_mask();
  for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) {
    if (mask[v]) out.insert(v);
  }
  for (Vertex v : waiting_vertices(inst, s, j)) out.insert(v);
  for (Vertex v : intersection_vertices(inst, s, j)) out.insert(v);
  return {out.begin(), out.end()};
}

std::vector<Vertex> stop_vertices(const Instance& inst, const Schedule& s, int j) {
  auto pos = replay(inst, s);
  j = std::clamp(j, 0, s.makespan());
  std::set<Vertex> out;
  for (int t = 0; t <= j; ++t) out.insert(pos[t].begin(), pos[t].end());
  return {out.begin(), out.end()};
}

}  // namespace csmp
