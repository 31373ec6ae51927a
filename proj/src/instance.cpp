#include "csmp/instance.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace csmp {

std::vector<Vertex> Instance::starts() const {
  std::vector<Vertex> out;
  out.reserve(robot_count());
  for (const auto& r : dest) out.push_back(r.start);
  out.insert(out.end(), free_starts.begin(), free_starts.end());
  return out;
}

std::vector<bool> Instance::terminal_mask() const {
  std::vector<bool> mask(graph.vertex_count(), false);
  for (const auto& r : dest) {
    mask[r.start] = true;
    mask[r.target] = true;
  }
  for (Vertex s : free_starts) mask[s] = true;
  return mask;
}

void check_instance(const Instance& inst) {
  const int n = inst.graph.vertex_count();
  std::set<Vertex> starts;
  std::set<Vertex> targets;
  auto in_range = [&](Vertex v, const char* what) {
    if (v < 0 || v >= n) throw CsmpError(std::string(what) + " vertex out of range: " +
                                         std::to_string(v));
  };
  for (const auto& r : inst.dest) {
    in_range(r.start, "start");
    in_range(r.target, "target");
    if (!starts.insert(r.start).second) throw CsmpError("duplicate start " + std::to_string(r.start));
    if (!targets.insert(r.target).second) {
      throw CsmpError("duplicate target " + std::to_string(r.target));
    }
  }
  for (Vertex s : inst.free_starts) {
    in_range(s, "start");
    if (!starts.insert(s).second) throw CsmpError("duplicate start " + std::to_string(s));
  }
  if (inst.robot_count() > n) throw CsmpError("more robots than vertices");
  if (inst.budget < 0) throw CsmpError("negative budget");
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

int read_int(std::istringstream& ls, int line, const char* what) {
  long long x;
  if (!(ls >> x)) fail(line, std::string("expected ") + what);
  if (x < 0 || x > 1'000'000'000) fail(line, std::string(what) + " out of range");
  return static_cast<int>(x);
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string raw;
  int line = 0;
  bool header = false;
  int n = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen_edges;
  Instance inst;
  std::set<Vertex> starts;
  std::set<Vertex> targets;
  bool have_budget = false;
  auto vertex = [&](std::istringstream& ls) {
    int v = read_int(ls, line, "vertex");
    if (n < 0) fail(line, "vertex before 'n' line");
    if (v >= n) fail(line, "vertex out of range: " + std::to_string(v));
    return v;
  };
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    if (!header) {
      int version = 0;
      if (key != "CSMP" || !(ls >> version) || version != 1) fail(line, "missing header 'CSMP 1'");
      header = true;
    } else if (key == "n") {
      if (n >= 0) fail(line, "repeated 'n' line");
      n = read_int(ls, line, "vertex count");
    } else if (key == "e") {
      int u = vertex(ls);
      int v = vertex(ls);
      if (u == v) fail(line, "self-loop at vertex " + std::to_string(u));
      if (!seen_edges.insert(Edge(u, v)).second) {
        fail(line, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      }
      edges.emplace_back(u, v);
    } else if (key == "m") {
      int s = vertex(ls);
      int t = vertex(ls);
      if (!starts.insert(s).second) fail(line, "duplicate start " + std::to_string(s));
      if (!targets.insert(t).second) fail(line, "duplicate target " + std::to_string(t));
      if (!inst.free_starts.empty()) fail(line, "destination robot after free robot");
      inst.dest.push_back({s, t});
    } else if (key == "f") {
      int s = vertex(ls);
      if (!starts.insert(s).second) fail(line, "duplicate start " + std::to_string(s));
      inst.free_starts.push_back(s);
    } else if (key == "L") {
      if (have_budget) fail(line, "repeated 'L' line");
      inst.budget = read_int(ls, line, "budget");
      have_budget = true;
    } else if (key == "planar") {
      int p = read_int(ls, line, "planar flag");
      if (p > 1) fail(line, "planar flag must be 0 or 1");
      inst.planar = p == 1;
    } else {
      fail(line, "unknown directive '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) fail(line, "trailing token '" + extra + "'");
  }
  if (!header) fail(line + 1, "missing header 'CSMP 1'");
  if (n < 0) fail(line + 1, "missing 'n' line");
  if (!have_budget) fail(line + 1, "missing 'L' line");
  inst.graph = Graph(n, std::move(edges));
  if (inst.robot_count() > n) fail(line + 1, "more robots than vertices");
  return inst;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "CSMP 1\n";
  os << "n " << inst.graph.vertex_count() << "\n";
  for (const Edge& e : inst.graph.edges()) os << "e " << e.u << ' ' << e.v << "\n";
  for (const auto& r : inst.dest) os << "m " << r.start << ' ' << r.target << "\n";
  for (Vertex s : inst.free_starts) os << "f " << s << "\n";
  os << "L " << inst.budget << "\n";
  os << "planar " << (inst.planar ? 1 : 0) << "\n";
  return os.str();
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsmpError("cannot open " + path);
  return parse_instance(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CsmpError("cannot write " + path);
  out << text;
}

TerminalLabeling relabel_terminals(const Instance& inst) {
  TerminalLabeling out;
  const int m = inst.dest_count();
  const int f = static_cast<int>(inst.free_starts.size());
  out.rooted.graph = inst.graph;
  out.rooted.plain_label = 2 * m + f + 1;
  auto& labels = out.rooted.root_labels;
  for (int i = 0; i < m; ++i) labels[inst.dest[i].start] = i + 1;
  for (int i = 0; i < f; ++i) labels[inst.free_starts[i]] = 2 * m + i + 1;
  for (int i = 0; i < m; ++i) {
    Vertex t = inst.dest[i].target;
    if (labels.contains(t)) {
      out.also_target[t] = i;
    } else {
      labels[t] = m + i + 1;
    }
  }
  return out;
}

}  // namespace csmp
