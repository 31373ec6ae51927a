#include "csmp/representation.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "csmp/solver.hpp"

namespace csmp {

int Representation::vertex_of(Vertex g) const {
  auto it = std::lower_bound(origin.begin(), origin.end(), g);
  return it != origin.end() && *it == g ? static_cast<int>(it - origin.begin()) : -1;
}

Representation extract_representation(const Instance& inst, const Schedule& s) {
  if (auto v = validate(inst, s, {.check_budget = false, .check_targets = false})) {
    throw CsmpError("invalid schedule: " + to_string(*v));
  }
  const Graph gs = traversed_subgraph(inst, s);
  const int q = s.makespan();
  std::set<Vertex> anchors;
  for (Vertex v : important_vertices(inst, s, q)) anchors.insert(v);
  for (Vertex v : stop_vertices(inst, s, q)) anchors.insert(v);

  Representation rep;
  rep.origin.assign(anchors.begin(), anchors.end());
  auto labeling = relabel_terminals(inst);
  rep.h.plain_label = labeling.rooted.plain_label;
  for (int x = 0; x < static_cast<int>(rep.origin.size()); ++x) {
    Vertex g = rep.origin[x];
    if (labeling.rooted.is_root(g)) rep.h.root_labels[x] = labeling.rooted.label_of(g);
  }

  std::map<Edge, Path> first;
  std::set<Edge> used;
  for (Vertex a : rep.origin) {
    for (Vertex b : gs.neighbors(a)) {
      if (used.contains(Edge(a, b))) continue;
      used.insert(Edge(a, b));
      Path p{a};
      Vertex prev = a, cur = b;
      while (true) {
        p.push_back(cur);
        if (anchors.contains(cur)) break;
        auto nb = gs.neighbors(cur);
        if (nb.size() != 2) throw CsmpError("corridor vertex of degree other than two");
        Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
        used.insert(Edge(cur, nxt));
        prev = cur;
        cur = nxt;
      }
      if (p.front() == p.back()) {
        rep.loops.push_back(std::move(p));
        continue;
      }
      Edge he(rep.vertex_of(p.front()), rep.vertex_of(p.back()));
      if (rep.vertex_of(p.front()) != he.u) std::reverse(p.begin(), p.end());
      if (first.contains(he)) {
        rep.parallel.push_back(std::move(p));
      } else {
        first.emplace(he, std::move(p));
      }
    }
  }
  std::vector<Edge> edges;
  for (auto& [e, p] : first) {
    edges.push_back(e);
    rep.corridor.push_back(p);
  }
  rep.h.graph = Graph(static_cast<int>(rep.origin.size()), edges);

  for (const Move& m : s.moves) {
    Move hm{m.robot, {}};
    for (Vertex v : m.path)
      if (int x = rep.vertex_of(v); x >= 0) hm.path.push_back(x);
    rep.moves.push_back(std::move(hm));
  }
  return rep;
}

std::string serialize_representation(const Representation& r) {
  std::ostringstream out;
  out << "REPR 1\n";
  for (Vertex x = 0; x < r.h.graph.vertex_count(); ++x) out << "v " << x << ' ' << r.h.label_of(x) << '\n';
  for (const Edge& e : r.h.graph.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  for (std::size_t i = 0; i < r.moves.size(); ++i) {
    out << "s " << i + 1 << ' ' << r.moves[i].robot;
    for (Vertex x : r.moves[i].path) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

Representation parse_representation(std::istream& in, int plain_label) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  std::map<Vertex, int> labels;
  std::vector<Edge> edges;
  Representation rep;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!header) {
      int version = 0;
      if (tag != "REPR" || !(ls >> version) || version != 1) fail("missing header 'REPR 1'");
      header = true;
      continue;
    }
    if (tag == "v") {
      long id, label;
      if (!(ls >> id >> label) || id < 0 || label < 1) fail("bad vertex line");
      if (labels.contains(id)) fail("duplicate vertex " + std::to_string(id));
      labels[id] = label;
    } else if (tag == "e") {
      long u, v;
      if (!(ls >> u >> v)) fail("bad edge line");
      edges.emplace_back(u, v);
    } else if (tag == "s") {
      long step, robot;
      if (!(ls >> step >> robot) || step != static_cast<long>(rep.moves.size()) + 1) fail("bad move line");
      Move m{static_cast<int>(robot), {}};
      long x;
      while (ls >> x) m.path.push_back(x);
      if (m.path.size() < 2) fail("move needs at least two vertices");
      rep.moves.push_back(std::move(m));
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  if (!header) fail("missing header 'REPR 1'");
  const int n = static_cast<int>(labels.size());
  if (n > 0 && labels.rbegin()->first != n - 1) throw ParseError("vertex ids must be 0..n-1");
  try {
    rep.h.graph = Graph(n, edges);
  } catch (const CsmpError& e) {
    throw ParseError(e.what());
  }
  rep.h.plain_label = plain_label;
  for (auto& [v, l] : labels)
    if (l != plain_label) rep.h.root_labels[v] = l;
  for (const Move& m : rep.moves)
    for (Vertex x : m.path)
      if (x < 0 || x >= n) throw ParseError("move vertex out of range");
  return rep;
}

Representation parse_representation(const std::string& text, int plain_label) {
  std::istringstream in(text);
  return parse_representation(in, plain_label);
}

MinorSearchResult find_realization(const RootedGraph& h, const RootedGraph& g,
                                   std::uint64_t work_cap) {
  MinorSearchOptions opt;
  opt.work_cap = work_cap;
  opt.compatible = [&](Vertex a, Vertex b) {
    bool ra = h.is_root(a), rb = g.is_root(b);
    if (ra != rb) return false;
    return !ra || h.label_of(a) == g.label_of(b);
  };
  return find_topological_minor(h.graph, g.graph, opt);
}

bool is_valid_rooted_realization(const RootedGraph& h, const RootedGraph& g, const Realization& r) {
  if (!is_valid_realization(h.graph, g.graph, r)) return false;
  for (Vertex x = 0; x < h.graph.vertex_count(); ++x) {
    Vertex y = r.vertex_image[x];
    if (h.is_root(x) != g.is_root(y)) return false;
    if (h.is_root(x) && h.label_of(x) != g.label_of(y)) return false;
  }
  return true;
}

Schedule schedule_from_realization(const Instance& inst, const Representation& rep,
                                   const Realization& r, const std::vector<Move>& moves_on_h) {
  const auto labeling = relabel_terminals(inst);
  if (!is_valid_rooted_realization(rep.h, labeling.rooted, r)) {
    throw CsmpError("not a realization of the representation");
  }
  const auto& edges = rep.h.graph.edges();
  Schedule out;
  for (const Move& m : moves_on_h) {
    Move gm{m.robot, {r.vertex_image[m.path.front()]}};
    for (std::size_t i = 1; i < m.path.size(); ++i) {
      Vertex a = m.path[i - 1], b = m.path[i];
      auto it = std::lower_bound(edges.begin(), edges.end(), Edge(a, b));
      if (it == edges.end() || *it != Edge(a, b)) throw CsmpError("move uses a non-edge of H");
      Path p = r.edge_image[it - edges.begin()];
      if (p.front() != r.vertex_image[a]) std::reverse(p.begin(), p.end());
      gm.path.insert(gm.path.end(), p.begin() + 1, p.end());
    }
    out.moves.push_back(std::move(gm));
  }
  return out;
}

namespace {

// Rooted graph candidates: vertices 0..p-1 are the roots (fixed labels),
// p..c-1 plain. Edge sets are bitmasks over the pairs (a, b), a < b.
struct CandidateSpace {
  int c;
  std::vector<Edge> pairs;
  std::vector<std::vector<int>> pair_index;

  explicit CandidateSpace(int c_) : c(c_), pair_index(c_, std::vector<int>(c_, -1)) {
    for (int a = 0; a < c; ++a)
      for (int b = a + 1; b < c; ++b) {
        pair_index[a][b] = pair_index[b][a] = static_cast<int>(pairs.size());
        pairs.emplace_back(a, b);
      }
  }

  std::uint64_t permuted(std::uint64_t mask, const std::vector<int>& perm) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) out |= std::uint64_t{1} << pair_index[perm[pairs[i].u]][perm[pairs[i].v]];
    return out;
  }
};

}  // namespace

ReprSolveResult solve_by_representation(const Instance& inst, int repr_cap, int budget,
                                        std::uint64_t work_cap) {
  const auto labeling = relabel_terminals(inst);
  const RootedGraph& g = labeling.rooted;
  std::vector<Vertex> root_vertex;  // by ascending label
  {
    std::vector<std::pair<int, Vertex>> by_label;
    for (auto& [v, l] : g.root_labels) by_label.emplace_back(l, v);
    std::sort(by_label.begin(), by_label.end());
    for (auto& [l, v] : by_label) root_vertex.push_back(v);
  }
  const int p = static_cast<int>(root_vertex.size());
  auto h_of = [&](Vertex gv) {
    return static_cast<Vertex>(std::find(root_vertex.begin(), root_vertex.end(), gv) - root_vertex.begin());
  };
  ReprSolveResult res;
  std::uint64_t work = 0;
  for (int c = p; c <= repr_cap; ++c) {
    CandidateSpace space(c);
    if (space.pairs.size() > 24) throw CsmpError("representation cap too large");
    std::vector<int> plain(c - p);
    std::iota(plain.begin(), plain.end(), p);
    std::vector<std::vector<int>> perms;
    do {
      std::vector<int> perm(c);
      std::iota(perm.begin(), perm.begin() + p, 0);
      std::copy(plain.begin(), plain.end(), perm.begin() + p);
      perms.push_back(perm);
    } while (std::next_permutation(plain.begin(), plain.end()));

    const std::uint64_t limit = std::uint64_t{1} << space.pairs.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      std::vector<int> deg(c, 0);
      for (std::size_t i = 0; i < space.pairs.size(); ++i)
        if (mask >> i & 1) {
          ++deg[space.pairs[i].u];
          ++deg[space.pairs[i].v];
        }
      if (std::any_of(deg.begin() + p, deg.end(), [](int d) { return d == 0; })) continue;
      bool canonical = true;
      for (const auto& perm : perms)
        if (space.permuted(mask, perm) < mask) {
          canonical = false;
          break;
        }
      if (!canonical) continue;
      ++res.candidates;

      std::vector<Edge> edges;
      for (std::size_t i = 0; i < space.pairs.size(); ++i)
        if (mask >> i & 1) edges.push_back(space.pairs[i]);
      RootedGraph h;
      h.graph = Graph(c, edges);
      h.plain_label = g.plain_label;
      for (int x = 0; x < p; ++x) h.root_labels[x] = g.label_of(root_vertex[x]);

      Instance on_h;
      on_h.graph = h.graph;
      for (const auto& r : inst.dest) on_h.dest.push_back({h_of(r.start), h_of(r.target)});
      for (Vertex v : inst.free_starts) on_h.free_starts.push_back(h_of(v));
      on_h.budget = budget;
      auto sol = solve(on_h);
      if (sol.status == SolveStatus::kCapExceeded) {
        res.status = ReprSolveResult::Status::kCapExceeded;
        return res;
      }
      if (!sol.solved()) continue;
      ++res.feasible;
      auto found = find_realization(h, g, work_cap > work ? work_cap - work : 1);
      work += found.work;
      if (found.status == SearchStatus::kCapExceeded) {
        res.status = ReprSolveResult::Status::kCapExceeded;
        return res;
      }
      if (found.status != SearchStatus::kFound) continue;
      Representation rep;
      rep.h = h;
      res.schedule = schedule_from_realization(inst, rep, *found.realization, sol.schedule.moves);
      res.representation = h;
      res.status = ReprSolveResult::Status::kSolved;
      return res;
    }
  }
  return res;
}

}  // namespace csmp
