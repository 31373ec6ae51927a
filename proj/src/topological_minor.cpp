#include "csmp/topological_minor.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace csmp {

namespace {

class MinorSearch {
 public:
  MinorSearch(const Graph& h, const Graph& g, const MinorSearchOptions& opt)
      : h_(h), g_(g), opt_(opt) {}

  MinorSearchResult run() {
    MinorSearchResult res;
    const int hn = h_.vertex_count();
    if (hn > g_.vertex_count() || h_.edge_count() > g_.edge_count()) {
      res.status = SearchStatus::kNone;
      return res;
    }
    candidates_.assign(hn, {});
    for (Vertex x = 0; x < hn; ++x) {
      for (Vertex y = 0; y < g_.vertex_count(); ++y) {
        if (g_.degree(y) < h_.degree(x)) continue;
        if (opt_.compatible && !opt_.compatible(x, y)) continue;
        candidates_[x].push_back(y);
      }
      if (candidates_[x].empty()) return res;
    }
    // Most constrained vertices first; edges are routed as soon as both
    // endpoints have images.
    order_.resize(hn);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      return candidates_[a].size() < candidates_[b].size();
    });
    std::vector<int> rank(hn);
    for (int i = 0; i < hn; ++i) rank[order_[i]] = i;
    edges_after_.assign(hn, {});
    const auto& he = h_.edges();
    for (int i = 0; i < static_cast<int>(he.size()); ++i) {
      int r = std::max(rank[he[i].u], rank[he[i].v]);
      edges_after_[r].push_back(i);
    }

    image_.assign(hn, -1);
    paths_.assign(he.size(), {});
    taken_.assign(g_.vertex_count(), false);
    try {
      if (assign(0)) {
        res.status = SearchStatus::kFound;
        res.realization = Realization{image_, paths_};
      }
    } catch (const CapExceeded&) {
      res.status = SearchStatus::kCapExceeded;
    }
    res.work = work_;
    return res;
  }

 private:
  void tick() {
    if (++work_ > opt_.work_cap) throw CapExceeded("realization search");
  }

  bool increasing_ok(Vertex x, Vertex y) const {
    for (auto [a, b] : opt_.increasing) {
      if (a == x && image_[b] >= 0 && !(y < image_[b])) return false;
      if (b == x && image_[a] >= 0 && !(image_[a] < y)) return false;
    }
    return true;
  }

  bool assign(int idx) {
    if (idx == static_cast<int>(order_.size())) return true;
    Vertex x = order_[idx];
    for (Vertex y : candidates_[x]) {
      tick();
      if (taken_[y] || !increasing_ok(x, y)) continue;
      image_[x] = y;
      taken_[y] = true;
      if (route(idx, 0)) return true;
      taken_[y] = false;
      image_[x] = -1;
    }
    return false;
  }

  bool route(int idx, std::size_t k) {
    const auto& list = edges_after_[idx];
    if (k == list.size()) return assign(idx + 1);
    int ei = list[k];
    Edge e = h_.edges()[ei];
    Vertex from = image_[e.u];
    Vertex to = image_[e.v];
    Path cur{from};
    return extend(idx, k, ei, to, cur);
  }

  bool reachable(Vertex from, Vertex to) {
    std::vector<bool> seen(g_.vertex_count(), false);
    std::queue<Vertex> q;
    q.push(from);
    seen[from] = true;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : g_.neighbors(x)) {
        if (y == to) return true;
        if (seen[y] || taken_[y]) continue;
        seen[y] = true;
        q.push(y);
      }
    }
    return false;
  }

  bool extend(int idx, std::size_t k, int ei, Vertex to, Path& cur) {
    tick();
    Vertex last = cur.back();
    if (!reachable(last, to)) return false;
    for (Vertex y : g_.neighbors(last)) {
      if (y == to) {
        cur.push_back(y);
        paths_[ei] = cur;
        if (route(idx, k + 1)) return true;
        cur.pop_back();
        continue;
      }
      if (taken_[y]) continue;
      taken_[y] = true;
      cur.push_back(y);
      if (extend(idx, k, ei, to, cur)) return true;
      cur.pop_back();
      taken_[y] = false;
    }
    return false;
  }

  const Graph& h_;
  const Graph& g_;
  const MinorSearchOptions& opt_;
  std::vector<std::vector<Vertex>> candidates_;
  std::vector<Vertex> order_;
  std::vector<std::vector<int>> edges_after_;
  std::vector<Vertex> image_;
  std::vector<Path> paths_;
  std::vector<bool> taken_;  // images and internal path vertices
  std::uint64_t work_ = 0;
};

}  // namespace

MinorSearchResult find_topological_minor(const Graph& h, const Graph& g,
                                         const MinorSearchOptions& options) {
  return MinorSearch(h, g, options).run();
}

bool is_valid_realization(const Graph& h, const Graph& g, const Realization& r) {
  const int hn = h.vertex_count();
  if (static_cast<int>(r.vertex_image.size()) != hn) return false;
  if (r.edge_image.size() != h.edges().size()) return false;
  std::vector<int> owner(g.vertex_count(), -1);  // -2 = image, >=0 = internal of edge
  for (Vertex x = 0; x < hn; ++x) {
    Vertex y = r.vertex_image[x];
    if (!g.contains(y) || owner[y] != -1) return false;
    owner[y] = -2;
  }
  for (std::size_t i = 0; i < h.edges().size(); ++i) {
    const Edge& e = h.edges()[i];
    const Path& p = r.edge_image[i];
    if (p.size() < 2 || !is_simple_path(g, p)) return false;
    Vertex a = r.vertex_image[e.u];
    Vertex b = r.vertex_image[e.v];
    if (!((p.front() == a && p.back() == b) || (p.front() == b && p.back() == a))) return false;
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      if (owner[p[j]] != -1) return false;
      owner[p[j]] = static_cast<int>(i);
    }
  }
  return true;
}

}  // namespace csmp
