#include <algorithm>
#include <random>
#include <set>

#include "csmp/graph.hpp"
#include "csmp/topological_minor.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmp;

TEST_CASE("graph rejects self-loops, duplicates and bad endpoints") {
  CHECK_THROWS_AS(Graph(2, {{0, 0}}), CsmpError);
  CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), CsmpError);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), CsmpError);
}

TEST_CASE("contract_edge") {
  auto tri = fx::cycle_graph(3);
  auto c = contract_edge(tri, Edge(0, 1));
  CHECK(c.graph.vertex_count() == 2);
  CHECK(c.graph.edge_count() == 1);

  auto p = contract_edge(fx::path_graph(4), Edge(1, 2));
  CHECK(p.graph == fx::path_graph(3));
  CHECK(p.remap == std::vector<Vertex>{0, 1, 1, 2});

  auto k4 = contract_edge(fx::complete_graph(4), Edge(2, 3));
  CHECK(k4.graph == fx::cycle_graph(3));

  CHECK_THROWS_WITH(contract_edge(fx::path_graph(4), Edge(0, 2)),
                    doctest::Contains("edge not in graph"));
}

TEST_CASE("contract_edge never grows or creates loops on random graphs") {
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + static_cast<int>(rng() % 8);
    std::vector<Edge> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) e.emplace_back(a, b);
    if (e.empty()) e.emplace_back(0, 1);
    Graph g(n, e);
    Edge pick = g.edges()[rng() % g.edge_count()];
    auto c = contract_edge(g, pick);
    CHECK(c.graph.vertex_count() == n - 1);
    CHECK(c.graph.edge_count() < g.edge_count());
    for (const Edge& x : c.graph.edges()) CHECK(x.u != x.v);
  }
}

TEST_CASE("degree2_chains") {
  SUBCASE("cycle opened at the smallest id") {
    auto chains = degree2_chains(fx::cycle_graph(6), {});
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].closed);
    CHECK(chains[0].vertices.front() == 0);
    CHECK(chains[0].vertices.back() == 0);
    CHECK(chains[0].length() == 6);
  }
  SUBCASE("forbidden vertex splits a path") {
    std::vector<bool> forbidden(5, false);
    forbidden[2] = true;
    auto chains = degree2_chains(fx::path_graph(5), forbidden);
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].vertices == Path{0, 1, 2});
    CHECK(chains[1].vertices == Path{2, 3, 4});
  }
  SUBCASE("star has none") { CHECK(degree2_chains(fx::star_graph(3), {}).empty()); }
  SUBCASE("partition of eligible vertices on random graphs") {
    std::mt19937 rng(11);
    for (int it = 0; it < 200; ++it) {
      int n = 3 + static_cast<int>(rng() % 10);
      std::vector<Edge> e;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (rng() % 4 == 0) e.emplace_back(a, b);
      Graph g(n, e);
      std::vector<bool> forbidden(n);
      for (int v = 0; v < n; ++v) forbidden[v] = rng() % 5 == 0;
      std::multiset<Vertex> internal;
      for (const auto& c : degree2_chains(g, forbidden)) {
        CHECK(c.length() >= 2);
        for (Vertex v : c.internal()) internal.insert(v);
        if (c.closed && (g.degree(c.vertices.front()) == 2 && !forbidden[c.vertices.front()])) {
          internal.insert(c.vertices.front());
        }
      }
      for (Vertex v = 0; v < n; ++v) {
        bool eligible = g.degree(v) == 2 && !forbidden[v];
        CHECK(internal.count(v) == (eligible ? 1u : 0u));
      }
    }
  }
}

TEST_CASE("weighted_distance") {
  CHECK(weighted_distance(fx::path_graph(1), {0}, 0, 0) == 0);
  CHECK(weighted_distance(fx::path_graph(3), {0, 1, 0}, 0, 2) == 1);
  CHECK(weighted_distance(Graph(2, {}), {0, 0}, 0, 1) == kInfinity);

  auto grid = fx::grid_graph(3, 3);
  std::vector<int> w{0, 0, 0, 1, 1, 1, 0, 0, 0};
  int brute = kInfinity;
  fx::all_simple_paths(grid, 0, 8, [&](const Path& p) {
    int c = 0;
    for (Vertex x : p) c += w[x];
    brute = std::min(brute, c);
  });
  CHECK(brute == 1);
  CHECK(weighted_distance(grid, w, 0, 8) == 1);
  auto path = weighted_shortest_path(grid, w, 0, 8);
  REQUIRE(path);
  CHECK(is_simple_path(grid, *path));
}

TEST_CASE("weighted_distance is symmetric and subadditive on small graphs") {
  std::mt19937 rng(3);
  for (int it = 0; it < 60; ++it) {
    int n = 3 + static_cast<int>(rng() % 7);
    std::vector<Edge> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) e.emplace_back(a, b);
    Graph g(n, e);
    std::vector<int> w(n);
    for (auto& x : w) x = static_cast<int>(rng() % 2);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b) {
        int dab = weighted_distance(g, w, a, b);
        CHECK(dab == weighted_distance(g, w, b, a));
        int brute = kInfinity;
        fx::all_simple_paths(g, a, b, [&](const Path& p) {
          int c = 0;
          for (Vertex x : p) c += w[x];
          brute = std::min(brute, c);
        });
        CHECK(dab == brute);
        for (Vertex c = 0; c < n; ++c) {
          int dac = weighted_distance(g, w, a, c);
          int dcb = weighted_distance(g, w, c, b);
          if (dac != kInfinity && dcb != kInfinity) CHECK(dab <= dac + dcb);
        }
      }
  }
}

TEST_CASE("components") {
  auto g = fx::path_graph(3);
  CHECK(components(g, {true, true, true}).size() == 1);
  auto two = components(g, {true, false, true});
  CHECK(two == std::vector<std::vector<Vertex>>{{0}, {2}});
  // 2x3 grid with the middle column removed.
  auto grid = fx::grid_graph(2, 3);
  auto parts = components(grid, {true, false, true, true, false, true});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].size() == 2);
  CHECK(parts[1].size() == 2);
}

TEST_CASE("components partition keep on random graphs") {
  std::mt19937 rng(5);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + static_cast<int>(rng() % 10);
    std::vector<Edge> e;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 4 == 0) e.emplace_back(a, b);
    Graph g(n, e);
    std::vector<bool> keep(n);
    for (int v = 0; v < n; ++v) keep[v] = rng() % 3 != 0;
    auto comps = components(g, keep);
    std::vector<int> which(n, -1);
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
      for (Vertex v : comps[i]) {
        CHECK(which[v] == -1);
        which[v] = i;
      }
    for (Vertex v = 0; v < n; ++v) CHECK((which[v] >= 0) == static_cast<bool>(keep[v]));
    for (const Edge& x : g.edges())
      if (keep[x.u] && keep[x.v]) CHECK(which[x.u] == which[x.v]);
  }
}

TEST_CASE("planarity_sanity") {
  CHECK(planarity_sanity(fx::complete_graph(5)) == Planarity::kRejected);
  CHECK(planarity_sanity(fx::grid_graph(4, 4)) == Planarity::kPlausible);
  std::vector<Edge> e;
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) e.emplace_back(a, b);
  CHECK(planarity_sanity(Graph(6, e)) == Planarity::kRejected);
  // Petersen graph: 15 edges on 10 vertices passes the edge bound but has a
  // K3,3 subdivision.
  Graph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                      {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
  CHECK(planarity_sanity(petersen) == Planarity::kRejected);
  CHECK(planarity_sanity(fx::grid_graph(3, 3)) == Planarity::kPlausible);
}

TEST_CASE("erase_loops") {
  CHECK(erase_loops({1, 2, 3, 2, 4}) == Path{1, 2, 4});
  CHECK(erase_loops({1, 2, 1}) == Path{1});
  CHECK(erase_loops({5, 6, 7}) == Path{5, 6, 7});
  CHECK(erase_loops({1, 2, 3, 4, 2, 5, 3, 6}) == Path{1, 2, 5, 3, 6});
}

TEST_CASE("shortest_path is lexicographically smallest") {
  auto c4 = fx::cycle_graph(4);
  CHECK(*shortest_path(c4, 0, 2) == Path{0, 1, 2});
  std::vector<bool> allowed{true, false, true, true};
  CHECK(*shortest_path(c4, 0, 2, allowed) == Path{0, 3, 2});
}
