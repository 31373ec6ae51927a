#include <algorithm>
#include <random>

#include "csmp/havens.hpp"
#include "csmp/schedule.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmp;

namespace {

// Path 0..len-1 with a pendant leaf on vertex `at`.
Graph path_with_pendant(int len, Vertex at) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(at, len);
  return Graph(len + 1, e);
}

// Centre 0 with `legs` legs of `leg` vertices each.
Graph subdivided_star(int legs, int leg) {
  std::vector<Edge> e;
  int n = 1;
  for (int l = 0; l < legs; ++l) {
    Vertex prev = 0;
    for (int i = 0; i < leg; ++i) {
      e.emplace_back(prev, n);
      prev = n++;
    }
  }
  return Graph(n, e);
}

bool moves_stay_inside(const HavenWitness& h, const std::vector<Move>& moves) {
  for (const Move& m : moves)
    for (std::size_t i = 1; i < m.path.size(); ++i) {
      Edge e(m.path[i - 1], m.path[i]);
      if (!std::binary_search(h.extended_edges.begin(), h.extended_edges.end(), e)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("find_strong_haven") {
  auto inst = fx::make_instance(path_with_pendant(7, 3), {{0, 6}}, {}, 5);
  auto h = find_strong_haven(inst, 0, 6);
  REQUIRE(h.has_value());
  CHECK(h->anchor == 3);
  CHECK(h->third == 7);
  CHECK(h->c1 == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(h->c2 == std::vector<Vertex>{3, 4, 5, 6});
  CHECK(h->c3 == std::vector<Vertex>{3, 7});
  CHECK(h->extended_vertices.size() == 8);
  CHECK(is_valid_haven(inst.graph, *h, inst.robot_count()));
  CHECK_FALSE(is_valid_haven(inst.graph, *h, 4));

  auto plain = fx::make_instance(fx::path_graph(9), {{0, 8}}, {}, 5);
  CHECK_FALSE(find_strong_haven(plain, 0, 6).has_value());
  CHECK_THROWS_AS(find_strong_haven(plain, 0, 2), CsmpError);

  Graph star = subdivided_star(3, 4);
  auto sinst = fx::make_instance(star, {{1, 2}}, {}, 5);
  for (Vertex leaf : {4, 8, 12}) {
    for (int q = 6; q <= 8; ++q) {
      auto w = find_strong_haven(sinst, leaf, q);
      REQUIRE(w.has_value());
      CHECK(w->anchor == 0);
      CHECK(w->path.front() == leaf);
      CHECK(is_valid_haven(star, *w, 1));
    }
    CHECK_FALSE(find_strong_haven(sinst, leaf, 9).has_value());
  }
  CHECK_THROWS_AS(find_strong_haven(sinst, 4, 6, 2), CapExceeded);
}

TEST_CASE("haven_transfer") {
  auto inst = fx::make_instance(path_with_pendant(7, 3), {{1, 5}, {5, 1}}, {}, 50);
  auto h = *find_strong_haven(inst, 0, 6);
  auto none = haven_transfer(inst, h, inst.starts(), inst.starts());
  CHECK(none.moves.empty());

  auto swap = haven_transfer(inst, h, inst.starts(), {5, 1});
  CHECK_FALSE(swap.moves.empty());
  CHECK(moves_stay_inside(h, swap.moves));
  CHECK_FALSE(validate(inst, Schedule{swap.moves}).has_value());
  CHECK(swap.soft_bound == 10 * 4 * 6);
  CHECK(swap.within_soft_bound);

  // free robots only need to cover the target set
  auto blk = fx::make_instance(path_with_pendant(7, 3), {{1, 5}}, {5}, 50);
  auto t = haven_transfer(blk, h, blk.starts(), {5, 1});
  auto end = replay_from(blk.graph, blk.starts(), t.moves).back();
  CHECK(end[0] == 5);
  CHECK(end[1] == 1);
}

TEST_CASE("haven_transfer on random configurations") {
  Graph g = path_with_pendant(9, 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vertex> all(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) all[v] = v;
    std::shuffle(all.begin(), all.end(), rng);
    int k = 1 + rng() % 3;
    int m = 1 + rng() % k;
    std::vector<DestRobot> dest;
    std::vector<Vertex> blockers;
    std::vector<Vertex> target(all.begin() + k, all.begin() + 2 * k);
    for (int r = 0; r < m; ++r) dest.push_back({all[r], target[r]});
    for (int r = m; r < k; ++r) blockers.push_back(all[r]);
    auto inst = fx::make_instance(g, dest, blockers, 1000);
    auto h = find_strong_haven(inst, 0, 8);
    REQUIRE(h.has_value());
    auto res = haven_transfer(inst, *h, inst.starts(), target);
    CHECK(moves_stay_inside(*h, res.moves));
    CHECK_FALSE(validate(inst, Schedule{res.moves}).has_value());
    auto end = replay_from(g, inst.starts(), res.moves).back();
    std::vector<Vertex> want_b(target.begin() + m, target.end()), got_b(end.begin() + m, end.end());
    std::sort(want_b.begin(), want_b.end());
    std::sort(got_b.begin(), got_b.end());
    CHECK(got_b == want_b);
  }
}

TEST_CASE("meta_haven_route") {
  // no havens: one sliding move
  auto open = fx::make_instance(fx::path_graph(6), {{0, 5}}, {}, 5);
  auto r0 = meta_haven_route(open, {}, 0);
  REQUIRE(r0.moves.size() == 1);
  CHECK(r0.moves[0].path == Path{0, 1, 2, 3, 4, 5});

  // one haven on 2..8 with a pendant 11 at 5 and two blockers on the corridor
  std::vector<Edge> e;
  for (int i = 0; i < 10; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(5, 11);
  auto inst = fx::make_instance(Graph(12, e), {{0, 10}}, {4, 6}, 100);
  auto h = find_strong_haven(inst, 2, 6);
  REQUIRE(h.has_value());
  auto route = meta_haven_route(inst, {*h}, 0);
  CHECK_FALSE(validate(inst, Schedule{route.moves}).has_value());
  REQUIRE(route.meta_havens.size() == 1);
  CHECK(route.moves.back().path.back() == 10);

  // two disjoint havens along one corridor
  std::vector<Edge> e2;
  for (int i = 0; i < 20; ++i) e2.emplace_back(i, i + 1);
  e2.emplace_back(5, 21);
  e2.emplace_back(15, 22);
  auto two = fx::make_instance(Graph(23, e2), {{0, 20}}, {5, 14}, 100);
  auto ha = *find_strong_haven(two, 2, 6);
  auto hb = *find_strong_haven(two, 12, 6);
  auto route2 = meta_haven_route(two, {ha, hb}, 0);
  CHECK_FALSE(validate(two, Schedule{route2.moves}).has_value());
  CHECK(route2.meta_havens.size() == 2);
  CHECK(route2.inside_span[0].second < route2.inside_span[1].first);

  // blocker outside every haven
  auto stuck = fx::make_instance(fx::path_graph(6), {{0, 5}}, {3}, 5);
  CHECK_THROWS_AS(meta_haven_route(stuck, {}, 0), CsmpError);
}
