#include "csmp/schedule.hpp"
#include "csmp/solver.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmp;

namespace {

// a-b-c-d cycle: main robot a -> c, blocker at b.
Instance c4_instance(int budget) {
  return fx::make_instance(fx::cycle_graph(4), {{0, 2}}, {1}, budget);
}

}  // namespace

TEST_CASE("validate the C4 fixture") {
  auto inst = c4_instance(1);
  Schedule ok{{{0, {0, 3, 2}}}};
  CHECK_FALSE(validate(inst, ok).has_value());
  CHECK(ok.makespan() == 1);

  Schedule through{{{0, {0, 1, 2}}}};
  auto v = validate(inst, through);
  REQUIRE(v);
  CHECK(v->step == 1);
  CHECK(v->detail == "path hits stationary robot at 1");

  auto over = validate(c4_instance(0), ok);
  REQUIRE(over);
  CHECK(over->rule == "budget");

  CHECK(validate(inst, Schedule{})->rule == "target");
  CHECK_THROWS_AS(validate(inst, Schedule{{{5, {0, 3}}}}), ScheduleStructureError);
  CHECK_THROWS_AS(validate(inst, Schedule{{{0, {0, 9}}}}), ScheduleStructureError);
}

TEST_CASE("empty schedule on a solved instance with zero budget") {
  auto inst = fx::make_instance(fx::path_graph(2), {{1, 1}}, {}, 0);
  CHECK_FALSE(validate(inst, Schedule{}).has_value());
}

TEST_CASE("schedule text round trip") {
  Schedule s{{{0, {0, 3, 2}}, {1, {1, 0}}}};
  auto text = serialize_schedule(s);
  CHECK(text == "SCHEDULE 1\ns 1 0 0 3 2\ns 2 1 1 0\n");
  CHECK(parse_schedule(text) == s);
  // steps are renumbered
  CHECK(parse_schedule("SCHEDULE 1\ns 4 0 0 3 2\ns 9 1 1 0\n") == s);
  CHECK_THROWS_AS(parse_schedule("SCHEDULE 1\ns 2 0 0 1\ns 2 0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_schedule("s 1 0 0 1\n"), ParseError);
}

TEST_CASE("traversed subgraph") {
  auto inst = fx::make_instance(fx::path_graph(4), {{0, 3}}, {}, 1);
  Schedule one{{{0, {0, 1, 2, 3}}}};
  CHECK(traversed_subgraph(inst, one) == fx::path_graph(4));

  auto inst2 = fx::make_instance(fx::path_graph(4), {{0, 3}}, {}, 2);
  Schedule two{{{0, {0, 1, 2}}, {0, {2, 1}}}};
  CHECK(traversed_subgraph(inst2, two).edge_count() == 2);
  CHECK(traversed_subgraph(inst2, two, 0).edge_count() == 0);
}

TEST_CASE("traversed subgraph of a two-robot two-blocker optimal schedule is connected") {
  // 3x4 grid; red 0 -> 11, blue 3 -> 8, blockers on 5 and 6.
  auto inst = fx::make_instance(fx::grid_graph(3, 4), {{0, 11}, {3, 8}}, {5, 6}, 6);
  auto res = solve(inst);
  REQUIRE(res.solved());
  CHECK_FALSE(validate(inst, res.schedule).has_value());
  Graph gs = traversed_subgraph(inst, res.schedule);
  std::vector<bool> keep(gs.vertex_count());
  for (Vertex v = 0; v < gs.vertex_count(); ++v) keep[v] = gs.degree(v) > 0;
  CHECK(components(gs, keep).size() == 1);
}

TEST_CASE("waiting, intersection and important vertices") {
  // Star centre 0; main at 1 -> 2, blockers at 3 and 4.
  auto inst = fx::make_instance(fx::star_graph(4), {{1, 2}}, {3, 4}, 1);
  Schedule one{{{0, {1, 0, 2}}}};
  CHECK(waiting_vertices(inst, one, 1) == std::vector<Vertex>{2, 3, 4});
  CHECK(waiting_vertices(inst, one, 0) == std::vector<Vertex>{1, 3, 4});
  CHECK(intersection_vertices(inst, one, 1).empty());
  CHECK(important_vertices(inst, one, 1) == std::vector<Vertex>{1, 2, 3, 4});

  auto inst2 = fx::make_instance(fx::star_graph(3), {{1, 2}}, {0}, 2);
  Schedule s{{{1, {0, 3}}, {0, {1, 0, 2}}}};
  REQUIRE_FALSE(validate(inst2, s).has_value());
  CHECK(intersection_vertices(inst2, s, 2) == std::vector<Vertex>{0});
  CHECK(waiting_vertices(inst2, s, 2) == std::vector<Vertex>{1, 2, 3});
  for (int j = 0; j <= 2; ++j) {
    CHECK(static_cast<int>(waiting_vertices(inst2, s, j).size()) <= inst2.robot_count() + j);
  }
}

TEST_CASE("replay reports positions") {
  auto inst = c4_instance(1);
  auto pos = replay(inst, Schedule{{{0, {0, 3, 2}}}});
  REQUIRE(pos.size() == 2);
  CHECK(pos[0] == std::vector<Vertex>{0, 1});
  CHECK(pos[1] == std::vector<Vertex>{2, 1});
}
