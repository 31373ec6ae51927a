#include "csmp/generators.hpp"
#include "csmp/solver.hpp"
#include "csmp/special.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmp;

namespace {

// 3x8 grid: robot A slides along the middle row, then robot B zig-zags
// across it six times.
std::pair<Instance, Schedule> zigzag() {
  auto inst = fx::make_instance(fx::grid_graph(3, 8), {{8, 15}, {1, 6}}, {}, 2);
  Schedule s;
  s.moves.push_back({0, {8, 9, 10, 11, 12, 13, 14, 15}});
  s.moves.push_back({1, {1, 9, 17, 18, 10, 2, 3, 11, 19, 20, 12, 4, 5, 13, 21, 22, 14, 6}});
  return {inst, s};
}

}  // namespace

TEST_CASE("crossing points") {
  CHECK(crossing_points({0, 1, 2}, {3, 1, 4}) == std::vector<Vertex>{1});
  CHECK(crossing_points({0, 1, 2}, {0, 1, 2}).empty());
  // shared segment: divergence points only
  CHECK(crossing_points({0, 1, 2, 3, 4}, {5, 1, 2, 3, 6}) == std::vector<Vertex>{1, 3});
  // endpoint of p on the interior of q
  CHECK(crossing_points({0, 1}, {2, 1, 3}) == std::vector<Vertex>{1});
}

TEST_CASE("corridors") {
  auto [inst, s] = zigzag();
  auto c1 = corridors(inst, s, 1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == Path{8, 9, 10, 11, 12, 13, 14, 15});
  CHECK(corridors(inst, s, 0).empty());
}

TEST_CASE("make_special on a zig-zag") {
  auto [inst, s] = zigzag();
  REQUIRE_FALSE(validate(inst, s).has_value());
  CHECK(max_crossings(inst, s, 2) == 6);
  SpecialStats st;
  auto out = make_special(inst, s, &st);
  CHECK(st.splices >= 1);
  CHECK(max_crossings(inst, out, 2) <= 4);
  CHECK_FALSE(validate(inst, out).has_value());
  CHECK(replay(inst, out) == replay(inst, s));
  CHECK(out.moves[1].path.front() == 1);
  CHECK(out.moves[1].path.back() == 6);
}

TEST_CASE("make_special leaves disjoint moves alone") {
  auto inst = fx::make_instance(fx::grid_graph(3, 3), {{0, 2}, {6, 8}}, {}, 2);
  Schedule s{{{0, {0, 1, 2}}, {1, {6, 7, 8}}}};
  CHECK(make_special(inst, s).moves == s.moves);
}

TEST_CASE("make_special on solver schedules") {
  RandomSpec spec;
  spec.max_vertices = 10;
  spec.max_robots = 3;
  spec.max_budget = 5;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = random_instance(spec, seed);
    auto r = solve(inst);
    if (!r.solved()) continue;
    auto out = make_special(inst, r.schedule);
    CHECK_FALSE(validate(inst, out).has_value());
    CHECK(replay(inst, out) == replay(inst, r.schedule));
    for (int j = 1; j <= out.makespan(); ++j) CHECK(max_crossings(inst, out, j) <= 4);
  }
}
