#include <algorithm>

#include "csmp/generators.hpp"
#include "csmp/solver.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csmp;

namespace {

std::vector<std::pair<int, Vertex>> summarize(const std::vector<std::pair<Move, Configuration>>& s) {
  std::vector<std::pair<int, Vertex>> out;
  for (const auto& [m, c] : s) out.emplace_back(m.robot, m.path.back());
  return out;
}

}  // namespace

TEST_CASE("successors") {
  Graph p3 = fx::path_graph(3);
  CHECK(summarize(successors(p3, {{0}, {}})) == std::vector<std::pair<int, Vertex>>{{0, 1}, {0, 2}});
  // main at 0, blocker at 1: only the blocker moves, to 2
  CHECK(summarize(successors(p3, {{0}, {1}})) == std::vector<std::pair<int, Vertex>>{{1, 2}});
  // star: blocker at the centre, main at leaf 1
  auto star = successors(fx::star_graph(3), {{1}, {0}});
  CHECK(summarize(star) == std::vector<std::pair<int, Vertex>>{{1, 2}, {1, 3}});
  CHECK(star[0].second.blockers == std::vector<Vertex>{2});
  // witnessing path is the lexicographically smallest shortest one
  auto c4 = successors(fx::cycle_graph(4), {{0}, {}});
  CHECK(c4[1].first.path == Path{0, 1, 2});
}

TEST_CASE("solve small fixtures") {
  auto c4 = fx::make_instance(fx::cycle_graph(4), {{0, 2}}, {1}, 3);
  auto r = solve(c4);
  REQUIRE(r.solved());
  CHECK(r.schedule.makespan() == 1);
  CHECK(r.schedule.moves[0].path == Path{0, 3, 2});

  auto p5 = fx::make_instance(fx::path_graph(5), {{0, 4}}, {2}, 6);
  CHECK(solve(p5).status == SolveStatus::kInfeasible);
  CHECK(solve_optimal(p5, 50).status == SolveStatus::kInfeasible);
  CHECK(feasibility(p5, 50) == Feasibility::kInfeasible);
  CHECK(feasibility(p5, 1) == Feasibility::kUnknownAtCap);

  auto star = fx::make_instance(fx::star_graph(3), {{1, 2}}, {0}, 5);
  auto rs = solve(star);
  REQUIRE(rs.solved());
  CHECK(rs.schedule.makespan() == 2);
  CHECK_FALSE(validate(star, rs.schedule).has_value());

  auto zero = fx::make_instance(fx::path_graph(2), {{1, 1}}, {}, 0);
  CHECK(solve(zero).solved());
  CHECK(solve(zero).schedule.makespan() == 0);
}

TEST_CASE("2x3 grid with five robots is feasible") {
  // main 0 -> 5 in a 2x3 grid, one free vertex.
  auto inst = fx::make_instance(fx::grid_graph(2, 3), {{0, 5}}, {1, 2, 3, 4}, 30);
  CHECK(feasibility(inst, 30) == Feasibility::kFeasible);
}

TEST_CASE("solver agrees with iddfs and the oracle on random instances") {
  RandomSpec spec;
  spec.max_vertices = 9;
  spec.max_robots = 3;
  spec.max_budget = 5;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = random_instance(spec, seed);
    auto a = solve(inst);
    SolveOptions io;
    io.algorithm = Algorithm::kIddfs;
    auto b = solve(inst, io);
    auto c = oracle_solve(inst, inst.budget);
    CHECK(a.solved() == b.solved());
    CHECK(a.solved() == c.solved());
    if (a.solved()) {
      CHECK(a.schedule.makespan() == b.schedule.makespan());
      CHECK(a.schedule.makespan() == c.schedule.makespan());
      CHECK_FALSE(validate(inst, a.schedule).has_value());
      CHECK_FALSE(validate(inst, b.schedule).has_value());
      CHECK_FALSE(validate(inst, c.schedule).has_value());
    }
  }
}

TEST_CASE("permuting free robots does not change the canonical search") {
  auto a = fx::make_instance(fx::grid_graph(3, 3), {{0, 8}}, {1, 4, 5}, 6);
  auto b = fx::make_instance(fx::grid_graph(3, 3), {{0, 8}}, {5, 1, 4}, 6);
  auto ra = solve(a);
  auto rb = solve(b);
  REQUIRE(ra.solved());
  REQUIRE(rb.solved());
  CHECK(ra.schedule.makespan() == rb.schedule.makespan());
  CHECK(ra.stats.expanded == rb.stats.expanded);
  CHECK(ra.stats.generated == rb.stats.generated);
}

TEST_CASE("adding a blocker never lowers the optimum") {
  RandomSpec spec;
  spec.max_vertices = 8;
  spec.max_robots = 2;
  spec.max_budget = 6;
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    auto inst = random_instance(spec, seed);
    auto base = solve_optimal(inst, 8);
    std::vector<bool> used(inst.graph.vertex_count(), false);
    for (Vertex v : inst.starts()) used[v] = true;
    for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) {
      if (used[v]) continue;
      Instance more = inst;
      more.free_starts.push_back(v);
      if (more.robot_count() >= more.graph.vertex_count()) break;
      auto r = solve_optimal(more, 8);
      if (r.solved()) {
        REQUIRE(base.solved());
        CHECK(base.schedule.makespan() <= r.schedule.makespan());
      }
      break;
    }
  }
}

TEST_CASE("bounded ball") {
  auto c4 = fx::make_instance(fx::cycle_graph(4), {{0, 2}}, {1}, 2);
  auto a = solve_bounded_ball(c4, 2, 2);
  REQUIRE(a.solved());
  CHECK(a.schedule.makespan() == 1);
  CHECK_FALSE(validate(c4, a.schedule).has_value());

  // target far away along a path: outside the ball and unreachable anyway
  auto far = fx::make_instance(fx::path_graph(12), {{0, 11}}, {1}, 2);
  CHECK_FALSE(solve_bounded_ball(far, 2, 0).solved());
  CHECK_FALSE(solve(far).solved());

  auto two = fx::make_instance(fx::cycle_graph(4), {{0, 2}, {1, 3}}, {}, 2);
  CHECK_THROWS_AS(solve_bounded_ball(two, 2, 1), CsmpError);
}

TEST_CASE("state cap is reported") {
  auto inst = fx::make_instance(fx::grid_graph(3, 3), {{0, 8}}, {1, 2, 3, 4}, 10);
  SolveOptions opt;
  opt.state_cap = 5;
  CHECK(solve(inst, opt).status == SolveStatus::kCapExceeded);
}
