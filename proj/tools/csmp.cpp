// Command-line front end. Exit codes: 0 yes/valid/ok, 1 no/invalid, 2 error or cap.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csmp/generators.hpp"
#include "csmp/planar.hpp"
#include "csmp/reductions.hpp"
#include "csmp/representation.hpp"
#include "csmp/schedule.hpp"
#include "csmp/solver.hpp"

using namespace csmp;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Point> parse_points(const std::string& s) {
  std::string flat = s;
  std::replace(flat.begin(), flat.end(), ';', ' ');
  std::replace(flat.begin(), flat.end(), '/', ' ');
  std::vector<Point> pts;
  for (const auto& p : split(flat, ' ')) {
    auto xy = split(p, ',');
    if (xy.size() != 2) throw CsmpError("bad point '" + p + "', expected x,y");
    pts.emplace_back(std::stoi(xy[0]), std::stoi(xy[1]));
  }
  return pts;
}

std::vector<DestRobot> parse_robots(const std::string& s) {
  std::vector<DestRobot> out;
  for (const auto& r : split(s, ',')) {
    auto st = split(r, ':');
    if (st.size() != 2) throw CsmpError("bad robot '" + r + "', expected start:target");
    out.push_back({std::stoi(st[0]), std::stoi(st[1])});
  }
  return out;
}

std::vector<Vertex> parse_vertices(const std::string& s) {
  std::vector<Vertex> out;
  for (const auto& v : split(s, ',')) out.push_back(std::stoi(v));
  return out;
}

int report_solve(const SolveResult& r, const std::string& out) {
  switch (r.status) {
    case SolveStatus::kSolved:
      emit(out, serialize_schedule(r.schedule));
      if (!out.empty() && out != "-") std::cout << "YES " << r.schedule.makespan() << "\n";
      return kYes;
    case SolveStatus::kCapExceeded:
      std::cerr << "cap-exceeded: state cap reached after " << r.stats.expanded << " states\n";
      return kError;
    default:
      std::cout << "NO\n";
      return kNo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinated sliding motion planning toolkit"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker count (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  std::string in_path, sched_path, out_path, repr_path;
  std::optional<int> budget;
  std::uint64_t state_cap = 10'000'000;

  auto* solve_cmd = app.add_subcommand("solve", "minimum-makespan schedule within the budget");
  std::string algo = "bfs";
  bool ball = false;
  solve_cmd->add_option("-i,--input", in_path)->required();
  solve_cmd->add_option("--budget", budget);
  solve_cmd->add_option("--algo", algo)->check(CLI::IsMember({"bfs", "iddfs"}));
  solve_cmd->add_flag("--ball", ball, "restrict to the ball around the main robot");
  solve_cmd->add_option("--state-cap", state_cap);
  solve_cmd->add_option("-o,--output", out_path);

  auto* validate_cmd = app.add_subcommand("validate", "check a schedule against an instance");
  validate_cmd->add_option("-i,--input", in_path)->required();
  validate_cmd->add_option("-s,--schedule", sched_path)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "apply reduction rules and print the trace");
  std::string rules = "shorten";
  long clean_threshold = -1;
  int roadmap_cap = -1;
  bool desk = false;
  int treedepth = 2;
  std::uint64_t work_cap = 50'000'000;
  reduce_cmd->add_option("-i,--input", in_path)->required();
  reduce_cmd->add_option("--rules", rules, "comma list of shorten, prune, planar");
  reduce_cmd->add_option("--clean-threshold", clean_threshold);
  reduce_cmd->add_option("--roadmap-cap", roadmap_cap);
  reduce_cmd->add_flag("--desk-scale", desk, "threshold 12, roadmap cap 5");
  reduce_cmd->add_option("--treedepth", treedepth, "separator size for prune");
  reduce_cmd->add_option("--work-cap", work_cap);
  reduce_cmd->add_option("-o,--output", out_path);

  auto* gen_cmd = app.add_subcommand("generate", "write a generated instance");
  gen_cmd->require_subcommand(1);
  std::optional<std::uint64_t> seed;
  int rows = 3, cols = 3, gen_budget = 2;
  std::string pattern = "random", robots, blockers;
  double density = 0.3;
  auto* gen_grid = gen_cmd->add_subcommand("grid", "grid graph");
  gen_grid->add_option("--rows", rows)->required();
  gen_grid->add_option("--cols", cols)->required();
  gen_grid->add_option("--pattern", pattern)->check(CLI::IsMember({"random", "corridor", "explicit"}));
  gen_grid->add_option("--density", density);
  gen_grid->add_option("--robots", robots, "explicit destination robots s:t,s:t");
  gen_grid->add_option("--blockers", blockers, "explicit blockers v,v");
  gen_grid->add_option("--budget", gen_budget);
  gen_grid->add_option("--seed", seed);
  gen_grid->add_option("-o,--output", out_path);
  auto* gen_rst = gen_cmd->add_subcommand("rst", "Steiner-tree gadget");
  std::string points;
  int ell = 1;
  gen_rst->add_option("--points", points, "x,y;x,y;... (/ or space also separate points)")->required();
  gen_rst->add_option("--ell", ell)->required();
  gen_rst->add_option("-o,--output", out_path);
  auto* gen_corr = gen_cmd->add_subcommand("corridor", "long free corridor fixture");
  int length = 30, pendants = 0;
  bool parking = false;
  gen_corr->add_option("--length", length)->required();
  gen_corr->add_flag("--parking", parking);
  gen_corr->add_option("--pendants", pendants);
  gen_corr->add_option("--budget", gen_budget);
  gen_corr->add_option("-o,--output", out_path);
  auto* gen_sub = gen_cmd->add_subcommand("subgrid", "random grid subgraph");
  double keep = 0.8;
  int nblockers = 3;
  gen_sub->add_option("--rows", rows)->required();
  gen_sub->add_option("--cols", cols)->required();
  gen_sub->add_option("--keep", keep);
  gen_sub->add_option("--blockers", nblockers);
  gen_sub->add_option("--budget", gen_budget);
  gen_sub->add_option("--seed", seed);
  gen_sub->add_option("-o,--output", out_path);

  auto* repr_cmd = app.add_subcommand("repr", "schedule representations");
  repr_cmd->require_subcommand(1);
  auto* repr_extract = repr_cmd->add_subcommand("extract", "representation of a schedule");
  repr_extract->add_option("-i,--input", in_path)->required();
  repr_extract->add_option("-s,--schedule", sched_path)->required();
  repr_extract->add_option("-o,--output", out_path);
  auto* repr_realize = repr_cmd->add_subcommand("realize", "schedule from a representation");
  repr_realize->add_option("-i,--input", in_path)->required();
  repr_realize->add_option("-r,--repr", repr_path)->required();
  repr_realize->add_option("-o,--output", out_path);
  repr_realize->add_option("--work-cap", work_cap);

  auto* oracle_cmd = app.add_subcommand("oracle", "reference search without canonicalization");
  oracle_cmd->add_option("-i,--input", in_path)->required();
  oracle_cmd->add_option("--budget", budget);
  oracle_cmd->add_option("--state-cap", state_cap);
  oracle_cmd->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kError;
  }

  try {
    if (*solve_cmd) {
      Instance inst = read_instance_file(in_path);
      if (budget) inst.budget = *budget;
      SolveOptions opt;
      opt.algorithm = algo == "iddfs" ? Algorithm::kIddfs : Algorithm::kBfs;
      opt.state_cap = state_cap;
      SolveResult r;
      if (ball) {
        auto fa = free_analysis(inst);
        r = solve_bounded_ball(inst, inst.budget, fa.lambda, opt);
      } else {
        r = solve(inst, opt);
      }
      return report_solve(r, out_path);
    }

    if (*validate_cmd) {
      Instance inst = read_instance_file(in_path);
      Schedule s = read_schedule_file(sched_path);
      if (auto v = validate(inst, s)) {
        std::cerr << to_string(*v) << "\n";
        return kNo;
      }
      std::cout << "valid\n";
      return kYes;
    }

    if (*reduce_cmd) {
      Instance inst = read_instance_file(in_path);
      int code = kYes;
      for (const auto& rule : split(rules, ',')) {
        if (rule == "shorten") {
          auto r = shorten_paths(inst);
          for (const auto& l : r.log) std::cout << l << "\n";
          inst = r.instance;
        } else if (rule == "prune") {
          auto r = reduce_bounded_treedepth(inst, treedepth, work_cap);
          for (const auto& l : r.log) std::cout << l << "\n";
          inst = r.instance;
        } else if (rule == "planar") {
          KernelOptions opt = desk ? KernelOptions::desk_scale() : KernelOptions{};
          if (clean_threshold >= 0) opt.threshold = clean_threshold;
          if (roadmap_cap >= 0) opt.roadmap_cap = roadmap_cap;
          opt.work_cap = work_cap;
          auto r = kernelize_and_solve(inst, opt);
          for (const auto& l : r.trace) std::cout << l << "\n";
          inst = r.kernel;
          if (r.status == KernelResult::Status::kCapExceeded) {
            std::cerr << "cap-exceeded: kernelization stopped, partial kernel written\n";
            code = kError;
          }
        } else {
          std::cerr << "unknown rule '" << rule << "'\n";
          return kError;
        }
      }
      if (!out_path.empty()) write_text_file(out_path, serialize_instance(inst));
      return code;
    }

    if (*gen_cmd) {
      Instance inst;
      if (*gen_grid) {
        GridOccupancy occ;
        occ.budget = gen_budget;
        occ.density = density;
        if (pattern == "explicit") {
          occ.pattern = OccupancyPattern::kExplicit;
          occ.dest = parse_robots(robots);
          occ.blockers = parse_vertices(blockers);
        } else {
          occ.pattern = pattern == "corridor" ? OccupancyPattern::kCorridor
                                              : OccupancyPattern::kRandom;
          if (!seed) {
            std::cerr << "--seed is required for the " << pattern << " pattern\n";
            return kError;
          }
        }
        inst = grid_instance(rows, cols, occ, seed.value_or(0));
      } else if (*gen_rst) {
        auto g = rst_gadget(parse_points(points), ell);
        if (g.normalized) std::cerr << "note: points shifted or deduplicated\n";
        inst = g.instance;
      } else if (*gen_corr) {
        inst = corridor_fixture(length, parking, pendants, gen_budget);
      } else if (*gen_sub) {
        if (!seed) {
          std::cerr << "--seed is required for subgrid\n";
          return kError;
        }
        inst = random_subgrid_instance(rows, cols, keep, nblockers, gen_budget, *seed);
      }
      emit(out_path, serialize_instance(inst));
      return kYes;
    }

    if (*repr_extract) {
      Instance inst = read_instance_file(in_path);
      Schedule s = read_schedule_file(sched_path);
      emit(out_path, serialize_representation(extract_representation(inst, s)));
      return kYes;
    }

    if (*repr_realize) {
      Instance inst = read_instance_file(in_path);
      auto labels = relabel_terminals(inst);
      std::ifstream rin(repr_path);
      if (!rin) throw CsmpError("cannot open " + repr_path);
      Representation rep = parse_representation(rin, labels.rooted.plain_label);
      auto found = find_realization(rep.h, labels.rooted, work_cap);
      if (found.status == SearchStatus::kCapExceeded) {
        std::cerr << "cap-exceeded: realization search\n";
        return kError;
      }
      if (!found.realization) {
        std::cout << "NO\n";
        return kNo;
      }
      Schedule s = schedule_from_realization(inst, rep, *found.realization, rep.moves);
      if (auto v = validate(inst, s)) {
        std::cerr << to_string(*v) << "\n";
        return kNo;
      }
      emit(out_path, serialize_schedule(s));
      return kYes;
    }

    if (*oracle_cmd) {
      Instance inst = read_instance_file(in_path);
      int b = budget.value_or(inst.budget);
      return report_solve(oracle_solve(inst, b, state_cap), out_path);
    }
  } catch (const CapExceeded& e) {
    std::cerr << "cap-exceeded: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
