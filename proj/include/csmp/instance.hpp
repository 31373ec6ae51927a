#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "csmp/graph.hpp"

namespace csmp {

struct DestRobot {
  Vertex start = 0;
  Vertex target = 0;
  bool operator==(const DestRobot&) const = default;
};

/// A CSMP instance. Robot ids are dense: destination robots 0..|M|-1 in list
/// order, then free robots.
struct Instance {
  Graph graph;
  std::vector<DestRobot> dest;
  std::vector<Vertex> free_starts;
  int budget = 0;
  bool planar = false;

  int dest_count() const { return static_cast<int>(dest.size()); }
  int robot_count() const { return dest_count() + static_cast<int>(free_starts.size()); }
  bool is_dest(int robot) const { return robot < dest_count(); }
  Vertex start_of(int robot) const {
    return is_dest(robot) ? dest[robot].start : free_starts[robot - dest_count()];
  }
  /// Start vertex of every robot, indexed by robot id.
  std::vector<Vertex> starts() const;
  /// Starts of all robots plus targets of destination robots.
  std::vector<bool> terminal_mask() const;

  bool operator==(const Instance&) const = default;
};

class ParseError : public CsmpError {
 public:
  using CsmpError::CsmpError;
};

/// Throws CsmpError when starts or targets repeat, a vertex is out of range or
/// there are more robots than vertices.
void check_instance(const Instance& inst);

Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Roots are the terminals. Destination starts get 1..|M|, targets
/// |M|+1..2|M|, free starts 2|M|+1.. ; a vertex that is a start and also a
/// target keeps its start label and is listed in `also_target`. Every other
/// vertex carries plain_label = 2|M|+|F|+1.
struct TerminalLabeling {
  RootedGraph rooted;
  /// vertex -> destination robot whose target it is, for composite roots.
  std::map<Vertex, int> also_target;
};

TerminalLabeling relabel_terminals(const Instance& inst);

}  // namespace csmp
