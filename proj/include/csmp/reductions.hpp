#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csmp/instance.hpp"

namespace csmp {

struct ReducedInstance {
  Instance instance;
  /// remap[old vertex] = new vertex, -1 if removed.
  std::vector<Vertex> remap;
  /// `reduced <rule> <detail>` lines.
  std::vector<std::string> log;
};

/// Replaces every terminal-free chain of degree-two vertices longer than
/// 2k+1 edges by one of exactly 2k+1 edges (k = number of robots). The
/// first 2k internal vertices are kept. No-op when k = 0.
ReducedInstance shorten_paths(const Instance& inst);

struct PruneCertificate {
  std::vector<Vertex> separator;       // X
  std::vector<Vertex> neighborhood;    // shared N(C) inside X
  std::vector<Vertex> removed;         // component removed (old ids)
  int group_size = 0;                  // components with that neighbourhood
  int terminal_free = 0;               // of which terminal-free
};

struct PruneResult {
  bool applied = false;
  ReducedInstance reduced;
  PruneCertificate certificate;
};

/// Groups the components of G - X by their neighbourhood in X. If a group has
/// at least 3k+1 members and at least k+1 of them are terminal-free, the
/// (k+1)-th terminal-free member (in order of smallest vertex) is removed.
PruneResult prune_component(const Instance& inst, const std::vector<Vertex>& separator);

/// Applies prune_component over all X with |X| <= d until nothing changes.
/// Throws CapExceeded once more than work_cap separators were tried.
ReducedInstance reduce_bounded_treedepth(const Instance& inst, int d,
                                         std::uint64_t work_cap = 5'000'000);

/// Exact treedepth by memoised recursion over vertex subsets (n <= 20).
int exact_treedepth(const Graph& g);

}  // namespace csmp
