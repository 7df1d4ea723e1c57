#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ascount/program.hpp"

namespace ascount {

/// Positive dependency graph. Edges run from a rule head to each atom of its
/// positive body; negative bodies and constraints add nothing. Only cycle
/// membership is used downstream, and that does not depend on orientation.
struct DepGraph {
  std::size_t node_count = 0;
  std::vector<std::vector<AtomId>> successors;  // sorted, duplicate-free

  std::size_t edge_count() const;
  bool has_edge(AtomId from, AtomId to) const;
  std::vector<std::pair<AtomId, AtomId>> edges() const;
};

struct LoopInfo {
  std::vector<std::uint32_t> scc_of;  // per atom
  std::size_t scc_count = 0;
  std::vector<AtomId> loop_atoms;     // sorted
  std::vector<bool> is_loop_atom;     // per atom
};

DepGraph build_dep_graph(const Program& program);

/// Atoms in an SCC with at least two members, plus atoms with a self-edge.
/// Iterative Tarjan, linear in nodes + edges.
LoopInfo compute_loop_atoms(const DepGraph& graph);

inline bool is_tight(const LoopInfo& info) { return info.loop_atoms.empty(); }

/// `n m` header followed by one `u v` line per edge.
std::string render_edge_list(const DepGraph& graph);

}  // namespace ascount
