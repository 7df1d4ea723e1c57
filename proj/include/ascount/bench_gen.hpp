#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "ascount/program.hpp"

namespace ascount::bench {

struct Graph {
  std::size_t n_nodes = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // no self-edges

  void add_edge(std::size_t u, std::size_t v);
};

class GraphFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `n m` then m lines `u v`. Duplicate edges collapse; self-edges and
/// out-of-range nodes are errors.
Graph parse_graph(std::string_view text);
Graph load_graph_file(const std::string& path);

Graph complete_digraph(std::size_t n);
Graph directed_cycle(std::size_t n);
/// Each ordered pair (u, v), u != v, is an edge with probability p.
Graph random_digraph(std::size_t n, double p, std::uint64_t seed);

/// n independent pairs x_i :- not y_i. y_i :- not x_i.  Tight, 2^n answer sets.
Program gen_choice_chain(std::size_t n);

/// Directed Hamiltonian cycles of `graph`, one answer set each.
///
/// Edge selection is a negation pair in(u,v)/out(u,v). Every node needs an
/// outgoing witness hasout(u) and an incoming witness hasin(v), and two
/// selected edges may not share a tail or a head. r(v) marks nodes reached
/// from node 0 along selected edges; every node, including 0, must be
/// reached. On cyclic graphs the reachability rules make the program non-tight.
Program gen_hamiltonian(const Graph& graph);

/// Subsets of intermediate nodes kept `up` under which `target` stays
/// reachable from `source`. Source and target are always up.
Program gen_reachability(const Graph& graph, std::size_t source, std::size_t target);

}  // namespace ascount::bench
