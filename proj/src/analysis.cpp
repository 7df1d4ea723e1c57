#include "ascount/analysis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ascount {

std::size_t DepGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : successors) n += s.size();
  return n;
}

bool DepGraph::has_edge(AtomId from, AtomId to) const {
  const auto& s = successors.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<AtomId, AtomId>> DepGraph::edges() const {
  std::vector<std::pair<AtomId, AtomId>> out;
  for (AtomId u = 0; u < successors.size(); ++u)
    for (AtomId v : successors[u]) out.emplace_back(u, v);
  return out;
}

DepGraph build_dep_graph(const Program& program) {
  DepGraph g;
  g.node_count = program.atom_count();
  g.successors.resize(g.node_count);
  for (const Rule& r : program.rules())
    for (AtomId b : r.pos_body) g.successors[r.head].push_back(b);
  for (auto& s : g.successors) normalize_atoms(s);
  return g;
}

LoopInfo compute_loop_atoms(const DepGraph& graph) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = graph.node_count;
  LoopInfo info;
  info.scc_of.assign(n, kUnvisited);
  info.is_loop_atom.assign(n, false);

  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<AtomId> stack;
  // explicit DFS frames: node and position in its successor list
  std::vector<std::pair<AtomId, std::size_t>> frames;
  std::uint32_t counter = 0;

  for (AtomId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto& succ = graph.successors[v];
      if (next < succ.size()) {
        AtomId w = succ[next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      AtomId done = v;
      frames.pop_back();
      if (!frames.empty()) {
        AtomId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] != index[done]) continue;

      auto scc = static_cast<std::uint32_t>(info.scc_count++);
      AtomId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        info.scc_of[w] = scc;
      } while (w != done);
    }
  }

  std::vector<std::size_t> scc_size(info.scc_count, 0);
  for (AtomId a = 0; a < n; ++a) ++scc_size[info.scc_of[a]];
  for (AtomId a = 0; a < n; ++a)
    if (scc_size[info.scc_of[a]] >= 2 || graph.has_edge(a, a)) {
      info.is_loop_atom[a] = true;
      info.loop_atoms.push_back(a);
    }
  return info;
}

std::string render_edge_list(const DepGraph& graph) {
  std::ostringstream out;
  out << graph.node_count << ' ' << graph.edge_count() << '\n';
  for (auto [u, v] : graph.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace ascount
