#include "ascount/bench_gen.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ascount::bench {

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_nodes || v >= n_nodes) throw GraphFormatError("edge node out of range");
  if (u == v) throw GraphFormatError("self-edge " + std::to_string(u) + " rejected");
  edges.emplace(u, v);
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) {
    throw GraphFormatError("line " + std::to_string(line_no) + ": " + msg);
  };
  auto read_pair = [&](long long& a, long long& b) {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra)) fail("expected two integers");
    if (a < 0 || b < 0) fail("negative value");
  };

  if (!next_line()) throw GraphFormatError("empty graph file");
  long long n = 0, m = 0;
  read_pair(n, m);
  Graph g;
  g.n_nodes = static_cast<std::size_t>(n);
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) fail("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    long long u = 0, v = 0;
    read_pair(u, v);
    if (u >= n || v >= n) fail("node out of range");
    if (u == v) fail("self-edge rejected");
    g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  if (next_line()) fail("trailing content after edge list");
  return g;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphFormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

Graph complete_digraph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) g.add_edge(u, v);
  return g;
}

Graph directed_cycle(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t u = 0; u < n && n > 1; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

Graph random_digraph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g{n, {}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && coin(rng)) g.add_edge(u, v);
  return g;
}

Program gen_choice_chain(std::size_t n) {
  Program p;
  for (std::size_t i = 0; i < n; ++i) {
    const AtomId x = p.intern("x" + std::to_string(i));
    const AtomId y = p.intern("y" + std::to_string(i));
    p.add_rule({x, {}, {y}});
    p.add_rule({y, {}, {x}});
  }
  return p;
}

namespace {

std::string edge_atom(const char* name, std::size_t u, std::size_t v) {
  return std::string(name) + "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}
std::string node_atom(const char* name, std::size_t v) {
  return std::string(name) + "(" + std::to_string(v) + ")";
}

}  // namespace

Program gen_hamiltonian(const Graph& graph) {
  if (graph.n_nodes < 2) throw std::invalid_argument("hamiltonian instance needs at least 2 nodes");
  Program p;
  const std::size_t n = graph.n_nodes;
  std::vector<std::vector<AtomId>> out_edges(n), in_edges(n);

  // declare node atoms first so ids stay readable
  std::vector<AtomId> hasout(n), hasin(n), reach(n);
  for (std::size_t v = 0; v < n; ++v) {
    hasout[v] = p.intern(node_atom("hasout", v));
    hasin[v] = p.intern(node_atom("hasin", v));
    reach[v] = p.intern(node_atom("r", v));
  }

  for (auto [u, v] : graph.edges) {
    const AtomId in = p.intern(edge_atom("in", u, v));
    const AtomId out = p.intern(edge_atom("out", u, v));
    p.add_rule({in, {}, {out}});
    p.add_rule({out, {}, {in}});
    out_edges[u].push_back(in);
    in_edges[v].push_back(in);
    p.add_rule({hasout[u], {in}, {}});
    p.add_rule({hasin[v], {in}, {}});
    if (u == 0) p.add_rule({reach[v], {in}, {}});
    p.add_rule({reach[v], {reach[u], in}, {}});
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto* group : {&out_edges[v], &in_edges[v]})
      for (std::size_t i = 0; i < group->size(); ++i)
        for (std::size_t j = i + 1; j < group->size(); ++j)
          p.add_constraint({{(*group)[i], (*group)[j]}, {}});
    p.add_constraint({{}, {hasout[v]}});
    p.add_constraint({{}, {hasin[v]}});
    p.add_constraint({{}, {reach[v]}});
  }
  return p;
}

Program gen_reachability(const Graph& graph, std::size_t source, std::size_t target) {
  const std::size_t n = graph.n_nodes;
  if (source >= n || target >= n) throw std::invalid_argument("source/target out of range");
  if (source == target) throw std::invalid_argument("source and target must differ");
  Program p;
  std::vector<AtomId> reach(n), up(n);
  for (std::size_t v = 0; v < n; ++v) reach[v] = p.intern(node_atom("r", v));
  for (std::size_t v = 0; v < n; ++v) {
    if (v == source || v == target) continue;
    up[v] = p.intern(node_atom("up", v));
    const AtomId down = p.intern(node_atom("down", v));
    p.add_rule({up[v], {}, {down}});
    p.add_rule({down, {}, {up[v]}});
  }
  p.add_rule({reach[source], {}, {}});
  for (auto [u, v] : graph.edges) {
    std::vector<AtomId> body{reach[u]};
    if (v != source && v != target) body.push_back(up[v]);
    p.add_rule({reach[v], body, {}});
  }
  p.add_constraint({{}, {reach[target]}});
  return p;
}

}  // namespace ascount::bench
