#include "ascount/cli.hpp"

#include <fstream>
#include <limits>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ascount/analysis.hpp"
#include "ascount/bench_gen.hpp"
#include "ascount/encode.hpp"
#include "ascount/ingest.hpp"
#include "ascount/oracle.hpp"

namespace ascount::cli {

namespace {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Count: return "count";
    case Mode::Enumerate: return "enumerate";
    case Mode::Hybrid: return "hybrid";
    case Mode::Oracle: return "oracle";
  }
  return "?";
}

struct Settings {
  std::string stats = "none";
  bool no_cache = false;
  std::optional<std::size_t> cache_limit_mb;
  std::optional<std::uint64_t> seed;
  std::string file;
  std::string output;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t threshold = 100000;
  std::optional<double> budget;
  std::size_t cap = 24;
  std::string graph_out;
  std::size_t chain_n = 0;
  std::string graph_file;
  std::size_t src = 0, dst = 0;
};

EngineOptions engine_options(const Settings& s) {
  EngineOptions o;
  o.use_cache = !s.no_cache;
  if (s.cache_limit_mb) o.cache_limit_bytes = *s.cache_limit_mb << 20;
  o.seed = s.seed;
  return o;
}

RunReport base_report(Mode mode, const std::string& instance, const Program& program,
                      const PairFormula& pair) {
  RunReport r;
  r.mode = mode;
  r.instance = instance;
  r.tight = pair.tight;
  r.n_atoms = program.atom_count();
  r.n_rules = program.rules().size();
  r.n_loop_atoms = pair.copy_vars.size();
  r.n_copy_vars = pair.copy_vars.size();
  r.n_clauses_f = pair.f.size();
  r.n_clauses_g = pair.g.size();
  return r;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

class Runner {
 public:
  Runner(const Settings& s, std::ostream& out, std::ostream& err) : s_(s), out_(out), err_(err) {}

  int count_like(Mode mode) {
    const auto t0 = Clock::now();
    const Program program = load_program_file(s_.file);
    const PairFormula pair = build_pair(program);
    RunReport report = base_report(mode, s_.file, program, pair);
    try {
      switch (mode) {
        case Mode::Count: {
          Engine engine(pair, engine_options(s_));
          report.answer_count = engine.count();
          report.stats = engine.stats();
          break;
        }
        case Mode::Enumerate: {
          Engine engine(pair, engine_options(s_));
          EnumerationResult e = engine.enumerate_up_to(s_.limit);
          if (!e.exceeded) report.answer_count = e.count;
          report.stats = engine.stats();
          break;
        }
        case Mode::Hybrid: {
          std::optional<std::chrono::duration<double>> budget;
          if (s_.budget) budget = std::chrono::duration<double>(*s_.budget);
          HybridResult h = hybrid_count(pair, s_.threshold, budget, engine_options(s_));
          report.answer_count = h.count;
          report.stats = h.stats;
          report.path = h.counted ? "counting" : "enumeration";
          break;
        }
        case Mode::Oracle:
          report.answer_count = oracle::brute_force_count(program, s_.cap);
          break;
      }
    } catch (const ResourceLimitError& e) {
      report.stats = e.stats();
      report.wall_seconds = seconds_since(t0);
      err_ << "resource limit: " << e.what() << '\n';
      emit(report);
      return 2;
    } catch (const oracle::CapExceeded& e) {
      report.wall_seconds = seconds_since(t0);
      err_ << "resource limit: " << e.what() << '\n';
      emit(report);
      return 2;
    }
    report.wall_seconds = seconds_since(t0);
    if (report.answer_count) out_ << report.answer_count->to_string() << '\n';
    else err_ << "more than " << s_.limit << " answer sets\n";
    emit(report);
    return 0;
  }

  int translate() {
    const PairFormula pair = build_pair(load_program_file(s_.file));
    write_text(s_.output, emit_dimacs(pair), out_);
    return 0;
  }

  int analyze() {
    const Program program = load_program_file(s_.file);
    const DepGraph graph = build_dep_graph(program);
    const LoopInfo info = compute_loop_atoms(graph);
    out_ << "tight: " << (is_tight(info) ? "true" : "false") << '\n';
    out_ << "atoms: " << program.atom_count() << '\n';
    out_ << "rules: " << program.rules().size() << '\n';
    out_ << "constraints: " << program.constraints().size() << '\n';
    out_ << "loop_atoms:";
    for (AtomId a : info.loop_atoms) out_ << ' ' << program.atoms().symbol(a);
    out_ << '\n';
    for (const Diagnostic& d : validate(program)) err_ << "warning: " << d.message << '\n';
    if (!s_.graph_out.empty()) write_text(s_.graph_out, render_edge_list(graph), out_);
    return 0;
  }

  int gen(const std::string& family) {
    Program p;
    if (family == "chain") p = bench::gen_choice_chain(s_.chain_n);
    else if (family == "hamiltonian") p = bench::gen_hamiltonian(bench::load_graph_file(s_.graph_file));
    else p = bench::gen_reachability(bench::load_graph_file(s_.graph_file), s_.src, s_.dst);
    write_text(s_.output, render_program(p), out_);
    return 0;
  }

 private:
  void emit(const RunReport& report) {
    if (s_.stats == "json") err_ << report_json(report) << '\n';
  }

  const Settings& s_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

std::string report_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(r.mode);
  j["answer_count"] = r.answer_count ? r.answer_count->to_string() : std::string("exceeded");
  j["decisions"] = r.stats.decisions;
  j["propagations"] = r.stats.propagations;
  j["bcp_seconds"] = r.stats.bcp_seconds;
  j["cache_lookups"] = r.stats.cache_lookups;
  j["cache_hits"] = r.stats.cache_hits;
  j["cache_hit_pct"] = r.stats.cache_hit_pct();
  j["cache_entries"] = r.stats.cache_entries;
  j["peak_cache_bytes"] = r.stats.peak_cache_bytes;
  j["wall_seconds"] = r.wall_seconds;
  j["instance"] = r.instance;
  if (!r.path.empty()) j["path"] = r.path;
  j["tight"] = r.tight;
  j["n_atoms"] = r.n_atoms;
  j["n_rules"] = r.n_rules;
  j["n_loop_atoms"] = r.n_loop_atoms;
  j["n_copy_vars"] = r.n_copy_vars;
  j["n_clauses_f"] = r.n_clauses_f;
  j["n_clauses_g"] = r.n_clauses_g;
  return j.dump();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Exact answer-set counting for ground normal logic programs", "ascount"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--stats", s.stats, "Emit a JSON run report on stderr")
      ->check(CLI::IsMember({"json", "none"}));
  app.add_flag("--no-cache", s.no_cache, "Disable the component cache");
  app.add_option("--cache-limit-mb", s.cache_limit_mb, "Component cache cap in MiB (default 1024)");
  app.add_option("--seed", s.seed, "Randomize decision tie-breaking with this seed");

  auto* count = app.add_subcommand("count", "Count answer sets");
  count->add_option("file", s.file, "Program (.gnp)")->required();
  count->fallthrough();

  auto* enumerate = app.add_subcommand("enumerate", "Count answer sets one by one");
  enumerate->add_option("file", s.file, "Program (.gnp)")->required();
  enumerate->add_option("--limit", s.limit, "Stop after this many answer sets");
  enumerate->fallthrough();

  auto* hybrid = app.add_subcommand("hybrid", "Enumerate up to a threshold, then count");
  hybrid->add_option("file", s.file, "Program (.gnp)")->required();
  hybrid->add_option("--threshold", s.threshold, "Enumeration threshold")->check(CLI::PositiveNumber);
  hybrid->add_option("--budget", s.budget, "Time budget in seconds")->check(CLI::PositiveNumber);
  hybrid->fallthrough();

  auto* translate = app.add_subcommand("translate", "Export F and G as annotated DIMACS");
  translate->add_option("file", s.file, "Program (.gnp)")->required();
  translate->add_option("-o,--output", s.output, "Output .cnf (default stdout)");
  translate->fallthrough();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force answer-set count");
  oracle_cmd->add_option("file", s.file, "Program (.gnp)")->required();
  oracle_cmd->add_option("--cap", s.cap, "Maximum number of atoms");
  oracle_cmd->fallthrough();

  auto* analyze = app.add_subcommand("analyze", "Tightness and loop atoms");
  analyze->add_option("file", s.file, "Program (.gnp)")->required();
  analyze->add_option("--graph", s.graph_out, "Write the positive dependency graph as an edge list");
  analyze->fallthrough();

  auto* gen = app.add_subcommand("gen", "Generate benchmark programs");
  gen->require_subcommand(1);
  gen->fallthrough();
  auto* chain = gen->add_subcommand("chain", "Independent negation pairs");
  chain->add_option("n", s.chain_n, "Number of pairs")->required();
  auto* ham = gen->add_subcommand("hamiltonian", "Directed Hamiltonian cycles");
  ham->add_option("graph", s.graph_file, "Edge-list graph file")->required();
  auto* reach = gen->add_subcommand("reach", "Reachability under node failures");
  reach->add_option("graph", s.graph_file, "Edge-list graph file")->required();
  reach->add_option("src", s.src, "Source node")->required();
  reach->add_option("dst", s.dst, "Target node")->required();
  for (auto* sub : {chain, ham, reach}) {
    sub->add_option("-o,--output", s.output, "Output .gnp (default stdout)");
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Runner runner(s, out, err);
  try {
    if (*count) return runner.count_like(Mode::Count);
    if (*enumerate) return runner.count_like(Mode::Enumerate);
    if (*hybrid) return runner.count_like(Mode::Hybrid);
    if (*oracle_cmd) return runner.count_like(Mode::Oracle);
    if (*translate) return runner.translate();
    if (*analyze) return runner.analyze();
    if (*chain) return runner.gen("chain");
    if (*ham) return runner.gen("hamiltonian");
    if (*reach) return runner.gen("reach");
  } catch (const ParseError& e) {
    err << s.file << ':' << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace ascount::cli
