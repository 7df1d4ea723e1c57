// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

#include "ascount/analysis.hpp"
#include "ascount/bench_gen.hpp"
#include "ascount/cli.hpp"
#include "ascount/encode.hpp"
#include "ascount/engine.hpp"
#include "ascount/ingest.hpp"
#include "ascount/oracle.hpp"
#include "support/random_programs.hpp"

using namespace ascount;
using Seconds = std::chrono::duration<double>;

namespace {

// Time limits per criterion, in seconds.
constexpr double kLimitExample = 1.0;
constexpr double kLimitCharacterization = 300.0;
constexpr double kLimitOracle = 600.0;
constexpr double kLimitChain = 1.0;
constexpr double kLimitHamiltonian = 5.0;

// Sample sizes.
constexpr std::uint64_t kCharacterizationPrograms = 500;
constexpr double kMinNonTightShare = 0.30;
constexpr std::uint64_t kOraclePrograms = 1000;
constexpr std::uint64_t kGeneratorInstances = 60;
constexpr std::uint64_t kIdentityChecks = 100;
constexpr std::uint64_t kCachePrograms = 1000;
constexpr std::uint64_t kSoundnessTriples = 200;
constexpr std::size_t kChainCacheMiB = 64;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

bool report(int id, const std::string& name, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = Seconds(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %2d %s (%.3f s)%s%s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              v.detail.empty() ? "" : " : ", v.detail.c_str());
  std::fflush(stdout);
  return v.pass;
}

double since(std::chrono::steady_clock::time_point t0) {
  return Seconds(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t ham_cycles(const bench::Graph& g) {
  std::vector<std::size_t> order(g.n_nodes);
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t n = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < order.size(); ++i)
      ok = g.edges.count({order[i], order[(i + 1) % order.size()]}) > 0;
    n += ok;
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return n;
}

oracle::Interpretation mask(std::size_t n, std::uint64_t bits) {
  oracle::Interpretation m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1u;
  return m;
}

Verdict running_example_fidelity() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  const Program p = testing::running_example();
  const PairFormula pair = build_pair(p);
  const LoopInfo loops = compute_loop_atoms(build_dep_graph(p));
  std::vector<std::string> loop_names;
  for (AtomId a : loops.loop_atoms) loop_names.push_back(p.atoms().symbol(a));
  v.require(loop_names == std::vector<std::string>{"c", "d"}, "loop atoms are not {c, d}");
  v.require(!pair.tight, "program reported tight");
  v.require(pair.g.size() == 6, "G does not have 6 clauses");
  v.require(testing::engine_count(p) == 2, "count is not 2");

  std::set<std::set<std::string>> sets;
  for (const auto& s : oracle::brute_force_answer_sets(p)) {
    std::set<std::string> names;
    for (AtomId a : s) names.insert(p.atoms().symbol(a));
    sets.insert(names);
  }
  v.require(sets == std::set<std::set<std::string>>{{"a", "c", "d"}, {"b"}}, "answer sets differ");
  v.require(since(t0) < kLimitExample, "time limit");
  return v;
}

Verdict characterization() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  std::uint64_t non_tight = 0, mismatches = 0;
  for (std::uint64_t seed = 0; seed < kCharacterizationPrograms; ++seed) {
    const Program p = testing::random_program(seed);
    const PairFormula pair = build_pair(p);
    non_tight += !pair.tight;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << p.atom_count()); ++bits) {
      const oracle::Interpretation m = mask(p.atom_count(), bits);
      const auto tau = oracle::atom_assignment(pair, m);
      const bool lhs = oracle::models_completion(pair, tau) && oracle::copy_residual_empty(pair, tau);
      mismatches += lhs != oracle::is_answer_set(p, m);
    }
  }
  v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  v.require(double(non_tight) >= kMinNonTightShare * double(kCharacterizationPrograms),
            "only " + std::to_string(non_tight) + " non-tight programs");
  v.require(since(t0) < kLimitCharacterization, "time limit");
  if (v.pass) v.detail = std::to_string(kCharacterizationPrograms) + " programs, " + std::to_string(non_tight) + " non-tight";
  return v;
}

Verdict oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  std::uint64_t mismatches = 0, checked = 0;
  for (std::uint64_t seed = 0; seed < kOraclePrograms; ++seed) {
    const Program p = testing::random_program(seed + 10000);
    mismatches += testing::engine_count(p) != oracle::brute_force_count(p);
    ++checked;
  }
  for (std::uint64_t seed = 0; seed < kGeneratorInstances; ++seed) {
    const std::size_t n = 3 + seed % 4;
    const bench::Graph g = bench::random_digraph(n, 0.5, seed);
    const Program ham = bench::gen_hamiltonian(g);
    const BigCount ham_count = testing::engine_count(ham);
    mismatches += ham_count != ham_cycles(g);
    if (ham.atom_count() <= 24) mismatches += ham_count != oracle::brute_force_count(ham);
    const Program reach = bench::gen_reachability(g, 0, n - 1);
    mismatches += testing::engine_count(reach) != oracle::brute_force_count(reach);
    checked += 2;
  }
  v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  v.require(since(t0) < kLimitOracle, "time limit");
  if (v.pass) v.detail = std::to_string(checked) + " instances";
  return v;
}

Verdict determinism() {
  Verdict v;
  for (std::uint64_t seed = 0; seed < kIdentityChecks; ++seed) {
    const Program p = testing::random_program(seed + 20000);
    const PairFormula pair = build_pair(p);
    Engine engine(pair);
    const BigCount total = engine.count();
    std::mt19937_64 rng(seed);
    // any non-copy variable, auxiliaries included
    std::vector<VarId> candidates;
    for (VarId x = 0; x < pair.var_count(); ++x)
      if (!pair.is_copy(x)) candidates.push_back(x);
    const VarId x = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    const Lit pos[] = {Lit::pos(x)};
    const Lit neg[] = {Lit::neg(x)};
    v.require(total == engine.count(pos) + engine.count(neg), "identity fails for seed " + std::to_string(seed));
  }
  return v;
}

Verdict decomposition() {
  Verdict v;
  for (std::uint64_t seed = 0; seed < kIdentityChecks; ++seed) {
    const Program a = testing::random_program(2 * seed + 30000);
    const Program b = testing::random_program(2 * seed + 30001);
    Program joined;
    append_renamed(joined, a, "l_");
    append_renamed(joined, b, "r_");
    const BigCount product = testing::engine_count(a) * testing::engine_count(b);
    v.require(testing::engine_count(joined) == product, "product fails for seed " + std::to_string(seed));
    v.require(product == oracle::brute_force_count(a) * oracle::brute_force_count(b),
              "oracle disagrees for seed " + std::to_string(seed));
  }
  return v;
}

Verdict cache_transparency() {
  Verdict v;
  EngineOptions no_cache;
  no_cache.use_cache = false;
  for (std::uint64_t seed = 0; seed < kCachePrograms; ++seed) {
    const Program p = testing::random_program(seed + 10000);
    v.require(testing::engine_count(p) == testing::engine_count(p, no_cache),
              "cache changes the count for seed " + std::to_string(seed));
  }
  Program dup;
  const Program ham = bench::gen_hamiltonian(bench::complete_digraph(3));
  append_renamed(dup, ham, "l_");
  append_renamed(dup, ham, "r_");
  const PairFormula pair = build_pair(dup);
  Engine engine(pair);
  v.require(engine.count() == 4, "duplicated instance count is not 4");
  v.require(engine.stats().cache_hit_pct() > 0.0, "no cache hits on the duplicated instance");
  if (v.pass) {
    std::ostringstream d;
    d << "hit rate " << engine.stats().cache_hit_pct() << "% on duplicated instance";
    v.detail = d.str();
  }
  return v;
}

Verdict scaling() {
  Verdict v;
  const PairFormula pair = build_pair(bench::gen_choice_chain(30));
  EngineOptions opts;
  opts.cache_limit_bytes = kChainCacheMiB << 20;
  const auto t0 = std::chrono::steady_clock::now();
  Engine engine(pair, opts);
  const BigCount n = engine.count();
  const double secs = since(t0);
  v.require(n.to_string() == "1073741824", "count is " + n.to_string());
  v.require(secs < kLimitChain, "time limit");
  v.require(engine.stats().peak_cache_bytes <= opts.cache_limit_bytes, "cache cap exceeded");
  const HybridResult h = hybrid_count(pair, 100000, std::nullopt, opts);
  v.require(h.counted, "hybrid stayed on the enumeration path");
  v.require(h.count == n, "hybrid count differs");
  return v;
}

Verdict hamiltonian() {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  const bench::Graph k4 = bench::complete_digraph(4);
  const bench::Graph c3 = bench::directed_cycle(3);
  v.require(ham_cycles(k4) == 6 && ham_cycles(c3) == 1, "graph brute force disagrees");
  v.require(testing::engine_count(bench::gen_hamiltonian(k4)) == 6, "K4 count is not 6");
  v.require(testing::engine_count(bench::gen_hamiltonian(c3)) == 1, "3-cycle count is not 1");
  v.require(since(t0) < kLimitHamiltonian, "time limit");
  return v;
}

nlohmann::json cli_report(const std::string& program_text) {
  const auto path = std::filesystem::temp_directory_path() / "ascount_acceptance.gnp";
  std::ofstream(path) << program_text;
  const std::string file = path.string();
  const char* argv[] = {"ascount", "--stats", "json", "count", file.c_str()};
  std::ostringstream out, err;
  if (cli::run(5, argv, out, err) != 0) throw std::runtime_error("cli run failed: " + err.str());
  return nlohmann::json::parse(err.str());
}

Verdict ablation_metrics() {
  Verdict v;
  const nlohmann::json ex = cli_report(render_program(testing::running_example()));
  for (const char* key : {"bcp_seconds", "decisions", "cache_hit_pct", "propagations", "cache_lookups",
                          "cache_hits", "cache_entries"})
    v.require(ex.contains(key), std::string("missing key ") + key);
  v.require(ex["decisions"].get<std::uint64_t>() > 0, "the running example needs decisions");

  const nlohmann::json unit = cli_report("a. b :- a. c :- not b. d :- b, not c.\n");
  v.require(unit["answer_count"] == "1", "level-0 program count is not 1");
  v.require(unit["decisions"].get<std::uint64_t>() == 0, "decisions on a level-0 program");
  return v;
}

// Residual of F and G together; each surviving clause keeps its origin.
struct TaggedResidual {
  bool conflict = false;
  std::multiset<Clause> f, g;
};

std::optional<Clause> restrict_clause(const Clause& c, const oracle::Assignment& a) {
  Clause out;
  for (Lit l : c) {
    const auto& val = a[l.var()];
    if (!val) out.push_back(l);
    else if (*val != l.negated()) return std::nullopt;
  }
  return out;
}

TaggedResidual tagged_residual(const PairFormula& pair, const oracle::Assignment& tau) {
  std::vector<Clause> joint = pair.f.clauses;
  joint.insert(joint.end(), pair.g.clauses.begin(), pair.g.clauses.end());
  const oracle::Residual r = oracle::residual(joint, tau);
  TaggedResidual t;
  t.conflict = r.conflict;
  if (r.conflict) return t;
  for (const Clause& c : pair.f.clauses)
    if (auto rc = restrict_clause(c, r.assignment)) t.f.insert(*rc);
  for (const Clause& c : pair.g.clauses)
    if (auto rc = restrict_clause(c, r.assignment)) t.g.insert(*rc);
  return t;
}

std::multiset<Clause> joined(const TaggedResidual& t) {
  std::multiset<Clause> all = t.f;
  all.insert(t.g.begin(), t.g.end());
  return all;
}

Verdict conjunction_soundness() {
  Verdict v;
  std::uint64_t violations = 0, premise_held = 0, tagging_errors = 0;
  std::mt19937_64 rng(4242);
  for (std::uint64_t i = 0; i < kSoundnessTriples; ++i) {
    const Program p = testing::random_program(i + 40000);
    const PairFormula pair = build_pair(p);
    oracle::Assignment tau1(pair.var_count());
    for (VarId x = 0; x < pair.n_original; ++x)
      if (std::bernoulli_distribution(0.3)(rng)) tau1[x] = std::bernoulli_distribution(0.5)(rng);

    // tau2: tau1 plus a random part of its propagation closure, or an unrelated assignment
    oracle::Assignment tau2(pair.var_count());
    std::vector<Clause> joint = pair.f.clauses;
    joint.insert(joint.end(), pair.g.clauses.begin(), pair.g.clauses.end());
    const oracle::Residual closure = oracle::residual(joint, tau1);
    if (i % 4 != 3) {
      tau2 = tau1;
      for (VarId x = 0; x < pair.var_count(); ++x)
        if (!tau2[x] && closure.assignment[x] && std::bernoulli_distribution(0.5)(rng))
          tau2[x] = closure.assignment[x];
    } else {
      for (VarId x = 0; x < pair.n_original; ++x)
        if (std::bernoulli_distribution(0.3)(rng)) tau2[x] = std::bernoulli_distribution(0.5)(rng);
    }

    const TaggedResidual r1 = tagged_residual(pair, tau1);
    const TaggedResidual r2 = tagged_residual(pair, tau2);
    if (!r1.conflict) {
      const auto& raw = closure.clauses;
      tagging_errors += std::multiset<Clause>(raw.begin(), raw.end()) != joined(r1);
    }
    if (r1.conflict != r2.conflict || joined(r1) != joined(r2)) continue;
    ++premise_held;
    violations += r1.f != r2.f || r1.g != r2.g;
  }
  v.require(violations == 0, std::to_string(violations) + " violations");
  v.require(tagging_errors == 0, "tagged residual disagrees with the oracle residual");
  v.require(premise_held >= kSoundnessTriples / 2, "premise held in only " + std::to_string(premise_held) + " triples");
  if (v.pass) v.detail = std::to_string(premise_held) + " of " + std::to_string(kSoundnessTriples) + " triples with equal residuals";
  return v;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "running example fidelity", running_example_fidelity);
  ok &= report(2, "alternative answer-set characterization", characterization);
  ok &= report(3, "oracle equivalence", oracle_equivalence);
  ok &= report(4, "determinism identity", determinism);
  ok &= report(5, "decomposition identity", decomposition);
  ok &= report(6, "cache transparency", cache_transparency);
  ok &= report(7, "scaling smoke test", scaling);
  ok &= report(8, "Hamiltonian sanity", hamiltonian);
  ok &= report(9, "ablation metrics", ablation_metrics);
  ok &= report(10, "conjunction soundness", conjunction_soundness);
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
  return ok ? 0 : 1;
}
