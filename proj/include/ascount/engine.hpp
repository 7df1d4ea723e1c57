#pragma once

#include <chrono>
#include <cstdint>
#include <list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ascount/big_count.hpp"
#include "ascount/encode.hpp"

namespace ascount {

struct RunStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  double bcp_seconds = 0.0;
  std::uint64_t cache_lookups = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_entries = 0;
  std::size_t peak_cache_bytes = 0;

  double cache_hit_pct() const {
    return cache_lookups == 0 ? 0.0 : 100.0 * static_cast<double>(cache_hits) / static_cast<double>(cache_lookups);
  }
  RunStats& operator+=(const RunStats& o);
};

/// A budget (time or cache memory) ran out. Carries the stats gathered so far.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, RunStats stats)
      : std::runtime_error(what), stats_(stats) {}
  const RunStats& stats() const { return stats_; }

 private:
  RunStats stats_;
};

/// Unassigned variables and the clauses connecting them. Both lists sorted.
struct Component {
  std::vector<VarId> vars;
  std::vector<std::uint32_t> clauses;
};

using Clock = std::chrono::steady_clock;

struct EngineOptions {
  bool use_cache = true;
  std::size_t cache_limit_bytes = std::size_t{1} << 30;
  std::optional<Clock::time_point> deadline;
  /// Record every decision variable (see Engine::decision_log()).
  bool trace_decisions = false;
  /// Random tie-breaking among equally scored decision candidates.
  std::optional<std::uint64_t> seed;
};

struct TrailEntry {
  Lit lit;
  std::uint32_t level = 0;
  bool decision = false;
};

enum class Propagation { Ok, Conflict };

struct EnumerationResult {
  bool exceeded = false;
  BigCount count;  // meaningful when !exceeded
  double seconds = 0.0;
};

/// Exact-key component cache with LRU eviction under a byte cap.
class ComponentCache {
 public:
  explicit ComponentCache(std::size_t limit_bytes) : limit_(limit_bytes) {}

  const BigCount* find(const std::string& key);
  /// Throws ResourceLimitError if the entry alone exceeds the cap.
  void store(std::string key, BigCount value, const RunStats& stats);

  std::size_t entries() const { return index_.size(); }
  std::size_t bytes() const { return bytes_; }
  std::size_t peak_bytes() const { return peak_; }
  void clear();

 private:
  using Entry = std::pair<std::string, BigCount>;
  static std::size_t entry_bytes(const Entry& e);

  std::size_t limit_;
  std::size_t bytes_ = 0;
  std::size_t peak_ = 0;
  std::list<Entry> lru_;  // most recent at front
  std::unordered_map<std::string_view, std::list<Entry>::iterator> index_;
};

/// Component-caching answer-set counter over F & G. Branches only on
/// non-copy variables; copy variables are set by propagation alone. A
/// component whose remaining variables are all copy variables counts 0.
///
/// Single-threaded. Separate engines over the same PairFormula are independent.
class Engine {
 public:
  explicit Engine(const PairFormula& pair, EngineOptions options = {});

  /// Number of answer sets consistent with `assumptions` (literals over
  /// non-copy variables, asserted at level 0).
  BigCount count(std::span<const Lit> assumptions = {});

  /// Depth-first enumeration without decomposition or caching. Stops once
  /// more than `limit` answer sets have been seen.
  EnumerationResult enumerate_up_to(std::uint64_t limit);

  // Step-level interface. count() and enumerate_up_to() are built from these.

  /// Clears the trail and asserts all unit clauses at level 0. Returns
  /// Conflict if the formula is refuted without search.
  Propagation restart(std::span<const Lit> assumptions = {});
  /// Opens a decision level and assigns `lit` as its decision.
  void decide_literal(Lit lit);
  void backtrack();  // undo the most recent decision level
  Propagation unit_propagate();

  /// Highest residual-occurrence non-copy variable; nullopt when only copy
  /// variables remain unassigned.
  std::optional<VarId> decide(const Component& component);
  /// Splits the residual of `component` into variable-disjoint pieces. Free
  /// variables (in no unsatisfied clause) become singleton pieces.
  std::vector<Component> decompose(const Component& component) const;
  /// Every variable and clause of the formula.
  Component root_component() const;
  /// Precondition: `component` comes from decompose() at the current trail.
  BigCount count_component(const Component& component);

  std::optional<bool> value(VarId v) const;
  bool clause_satisfied(std::uint32_t clause) const;
  const std::vector<TrailEntry>& trail() const { return trail_; }
  const std::vector<VarId>& decision_log() const { return decision_log_; }
  const RunStats& stats() const { return stats_; }
  std::size_t decision_level() const { return level_starts_.size(); }
  const Clause& clause(std::uint32_t id) const { return sorted_[id]; }
  std::size_t clause_count() const { return sorted_.size(); }

 private:
  enum : std::int8_t { kFalse = 0, kTrue = 1, kUnassigned = 2 };

  bool lit_true(Lit l) const { return assign_[l.var()] == (l.negated() ? kFalse : kTrue); }
  bool lit_false(Lit l) const { return assign_[l.var()] == (l.negated() ? kTrue : kFalse); }
  bool unassigned(VarId v) const { return assign_[v] == kUnassigned; }
  bool enqueue(Lit l, bool decision);
  std::string cache_key(const Component& component) const;
  void check_deadline();
  bool enumerate_rec(std::size_t next, std::uint64_t limit, std::uint64_t& found);
  bool leaf_is_answer_set() const;

  const PairFormula& pair_;
  EngineOptions options_;
  std::vector<Clause> sorted_;   // canonical literal order, F then G
  std::vector<Clause> watched_;  // same clauses, first two literals watched
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::int8_t> assign_;
  std::vector<std::uint32_t> level_of_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> level_starts_;
  std::size_t qhead_ = 0;
  bool root_conflict_ = false;
  std::vector<VarId> decision_log_;
  std::vector<VarId> branch_order_;
  mutable std::vector<std::int32_t> slot_;
  std::vector<std::uint32_t> score_;
  ComponentCache cache_;
  RunStats stats_;
  std::optional<std::mt19937_64> rng_;
  std::uint32_t deadline_tick_ = 0;
};

struct HybridResult {
  BigCount count;
  bool counted = false;  // true when enumeration overflowed and the counter ran
  RunStats stats;
  double enumerate_seconds = 0.0;
};

/// Enumerate up to `threshold` answer sets; if there are more, run the
/// component counter with whatever remains of `budget`.
HybridResult hybrid_count(const PairFormula& pair, std::uint64_t threshold,
                          std::optional<std::chrono::duration<double>> budget,
                          EngineOptions options = {});

}  // namespace ascount
