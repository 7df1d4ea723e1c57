#include "ascount/engine.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace ascount {

RunStats& RunStats::operator+=(const RunStats& o) {
  decisions += o.decisions;
  propagations += o.propagations;
  bcp_seconds += o.bcp_seconds;
  cache_lookups += o.cache_lookups;
  cache_hits += o.cache_hits;
  cache_entries = std::max(cache_entries, o.cache_entries);
  peak_cache_bytes = std::max(peak_cache_bytes, o.peak_cache_bytes);
  return *this;
}

// ---------------------------------------------------------------------------
// ComponentCache

std::size_t ComponentCache::entry_bytes(const Entry& e) {
  // list node + hash bucket overhead, roughly
  return e.first.capacity() + e.second.byte_size() + 96;
}

const BigCount* ComponentCache::find(const std::string& key) {
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  lru_.splice(lru_.begin(), lru_, it->second);
  return &it->second->second;
}

void ComponentCache::store(std::string key, BigCount value, const RunStats& stats) {
  if (index_.count(key)) return;
  Entry entry{std::move(key), std::move(value)};
  const std::size_t need = entry_bytes(entry);
  if (need > limit_) throw ResourceLimitError("component cache limit too small for a single entry", stats);
  while (bytes_ + need > limit_ && !lru_.empty()) {
    bytes_ -= entry_bytes(lru_.back());
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
  lru_.push_front(std::move(entry));
  index_.emplace(lru_.front().first, lru_.begin());
  bytes_ += need;
  peak_ = std::max(peak_, bytes_);
}

void ComponentCache::clear() {
  index_.clear();
  lru_.clear();
  bytes_ = 0;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(const PairFormula& pair, EngineOptions options)
    : pair_(pair),
      options_(options),
      assign_(pair.var_count(), kUnassigned),
      level_of_(pair.var_count(), 0),
      slot_(pair.var_count(), -1),
      score_(pair.var_count(), 0),
      cache_(options.cache_limit_bytes) {
  sorted_.reserve(pair.f.size() + pair.g.size());
  for (const Cnf* cnf : {&pair.f, &pair.g})
    for (const Clause& c : cnf->clauses) sorted_.push_back(c);
  watched_ = sorted_;
  watches_.resize(2 * pair.var_count());
  for (std::uint32_t id = 0; id < watched_.size(); ++id) {
    const Clause& c = watched_[id];
    if (c.size() < 2) continue;
    watches_[c[0].code()].push_back(id);
    watches_[c[1].code()].push_back(id);
  }
  for (VarId v = 0; v < pair.var_count(); ++v)
    if (!pair.is_copy(v)) branch_order_.push_back(v);
  if (options_.seed) rng_.emplace(*options_.seed);
}

std::optional<bool> Engine::value(VarId v) const {
  if (assign_[v] == kUnassigned) return std::nullopt;
  return assign_[v] == kTrue;
}

bool Engine::clause_satisfied(std::uint32_t clause) const {
  for (Lit l : sorted_[clause])
    if (lit_true(l)) return true;
  return false;
}

bool Engine::enqueue(Lit l, bool decision) {
  if (lit_true(l)) return true;
  if (lit_false(l)) return false;
  assign_[l.var()] = l.negated() ? kFalse : kTrue;
  const auto level = static_cast<std::uint32_t>(level_starts_.size());
  level_of_[l.var()] = level;
  trail_.push_back({l, level, decision});
  if (!decision) ++stats_.propagations;
  return true;
}

Propagation Engine::restart(std::span<const Lit> assumptions) {
  while (!level_starts_.empty()) backtrack();
  for (const TrailEntry& e : trail_) assign_[e.lit.var()] = kUnassigned;
  trail_.clear();
  qhead_ = 0;
  root_conflict_ = false;
  decision_log_.clear();
  for (const Clause& c : sorted_) {
    if (c.empty()) root_conflict_ = true;
    else if (c.size() == 1 && !enqueue(c[0], false)) root_conflict_ = true;
  }
  for (Lit a : assumptions)
    if (!enqueue(a, false)) root_conflict_ = true;
  if (root_conflict_) return Propagation::Conflict;
  return unit_propagate();
}

void Engine::decide_literal(Lit lit) {
  assert(!pair_.is_copy(lit.var()));
  assert(unassigned(lit.var()));
  level_starts_.push_back(trail_.size());
  enqueue(lit, true);
  ++stats_.decisions;
  if (options_.trace_decisions) decision_log_.push_back(lit.var());
}

void Engine::backtrack() {
  const std::size_t start = level_starts_.back();
  level_starts_.pop_back();
  for (std::size_t i = start; i < trail_.size(); ++i) assign_[trail_[i].lit.var()] = kUnassigned;
  trail_.resize(start);
  qhead_ = std::min(qhead_, start);
}

Propagation Engine::unit_propagate() {
  const auto t0 = Clock::now();
  Propagation result = Propagation::Ok;
  while (qhead_ < trail_.size() && result == Propagation::Ok) {
    const Lit falsified = ~trail_[qhead_++].lit;
    auto& ws = watches_[falsified.code()];
    std::size_t keep = 0;
    std::size_t i = 0;
    for (; i < ws.size(); ++i) {
      const std::uint32_t id = ws[i];
      Clause& c = watched_[id];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (lit_true(c[0])) {
        ws[keep++] = id;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (!lit_false(c[k])) {
          std::swap(c[1], c[k]);
          watches_[c[1].code()].push_back(id);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = id;
      if (!enqueue(c[0], false)) {
        result = Propagation::Conflict;
        ++i;
        break;
      }
    }
    for (; i < ws.size(); ++i) ws[keep++] = ws[i];
    ws.resize(keep);
  }
  if (result == Propagation::Conflict) qhead_ = trail_.size();
  stats_.bcp_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

Component Engine::root_component() const {
  Component c;
  c.vars.resize(pair_.var_count());
  std::iota(c.vars.begin(), c.vars.end(), VarId{0});
  c.clauses.resize(sorted_.size());
  std::iota(c.clauses.begin(), c.clauses.end(), std::uint32_t{0});
  return c;
}

std::optional<VarId> Engine::decide(const Component& component) {
  for (std::uint32_t id : component.clauses) {
    if (clause_satisfied(id)) continue;
    for (Lit l : sorted_[id])
      if (unassigned(l.var())) ++score_[l.var()];
  }
  std::optional<VarId> best;
  std::uint32_t best_score = 0;
  std::uint64_t ties = 0;
  for (VarId v : component.vars) {
    if (!unassigned(v) || pair_.is_copy(v)) continue;
    const std::uint32_t s = score_[v];
    if (!best || s > best_score) {
      best = v;
      best_score = s;
      ties = 1;
    } else if (s == best_score && rng_) {
      // reservoir sampling over equally scored candidates
      ++ties;
      if (std::uniform_int_distribution<std::uint64_t>(0, ties - 1)(*rng_) == 0) best = v;
    }
  }
  for (std::uint32_t id : component.clauses)
    for (Lit l : sorted_[id]) score_[l.var()] = 0;
  return best;
}

std::vector<Component> Engine::decompose(const Component& component) const {
  std::vector<VarId> free_vars;
  std::vector<std::int32_t> parent;
  for (VarId v : component.vars) {
    if (!unassigned(v)) continue;
    slot_[v] = static_cast<std::int32_t>(parent.size());
    parent.push_back(slot_[v]);
    free_vars.push_back(v);
  }
  auto find = [&](std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<std::uint32_t> residual;
  for (std::uint32_t id : component.clauses) {
    if (clause_satisfied(id)) continue;
    residual.push_back(id);
    std::int32_t first = -1;
    for (Lit l : sorted_[id]) {
      if (!unassigned(l.var())) continue;
      const std::int32_t r = find(slot_[l.var()]);
      if (first < 0) first = r;
      else if (r != first) parent[r] = first;
    }
    assert(first >= 0 && "unsatisfied clause without free literal after propagation");
  }

  std::vector<std::int32_t> comp_of(parent.size(), -1);
  std::vector<Component> out;
  for (std::size_t i = 0; i < free_vars.size(); ++i) {
    const std::int32_t r = find(static_cast<std::int32_t>(i));
    if (comp_of[r] < 0) {
      comp_of[r] = static_cast<std::int32_t>(out.size());
      out.emplace_back();
    }
    out[comp_of[r]].vars.push_back(free_vars[i]);
  }
  for (std::uint32_t id : residual) {
    for (Lit l : sorted_[id]) {
      if (!unassigned(l.var())) continue;
      out[comp_of[find(slot_[l.var()])]].clauses.push_back(id);
      break;
    }
  }
  for (VarId v : free_vars) slot_[v] = -1;
  return out;
}

std::string Engine::cache_key(const Component& component) const {
  // Variables are renamed to their rank in the component, so components that
  // differ only by an order-preserving renaming share one entry.
  assert(std::is_sorted(component.vars.begin(), component.vars.end()));
  auto local = [&](Lit l) {
    const auto rank = std::lower_bound(component.vars.begin(), component.vars.end(), l.var()) -
                      component.vars.begin();
    return static_cast<std::uint32_t>(2 * rank + (l.negated() ? 1 : 0));
  };
  std::vector<std::vector<std::uint32_t>> clauses;
  clauses.reserve(component.clauses.size());
  for (std::uint32_t id : component.clauses) {
    std::vector<std::uint32_t> c;
    for (Lit l : sorted_[id])
      if (unassigned(l.var())) c.push_back(local(l));
    clauses.push_back(std::move(c));
  }
  std::sort(clauses.begin(), clauses.end());

  std::string key;
  auto put = [&key](std::uint32_t x) {
    do {
      auto byte = static_cast<char>(x & 0x7f);
      x >>= 7;
      if (x) byte = static_cast<char>(byte | 0x80);
      key.push_back(byte);
    } while (x);
  };
  put(static_cast<std::uint32_t>(component.vars.size()));
  for (std::size_t i = 0; i < component.vars.size(); i += 7) {
    std::uint32_t bits = 0;
    for (std::size_t j = i; j < std::min(i + 7, component.vars.size()); ++j)
      bits |= static_cast<std::uint32_t>(pair_.is_copy(component.vars[j])) << (j - i);
    put(bits);
  }
  for (const auto& c : clauses) {
    put(static_cast<std::uint32_t>(c.size()));
    for (std::uint32_t code : c) put(code);
  }
  return key;
}

void Engine::check_deadline() {
  if (!options_.deadline) return;
  if ((++deadline_tick_ & 0xff) != 0) return;
  if (Clock::now() >= *options_.deadline) throw ResourceLimitError("time budget exhausted", stats_);
}

BigCount Engine::count_component(const Component& component) {
  if (component.clauses.empty()) {
    // free variables: an unsupported copy variable can never be derived
    for (VarId v : component.vars)
      if (pair_.is_copy(v)) return 0;
    return BigCount::pow2(component.vars.size());
  }
  if (std::all_of(component.vars.begin(), component.vars.end(),
                  [&](VarId v) { return pair_.is_copy(v); }))
    return 0;
  check_deadline();

  std::string key;
  if (options_.use_cache) {
    key = cache_key(component);
    ++stats_.cache_lookups;
    if (const BigCount* hit = cache_.find(key)) {
      ++stats_.cache_hits;
      return *hit;
    }
  }

  const std::optional<VarId> v = decide(component);
  assert(v && "component with non-copy variables has a decision candidate");
  BigCount total;
  for (bool polarity : {true, false}) {
    decide_literal(Lit::make(*v, polarity));
    BigCount branch;
    if (unit_propagate() == Propagation::Ok) {
      branch = 1;
      for (const Component& sub : decompose(component)) {
        branch *= count_component(sub);
        if (branch.is_zero()) break;
      }
    }
    backtrack();
    total += branch;
  }

  if (options_.use_cache) {
    cache_.store(std::move(key), total, stats_);
    stats_.cache_entries = cache_.entries();
    stats_.peak_cache_bytes = std::max(stats_.peak_cache_bytes, cache_.peak_bytes());
  }
  return total;
}

BigCount Engine::count(std::span<const Lit> assumptions) {
  stats_ = {};
  cache_.clear();
  if (restart(assumptions) == Propagation::Conflict) return 0;
  BigCount result = 1;
  for (const Component& c : decompose(root_component())) {
    result *= count_component(c);
    if (result.is_zero()) break;
  }
  return result;
}

bool Engine::leaf_is_answer_set() const {
  for (VarId v : pair_.copy_vars)
    if (unassigned(v)) return false;
  for (std::uint32_t id = 0; id < sorted_.size(); ++id)
    if (!clause_satisfied(id)) return false;
  return true;
}

bool Engine::enumerate_rec(std::size_t next, std::uint64_t limit, std::uint64_t& found) {
  check_deadline();
  while (next < branch_order_.size() && !unassigned(branch_order_[next])) ++next;
  if (next == branch_order_.size()) {
    if (leaf_is_answer_set()) ++found;
    return found > limit;
  }
  const VarId v = branch_order_[next];
  for (bool polarity : {true, false}) {
    decide_literal(Lit::make(v, polarity));
    bool stop = false;
    if (unit_propagate() == Propagation::Ok) stop = enumerate_rec(next + 1, limit, found);
    backtrack();
    if (stop) return true;
  }
  return false;
}

EnumerationResult Engine::enumerate_up_to(std::uint64_t limit) {
  const auto t0 = Clock::now();
  stats_ = {};
  EnumerationResult result;
  std::uint64_t found = 0;
  if (restart() == Propagation::Ok) result.exceeded = enumerate_rec(0, limit, found);
  if (!result.exceeded) result.count = found;
  result.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

HybridResult hybrid_count(const PairFormula& pair, std::uint64_t threshold,
                          std::optional<std::chrono::duration<double>> budget,
                          EngineOptions options) {
  if (budget)
    options.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(*budget);
  HybridResult out;
  Engine enumerator(pair, options);
  const EnumerationResult e = enumerator.enumerate_up_to(threshold);
  out.stats = enumerator.stats();
  out.enumerate_seconds = e.seconds;
  if (!e.exceeded) {
    out.count = e.count;
    return out;
  }
  Engine counter(pair, options);
  try {
    out.count = counter.count();
  } catch (const ResourceLimitError& err) {
    RunStats partial = out.stats;
    partial += err.stats();
    throw ResourceLimitError(err.what(), partial);
  }
  out.stats += counter.stats();
  out.counted = true;
  return out;
}

}  // namespace ascount
