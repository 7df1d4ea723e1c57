#include "ascount/oracle.hpp"

#include <string>

namespace ascount::oracle {

std::vector<PositiveRule> gl_reduct(const Program& program, const Interpretation& m) {
  std::vector<PositiveRule> out;
  for (const Rule& r : program.rules()) {
    bool blocked = false;
    for (AtomId c : r.neg_body) blocked = blocked || m[c];
    if (!blocked) out.push_back({r.head, r.pos_body});
  }
  return out;
}

Interpretation least_model(const std::vector<PositiveRule>& rules, std::size_t atom_count) {
  Interpretation model(atom_count, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const PositiveRule& r : rules) {
      if (model[r.head]) continue;
      bool fires = true;
      for (AtomId b : r.body) fires = fires && model[b];
      if (fires) {
        model[r.head] = true;
        changed = true;
      }
    }
  }
  return model;
}

bool satisfies_constraints(const Program& program, const Interpretation& m) {
  for (const Constraint& c : program.constraints()) {
    bool body = true;
    for (AtomId b : c.pos) body = body && m[b];
    for (AtomId d : c.neg) body = body && !m[d];
    if (body) return false;
  }
  return true;
}

bool is_answer_set(const Program& program, const Interpretation& m) {
  if (!satisfies_constraints(program, m)) return false;
  return least_model(gl_reduct(program, m), program.atom_count()) == m;
}

namespace {

template <typename Visit>
void for_each_interpretation(const Program& program, std::size_t max_atoms, Visit visit) {
  const std::size_t n = program.atom_count();
  if (n > max_atoms)
    throw CapExceeded("program has " + std::to_string(n) + " atoms, oracle cap is " +
                      std::to_string(max_atoms));
  Interpretation m(n, false);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1u;
    visit(m);
  }
}

}  // namespace

BigCount brute_force_count(const Program& program, std::size_t max_atoms) {
  std::uint64_t n = 0;
  for_each_interpretation(program, max_atoms, [&](const Interpretation& m) {
    if (is_answer_set(program, m)) ++n;
  });
  return n;
}

std::vector<std::vector<AtomId>> brute_force_answer_sets(const Program& program,
                                                         std::size_t max_atoms) {
  std::vector<std::vector<AtomId>> out;
  for_each_interpretation(program, max_atoms, [&](const Interpretation& m) {
    if (!is_answer_set(program, m)) return;
    std::vector<AtomId> set;
    for (AtomId a = 0; a < m.size(); ++a)
      if (m[a]) set.push_back(a);
    out.push_back(std::move(set));
  });
  return out;
}

Residual residual(const std::vector<Clause>& cnf, Assignment tau) {
  Residual out;
  auto value = [&](Lit l) -> std::optional<bool> {
    const auto& v = tau.at(l.var());
    if (!v) return std::nullopt;
    return *v != l.negated();
  };
  bool changed = true;
  while (changed) {
    changed = false;
    out.clauses.clear();
    for (const Clause& c : cnf) {
      Clause rest;
      bool sat = false;
      for (Lit l : c) {
        auto v = value(l);
        if (!v) rest.push_back(l);
        else if (*v) sat = true;
      }
      if (sat) continue;
      if (rest.empty()) {
        out.conflict = true;
        out.clauses.push_back(rest);
        continue;
      }
      if (rest.size() == 1 && !out.conflict) {
        tau[rest[0].var()] = !rest[0].negated();
        changed = true;
        continue;
      }
      out.clauses.push_back(std::move(rest));
    }
    if (out.conflict) break;
  }
  out.assignment = std::move(tau);
  return out;
}

Assignment atom_assignment(const PairFormula& pair, const Interpretation& m) {
  Assignment tau(pair.var_count());
  for (std::size_t a = 0; a < pair.n_original; ++a) tau[a] = static_cast<bool>(m[a]);
  return tau;
}

bool copy_residual_empty(const PairFormula& pair, const Assignment& tau) {
  Residual r = residual(pair.g.clauses, tau);
  if (r.conflict || !r.clauses.empty()) return false;
  for (VarId v : pair.copy_vars)
    if (!r.assignment[v]) return false;
  return true;
}

bool models_completion(const PairFormula& pair, const Assignment& tau) {
  Residual r = residual(pair.f.clauses, tau);
  return !r.conflict && r.clauses.empty();
}

}  // namespace ascount::oracle
