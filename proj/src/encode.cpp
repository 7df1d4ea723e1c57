#include "ascount/encode.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ascount {

std::optional<Clause> canonical_clause(Clause clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 1; i < clause.size(); ++i)
    if (clause[i].var() == clause[i - 1].var()) return std::nullopt;
  return clause;
}

void Cnf::add(Clause clause) {
  if (auto c = canonical_clause(std::move(clause))) clauses.push_back(std::move(*c));
}

VarTable original_vars(const Program& program) {
  VarTable t;
  t.vars.resize(program.atom_count());
  for (AtomId a = 0; a < program.atom_count(); ++a) t.vars[a] = {VarKind::Original, a};
  return t;
}

namespace {

using BodyKey = std::pair<std::vector<AtomId>, std::vector<AtomId>>;

std::vector<Lit> body_literals(const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
  std::vector<Lit> lits;
  lits.reserve(pos.size() + neg.size());
  for (AtomId b : pos) lits.push_back(Lit::pos(b));
  for (AtomId c : neg) lits.push_back(Lit::neg(c));
  return lits;
}

}  // namespace

Cnf clark_completion(const Program& program, VarTable& table) {
  const std::size_t n = program.atom_count();
  std::vector<std::vector<const Rule*>> defining(n);
  for (const Rule& r : program.rules()) defining[r.head].push_back(&r);

  Cnf cnf;
  std::map<BodyKey, VarId> aux_of_body;

  for (AtomId a = 0; a < n; ++a) {
    // distinct satisfiable bodies; an empty body makes `a` a fact
    std::vector<BodyKey> bodies;
    bool fact = false;
    for (const Rule* r : defining[a]) {
      if (r->body_unsatisfiable()) continue;
      if (r->body_size() == 0) fact = true;
      BodyKey key{r->pos_body, r->neg_body};
      if (std::find(bodies.begin(), bodies.end(), key) == bodies.end())
        bodies.push_back(std::move(key));
    }
    const Lit head = Lit::pos(a);
    if (fact) {
      cnf.add({head});
      continue;
    }
    if (bodies.empty()) {
      cnf.add({~head});
      continue;
    }
    if (bodies.size() == 1) {
      auto lits = body_literals(bodies[0].first, bodies[0].second);
      Clause back{head};
      for (Lit l : lits) {
        cnf.add({~head, l});
        back.push_back(~l);
      }
      cnf.add(std::move(back));
      continue;
    }
    Clause support{~head};
    for (const auto& body : bodies) {
      auto lits = body_literals(body.first, body.second);
      if (lits.size() == 1) {
        support.push_back(lits[0]);
        cnf.add({head, ~lits[0]});
        continue;
      }
      auto [it, fresh] = aux_of_body.try_emplace(body, static_cast<VarId>(table.vars.size()));
      const VarId aux = it->second;
      if (fresh) {
        table.vars.push_back({VarKind::BodyAux, static_cast<std::uint32_t>(table.aux_bodies.size())});
        table.aux_bodies.push_back({body.first, body.second});
        Clause define{Lit::pos(aux)};
        for (Lit l : lits) {
          cnf.add({Lit::neg(aux), l});
          define.push_back(~l);
        }
        cnf.add(std::move(define));
      }
      support.push_back(Lit::pos(aux));
      cnf.add({Lit::neg(aux), head});
    }
    cnf.add(std::move(support));
  }

  for (const Constraint& c : program.constraints()) {
    Clause clause;
    for (AtomId b : c.pos) clause.push_back(Lit::neg(b));
    for (AtomId d : c.neg) clause.push_back(Lit::pos(d));
    cnf.add(std::move(clause));
  }
  return cnf;
}

Cnf copy_operation(const Program& program, const LoopInfo& info, VarTable& table) {
  std::vector<VarId> copy_of(program.atom_count(), PairFormula::kNoCopy);
  for (AtomId v : info.loop_atoms) {
    copy_of[v] = static_cast<VarId>(table.vars.size());
    table.vars.push_back({VarKind::Copy, v});
  }

  Cnf cnf;
  for (AtomId v : info.loop_atoms) cnf.add({Lit::neg(copy_of[v]), Lit::pos(v)});
  for (const Rule& r : program.rules()) {
    if (!info.is_loop_atom[r.head]) continue;
    Clause clause{Lit::pos(copy_of[r.head])};
    for (AtomId b : r.pos_body)
      clause.push_back(info.is_loop_atom[b] ? Lit::neg(copy_of[b]) : Lit::neg(b));
    for (AtomId c : r.neg_body) clause.push_back(Lit::pos(c));
    cnf.add(std::move(clause));
  }
  return cnf;
}

PairFormula build_pair(const Program& program) {
  const LoopInfo info = compute_loop_atoms(build_dep_graph(program));
  VarTable table = original_vars(program);
  PairFormula pair;
  pair.f = clark_completion(program, table);
  pair.g = copy_operation(program, info, table);
  pair.vars = std::move(table.vars);
  pair.aux_bodies = std::move(table.aux_bodies);
  pair.n_original = program.atom_count();
  pair.tight = is_tight(info);
  pair.copy_of.assign(program.atom_count(), PairFormula::kNoCopy);
  for (VarId v = 0; v < pair.vars.size(); ++v)
    if (pair.vars[v].kind == VarKind::Copy) {
      pair.copy_vars.push_back(v);
      pair.copy_of[pair.vars[v].origin] = v;
    }
  return pair;
}

std::string emit_dimacs(const PairFormula& pair) {
  std::ostringstream out;
  auto class_line = [&](const char* name, VarKind kind) {
    std::ostringstream ids;
    bool any = false;
    for (VarId v = 0; v < pair.vars.size(); ++v)
      if (pair.vars[v].kind == kind) {
        ids << ' ' << (v + 1);
        any = true;
      }
    if (any) out << "c " << name << ids.str() << '\n';
  };
  class_line("orig", VarKind::Original);
  class_line("aux", VarKind::BodyAux);
  class_line("copy", VarKind::Copy);
  out << "p cnf " << pair.var_count() << ' ' << (pair.f.size() + pair.g.size()) << '\n';
  for (const Cnf* cnf : {&pair.f, &pair.g})
    for (const Clause& c : cnf->clauses) {
      for (Lit l : c) out << l.dimacs() << ' ';
      out << "0\n";
    }
  return out.str();
}

}  // namespace ascount
