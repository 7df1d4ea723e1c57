#include "ascount/program.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ascount {

AtomId SymbolTable::intern(std::string_view symbol) {
  if (symbol.empty()) throw std::invalid_argument("empty atom symbol");
  auto it = index_.find(std::string(symbol));
  if (it != index_.end()) return it->second;
  auto id = static_cast<AtomId>(symbols_.size());
  symbols_.emplace_back(symbol);
  index_.emplace(symbols_.back(), id);
  return id;
}

AtomId SymbolTable::find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  return it == index_.end() ? static_cast<AtomId>(symbols_.size()) : it->second;
}

void normalize_atoms(std::vector<AtomId>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

bool Rule::body_unsatisfiable() const {
  // both sorted
  auto p = pos_body.begin();
  auto n = neg_body.begin();
  while (p != pos_body.end() && n != neg_body.end()) {
    if (*p == *n) return true;
    if (*p < *n) ++p;
    else ++n;
  }
  return false;
}

static void check_ids(const std::vector<AtomId>& atoms, std::size_t n) {
  for (AtomId a : atoms)
    if (a >= n) throw std::out_of_range("atom id not in symbol table");
}

bool Program::add_rule(Rule rule) {
  normalize_atoms(rule.pos_body);
  normalize_atoms(rule.neg_body);
  check_ids({rule.head}, atoms_.size());
  check_ids(rule.pos_body, atoms_.size());
  check_ids(rule.neg_body, atoms_.size());
  if (!rule_set_.insert(rule).second) return false;
  rules_.push_back(std::move(rule));
  return true;
}

void Program::add_rule_unchecked(Rule rule) {
  normalize_atoms(rule.pos_body);
  normalize_atoms(rule.neg_body);
  rules_.push_back(std::move(rule));
}

bool Program::add_constraint(Constraint constraint) {
  normalize_atoms(constraint.pos);
  normalize_atoms(constraint.neg);
  check_ids(constraint.pos, atoms_.size());
  check_ids(constraint.neg, atoms_.size());
  if (!constraint_set_.insert(constraint).second) return false;
  constraints_.push_back(std::move(constraint));
  return true;
}

std::vector<Diagnostic> validate(const Program& program) {
  std::vector<Diagnostic> out;
  const auto& syms = program.atoms();
  std::set<Rule> seen;
  std::vector<bool> in_head(program.atom_count(), false);
  for (std::size_t i = 0; i < program.rules().size(); ++i) {
    const Rule& r = program.rules()[i];
    in_head[r.head] = true;
    if (r.body_unsatisfiable())
      out.push_back({DiagnosticKind::BodyUnsatisfiable,
                     "rule " + std::to_string(i + 1) + " for '" + syms.symbol(r.head) +
                         "' has a contradictory body"});
    if (!seen.insert(r).second)
      out.push_back({DiagnosticKind::DuplicateRule,
                     "rule " + std::to_string(i + 1) + " for '" + syms.symbol(r.head) +
                         "' duplicates an earlier rule"});
  }
  for (AtomId a = 0; a < program.atom_count(); ++a)
    if (!in_head[a])
      out.push_back({DiagnosticKind::NeverInHead,
                     "atom '" + syms.symbol(a) + "' is never in a head and is always false"});
  return out;
}

void append_renamed(Program& into, const Program& other, std::string_view prefix) {
  std::vector<AtomId> map(other.atom_count());
  for (AtomId a = 0; a < other.atom_count(); ++a)
    map[a] = into.intern(std::string(prefix) + other.atoms().symbol(a));
  auto remap = [&](const std::vector<AtomId>& v) {
    std::vector<AtomId> r;
    r.reserve(v.size());
    for (AtomId a : v) r.push_back(map[a]);
    return r;
  };
  for (const Rule& r : other.rules())
    into.add_rule({map[r.head], remap(r.pos_body), remap(r.neg_body)});
  for (const Constraint& c : other.constraints())
    into.add_constraint({remap(c.pos), remap(c.neg)});
}

}  // namespace ascount
