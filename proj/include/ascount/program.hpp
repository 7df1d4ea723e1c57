#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ascount {

using AtomId = std::uint32_t;

/// Interned atom symbols. Ids are dense and assigned in first-seen order.
class SymbolTable {
 public:
  AtomId intern(std::string_view symbol);

  /// Returns the id of `symbol` if it was interned, or size() otherwise.
  AtomId find(std::string_view symbol) const;

  const std::string& symbol(AtomId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, AtomId> index_;
};

/// a :- b1, ..., bm, not c1, ..., not cn.
/// Both bodies are kept sorted and duplicate-free.
struct Rule {
  AtomId head = 0;
  std::vector<AtomId> pos_body;
  std::vector<AtomId> neg_body;

  /// Some atom occurs both positively and negatively, so the body never holds.
  bool body_unsatisfiable() const;
  std::size_t body_size() const { return pos_body.size() + neg_body.size(); }

  friend bool operator==(const Rule&, const Rule&) = default;
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// Headless statement `:- pos, not neg.`
struct Constraint {
  std::vector<AtomId> pos;
  std::vector<AtomId> neg;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

/// Sorts and deduplicates an atom list in place.
void normalize_atoms(std::vector<AtomId>& atoms);

/// A ground normal logic program plus integrity constraints.
class Program {
 public:
  AtomId intern(std::string_view symbol) { return atoms_.intern(symbol); }

  /// Adds a rule with normalized bodies. Returns false if an identical rule
  /// was already present (programs are rule sets).
  bool add_rule(Rule rule);
  bool add_constraint(Constraint constraint);

  /// Appends without deduplication. Only used to build programs that
  /// validate() should complain about.
  void add_rule_unchecked(Rule rule);

  const SymbolTable& atoms() const { return atoms_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t atom_count() const { return atoms_.size(); }
  bool empty() const { return rules_.empty() && constraints_.empty() && atoms_.size() == 0; }

 private:
  SymbolTable atoms_;
  std::vector<Rule> rules_;
  std::vector<Constraint> constraints_;
  std::set<Rule> rule_set_;
  std::set<Constraint> constraint_set_;
};

enum class DiagnosticKind { BodyUnsatisfiable, NeverInHead, DuplicateRule };

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

/// Warnings about suspicious but legal program content. Never mutates.
std::vector<Diagnostic> validate(const Program& program);

/// Copies `other` into `into`, prefixing every symbol so the atom sets are
/// disjoint. Used to build disjoint unions of programs.
void append_renamed(Program& into, const Program& other, std::string_view prefix);

}  // namespace ascount
