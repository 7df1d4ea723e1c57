#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ascount/analysis.hpp"
#include "ascount/program.hpp"

namespace ascount {

using VarId = std::uint32_t;

/// Literal packed as 2 * var + negated.
class Lit {
 public:
  constexpr Lit() = default;
  static constexpr Lit pos(VarId v) { return Lit(v << 1); }
  static constexpr Lit neg(VarId v) { return Lit((v << 1) | 1u); }
  static constexpr Lit make(VarId v, bool value) { return value ? pos(v) : neg(v); }
  static constexpr Lit from_code(std::uint32_t code) { return Lit(code); }

  constexpr VarId var() const { return code_ >> 1; }
  constexpr bool negated() const { return code_ & 1u; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const { return Lit(code_ ^ 1u); }

  /// Signed 1-based DIMACS integer.
  std::int64_t dimacs() const {
    auto v = static_cast<std::int64_t>(var()) + 1;
    return negated() ? -v : v;
  }

  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  constexpr explicit Lit(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

using Clause = std::vector<Lit>;

/// Sorts by variable, drops duplicate literals. Returns nullopt for a
/// tautology (clause holding a literal and its negation).
std::optional<Clause> canonical_clause(Clause clause);

struct Cnf {
  std::vector<Clause> clauses;

  std::size_t size() const { return clauses.size(); }
  bool empty() const { return clauses.empty(); }
  /// Canonicalizes and appends unless tautological.
  void add(Clause clause);
};

enum class VarKind : std::uint8_t { Original, BodyAux, Copy };

struct VarInfo {
  VarKind kind = VarKind::Original;
  /// Atom for Original and Copy; index into PairFormula::aux_bodies for BodyAux.
  std::uint32_t origin = 0;
};

/// Conjunction of literals standing for one distinct rule body.
struct AuxBody {
  std::vector<AtomId> pos;
  std::vector<AtomId> neg;
};

/// The pair (F, G): F is the clausified completion plus constraint clauses,
/// G the copy-operation clauses. Original variables share indices with atoms.
struct PairFormula {
  Cnf f;
  Cnf g;
  std::vector<VarInfo> vars;
  std::vector<AuxBody> aux_bodies;
  std::vector<VarId> copy_vars;         // sorted
  std::vector<VarId> copy_of;           // per atom; kNoCopy unless a loop atom
  std::size_t n_original = 0;
  bool tight = true;

  static constexpr VarId kNoCopy = ~VarId{0};

  std::size_t var_count() const { return vars.size(); }
  bool is_copy(VarId v) const { return vars[v].kind == VarKind::Copy; }
  std::size_t aux_count() const { return aux_bodies.size(); }
};

/// Variable table seeded with one Original variable per atom.
struct VarTable {
  std::vector<VarInfo> vars;
  std::vector<AuxBody> aux_bodies;
};

VarTable original_vars(const Program& program);

/// Clark's completion. For an atom with one supporting body the biconditional
/// is clausified directly; with two or more, bodies of length >= 2 get a shared
/// auxiliary variable with both implication directions. Contradictory bodies
/// are skipped and identical bodies merged. Constraint clauses are appended.
Cnf clark_completion(const Program& program, VarTable& table);

/// Copy-operation clauses. Allocates one Copy variable per loop atom, then
/// emits `v' -> v` for each and, for every rule with a loop-atom head x,
/// `a1' & .. & ak' & b1 & .. & bm & !c1 & .. & !cn -> x'` where the ai are the
/// positive body atoms that are loop atoms.
Cnf copy_operation(const Program& program, const LoopInfo& info, VarTable& table);

PairFormula build_pair(const Program& program);

/// Clause-list export of F & G with `c orig`, `c aux`, `c copy` class lines.
std::string emit_dimacs(const PairFormula& pair);

}  // namespace ascount
