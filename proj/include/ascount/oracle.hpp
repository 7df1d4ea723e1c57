#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ascount/big_count.hpp"
#include "ascount/encode.hpp"
#include "ascount/program.hpp"

// Reference implementations that share no code with the counting engine.
// Everything here is exhaustive or naive on purpose; the cost is exponential.
namespace ascount::oracle {

/// Interpretation as a membership mask over at(P).
using Interpretation = std::vector<bool>;

struct PositiveRule {
  AtomId head;
  std::vector<AtomId> body;
};

/// { head(r) <- body+(r) | body-(r) disjoint from m }. Constraints are not
/// part of the reduct.
std::vector<PositiveRule> gl_reduct(const Program& program, const Interpretation& m);

/// Least model of a positive program by naive fixpoint iteration.
Interpretation least_model(const std::vector<PositiveRule>& rules, std::size_t atom_count);

bool satisfies_constraints(const Program& program, const Interpretation& m);

bool is_answer_set(const Program& program, const Interpretation& m);

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tests every interpretation. Throws CapExceeded past `max_atoms`.
BigCount brute_force_count(const Program& program, std::size_t max_atoms = 24);

/// All answer sets, each as a sorted atom list. Same cap as brute_force_count.
std::vector<std::vector<AtomId>> brute_force_answer_sets(const Program& program,
                                                         std::size_t max_atoms = 24);

/// Partial assignment over formula variables.
using Assignment = std::vector<std::optional<bool>>;

struct Residual {
  bool conflict = false;
  std::vector<Clause> clauses;  // surviving literals of unsatisfied clauses
  Assignment assignment;        // input extended with propagated units
};

/// phi|tau: drop satisfied clauses, shrink falsified literals, assign units,
/// repeat to fixpoint. Clauses with no surviving literal set `conflict`.
Residual residual(const std::vector<Clause>& cnf, Assignment tau);

/// Copy(P)|tau is empty: propagation over G leaves no clause, causes no
/// conflict and assigns every copy variable.
bool copy_residual_empty(const PairFormula& pair, const Assignment& tau);

/// tau (total over original variables) extends to a model of F.
bool models_completion(const PairFormula& pair, const Assignment& tau);

/// Assignment over all pair variables with originals from `m`, rest unset.
Assignment atom_assignment(const PairFormula& pair, const Interpretation& m);

}  // namespace ascount::oracle
