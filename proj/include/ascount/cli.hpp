#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ascount/big_count.hpp"
#include "ascount/engine.hpp"

namespace ascount::cli {

enum class Mode { Count, Enumerate, Hybrid, Oracle };

struct RunReport {
  Mode mode = Mode::Count;
  std::optional<BigCount> answer_count;  // nullopt: enumeration limit exceeded
  RunStats stats;
  double wall_seconds = 0.0;
  std::string instance;
  std::string path;  // hybrid only: "enumeration" or "counting"
  bool tight = true;
  std::size_t n_atoms = 0;
  std::size_t n_rules = 0;
  std::size_t n_loop_atoms = 0;
  std::size_t n_copy_vars = 0;
  std::size_t n_clauses_f = 0;
  std::size_t n_clauses_g = 0;
};

/// Single-line JSON object.
std::string report_json(const RunReport& report);

/// Exit codes: 0 success, 1 parse or usage error, 2 resource limit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ascount::cli
