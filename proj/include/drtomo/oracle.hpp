#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "drtomo/core.hpp"

namespace drtomo {

struct SearchBudget {
  std::size_t max_solutions = std::numeric_limits<std::size_t>::max();
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
};

struct FixedCell {
  int p;
  int q;
  bool value;
};

struct OracleOptions {
  /// Cells whose value is prescribed before the search starts.
  std::vector<FixedCell> fixed;
  /// When set, cells that are 0 here are forced to 0.
  std::optional<BinaryImage> candidates;
};

struct OracleResult {
  std::vector<BinaryImage> solutions;  // empty for oracle_count
  std::size_t count = 0;
  /// True iff the whole search space was explored: the solution list (or
  /// count) is complete. False when a budget cap stopped the search.
  bool exhausted = true;
  std::uint64_t nodes = 0;
};

/// Depth-first search over cells in row-major order from the bottom row,
/// trying 0 before 1, with cardinality propagation on every row, column and
/// block window. Throws std::invalid_argument for malformed instances.
OracleResult oracle_solve(const Instance& inst, const SearchBudget& budget = {},
                          const OracleOptions& options = {});
OracleResult oracle_count(const Instance& inst, const SearchBudget& budget = {},
                          const OracleOptions& options = {});

}  // namespace drtomo
