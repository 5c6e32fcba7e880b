#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "drtomo/core.hpp"
#include "drtomo/subsolvers.hpp"

namespace drtomo {

/// Raised for instances outside the exact solver's reach (k != 2 or
/// epsilon != 0).
class UnsupportedInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-strip counts of single-one (alpha), two-one (beta) and three-one
/// (gamma) blocks by their contribution pattern. Index 0 refers to the first
/// line of the strip, 1 to the second; beta_prime counts the blocks that put
/// one one in each line.
struct StripCase {
  enum class Tag { Case1, Case2, Case3, Infeasible };
  Tag tag = Tag::Infeasible;
  int alpha0 = 0;
  int alpha1 = 0;
  int beta0 = 0;
  int beta_prime = 0;
  int beta1 = 0;
  int gamma0 = 0;
  int gamma1 = 0;

  bool feasible() const noexcept { return tag != Tag::Infeasible; }
};

/// r0 >= r1 required (throws std::invalid_argument otherwise); v1, v2, v3
/// count the strip's blocks of value 1, 2, 3.
StripCase classify_strip(int r0, int r1, int v1, int v2, int v3);

/// Swap flags per row strip and per column strip.
struct StripPermutation {
  std::vector<std::uint8_t> rows;
  std::vector<std::uint8_t> cols;

  bool is_identity() const;
};

/// Orders the two line sums of every strip decreasingly. Requires k = 2.
std::pair<Instance, StripPermutation> properize(const Instance& inst);
Instance unproperize(const Instance& inst, const StripPermutation& perm);
BinaryImage unproperize(const BinaryImage& img, const StripPermutation& perm);

/// The five single-value sub-instances of a proper k = 2 instance, indexed by
/// nu, together with the strip classifications they were derived from.
struct Decomposition {
  std::array<SubInstance, 5> subs;
  std::vector<StripCase> row_cases;
  std::vector<StripCase> col_cases;
};

/// nullopt when some strip is infeasible (negative residual sums after the
/// full blocks are removed, failed mass balance, or an interval miss).
std::optional<Decomposition> derive_sub_sums(const Instance& proper);

/// Exact solver for k = 2, epsilon = 0. Returns a reduced solution, or
/// nullopt when none exists. Throws UnsupportedInstance for other k or
/// epsilon and std::invalid_argument for malformed instances.
std::optional<BinaryImage> solve_dr(const Instance& inst);

/// nullopt when infeasible, otherwise whether the solution is unique.
std::optional<bool> check_unique(const Instance& inst);

}  // namespace drtomo
