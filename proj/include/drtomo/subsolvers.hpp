#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "drtomo/core.hpp"

namespace drtomo {

/// Pair of line sums (first line, second line) of one strip.
using PairSums = std::pair<int, int>;

/// Restriction of a k = 2 instance to the blocks I whose value is nu.
/// Strips are indexed from 0: row strip s covers rows 2s+1 and 2s+2, column
/// strip s covers columns 2s+1 and 2s+2. Strips without blocks of I must
/// carry (0, 0).
struct SubInstance {
  int m = 0;
  int n = 0;
  int nu = 0;
  std::vector<Corner> blocks;     // I, corners with odd coordinates
  std::vector<PairSums> row_pairs;  // size n/2
  std::vector<PairSums> col_pairs;  // size m/2

  static SubInstance empty(int m, int n, int nu);
};

/// Assignment of the cells covered by the blocks of a SubInstance, as one
/// 2x2 mask per block (aligned with SubInstance::blocks).
struct PartialImage {
  std::vector<Corner> blocks;
  std::vector<BlockMask> masks;

  void paint(BinaryImage& img) const;
};

/// Row and column pair sums realized by a partial image.
bool satisfies(const SubInstance& sub, const PartialImage& part);

/// zeta/eta system: per row strip pick row_targets[s] blocks as zeta, per
/// column strip col_targets[s] blocks as eta, no block picked twice.
struct TwoColorSystem {
  int m = 0;
  int n = 0;
  std::vector<Corner> blocks;
  std::vector<int> row_targets;  // size n/2
  std::vector<int> col_targets;  // size m/2
};

enum class Color : std::uint8_t { None, Zeta, Eta };

std::optional<std::vector<Color>> solve_two_color(const TwoColorSystem& sys);

std::optional<PartialImage> fill_trivial(const SubInstance& sub);

std::optional<PartialImage> solve_dr1(const SubInstance& sub);
/// Requires a feasible sub; throws std::invalid_argument otherwise.
bool unique_dr1(const SubInstance& sub);

std::optional<PartialImage> solve_dr3(const SubInstance& sub);
bool unique_dr3(const SubInstance& sub);

/// Requires ordered pair sums (first >= second) in every strip; throws
/// std::invalid_argument otherwise. Emits only B1, B3(1) and B3(3) blocks.
std::optional<PartialImage> solve_dr2(const SubInstance& sub);
/// sol must be a solve_dr2 result for sub.
bool unique_dr2(const SubInstance& sub, const PartialImage& sol);

}  // namespace drtomo
