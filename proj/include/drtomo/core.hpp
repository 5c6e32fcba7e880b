#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "drtomo/block_type.hpp"

namespace drtomo {

/// Lower-left corner of a block, Cartesian and 1-based: i is the column
/// (x), j the row (y). Corners compare lexicographically on (i, j).
struct Corner {
  int i = 1;
  int j = 1;

  friend auto operator<=>(const Corner&, const Corner&) = default;
};

std::string to_string(Corner c);

/// m x n bit grid addressed as (p, q), p = column in [1, m], q = row in
/// [1, n], (1,1) at the lower left.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int m, int n);

  int width() const noexcept { return m_; }
  int height() const noexcept { return n_; }

  bool at(int p, int q) const { return bits_[index(p, q)] != 0; }
  void set(int p, int q, bool value) { bits_[index(p, q)] = value ? 1 : 0; }
  void flip(int p, int q) { bits_[index(p, q)] ^= 1; }

  bool contains(int p, int q) const noexcept {
    return p >= 1 && p <= m_ && q >= 1 && q <= n_;
  }

  int popcount() const;
  int row_sum(int q) const;
  int col_sum(int p) const;
  int block_sum(Corner c, int k) const;

  /// 2x2 block pattern at corner c; see block_type.hpp for the bit layout.
  BlockMask block_mask(Corner c) const;
  void set_block_mask(Corner c, BlockMask mask);

  /// Exchange rows q and q+1 (resp. columns p and p+1).
  void swap_rows(int q);
  void swap_cols(int p);

  bool operator==(const BinaryImage&) const = default;

 private:
  std::size_t index(int p, int q) const {
    return static_cast<std::size_t>(q - 1) * static_cast<std::size_t>(m_) +
           static_cast<std::size_t>(p - 1);
  }

  int m_ = 0;
  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// One noisy super-resolution problem: grid size, line sums, one gray value
/// per k x k block and the set of blocks whose gray value is exact.
struct Instance {
  int k = 2;
  int epsilon = 0;
  int m = 0;
  int n = 0;
  std::vector<int> row_sums;  // r_1..r_n, bottom to top
  std::vector<int> col_sums;  // c_1..c_m, left to right
  // Block data in row-major order over block rows, bottom block row first.
  std::vector<int> block_values;
  std::vector<std::uint8_t> reliable;

  int blocks_x() const noexcept { return k > 0 ? m / k : 0; }
  int blocks_y() const noexcept { return k > 0 ? n / k : 0; }
  std::size_t block_count() const noexcept {
    return static_cast<std::size_t>(blocks_x()) * static_cast<std::size_t>(blocks_y());
  }

  std::size_t block_index(Corner c) const {
    return static_cast<std::size_t>((c.j - 1) / k) * static_cast<std::size_t>(blocks_x()) +
           static_cast<std::size_t>((c.i - 1) / k);
  }
  Corner corner_at(std::size_t index) const {
    const auto bx = static_cast<std::size_t>(blocks_x());
    return {static_cast<int>(index % bx) * k + 1, static_cast<int>(index / bx) * k + 1};
  }

  int value(Corner c) const { return block_values[block_index(c)]; }
  bool is_reliable(Corner c) const { return reliable[block_index(c)] != 0; }

  /// Inclusive window of admissible block sums at c.
  int window_lo(Corner c) const;
  int window_hi(Corner c) const;

  std::vector<Corner> corners() const;
  std::size_t unreliable_count() const;

  bool operator==(const Instance&) const = default;
};

/// Zero instance of the given geometry: all sums zero, all blocks reliable.
Instance make_empty_instance(int m, int n, int k, int epsilon = 0);

struct ValidationError {
  enum class Kind {
    Dimension,    // k, m, n or vector lengths are wrong
    ValueRange,   // a sum or block value is outside its domain
    Reliability,  // epsilon = 0 with unreliable blocks, or epsilon < 0
    SumMismatch,  // sum of row sums differs from sum of column sums
  };
  Kind kind;
  std::string message;
};

/// Structural checks plus the row/column total check. The total check is
/// reported as SumMismatch: it proves infeasibility, not malformed data.
std::vector<ValidationError> validate_instance(const Instance& inst);

/// True when validate_instance reports nothing except possibly SumMismatch.
bool is_well_formed(const Instance& inst);

struct LineViolation {
  int index;
  int expected;
  int actual;
};

struct BlockViolation {
  Corner corner;
  int expected;
  int window;  // 0 for reliable blocks, epsilon otherwise
  int actual;
};

struct VerificationReport {
  std::vector<LineViolation> row_violations;
  std::vector<LineViolation> col_violations;
  std::vector<BlockViolation> block_violations;

  bool satisfied() const noexcept {
    return row_violations.empty() && col_violations.empty() && block_violations.empty();
  }
  std::string to_string() const;
};

/// Checks every row, column and block constraint of inst against img.
/// Throws std::invalid_argument on a dimension mismatch.
VerificationReport verify_solution(const Instance& inst, const BinaryImage& img);

/// Type of the 2x2 block at corner c (both coordinates odd).
BlockType classify_block(const BinaryImage& img, Corner c);

struct GrayImage {
  int width = 0;   // m / k
  int height = 0;  // n / k
  int maxval = 4;  // k^2
  std::vector<int> values;  // row-major, bottom row first

  int at(int u, int v) const {
    return values[static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(u - 1)];
  }
  bool operator==(const GrayImage&) const = default;
};

/// Low-resolution gray image: value(u,v) is the number of ones in the k x k
/// block with lower-left corner ((u-1)k+1, (v-1)k+1).
GrayImage degrade(const BinaryImage& img, int k);

/// Exact (epsilon = 0, all blocks reliable) instance generated by img.
Instance make_exact_instance(const BinaryImage& img, int k);

/// Moves ceil(fraction * |C|) currently reliable blocks (chosen by seed) out
/// of R and shifts each of their values by a uniform offset in
/// [-epsilon, epsilon], clipped to [0, k^2]. With epsilon = 0 the instance is
/// returned unchanged.
Instance perturb_instance(const Instance& inst, double fraction, std::uint64_t seed);

}  // namespace drtomo
