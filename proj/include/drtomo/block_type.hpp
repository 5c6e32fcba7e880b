#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace drtomo {

// Bit layout of a 2x2 block anchored at corner (i,j):
//   bit 0 = (i,j)    bit 1 = (i+1,j)
//   bit 2 = (i,j+1)  bit 3 = (i+1,j+1)
using BlockMask = std::uint8_t;

inline constexpr BlockMask kLowerLeft = 1;
inline constexpr BlockMask kLowerRight = 2;
inline constexpr BlockMask kUpperLeft = 4;
inline constexpr BlockMask kUpperRight = 8;

/// The sixteen fill patterns of a 2x2 block.
///
/// A(r,c) holds a single one at row r, column c (row 1 = bottom, column 1 =
/// left). C(r,c) holds three ones with its zero at (r,c). B1/B2 are the full
/// bottom/top rows, B3(1)/B3(2) the full left/right columns, B3(3) the main
/// diagonal (lower-left and upper-right) and B3(4) the anti-diagonal.
enum class BlockType : std::uint8_t {
  Empty,
  A11,
  A12,
  A21,
  A22,
  B1,
  B2,
  B31,
  B32,
  B33,
  B34,
  C11,
  C12,
  C21,
  C22,
  Full,
};

inline constexpr int kBlockTypeCount = 16;

inline constexpr std::array<BlockType, kBlockTypeCount> kAllBlockTypes = {
    BlockType::Empty, BlockType::A11, BlockType::A12, BlockType::A21,
    BlockType::A22,   BlockType::B1,  BlockType::B2,  BlockType::B31,
    BlockType::B32,   BlockType::B33, BlockType::B34, BlockType::C11,
    BlockType::C12,   BlockType::C21, BlockType::C22, BlockType::Full,
};

constexpr BlockMask pattern_of(BlockType t) {
  switch (t) {
    case BlockType::Empty: return 0;
    case BlockType::A11: return kLowerLeft;
    case BlockType::A12: return kLowerRight;
    case BlockType::A21: return kUpperLeft;
    case BlockType::A22: return kUpperRight;
    case BlockType::B1: return kLowerLeft | kLowerRight;
    case BlockType::B2: return kUpperLeft | kUpperRight;
    case BlockType::B31: return kLowerLeft | kUpperLeft;
    case BlockType::B32: return kLowerRight | kUpperRight;
    case BlockType::B33: return kLowerLeft | kUpperRight;
    case BlockType::B34: return kLowerRight | kUpperLeft;
    case BlockType::C11: return 15 & ~kLowerLeft;
    case BlockType::C12: return 15 & ~kLowerRight;
    case BlockType::C21: return 15 & ~kUpperLeft;
    case BlockType::C22: return 15 & ~kUpperRight;
    case BlockType::Full: return 15;
  }
  return 0;
}

constexpr BlockType block_type_of(BlockMask mask) {
  for (BlockType t : kAllBlockTypes) {
    if (pattern_of(t) == (mask & 15)) return t;
  }
  return BlockType::Empty;
}

constexpr int ones_in(BlockMask mask) {
  return (mask & 1) + ((mask >> 1) & 1) + ((mask >> 2) & 1) + ((mask >> 3) & 1);
}

/// Mirror across the main diagonal; maps horizontal-strip patterns onto
/// their vertical-strip counterparts (B1 <-> B3(1), A(r,c) <-> A(c,r), ...).
constexpr BlockMask transpose_mask(BlockMask mask) {
  BlockMask out = mask & (kLowerLeft | kUpperRight);
  if (mask & kLowerRight) out |= kUpperLeft;
  if (mask & kUpperLeft) out |= kLowerRight;
  return out;
}

constexpr BlockType transpose(BlockType t) {
  return block_type_of(transpose_mask(pattern_of(t)));
}

/// Exchange the two rows of a block.
constexpr BlockMask swap_rows_mask(BlockMask mask) {
  return static_cast<BlockMask>(((mask & 3) << 2) | ((mask >> 2) & 3));
}

/// Exchange the two columns of a block.
constexpr BlockMask swap_cols_mask(BlockMask mask) {
  return static_cast<BlockMask>(((mask & 5) << 1) | ((mask >> 1) & 5));
}

std::string to_string(BlockType t);

}  // namespace drtomo
