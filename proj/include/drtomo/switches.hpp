#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "drtomo/core.hpp"

namespace drtomo {

enum class Orientation : std::uint8_t { Horizontal, Vertical };
enum class Direction : std::uint8_t { Forward, Reversed };

/// One concrete row of the switch catalog: class 1..7, orientation, and the
/// block types before and after a forward application. Class 7 rewrites a
/// single block (arity 1); all others rewrite two blocks of the same strip.
struct SwitchRule {
  int klass;
  Orientation orientation;
  int arity;
  std::array<BlockType, 2> from;
  std::array<BlockType, 2> to;

  const std::array<BlockType, 2>& source(Direction d) const { return d == Direction::Forward ? from : to; }
  const std::array<BlockType, 2>& target(Direction d) const { return d == Direction::Forward ? to : from; }
};

/// The 28 catalog rows, 14 per orientation, ordered by class and then
/// orientation (horizontal first). The vertical rows are the transposes of
/// the horizontal ones.
const std::vector<SwitchRule>& switch_rules();

struct SwitchMove {
  int rule = 0;  // index into switch_rules()
  Direction direction = Direction::Forward;
  Corner first;   // holds source(direction)[0]
  Corner second;  // holds source(direction)[1]; equals first for class 7

  const SwitchRule& spec() const { return switch_rules()[static_cast<std::size_t>(rule)]; }
  int klass() const { return spec().klass; }
  Orientation orientation() const { return spec().orientation; }

  bool operator==(const SwitchMove&) const = default;
};

std::string to_string(const SwitchMove& move);

/// Deterministic order of moves: class, orientation (horizontal first),
/// first corner, second corner, direction (forward first).
bool scan_less(const SwitchMove& a, const SwitchMove& b);

bool is_applicable(const BinaryImage& img, const SwitchMove& move);

/// First applicable move in scan order. Requires even image dimensions.
std::optional<SwitchMove> find_switch(const BinaryImage& img, Direction direction);

/// Every applicable move in the given direction, in scan order.
std::vector<SwitchMove> all_switches(const BinaryImage& img, Direction direction);

/// Throws std::invalid_argument when the move does not apply.
BinaryImage apply_switch(const BinaryImage& img, const SwitchMove& move);
void apply_switch_in_place(BinaryImage& img, const SwitchMove& move);

/// Applies forward moves in find_switch order until none applies.
BinaryImage reduce(const BinaryImage& img);
/// As reduce, also reporting how many moves were applied.
BinaryImage reduce(const BinaryImage& img, std::size_t& steps);

bool is_reduced(const BinaryImage& img);
bool has_reversed_switch(const BinaryImage& img);

/// Lexicographic potential that every forward move strictly increases:
/// (#B3(3) blocks, #single-one blocks with the one in the top row,
///  #single-one blocks with the one in the right column).
std::tuple<int, int, int> reduction_measure(const BinaryImage& img);

/// Total variation a + b*sqrt(2): a counts cells with exactly one nonzero
/// forward difference, b cells with both nonzero.
struct TVValue {
  long long a = 0;
  long long b = 0;

  friend bool operator==(const TVValue&, const TVValue&) = default;
  friend std::strong_ordering operator<=>(const TVValue& x, const TVValue& y);
  double approx() const;
};

/// Sign of (a1 - a2) + (b1 - b2) * sqrt(2), computed exactly.
int tv_sign(long long da, long long db);

TVValue tv(const BinaryImage& img);

struct TVDescent {
  BinaryImage image;
  std::vector<TVValue> trace;  // TV of the input, then after each accepted move
  std::vector<SwitchMove> moves;
};

/// Steepest descent over forward and reversed moves with exact TV deltas;
/// ties are broken by scan_less. Throws std::invalid_argument when img does
/// not solve inst.
TVDescent tv_descend(const Instance& inst, const BinaryImage& img);

}  // namespace drtomo
