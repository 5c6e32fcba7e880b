#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drtomo/core.hpp"

namespace drtomo {

/// Exactly-one-in-three satisfiability: every clause lists three literals
/// over distinct variables (negative index = negated variable).
struct OneInThreeInstance {
  int T = 0;
  std::vector<std::array<int, 3>> clauses;

  int S() const noexcept { return static_cast<int>(clauses.size()); }
};

/// Throws std::invalid_argument on an index outside [1, T], a zero literal,
/// or a clause with a repeated variable.
void validate_sat(const OneInThreeInstance& sat);

/// "p 1in3 <T> <S>" followed by S lines of three nonzero integers; lines
/// starting with 'c' are comments. Throws ParseError.
OneInThreeInstance parse_sat(std::string_view text);
std::string write_sat(const OneInThreeInstance& sat);

using Assignment = std::vector<bool>;

/// "TTFF" <-> {true, true, false, false}. Throws std::invalid_argument.
Assignment parse_assignment(std::string_view text);
std::string format_assignment(const Assignment& a);

/// True when every clause has exactly one true literal.
bool satisfies_exactly_one(const OneInThreeInstance& sat, const Assignment& a);

/// Inclusive box [x0, x1] x [y0, y1] of pixels.
struct Box {
  int x0, y0, x1, y1;

  bool contains(int x, int y) const noexcept { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  bool intersects(const Box& o) const noexcept {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
};

struct BoardComponent {
  std::string kind;  // initializer, connector, vertical-collector, ...
  int s = 0;         // clause or connector index, 0 for the initializer
  Box box;
};

/// Block labels of the board.
enum class BlockLabel { Zero, Two, ApproxOne };

/// Geometry of the gadget board for a 1-in-3 instance with S clauses and T
/// variables. All indices are 1-based; corners are block corners.
struct BoardSpec {
  int S = 0;
  int T = 0;
  int N = 0;
  std::vector<int> anchors;                 // a_1 .. a_{S+1}
  std::vector<Corner> initializer_chips;    // per variable t
  std::vector<std::vector<Corner>> connector_chips;  // [s][t]
  std::vector<std::vector<Box>> vertical_collector_chips;    // [s][t]
  std::vector<std::vector<Box>> horizontal_collector_chips;  // [s][t]
  std::vector<std::vector<std::vector<std::pair<int, int>>>> configurations;  // [s][t] points
  std::vector<std::vector<int>> unnegated;  // U_s
  std::vector<std::vector<int>> negated;    // N_s
  std::vector<BoardComponent> components;
  std::vector<BlockLabel> labels;  // per block, Instance block order
  std::vector<int> row_sums;
  std::vector<int> col_sums;

  int anchor(int s) const { return anchors[static_cast<std::size_t>(s - 1)]; }
};

BoardSpec build_board(const OneInThreeInstance& sat);

/// k = 2 instance of the board with noise bound epsilon (>= 1): blocks
/// labeled Zero / Two are reliable with value 0 / 2, ApproxOne blocks are
/// unreliable with value 1.
Instance gen_sat_instance(const BoardSpec& spec, int epsilon);
Instance gen_sat_instance(const OneInThreeInstance& sat, int epsilon);

/// JSON description of the board components and chips.
std::string layout_json(const BoardSpec& spec);

/// Sets the initializer chips (B1 = true, B3(1) = false) and completes the
/// image by propagation search. nullopt when no completion exists.
/// Throws std::invalid_argument on a board/instance mismatch and
/// std::logic_error if the completion is not unique.
std::optional<BinaryImage> embed_assignment(const BoardSpec& spec, const Instance& inst, const Assignment& a);

/// Reads the initializer chips of a solution. Throws std::invalid_argument
/// when a chip is neither B1 nor B3(1).
Assignment extract_assignment(const BoardSpec& spec, const BinaryImage& img);

/// Same problem with k' x k' blocks: every two-line strip becomes a k'-line
/// strip whose first two lines carry the original sums.
Instance lift_instance(const Instance& inst, int k_prime);

/// Places every 2x2 block of a k = 2 solution in the lower-left corner of
/// the corresponding k' x k' block.
BinaryImage lift_image(const BinaryImage& img, int k_prime);

}  // namespace drtomo
