#include <doctest.h>

#include <set>
#include <stdexcept>

#include <algorithm>

#include "drtomo/flow.hpp"
#include "drtomo/subsolvers.hpp"
#include "support.hpp"

using namespace drtomo;

namespace {

SubInstance single_block(int nu, PairSums rows, PairSums cols) {
  SubInstance sub = SubInstance::empty(2, 2, nu);
  sub.blocks = {{1, 1}};
  sub.row_pairs = {rows};
  sub.col_pairs = {cols};
  return sub;
}

SubInstance four_blocks(int nu, std::vector<PairSums> rows, std::vector<PairSums> cols) {
  SubInstance sub = SubInstance::empty(4, 4, nu);
  sub.blocks = {{1, 1}, {3, 1}, {1, 3}, {3, 3}};
  sub.row_pairs = std::move(rows);
  sub.col_pairs = std::move(cols);
  return sub;
}

BinaryImage painted(const PartialImage& part, int m, int n) {
  BinaryImage img(m, n);
  part.paint(img);
  return img;
}

// Number of ways to label blocks zeta/eta/none meeting the targets.
std::size_t brute_force_two_color(const TwoColorSystem& sys) {
  const std::size_t count = sys.blocks.size();
  std::size_t total = 1, hits = 0;
  for (std::size_t b = 0; b < count; ++b) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> rows(sys.row_targets.size(), 0), cols(sys.col_targets.size(), 0);
    std::size_t c = code;
    for (std::size_t b = 0; b < count; ++b, c /= 3) {
      if (c % 3 == 1) ++rows[static_cast<std::size_t>((sys.blocks[b].j - 1) / 2)];
      if (c % 3 == 2) ++cols[static_cast<std::size_t>((sys.blocks[b].i - 1) / 2)];
    }
    hits += rows == sys.row_targets && cols == sys.col_targets;
  }
  return hits;
}

}  // namespace

TEST_CASE("[flow] max flow and min cost flow") {
  FlowGraph g(4);
  int a = g.add_arc(0, 1, 3);
  g.add_arc(0, 2, 2);
  g.add_arc(1, 2, 5);
  int d = g.add_arc(1, 3, 2);
  g.add_arc(2, 3, 3);
  CHECK(g.max_flow(0, 3) == 5);
  CHECK(g.flow(a) + 2 == 5);
  CHECK(g.flow(d) <= 2);

  FlowGraph h(4);
  h.add_arc(0, 1, 1, 0);
  h.add_arc(0, 2, 1, 0);
  h.add_arc(1, 3, 1, 5);
  h.add_arc(2, 3, 1, 1);
  h.add_arc(1, 2, 1, 0);
  auto res = h.min_cost_max_flow(0, 3);
  CHECK(res.flow == 2);
  CHECK(res.cost == 6);
  h.reset();
  CHECK(h.max_flow(0, 3) == 2);
}

TEST_CASE("[subsolvers] two-color system") {
  TwoColorSystem sys{4, 4, {{1, 1}, {3, 1}, {1, 3}, {3, 3}}, {1, 1}, {1, 1}};
  auto colors = solve_two_color(sys);
  REQUIRE(colors);
  std::vector<int> rows(2, 0), cols(2, 0);
  for (std::size_t b = 0; b < 4; ++b) {
    if ((*colors)[b] == Color::Zeta) ++rows[static_cast<std::size_t>((sys.blocks[b].j - 1) / 2)];
    if ((*colors)[b] == Color::Eta) ++cols[static_cast<std::size_t>((sys.blocks[b].i - 1) / 2)];
  }
  CHECK(rows == sys.row_targets);
  CHECK(cols == sys.col_targets);

  TwoColorSystem zero{4, 4, sys.blocks, {0, 0}, {0, 0}};
  auto none = solve_two_color(zero);
  REQUIRE(none);
  CHECK(std::all_of(none->begin(), none->end(), [](Color c) { return c == Color::None; }));

  TwoColorSystem one{2, 2, {{1, 1}}, {1}, {1}};
  CHECK_FALSE(solve_two_color(one));

  drtomo::Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    TwoColorSystem r{4, 4, {}, {rng.between(0, 2), rng.between(0, 2)}, {rng.between(0, 2), rng.between(0, 2)}};
    for (Corner c : {Corner{1, 1}, Corner{3, 1}, Corner{1, 3}, Corner{3, 3}})
      if (rng.bernoulli(0.7)) r.blocks.push_back(c);
    CHECK(solve_two_color(r).has_value() == (brute_force_two_color(r) > 0));
  }
}

TEST_CASE("[subsolvers] DR(1)") {
  auto sub = four_blocks(1, {{1, 1}, {1, 1}}, {{1, 1}, {1, 1}});
  auto part = solve_dr1(sub);
  REQUIRE(part);
  CHECK(painted(*part, 4, 4) == testsupport::image_from_rows({"0001", "0100", "0010", "1000"}));
  CHECK(satisfies(sub, *part));
  CHECK_FALSE(unique_dr1(sub));
  CHECK(testsupport::brute_force_sub_count(sub) > 1);

  auto single = single_block(1, {1, 0}, {1, 0});
  auto one = solve_dr1(single);
  REQUIRE(one);
  CHECK(one->masks[0] == kLowerLeft);
  CHECK(unique_dr1(single));

  CHECK_FALSE(solve_dr1(single_block(1, {2, 0}, {1, 0})));
  CHECK_THROWS_AS(unique_dr1(single_block(1, {2, 0}, {1, 0})), std::invalid_argument);
  CHECK(unique_dr1(single_block(1, {1, 0}, {0, 1})));

  auto stacked = four_blocks(1, {{2, 0}, {0, 2}}, {{2, 0}, {0, 2}});
  REQUIRE(solve_dr1(stacked));
  CHECK(unique_dr1(stacked));
  CHECK(testsupport::brute_force_sub_count(stacked) == 1);
}

TEST_CASE("[subsolvers] DR(3)") {
  auto single = single_block(3, {2, 1}, {2, 1});
  auto part = solve_dr3(single);
  REQUIRE(part);
  CHECK(part->masks[0] == pattern_of(BlockType::C22));
  CHECK(satisfies(single, *part));
  CHECK(unique_dr3(single));
  CHECK(testsupport::brute_force_sub_count(single) == 1);

  CHECK_FALSE(solve_dr3(single_block(3, {3, 0}, {2, 1})));

  auto complement = four_blocks(3, {{3, 3}, {3, 3}}, {{3, 3}, {3, 3}});
  REQUIRE(solve_dr3(complement));
  CHECK_FALSE(unique_dr3(complement));
  CHECK(testsupport::brute_force_sub_count(complement) > 1);
}

TEST_CASE("[subsolvers] DR(2)") {
  auto b1 = single_block(2, {2, 0}, {1, 1});
  auto p1 = solve_dr2(b1);
  REQUIRE(p1);
  CHECK(block_type_of(p1->masks[0]) == BlockType::B1);
  CHECK(unique_dr2(b1, *p1));

  auto b31 = solve_dr2(single_block(2, {1, 1}, {2, 0}));
  REQUIRE(b31);
  CHECK(block_type_of(b31->masks[0]) == BlockType::B31);

  auto diag = single_block(2, {1, 1}, {1, 1});
  auto p3 = solve_dr2(diag);
  REQUIRE(p3);
  CHECK(block_type_of(p3->masks[0]) == BlockType::B33);

  CHECK_THROWS_AS(solve_dr2(single_block(2, {0, 2}, {1, 1})), std::invalid_argument);
  CHECK_FALSE(solve_dr2(single_block(2, {2, 1}, {2, 1})));

  // Two blocks in one row strip, one of them must be B1.
  SubInstance pair = SubInstance::empty(4, 2, 2);
  pair.blocks = {{1, 1}, {3, 1}};
  pair.row_pairs = {{3, 1}};
  pair.col_pairs = {{1, 1}, {1, 1}};
  auto pp = solve_dr2(pair);
  REQUIRE(pp);
  CHECK(satisfies(pair, *pp));
  CHECK_FALSE(unique_dr2(pair, *pp));

  SubInstance empty = SubInstance::empty(4, 4, 2);
  auto pe = solve_dr2(empty);
  REQUIRE(pe);
  CHECK(unique_dr2(empty, *pe));
}

TEST_CASE("[subsolvers] trivial levels") {
  SubInstance zero = four_blocks(0, {{0, 0}, {0, 0}}, {{0, 0}, {0, 0}});
  auto z = fill_trivial(zero);
  REQUIRE(z);
  CHECK(painted(*z, 4, 4).popcount() == 0);
  SubInstance full = four_blocks(4, {{4, 4}, {4, 4}}, {{4, 4}, {4, 4}});
  auto f = fill_trivial(full);
  REQUIRE(f);
  CHECK(painted(*f, 4, 4).popcount() == 16);
  CHECK_FALSE(fill_trivial(single_block(4, {1, 2}, {2, 2})));
}

TEST_CASE("[subsolvers] agreement with enumeration on small families") {
  // Every sub-instance over the 2x2 block grid with up to four blocks and
  // sums up to the per-strip maximum.
  const std::vector<Corner> all = {{1, 1}, {3, 1}, {1, 3}, {3, 3}};
  drtomo::Rng rng(17);
  std::size_t checked = 0;
  for (int nu = 1; nu <= 3; ++nu) {
    for (int subset = 1; subset < 16; ++subset) {
      for (int trial = 0; trial < 60; ++trial) {
        SubInstance sub = SubInstance::empty(4, 4, nu);
        for (int b = 0; b < 4; ++b)
          if (subset & (1 << b)) sub.blocks.push_back(all[static_cast<std::size_t>(b)]);
        // Sample pair sums from a random filling so that most samples are
        // feasible, then sometimes disturb them.
        std::vector<BlockMask> choices;
        for (int mask = 0; mask < 16; ++mask)
          if (ones_in(static_cast<BlockMask>(mask)) == nu) choices.push_back(static_cast<BlockMask>(mask));
        PartialImage fill{sub.blocks, {}};
        for (std::size_t b = 0; b < sub.blocks.size(); ++b)
          fill.masks.push_back(choices[rng.below(choices.size())]);
        BinaryImage img = painted(fill, 4, 4);
        for (int s = 0; s < 2; ++s) {
          sub.row_pairs[static_cast<std::size_t>(s)] = {img.row_sum(2 * s + 1), img.row_sum(2 * s + 2)};
          sub.col_pairs[static_cast<std::size_t>(s)] = {img.col_sum(2 * s + 1), img.col_sum(2 * s + 2)};
        }
        if (trial % 3 == 0) {
          auto& pr = sub.row_pairs[rng.below(2)];
          pr.first += rng.between(-1, 1);
          pr.second += rng.between(-1, 1);
        }
        const std::size_t truth = testsupport::brute_force_sub_count(sub);
        if (nu == 1) {
          auto part = solve_dr1(sub);
          CHECK(part.has_value() == (truth > 0));
          if (part) {
            CHECK(satisfies(sub, *part));
            CHECK(unique_dr1(sub) == (truth == 1));
          }
        } else if (nu == 3) {
          auto part = solve_dr3(sub);
          CHECK(part.has_value() == (truth > 0));
          if (part) {
            CHECK(satisfies(sub, *part));
            CHECK(unique_dr3(sub) == (truth == 1));
          }
        } else {
          bool ordered = true;
          for (const auto& pairs : {sub.row_pairs, sub.col_pairs})
            for (const auto& [a, b] : pairs) ordered = ordered && a >= b;
          if (!ordered) continue;
          auto part = solve_dr2(sub);
          CHECK(part.has_value() == (truth > 0));
          if (part) {
            CHECK(satisfies(sub, *part));
            for (BlockMask mask : part->masks) {
              const BlockType t = block_type_of(mask);
              CHECK((t == BlockType::B1 || t == BlockType::B31 || t == BlockType::B33));
            }
          }
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 1500);
}
