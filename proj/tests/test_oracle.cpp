#include <doctest.h>

#include <set>
#include <stdexcept>

#include "drtomo/oracle.hpp"
#include "support.hpp"

using namespace drtomo;

TEST_CASE("[oracle] small counts") {
  auto zero = oracle_solve(make_empty_instance(4, 4, 2));
  CHECK(zero.count == 1);
  CHECK(zero.exhausted);
  REQUIRE(zero.solutions.size() == 1);
  CHECK(zero.solutions[0].popcount() == 0);

  Instance two = make_empty_instance(2, 2, 2);
  two.block_values = {2};
  two.row_sums = {1, 1};
  two.col_sums = {1, 1};
  auto res = oracle_solve(two);
  CHECK(res.count == 2);
  CHECK(res.exhausted);
  std::set<BlockType> types;
  for (const auto& s : res.solutions) types.insert(classify_block(s, {1, 1}));
  CHECK(types == std::set<BlockType>{BlockType::B33, BlockType::B34});
  CHECK(oracle_count(two).count == 2);

  Instance mismatch = make_empty_instance(2, 2, 2);
  mismatch.row_sums = {1, 0};
  auto none = oracle_count(mismatch);
  CHECK(none.count == 0);
  CHECK(none.exhausted);
}

TEST_CASE("[oracle] budgets") {
  Instance free4 = make_empty_instance(4, 4, 4, 16);
  free4.reliable = {0};
  free4.row_sums = {2, 2, 2, 2};
  free4.col_sums = {2, 2, 2, 2};
  auto capped = oracle_count(free4, {5, UINT64_MAX});
  CHECK(capped.count == 5);
  CHECK_FALSE(capped.exhausted);
  auto all = oracle_count(free4);
  CHECK(all.count == 90);
  CHECK(all.exhausted);
  auto starved = oracle_count(free4, {SIZE_MAX, 3});
  CHECK_FALSE(starved.exhausted);
  CHECK(starved.nodes <= 3);
}

TEST_CASE("[oracle] agrees with brute force") {
  drtomo::Rng rng(2);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = trial % 3 == 0 ? 4 : 2;
    BinaryImage img = testsupport::random_image(4, 4, rng.unit(), rng);
    Instance inst = make_exact_instance(img, k);
    if (trial % 2) {
      inst.epsilon = rng.between(1, 2);
      inst = perturb_instance(inst, 0.5, static_cast<std::uint64_t>(trial));
    }
    if (trial % 5 == 0) {
      inst.row_sums[0] = std::min(4, inst.row_sums[0] + 1);
      inst.col_sums[3] = std::min(4, inst.col_sums[3] + 1);
    }
    auto res = oracle_solve(inst);
    CHECK(res.exhausted);
    CHECK(res.count == testsupport::brute_force_count(inst));
    CHECK(res.solutions.size() == res.count);
    for (const auto& s : res.solutions) CHECK(verify_solution(inst, s).satisfied());
    auto again = oracle_solve(inst);
    CHECK(again.solutions == res.solutions);
  }
}

TEST_CASE("[oracle] fixed cells and candidate masks") {
  Instance two = make_empty_instance(2, 2, 2);
  two.block_values = {2};
  two.row_sums = {1, 1};
  two.col_sums = {1, 1};
  OracleOptions fix;
  fix.fixed = {{1, 1, true}};
  auto res = oracle_solve(two, {}, fix);
  REQUIRE(res.count == 1);
  CHECK(classify_block(res.solutions[0], {1, 1}) == BlockType::B33);

  OracleOptions mask;
  mask.candidates = testsupport::image_from_rows({"10", "01"});
  auto masked = oracle_solve(two, {}, mask);
  REQUIRE(masked.count == 1);
  CHECK(classify_block(masked.solutions[0], {1, 1}) == BlockType::B34);

  OracleOptions clash;
  clash.fixed = {{1, 1, true}, {2, 1, true}};
  CHECK(oracle_count(two, {}, clash).count == 0);
}
