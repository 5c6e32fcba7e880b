// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "drtomo/hardness.hpp"
#include "drtomo/oracle.hpp"
#include "drtomo/solver.hpp"
#include "drtomo/switches.hpp"
#include "support.hpp"

using namespace drtomo;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances.
constexpr double kExhaustiveSeconds = 60.0;
constexpr double kLargeMedianSeconds = 1.0;
constexpr double kBoardSeconds = 10.0;
constexpr int kRandom8Trials = 1000;
constexpr int kSwitchTrials = 10000;
constexpr int kTvTrials = 100;
constexpr int kLiftTrials = 200;
constexpr int kMinComponentDiff = 12;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

bool feasible_by_oracle(const Instance& inst) { return oracle_count(inst, {1, UINT64_MAX}).count > 0; }

std::vector<BinaryImage> exhaustive_4x4() {
  std::vector<BinaryImage> out;
  out.reserve(1 << 16);
  for (std::uint64_t bits = 0; bits < (1u << 16); ++bits) out.push_back(testsupport::image_from_bits(4, 4, bits));
  return out;
}

Outcome criterion1() {
  const auto start = Clock::now();
  std::size_t solved = 0;
  const auto images = exhaustive_4x4();
  for (const auto& img : images) {
    const Instance inst = make_exact_instance(img, 2);
    auto sol = solve_dr(inst);
    solved += sol && verify_solution(inst, *sol).satisfied();
  }
  const double elapsed = seconds_since(start);

  Rng rng(101);
  int agree = 0, infeasible = 0;
  for (int trial = 0; trial < kRandom8Trials; ++trial) {
    Instance inst = make_exact_instance(testsupport::random_image(8, 8, rng.unit(), rng), 2);
    if (trial % 2) {
      auto& r = inst.row_sums[rng.below(8)];
      r = r == 0 ? 1 : r == 8 ? 7 : r + (rng.bernoulli(0.5) ? 1 : -1);
    }
    const bool dr = solve_dr(inst).has_value();
    const bool oracle = feasible_by_oracle(inst);
    agree += dr == oracle;
    infeasible += !oracle;
  }
  const bool pass = solved == images.size() && elapsed < kExhaustiveSeconds && agree == kRandom8Trials;
  char buf[200];
  std::snprintf(buf, sizeof buf, "4x4 solved %zu/%zu in %.2f s (< %.0f s); 8x8 agreement %d/%d (%d infeasible)",
                solved, images.size(), elapsed, kExhaustiveSeconds, agree, kRandom8Trials, infeasible);
  return {pass, buf};
}

Outcome criterion2() {
  std::vector<double> times;
  bool all_ok = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const Instance inst = make_exact_instance(testsupport::random_image(200, 200, 0.3, rng), 2);
    const auto start = Clock::now();
    auto sol = solve_dr(inst);
    times.push_back(seconds_since(start));
    all_ok = all_ok && sol && verify_solution(inst, *sol).satisfied();
  }
  std::sort(times.begin(), times.end());
  const double median = (times[4] + times[5]) / 2;
  char buf[160];
  std::snprintf(buf, sizeof buf, "200x200 density 0.3: median %.3f s (< %.1f s), max %.3f s, all verified: %s", median,
                kLargeMedianSeconds, times.back(), all_ok ? "yes" : "no");
  return {all_ok && median < kLargeMedianSeconds, buf};
}

BinaryImage component_mask(const BoardSpec& spec) {
  BinaryImage mask(spec.N, spec.N);
  for (const auto& comp : spec.components)
    for (int y = comp.box.y0; y <= comp.box.y1; ++y)
      for (int x = comp.box.x0; x <= comp.box.x1; ++x) mask.set(x, y, true);
  return mask;
}

Outcome criterion3() {
  const auto start = Clock::now();
  const OneInThreeInstance sat{4, {{1, -2, 3}}};
  const BoardSpec spec = build_board(sat);
  const Instance inst = gen_sat_instance(spec, 1);
  auto ttff = embed_assignment(spec, inst, parse_assignment("TTFF"));
  const bool ttff_ok = ttff && verify_solution(inst, *ttff).satisfied();
  OracleOptions options;
  options.candidates = component_mask(spec);
  const OracleResult res = oracle_count(inst, {}, options);
  const double elapsed = seconds_since(start);
  const bool pass = inst.m == 34 && inst.n == 34 && inst.block_count() == 289 && inst.unreliable_count() == 31 &&
                    ttff_ok && res.exhausted && res.count == 6 && elapsed < kBoardSeconds;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%dx%d, %zu blocks, %zu unreliable, TTFF verifies: %s, count %zu (exhausted %s) in %.3f s",
                inst.m, inst.n, inst.block_count(), inst.unreliable_count(), ttff_ok ? "yes" : "no", res.count,
                res.exhausted ? "yes" : "no", elapsed);
  return {pass, buf};
}

std::vector<Assignment> all_assignments(int T) {
  std::vector<Assignment> out;
  for (int bits = 0; bits < (1 << T); ++bits) {
    Assignment a;
    for (int t = 0; t < T; ++t) a.push_back((bits >> t) & 1);
    out.push_back(a);
  }
  return out;
}

Outcome criterion4() {
  // Every clause over the variables 1..3 with a sign pattern; look for the
  // first pair of clauses with no exactly-1-in-3 model.
  std::vector<std::array<int, 3>> clauses;
  for (int signs = 0; signs < 8; ++signs)
    clauses.push_back({signs & 1 ? -1 : 1, signs & 2 ? -2 : 2, signs & 4 ? -3 : 3});
  std::optional<OneInThreeInstance> unsat;
  for (std::size_t x = 0; x < clauses.size() && !unsat; ++x)
    for (std::size_t y = x + 1; y < clauses.size() && !unsat; ++y) {
      OneInThreeInstance cand{3, {clauses[x], clauses[y]}};
      const auto models = all_assignments(3);
      if (std::none_of(models.begin(), models.end(), [&](const Assignment& a) { return satisfies_exactly_one(cand, a); }))
        unsat = cand;
    }
  if (!unsat) return {false, "no unsatisfiable clause pair found"};
  const Instance inst = gen_sat_instance(*unsat, 1);
  const OracleResult res = oracle_count(inst);
  std::string detail = "formula " + write_sat(*unsat);
  std::replace(detail.begin(), detail.end(), '\n', ' ');
  detail += "-> " + std::to_string(inst.m) + "x" + std::to_string(inst.n) + " board, count " +
            std::to_string(res.count) + ", exhausted " + (res.exhausted ? "yes" : "no");
  return {res.count == 0 && res.exhausted, detail};
}

Outcome criterion5() {
  std::map<std::uint64_t, std::pair<Instance, std::size_t>> family;
  for (const auto& img : exhaustive_4x4()) {
    const Instance inst = make_exact_instance(img, 2);
    auto [it, fresh] = family.try_emplace(testsupport::signature(inst), inst, 0);
    ++it->second.second;
  }
  std::size_t disagreements = 0, unique = 0, count_mismatch = 0;
  for (const auto& [key, entry] : family) {
    const auto& [inst, group] = entry;
    const OracleResult res = oracle_count(inst);
    count_mismatch += res.count != group;
    auto verdict = check_unique(inst);
    const bool ours = verdict.value_or(false);
    disagreements += !verdict || ours != (res.count == 1);
    unique += res.count == 1;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu feasible instances, %zu unique, %zu disagreements, %zu oracle/group count mismatches",
                family.size(), unique, disagreements, count_mismatch);
  return {disagreements == 0 && count_mismatch == 0, buf};
}

Outcome criterion6() {
  Rng rng(606);
  const auto& rules = switch_rules();
  std::vector<int> applied(rules.size() * 2, 0);
  int violations = 0, placement_failures = 0;
  for (int trial = 0; trial < kSwitchTrials; ++trial) {
    const std::size_t r = static_cast<std::size_t>(trial) % rules.size();
    const Direction dir = (trial / static_cast<int>(rules.size())) % 2 ? Direction::Reversed : Direction::Forward;
    const SwitchRule& rule = rules[r];
    const int bx = 2 + static_cast<int>(rng.below(4));
    const int by = 2 + static_cast<int>(rng.below(4));
    BinaryImage img = testsupport::random_image(2 * bx, 2 * by, rng.unit(), rng);
    const int strip = static_cast<int>(rng.below(static_cast<std::uint64_t>(rule.orientation == Orientation::Horizontal ? by : bx)));
    const int along = rule.orientation == Orientation::Horizontal ? bx : by;
    int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(along)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(along - 1)));
    if (b >= a) ++b;
    auto corner = [&](int pos) {
      return rule.orientation == Orientation::Horizontal ? Corner{2 * pos + 1, 2 * strip + 1}
                                                         : Corner{2 * strip + 1, 2 * pos + 1};
    };
    SwitchMove move{static_cast<int>(r), dir, corner(a), rule.arity == 1 ? corner(a) : corner(b)};
    img.set_block_mask(move.first, pattern_of(rule.source(dir)[0]));
    if (rule.arity == 2) img.set_block_mask(move.second, pattern_of(rule.source(dir)[1]));
    if (!is_applicable(img, move)) std::swap(move.first, move.second);
    if (!is_applicable(img, move)) {
      ++placement_failures;
      continue;
    }
    const BinaryImage after = apply_switch(img, move);
    const bool preserved = make_exact_instance(after, 2) == make_exact_instance(img, 2) && after != img;
    violations += !preserved;
    ++applied[2 * r + (dir == Direction::Reversed)];
  }
  const bool all_rows = std::all_of(applied.begin(), applied.end(), [](int c) { return c > 0; });

  int reduce_bad = 0, solve_bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 * (1 + static_cast<int>(rng.below(8)));
    const int n = 2 * (1 + static_cast<int>(rng.below(8)));
    const BinaryImage img = testsupport::random_image(m, n, rng.unit(), rng);
    const BinaryImage red = reduce(img);
    reduce_bad += !is_reduced(red) || make_exact_instance(red, 2) != make_exact_instance(img, 2);
    auto sol = solve_dr(make_exact_instance(img, 2));
    solve_bad += !sol || find_switch(*sol, Direction::Forward).has_value();
  }
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "%d moves over %zu rule/direction pairs, %d sum violations, %d placement failures; "
                "reduce not reduced %d/300, solve_dr not reduced %d/300",
                kSwitchTrials - placement_failures, applied.size(), violations, placement_failures, reduce_bad, solve_bad);
  return {violations == 0 && placement_failures == 0 && all_rows && reduce_bad == 0 && solve_bad == 0, buf};
}

Outcome criterion7() {
  // Value-2 blocks on a 3-cycle of block columns and rows; search the block
  // fillings for an instance with exactly two switch-free solutions.
  const std::array<std::pair<int, int>, 6> cells = {{{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 1}}};
  const std::array<BlockType, 6> twos = {BlockType::B1, BlockType::B2, BlockType::B31,
                                         BlockType::B32, BlockType::B33, BlockType::B34};
  std::map<std::uint64_t, bool> seen;
  for (int code = 0; code < 46656; ++code) {
    BinaryImage img(6, 6);
    int rest = code;
    for (const auto& [ci, rj] : cells) {
      img.set_block_mask({2 * ci - 1, 2 * rj - 1}, pattern_of(twos[static_cast<std::size_t>(rest % 6)]));
      rest /= 6;
    }
    const Instance inst = make_exact_instance(img, 2);
    if (!seen.try_emplace(testsupport::signature(inst), true).second) continue;
    const OracleResult res = oracle_solve(inst, {3, UINT64_MAX});
    if (res.count != 2 || !res.exhausted) continue;
    const BinaryImage& x = res.solutions[0];
    const BinaryImage& y = res.solutions[1];
    int diff = 0;
    for (int q = 1; q <= 6; ++q)
      for (int p = 1; p <= 6; ++p) diff += x.at(p, q) != y.at(p, q);
    auto switch_free = [](const BinaryImage& s) {
      return all_switches(s, Direction::Forward).empty() && all_switches(s, Direction::Reversed).empty();
    };
    if (diff < kMinComponentDiff || !switch_free(x) || !switch_free(y)) continue;
    auto verdict = check_unique(inst);
    std::string rows, cols;
    for (int r : inst.row_sums) rows += std::to_string(r);
    for (int c : inst.col_sums) cols += std::to_string(c);
    const bool non_unique = verdict && !*verdict;
    return {non_unique, "rows " + rows + " cols " + cols + ": oracle count 2, solutions differ in " +
                            std::to_string(diff) + " cells, no local switch; check_unique " +
                            (verdict ? (*verdict ? "UNIQUE" : "NON-UNIQUE") : "INFEASIBLE")};
  }
  return {false, "no instance with two switch-free solutions found in the family"};
}

Outcome criterion8() {
  Rng rng(808);
  int ok = 0, total_moves = 0;
  for (int trial = 0; trial < kTvTrials; ++trial) {
    const Instance inst = make_exact_instance(testsupport::random_image(20, 20, rng.unit(), rng), 2);
    auto sol = solve_dr(inst);
    if (!sol) continue;
    const TVDescent d = tv_descend(inst, *sol);
    bool decreasing = d.trace.size() == d.moves.size() + 1;
    for (std::size_t i = 1; i < d.trace.size(); ++i) decreasing = decreasing && d.trace[i] < d.trace[i - 1];
    decreasing = decreasing && tv(d.image) == d.trace.back();
    ok += decreasing && verify_solution(inst, d.image).satisfied();
    total_moves += static_cast<int>(d.moves.size());
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d descents strictly decreasing and verified (%d moves total)", ok, kTvTrials,
                total_moves);
  return {ok == kTvTrials, buf};
}

Outcome criterion9() {
  Rng rng(909);
  int checks = 0, disagreements = 0, feasible = 0;
  for (int trial = 0; trial < kLiftTrials; ++trial) {
    const int m = 2 * (1 + static_cast<int>(rng.below(3)));
    const int n = 2 * (1 + static_cast<int>(rng.below(3)));
    Instance inst = make_exact_instance(testsupport::random_image(m, n, rng.unit(), rng), 2);
    if (trial % 2) {
      inst.epsilon = 1;
      inst = perturb_instance(inst, 0.5, static_cast<std::uint64_t>(trial));
    }
    if (trial % 3 == 0) {
      // Move one unit between two rows so that some instances become infeasible.
      const std::size_t from = rng.below(static_cast<std::uint64_t>(n));
      const std::size_t to = rng.below(static_cast<std::uint64_t>(n));
      if (inst.row_sums[from] > 0 && inst.row_sums[to] < m) {
        --inst.row_sums[from];
        ++inst.row_sums[to];
      }
    }
    const bool base = feasible_by_oracle(inst);
    feasible += base;
    for (int kp : {4, 6}) {
      ++checks;
      disagreements += base != feasible_by_oracle(lift_instance(inst, kp));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d comparisons (%d/%d base instances feasible), %d disagreements", checks, feasible,
                kLiftTrials, disagreements);
  return {disagreements == 0, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exhaustive soundness and completeness", criterion1},
      {"200x200 performance", criterion2},
      {"four-variable board", criterion3},
      {"unsatisfiable board", criterion4},
      {"uniqueness test", criterion5},
      {"switch engine", criterion6},
      {"large switching component", criterion7},
      {"TV descent", criterion8},
      {"lifting", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
