#include "drtomo/solver.hpp"

#include <algorithm>

#include "drtomo/switches.hpp"

namespace drtomo {
namespace {

void require_exact(const Instance& inst) {
  if (inst.k != 2 || inst.epsilon != 0)
    throw UnsupportedInstance("exact solver needs k = 2 and eps = 0 (got k = " + std::to_string(inst.k) +
                              ", eps = " + std::to_string(inst.epsilon) + ")");
  if (!is_well_formed(inst)) {
    for (const auto& e : validate_instance(inst))
      if (e.kind != ValidationError::Kind::SumMismatch) throw std::invalid_argument(e.message);
  }
}

bool sums_match(const Instance& inst) {
  long long rows = 0, cols = 0;
  for (int r : inst.row_sums) rows += r;
  for (int c : inst.col_sums) cols += c;
  return rows == cols;
}

struct ValueCounts {
  int full = 0;
  int v1 = 0;
  int v2 = 0;
  int v3 = 0;
};

// Pair sums that each sub-instance receives from one strip.
std::array<PairSums, 5> split_strip(const StripCase& sc, int full) {
  return {PairSums{0, 0},
          PairSums{sc.alpha0, sc.alpha1},
          PairSums{2 * sc.beta0 + sc.beta_prime, sc.beta_prime + 2 * sc.beta1},
          PairSums{sc.gamma0 + 2 * sc.gamma1, 2 * sc.gamma0 + sc.gamma1},
          PairSums{2 * full, 2 * full}};
}

// Solutions of the five sub-instances painted into one image of the proper
// frame, plus the DR(2) part needed for the uniqueness test.
struct Assembly {
  BinaryImage image;
  PartialImage dr2;
};

std::optional<Assembly> assemble(const Instance& proper, const Decomposition& dec) {
  Assembly out{BinaryImage(proper.m, proper.n), {}};
  for (int nu : {0, 4}) {
    auto part = fill_trivial(dec.subs[static_cast<std::size_t>(nu)]);
    if (!part) return std::nullopt;
    part->paint(out.image);
  }
  auto p1 = solve_dr1(dec.subs[1]);
  if (!p1) return std::nullopt;
  p1->paint(out.image);
  auto p2 = solve_dr2(dec.subs[2]);
  if (!p2) return std::nullopt;
  p2->paint(out.image);
  auto p3 = solve_dr3(dec.subs[3]);
  if (!p3) return std::nullopt;
  p3->paint(out.image);
  out.dr2 = std::move(*p2);
  if (!verify_solution(proper, out.image).satisfied()) return std::nullopt;
  return out;
}

}  // namespace

StripCase classify_strip(int r0, int r1, int v1, int v2, int v3) {
  if (r0 < r1) throw std::invalid_argument("classify_strip requires r0 >= r1");
  StripCase sc;
  if (r0 + r1 != v1 + 2 * v2 + 3 * v3 || r1 < 0) return sc;
  if (v3 <= r1 && r1 < v2 + v3) {
    sc.tag = StripCase::Tag::Case1;
    sc.alpha0 = v1;
    sc.beta0 = v2 + v3 - r1;
    sc.beta_prime = r1 - v3;
    sc.gamma1 = v3;
  } else if (v2 + v3 <= r1 && r1 < v1 + v2 + v3) {
    sc.tag = StripCase::Tag::Case2;
    sc.alpha0 = v1 + v2 + v3 - r1;
    sc.alpha1 = r1 - v2 - v3;
    sc.beta_prime = v2;
    sc.gamma1 = v3;
  } else if (v1 + v2 + v3 <= r1 && r1 <= v1 + v2 + 2 * v3) {
    sc.tag = StripCase::Tag::Case3;
    sc.alpha1 = v1;
    sc.beta_prime = v2;
    sc.gamma0 = r1 - v1 - v2 - v3;
    sc.gamma1 = v1 + v2 + 2 * v3 - r1;
  }
  return sc;
}

bool StripPermutation::is_identity() const {
  return std::none_of(rows.begin(), rows.end(), [](auto f) { return f != 0; }) &&
         std::none_of(cols.begin(), cols.end(), [](auto f) { return f != 0; });
}

std::pair<Instance, StripPermutation> properize(const Instance& inst) {
  if (inst.k != 2) throw UnsupportedInstance("properize needs k = 2");
  Instance out = inst;
  StripPermutation perm;
  for (std::size_t s = 0; 2 * s + 1 < out.row_sums.size(); ++s) {
    const bool swap = out.row_sums[2 * s] < out.row_sums[2 * s + 1];
    if (swap) std::swap(out.row_sums[2 * s], out.row_sums[2 * s + 1]);
    perm.rows.push_back(swap);
  }
  for (std::size_t s = 0; 2 * s + 1 < out.col_sums.size(); ++s) {
    const bool swap = out.col_sums[2 * s] < out.col_sums[2 * s + 1];
    if (swap) std::swap(out.col_sums[2 * s], out.col_sums[2 * s + 1]);
    perm.cols.push_back(swap);
  }
  return {out, perm};
}

Instance unproperize(const Instance& inst, const StripPermutation& perm) {
  Instance out = inst;
  for (std::size_t s = 0; s < perm.rows.size(); ++s)
    if (perm.rows[s]) std::swap(out.row_sums[2 * s], out.row_sums[2 * s + 1]);
  for (std::size_t s = 0; s < perm.cols.size(); ++s)
    if (perm.cols[s]) std::swap(out.col_sums[2 * s], out.col_sums[2 * s + 1]);
  return out;
}

BinaryImage unproperize(const BinaryImage& img, const StripPermutation& perm) {
  BinaryImage out = img;
  for (std::size_t s = 0; s < perm.rows.size(); ++s)
    if (perm.rows[s]) out.swap_rows(static_cast<int>(2 * s + 1));
  for (std::size_t s = 0; s < perm.cols.size(); ++s)
    if (perm.cols[s]) out.swap_cols(static_cast<int>(2 * s + 1));
  return out;
}

std::optional<Decomposition> derive_sub_sums(const Instance& proper) {
  require_exact(proper);
  const int bx = proper.blocks_x();
  const int by = proper.blocks_y();
  Decomposition dec;
  for (int nu = 0; nu <= 4; ++nu) dec.subs[static_cast<std::size_t>(nu)] = SubInstance::empty(proper.m, proper.n, nu);
  for (std::size_t b = 0; b < proper.block_count(); ++b)
    dec.subs[static_cast<std::size_t>(proper.block_values[b])].blocks.push_back(proper.corner_at(b));

  auto classify_all = [&](const std::vector<int>& sums, int strips, int along, bool rows,
                          std::vector<StripCase>& cases) -> bool {
    for (int s = 0; s < strips; ++s) {
      ValueCounts vc;
      for (int t = 0; t < along; ++t) {
        const int v = rows ? proper.value({2 * t + 1, 2 * s + 1}) : proper.value({2 * s + 1, 2 * t + 1});
        vc.full += v == 4;
        vc.v1 += v == 1;
        vc.v2 += v == 2;
        vc.v3 += v == 3;
      }
      const int r0 = sums[static_cast<std::size_t>(2 * s)] - 2 * vc.full;
      const int r1 = sums[static_cast<std::size_t>(2 * s + 1)] - 2 * vc.full;
      if (r1 < 0 || r0 < r1) return false;
      const StripCase sc = classify_strip(r0, r1, vc.v1, vc.v2, vc.v3);
      if (!sc.feasible()) return false;
      cases.push_back(sc);
      const auto split = split_strip(sc, vc.full);
      for (int nu = 0; nu <= 4; ++nu) {
        auto& pairs = rows ? dec.subs[static_cast<std::size_t>(nu)].row_pairs
                           : dec.subs[static_cast<std::size_t>(nu)].col_pairs;
        pairs[static_cast<std::size_t>(s)] = split[static_cast<std::size_t>(nu)];
      }
    }
    return true;
  };
  if (!classify_all(proper.row_sums, by, bx, true, dec.row_cases)) return std::nullopt;
  if (!classify_all(proper.col_sums, bx, by, false, dec.col_cases)) return std::nullopt;
  return dec;
}

std::optional<BinaryImage> solve_dr(const Instance& inst) {
  require_exact(inst);
  if (!sums_match(inst)) return std::nullopt;
  const auto [proper, perm] = properize(inst);
  auto dec = derive_sub_sums(proper);
  if (!dec) return std::nullopt;
  auto assembled = assemble(proper, *dec);
  if (!assembled) return std::nullopt;
  BinaryImage img = reduce(unproperize(assembled->image, perm));
  if (!verify_solution(inst, img).satisfied()) return std::nullopt;
  return img;
}

std::optional<bool> check_unique(const Instance& inst) {
  require_exact(inst);
  if (!sums_match(inst)) return std::nullopt;
  const auto [proper, perm] = properize(inst);
  auto dec = derive_sub_sums(proper);
  if (!dec) return std::nullopt;
  auto assembled = assemble(proper, *dec);
  if (!assembled) return std::nullopt;
  const bool subproblems_unique =
      unique_dr1(dec->subs[1]) && unique_dr3(dec->subs[3]) && unique_dr2(dec->subs[2], assembled->dr2);
  return subproblems_unique && !has_reversed_switch(assembled->image);
}

}  // namespace drtomo
