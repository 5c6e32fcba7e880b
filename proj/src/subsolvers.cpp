#include "drtomo/subsolvers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "drtomo/flow.hpp"

namespace drtomo {
namespace {

std::size_t row_strip(Corner c) { return static_cast<std::size_t>((c.j - 1) / 2); }
std::size_t col_strip(Corner c) { return static_cast<std::size_t>((c.i - 1) / 2); }

void check_shape(const SubInstance& sub) {
  if (sub.m <= 0 || sub.n <= 0 || sub.m % 2 != 0 || sub.n % 2 != 0)
    throw std::invalid_argument("sub-instance dimensions must be positive and even");
  if (sub.row_pairs.size() != static_cast<std::size_t>(sub.n / 2) ||
      sub.col_pairs.size() != static_cast<std::size_t>(sub.m / 2))
    throw std::invalid_argument("sub-instance pair sums do not match its dimensions");
  for (Corner c : sub.blocks)
    if (c.i < 1 || c.j < 1 || c.i >= sub.m || c.j >= sub.n || c.i % 2 == 0 || c.j % 2 == 0)
      throw std::invalid_argument("block corner " + to_string(c) + " is not a 2x2 corner of the grid");
}

struct StripCounts {
  std::vector<int> rows;  // rho per row strip
  std::vector<int> cols;  // sigma per column strip
};

StripCounts count_blocks(const SubInstance& sub) {
  StripCounts sc{std::vector<int>(sub.row_pairs.size(), 0), std::vector<int>(sub.col_pairs.size(), 0)};
  for (Corner c : sub.blocks) {
    ++sc.rows[row_strip(c)];
    ++sc.cols[col_strip(c)];
  }
  return sc;
}

// Every strip carries per_block * (number of its blocks) ones in total and no
// negative line sum.
bool mass_balanced(const std::vector<PairSums>& pairs, const std::vector<int>& counts, int per_block) {
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const auto [a, b] = pairs[s];
    if (a < 0 || b < 0 || a + b != per_block * counts[s]) return false;
  }
  return true;
}

std::vector<PairSums> invert_pairs(const std::vector<PairSums>& pairs, const std::vector<int>& counts) {
  std::vector<PairSums> out(pairs.size());
  for (std::size_t s = 0; s < pairs.size(); ++s)
    out[s] = {2 * counts[s] - pairs[s].first, 2 * counts[s] - pairs[s].second};
  return out;
}

// Single-one construction: inside each column strip the blocks ranked (from
// the bottom) within the first c_i put their one into column i, the rest into
// column i+1; rows likewise with ranks from the left.
PartialImage place_single_ones(const SubInstance& sub, const std::vector<PairSums>& rows,
                               const std::vector<PairSums>& cols) {
  const std::size_t count = sub.blocks.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<int> sigma(count), rho(count);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sub.blocks[a] < sub.blocks[b];  // (i, j): column strip, then upward
  });
  {
    std::vector<int> seen(cols.size(), 0);
    for (std::size_t idx : order) sigma[idx] = ++seen[col_strip(sub.blocks[idx])];
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Corner x = sub.blocks[a], y = sub.blocks[b];
    return x.j != y.j ? x.j < y.j : x.i < y.i;
  });
  {
    std::vector<int> seen(rows.size(), 0);
    for (std::size_t idx : order) rho[idx] = ++seen[row_strip(sub.blocks[idx])];
  }

  PartialImage part;
  part.blocks = sub.blocks;
  part.masks.resize(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const Corner c = sub.blocks[idx];
    const bool left = sigma[idx] <= cols[col_strip(c)].first;
    const bool bottom = rho[idx] <= rows[row_strip(c)].first;
    BlockMask mask = 0;
    if (bottom) mask = left ? kLowerLeft : kLowerRight;
    else mask = left ? kUpperLeft : kUpperRight;
    part.masks[idx] = mask;
  }
  return part;
}

bool pair_products_vanish(const SubInstance& sub, const std::vector<PairSums>& rows,
                          const std::vector<PairSums>& cols) {
  for (Corner c : sub.blocks) {
    const auto [r0, r1] = rows[row_strip(c)];
    const auto [c0, c1] = cols[col_strip(c)];
    if (r0 * r1 != 0 || c0 * c1 != 0) return false;
  }
  return true;
}

struct TwoColorNetwork {
  FlowGraph graph;
  int source = 0;
  int sink = 1;
  std::vector<int> zeta_arc;  // per block: row strip -> block
  std::vector<int> eta_arc;   // per block: column strip -> block
  std::int64_t demand = 0;
};

TwoColorNetwork build_network(const TwoColorSystem& sys, const std::vector<std::int64_t>* zeta_cost,
                              const std::vector<std::int64_t>* eta_cost) {
  const int rows = static_cast<int>(sys.row_targets.size());
  const int cols = static_cast<int>(sys.col_targets.size());
  const int blocks = static_cast<int>(sys.blocks.size());
  TwoColorNetwork net{FlowGraph(2 + rows + cols + blocks), 0, 1, {}, {}, 0};
  const int row_base = 2;
  const int col_base = row_base + rows;
  const int block_base = col_base + cols;
  for (int s = 0; s < rows; ++s) {
    net.graph.add_arc(net.source, row_base + s, sys.row_targets[static_cast<std::size_t>(s)]);
    net.demand += sys.row_targets[static_cast<std::size_t>(s)];
  }
  for (int s = 0; s < cols; ++s) {
    net.graph.add_arc(net.source, col_base + s, sys.col_targets[static_cast<std::size_t>(s)]);
    net.demand += sys.col_targets[static_cast<std::size_t>(s)];
  }
  net.zeta_arc.resize(static_cast<std::size_t>(blocks));
  net.eta_arc.resize(static_cast<std::size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    const Corner c = sys.blocks[static_cast<std::size_t>(b)];
    const auto ub = static_cast<std::size_t>(b);
    net.zeta_arc[ub] = net.graph.add_arc(row_base + static_cast<int>(row_strip(c)), block_base + b, 1,
                                         zeta_cost ? (*zeta_cost)[ub] : 0);
    net.eta_arc[ub] = net.graph.add_arc(col_base + static_cast<int>(col_strip(c)), block_base + b, 1,
                                        eta_cost ? (*eta_cost)[ub] : 0);
    net.graph.add_arc(block_base + b, net.sink, 1);
  }
  return net;
}

void check_system(const TwoColorSystem& sys) {
  if (sys.row_targets.size() != static_cast<std::size_t>(sys.n / 2) ||
      sys.col_targets.size() != static_cast<std::size_t>(sys.m / 2))
    throw std::invalid_argument("two-color targets do not match the grid");
  for (Corner c : sys.blocks)
    if (c.i < 1 || c.j < 1 || c.i >= sys.m || c.j >= sys.n || c.i % 2 == 0 || c.j % 2 == 0)
      throw std::invalid_argument("block corner " + to_string(c) + " is not a 2x2 corner of the grid");
}

bool targets_nonnegative(const TwoColorSystem& sys) {
  return std::all_of(sys.row_targets.begin(), sys.row_targets.end(), [](int t) { return t >= 0; }) &&
         std::all_of(sys.col_targets.begin(), sys.col_targets.end(), [](int t) { return t >= 0; });
}

// Targets of the two-color system behind a DR(2) sub-instance, or nullopt
// when a parity or mass condition already rules it out.
std::optional<TwoColorSystem> dr2_system(const SubInstance& sub) {
  for (const auto& pairs : {std::cref(sub.row_pairs), std::cref(sub.col_pairs)})
    for (const auto& [a, b] : pairs.get())
      if (a < b) throw std::invalid_argument("DR(2) requires ordered pair sums in every strip");
  const StripCounts sc = count_blocks(sub);
  if (!mass_balanced(sub.row_pairs, sc.rows, 2) || !mass_balanced(sub.col_pairs, sc.cols, 2))
    return std::nullopt;
  TwoColorSystem sys{sub.m, sub.n, sub.blocks, {}, {}};
  for (const auto& [a, b] : sub.row_pairs) {
    if ((a - b) % 2 != 0) return std::nullopt;
    sys.row_targets.push_back((a - b) / 2);
  }
  for (const auto& [a, b] : sub.col_pairs) {
    if ((a - b) % 2 != 0) return std::nullopt;
    sys.col_targets.push_back((a - b) / 2);
  }
  return sys;
}

}  // namespace

SubInstance SubInstance::empty(int m, int n, int nu) {
  SubInstance sub;
  sub.m = m;
  sub.n = n;
  sub.nu = nu;
  sub.row_pairs.assign(static_cast<std::size_t>(n / 2), {0, 0});
  sub.col_pairs.assign(static_cast<std::size_t>(m / 2), {0, 0});
  return sub;
}

void PartialImage::paint(BinaryImage& img) const {
  for (std::size_t idx = 0; idx < blocks.size(); ++idx) img.set_block_mask(blocks[idx], masks[idx]);
}

bool satisfies(const SubInstance& sub, const PartialImage& part) {
  check_shape(sub);
  if (part.blocks != sub.blocks || part.masks.size() != sub.blocks.size()) return false;
  std::vector<PairSums> rows(sub.row_pairs.size(), {0, 0});
  std::vector<PairSums> cols(sub.col_pairs.size(), {0, 0});
  for (std::size_t idx = 0; idx < part.blocks.size(); ++idx) {
    const BlockMask mask = part.masks[idx];
    if (ones_in(mask) != sub.nu) return false;
    auto& r = rows[row_strip(part.blocks[idx])];
    auto& c = cols[col_strip(part.blocks[idx])];
    r.first += ((mask & kLowerLeft) != 0) + ((mask & kLowerRight) != 0);
    r.second += ((mask & kUpperLeft) != 0) + ((mask & kUpperRight) != 0);
    c.first += ((mask & kLowerLeft) != 0) + ((mask & kUpperLeft) != 0);
    c.second += ((mask & kLowerRight) != 0) + ((mask & kUpperRight) != 0);
  }
  return rows == sub.row_pairs && cols == sub.col_pairs;
}

std::optional<std::vector<Color>> solve_two_color(const TwoColorSystem& sys) {
  check_system(sys);
  if (!targets_nonnegative(sys)) return std::nullopt;
  TwoColorNetwork net = build_network(sys, nullptr, nullptr);
  if (net.graph.max_flow(net.source, net.sink) != net.demand) return std::nullopt;
  std::vector<Color> colors(sys.blocks.size(), Color::None);
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    if (net.graph.flow(net.zeta_arc[b]) > 0) colors[b] = Color::Zeta;
    else if (net.graph.flow(net.eta_arc[b]) > 0) colors[b] = Color::Eta;
  }
  return colors;
}

std::optional<PartialImage> fill_trivial(const SubInstance& sub) {
  check_shape(sub);
  if (sub.nu != 0 && sub.nu != 4) throw std::invalid_argument("fill_trivial handles nu in {0,4} only");
  const StripCounts sc = count_blocks(sub);
  const int half = sub.nu / 2;
  for (std::size_t s = 0; s < sub.row_pairs.size(); ++s)
    if (sub.row_pairs[s] != PairSums{half * sc.rows[s], half * sc.rows[s]}) return std::nullopt;
  for (std::size_t s = 0; s < sub.col_pairs.size(); ++s)
    if (sub.col_pairs[s] != PairSums{half * sc.cols[s], half * sc.cols[s]}) return std::nullopt;
  PartialImage part;
  part.blocks = sub.blocks;
  part.masks.assign(sub.blocks.size(), sub.nu == 4 ? BlockMask{15} : BlockMask{0});
  return part;
}

std::optional<PartialImage> solve_dr1(const SubInstance& sub) {
  check_shape(sub);
  const StripCounts sc = count_blocks(sub);
  if (!mass_balanced(sub.row_pairs, sc.rows, 1) || !mass_balanced(sub.col_pairs, sc.cols, 1))
    return std::nullopt;
  return place_single_ones(sub, sub.row_pairs, sub.col_pairs);
}

bool unique_dr1(const SubInstance& sub) {
  check_shape(sub);
  const StripCounts sc = count_blocks(sub);
  if (!mass_balanced(sub.row_pairs, sc.rows, 1) || !mass_balanced(sub.col_pairs, sc.cols, 1))
    throw std::invalid_argument("unique_dr1 on an infeasible sub-instance");
  return pair_products_vanish(sub, sub.row_pairs, sub.col_pairs);
}

std::optional<PartialImage> solve_dr3(const SubInstance& sub) {
  check_shape(sub);
  const StripCounts sc = count_blocks(sub);
  const auto rows = invert_pairs(sub.row_pairs, sc.rows);
  const auto cols = invert_pairs(sub.col_pairs, sc.cols);
  if (!mass_balanced(rows, sc.rows, 1) || !mass_balanced(cols, sc.cols, 1)) return std::nullopt;
  PartialImage part = place_single_ones(sub, rows, cols);
  for (auto& mask : part.masks) mask = static_cast<BlockMask>(~mask & 15);
  return part;
}

bool unique_dr3(const SubInstance& sub) {
  check_shape(sub);
  const StripCounts sc = count_blocks(sub);
  const auto rows = invert_pairs(sub.row_pairs, sc.rows);
  const auto cols = invert_pairs(sub.col_pairs, sc.cols);
  if (!mass_balanced(rows, sc.rows, 1) || !mass_balanced(cols, sc.cols, 1))
    throw std::invalid_argument("unique_dr3 on an infeasible sub-instance");
  return pair_products_vanish(sub, rows, cols);
}

std::optional<PartialImage> solve_dr2(const SubInstance& sub) {
  check_shape(sub);
  auto sys = dr2_system(sub);
  if (!sys) return std::nullopt;
  auto colors = solve_two_color(*sys);
  if (!colors) return std::nullopt;
  PartialImage part;
  part.blocks = sub.blocks;
  part.masks.reserve(sub.blocks.size());
  for (Color c : *colors) {
    const BlockType t = c == Color::Zeta ? BlockType::B1 : c == Color::Eta ? BlockType::B31 : BlockType::B33;
    part.masks.push_back(pattern_of(t));
  }
  return part;
}

bool unique_dr2(const SubInstance& sub, const PartialImage& sol) {
  check_shape(sub);
  if (sol.blocks != sub.blocks || sol.masks.size() != sub.blocks.size())
    throw std::invalid_argument("unique_dr2: solution does not match the sub-instance");
  auto sys = dr2_system(sub);
  if (!sys) throw std::invalid_argument("unique_dr2 on an infeasible sub-instance");

  std::vector<std::int64_t> zeta_cost(sub.blocks.size(), 0), eta_cost(sub.blocks.size(), 0);
  std::int64_t labeled = 0;
  for (std::size_t b = 0; b < sol.masks.size(); ++b) {
    switch (block_type_of(sol.masks[b])) {
      case BlockType::B1: zeta_cost[b] = 1; ++labeled; break;
      case BlockType::B31: eta_cost[b] = 1; ++labeled; break;
      case BlockType::B33: break;
      default: throw std::invalid_argument("unique_dr2: solution uses a block type other than B1, B3(1), B3(3)");
    }
  }
  TwoColorNetwork net = build_network(*sys, &zeta_cost, &eta_cost);
  const auto result = net.graph.min_cost_max_flow(net.source, net.sink);
  if (result.flow != net.demand) throw std::invalid_argument("unique_dr2: sub-instance has no solution");
  return result.cost == labeled;
}

}  // namespace drtomo
