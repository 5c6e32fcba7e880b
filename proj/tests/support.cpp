#include "support.hpp"

#include <stdexcept>

namespace testsupport {

using namespace drtomo;

BinaryImage image_from_rows(const std::vector<std::string>& rows) {
  const int n = static_cast<int>(rows.size());
  const int m = n ? static_cast<int>(rows.front().size()) : 0;
  BinaryImage img(m, n);
  for (int r = 0; r < n; ++r)
    for (int p = 1; p <= m; ++p) img.set(p, n - r, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(p - 1)] == '1');
  return img;
}

BinaryImage image_from_bits(int m, int n, std::uint64_t bits) {
  BinaryImage img(m, n);
  for (int q = 1; q <= n; ++q)
    for (int p = 1; p <= m; ++p) img.set(p, q, (bits >> ((q - 1) * m + (p - 1))) & 1U);
  return img;
}

BinaryImage random_image(int m, int n, double density, Rng& rng) {
  BinaryImage img(m, n);
  for (int q = 1; q <= n; ++q)
    for (int p = 1; p <= m; ++p) img.set(p, q, rng.bernoulli(density));
  return img;
}

std::size_t brute_force_count(const Instance& inst) {
  const int cells = inst.m * inst.n;
  if (cells > 24) throw std::invalid_argument("instance too large for brute force");
  std::size_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits)
    count += verify_solution(inst, image_from_bits(inst.m, inst.n, bits)).satisfied();
  return count;
}

std::size_t brute_force_sub_count(const SubInstance& sub) {
  std::vector<BlockMask> choices;
  for (int mask = 0; mask < 16; ++mask)
    if (ones_in(static_cast<BlockMask>(mask)) == sub.nu) choices.push_back(static_cast<BlockMask>(mask));
  PartialImage part;
  part.blocks = sub.blocks;
  part.masks.assign(sub.blocks.size(), 0);
  std::size_t count = 0;
  std::vector<std::size_t> pick(sub.blocks.size(), 0);
  while (true) {
    for (std::size_t b = 0; b < pick.size(); ++b) part.masks[b] = choices[pick[b]];
    count += satisfies(sub, part);
    std::size_t b = 0;
    while (b < pick.size() && ++pick[b] == choices.size()) pick[b++] = 0;
    if (b == pick.size()) break;
  }
  return count;
}

std::uint64_t signature(const Instance& inst) {
  std::uint64_t key = 0;
  auto push = [&](int v) { key = key * 17 + static_cast<std::uint64_t>(v); };
  for (int r : inst.row_sums) push(r);
  for (int c : inst.col_sums) push(c);
  for (int v : inst.block_values) push(v);
  return key;
}

}  // namespace testsupport
