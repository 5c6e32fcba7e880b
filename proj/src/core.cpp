#include "drtomo/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "drtomo/random.hpp"

namespace drtomo {

std::string to_string(BlockType t) {
  switch (t) {
    case BlockType::Empty: return "EMPTY";
    case BlockType::A11: return "A(1,1)";
    case BlockType::A12: return "A(1,2)";
    case BlockType::A21: return "A(2,1)";
    case BlockType::A22: return "A(2,2)";
    case BlockType::B1: return "B1";
    case BlockType::B2: return "B2";
    case BlockType::B31: return "B3(1)";
    case BlockType::B32: return "B3(2)";
    case BlockType::B33: return "B3(3)";
    case BlockType::B34: return "B3(4)";
    case BlockType::C11: return "C(1,1)";
    case BlockType::C12: return "C(1,2)";
    case BlockType::C21: return "C(2,1)";
    case BlockType::C22: return "C(2,2)";
    case BlockType::Full: return "FULL";
  }
  return "?";
}

std::string to_string(Corner c) {
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

BinaryImage::BinaryImage(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative image dimensions");
  bits_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), 0);
}

int BinaryImage::popcount() const {
  return static_cast<int>(std::accumulate(bits_.begin(), bits_.end(), 0));
}

int BinaryImage::row_sum(int q) const {
  int s = 0;
  for (int p = 1; p <= m_; ++p) s += at(p, q);
  return s;
}

int BinaryImage::col_sum(int p) const {
  int s = 0;
  for (int q = 1; q <= n_; ++q) s += at(p, q);
  return s;
}

int BinaryImage::block_sum(Corner c, int k) const {
  int s = 0;
  for (int q = c.j; q < c.j + k; ++q)
    for (int p = c.i; p < c.i + k; ++p) s += at(p, q);
  return s;
}

BlockMask BinaryImage::block_mask(Corner c) const {
  return static_cast<BlockMask>((at(c.i, c.j) ? kLowerLeft : 0) |
                                (at(c.i + 1, c.j) ? kLowerRight : 0) |
                                (at(c.i, c.j + 1) ? kUpperLeft : 0) |
                                (at(c.i + 1, c.j + 1) ? kUpperRight : 0));
}

void BinaryImage::set_block_mask(Corner c, BlockMask mask) {
  set(c.i, c.j, mask & kLowerLeft);
  set(c.i + 1, c.j, mask & kLowerRight);
  set(c.i, c.j + 1, mask & kUpperLeft);
  set(c.i + 1, c.j + 1, mask & kUpperRight);
}

void BinaryImage::swap_rows(int q) {
  for (int p = 1; p <= m_; ++p) std::swap(bits_[index(p, q)], bits_[index(p, q + 1)]);
}

void BinaryImage::swap_cols(int p) {
  for (int q = 1; q <= n_; ++q) std::swap(bits_[index(p, q)], bits_[index(p + 1, q)]);
}

int Instance::window_lo(Corner c) const {
  const int v = value(c);
  return is_reliable(c) ? v : std::max(0, v - epsilon);
}

int Instance::window_hi(Corner c) const {
  const int v = value(c);
  return is_reliable(c) ? v : std::min(k * k, v + epsilon);
}

std::vector<Corner> Instance::corners() const {
  std::vector<Corner> out;
  out.reserve(block_count());
  for (std::size_t b = 0; b < block_count(); ++b) out.push_back(corner_at(b));
  return out;
}

std::size_t Instance::unreliable_count() const {
  std::size_t count = 0;
  for (auto r : reliable) count += r == 0;
  return count;
}

Instance make_empty_instance(int m, int n, int k, int epsilon) {
  if (k < 1 || m <= 0 || n <= 0 || m % k != 0 || n % k != 0)
    throw std::invalid_argument("grid size must be a positive multiple of k");
  Instance inst;
  inst.k = k;
  inst.epsilon = epsilon;
  inst.m = m;
  inst.n = n;
  inst.row_sums.assign(static_cast<std::size_t>(n), 0);
  inst.col_sums.assign(static_cast<std::size_t>(m), 0);
  inst.block_values.assign(inst.block_count(), 0);
  inst.reliable.assign(inst.block_count(), 1);
  return inst;
}

std::vector<ValidationError> validate_instance(const Instance& inst) {
  using Kind = ValidationError::Kind;
  std::vector<ValidationError> errors;
  auto fail = [&](Kind kind, std::string msg) { errors.push_back({kind, std::move(msg)}); };

  if (inst.k < 2) {
    fail(Kind::Dimension, "k must be at least 2, got " + std::to_string(inst.k));
    return errors;
  }
  if (inst.m <= 0 || inst.n <= 0) {
    fail(Kind::Dimension, "grid size must be positive");
    return errors;
  }
  if (inst.m % inst.k != 0 || inst.n % inst.k != 0) {
    fail(Kind::Dimension, "grid size " + std::to_string(inst.m) + "x" + std::to_string(inst.n) +
                              " is not a multiple of k=" + std::to_string(inst.k));
    return errors;
  }
  if (inst.row_sums.size() != static_cast<std::size_t>(inst.n))
    fail(Kind::Dimension, "expected " + std::to_string(inst.n) + " row sums");
  if (inst.col_sums.size() != static_cast<std::size_t>(inst.m))
    fail(Kind::Dimension, "expected " + std::to_string(inst.m) + " column sums");
  if (inst.block_values.size() != inst.block_count() || inst.reliable.size() != inst.block_count())
    fail(Kind::Dimension, "expected " + std::to_string(inst.block_count()) + " block values");
  if (!errors.empty()) return errors;

  if (inst.epsilon < 0) fail(Kind::Reliability, "epsilon must be non-negative");
  for (std::size_t q = 0; q < inst.row_sums.size(); ++q) {
    if (inst.row_sums[q] < 0 || inst.row_sums[q] > inst.m)
      fail(Kind::ValueRange, "row sum r_" + std::to_string(q + 1) + "=" +
                                 std::to_string(inst.row_sums[q]) + " outside [0," +
                                 std::to_string(inst.m) + "]");
  }
  for (std::size_t p = 0; p < inst.col_sums.size(); ++p) {
    if (inst.col_sums[p] < 0 || inst.col_sums[p] > inst.n)
      fail(Kind::ValueRange, "column sum c_" + std::to_string(p + 1) + "=" +
                                 std::to_string(inst.col_sums[p]) + " outside [0," +
                                 std::to_string(inst.n) + "]");
  }
  const int kk = inst.k * inst.k;
  for (std::size_t b = 0; b < inst.block_count(); ++b) {
    if (inst.block_values[b] < 0 || inst.block_values[b] > kk)
      fail(Kind::ValueRange, "block value at " + to_string(inst.corner_at(b)) + " outside [0," +
                                 std::to_string(kk) + "]");
  }
  if (inst.epsilon == 0 && inst.unreliable_count() != 0)
    fail(Kind::Reliability, "epsilon = 0 requires every block to be reliable");

  const long long rows = std::accumulate(inst.row_sums.begin(), inst.row_sums.end(), 0LL);
  const long long cols = std::accumulate(inst.col_sums.begin(), inst.col_sums.end(), 0LL);
  if (rows != cols)
    fail(Kind::SumMismatch, "sum of row sums (" + std::to_string(rows) +
                                ") differs from sum of column sums (" + std::to_string(cols) + ")");
  return errors;
}

bool is_well_formed(const Instance& inst) {
  for (const auto& e : validate_instance(inst))
    if (e.kind != ValidationError::Kind::SumMismatch) return false;
  return true;
}

std::string VerificationReport::to_string() const {
  std::ostringstream os;
  if (satisfied()) {
    os << "SATISFIED\n";
    return os.str();
  }
  os << "VIOLATED rows=" << row_violations.size() << " cols=" << col_violations.size()
     << " blocks=" << block_violations.size() << "\n";
  for (const auto& v : row_violations)
    os << "row " << v.index << ": expected " << v.expected << ", got " << v.actual << "\n";
  for (const auto& v : col_violations)
    os << "col " << v.index << ": expected " << v.expected << ", got " << v.actual << "\n";
  for (const auto& v : block_violations) {
    os << "block " << drtomo::to_string(v.corner) << ": expected " << v.expected;
    if (v.window > 0) os << "+-" << v.window;
    os << ", got " << v.actual << "\n";
  }
  return os.str();
}

VerificationReport verify_solution(const Instance& inst, const BinaryImage& img) {
  if (img.width() != inst.m || img.height() != inst.n)
    throw std::invalid_argument("image is " + std::to_string(img.width()) + "x" +
                                std::to_string(img.height()) + ", instance is " +
                                std::to_string(inst.m) + "x" + std::to_string(inst.n));
  VerificationReport report;
  for (int q = 1; q <= inst.n; ++q) {
    const int actual = img.row_sum(q);
    if (actual != inst.row_sums[q - 1]) report.row_violations.push_back({q, inst.row_sums[q - 1], actual});
  }
  for (int p = 1; p <= inst.m; ++p) {
    const int actual = img.col_sum(p);
    if (actual != inst.col_sums[p - 1]) report.col_violations.push_back({p, inst.col_sums[p - 1], actual});
  }
  for (std::size_t b = 0; b < inst.block_count(); ++b) {
    const Corner c = inst.corner_at(b);
    const int actual = img.block_sum(c, inst.k);
    const int v = inst.block_values[b];
    const int window = inst.reliable[b] ? 0 : inst.epsilon;
    if (actual < v - window || actual > v + window) report.block_violations.push_back({c, v, window, actual});
  }
  return report;
}

BlockType classify_block(const BinaryImage& img, Corner c) {
  if (c.i < 1 || c.j < 1 || c.i + 1 > img.width() || c.j + 1 > img.height() || c.i % 2 == 0 ||
      c.j % 2 == 0)
    throw std::out_of_range("corner " + to_string(c) + " is not a 2x2 block corner");
  return block_type_of(img.block_mask(c));
}

GrayImage degrade(const BinaryImage& img, int k) {
  if (k < 1 || img.width() % k != 0 || img.height() % k != 0)
    throw std::invalid_argument("image size is not divisible by k=" + std::to_string(k));
  GrayImage g;
  g.width = img.width() / k;
  g.height = img.height() / k;
  g.maxval = k * k;
  g.values.reserve(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height));
  for (int v = 1; v <= g.height; ++v)
    for (int u = 1; u <= g.width; ++u)
      g.values.push_back(img.block_sum({(u - 1) * k + 1, (v - 1) * k + 1}, k));
  return g;
}

Instance make_exact_instance(const BinaryImage& img, int k) {
  Instance inst = make_empty_instance(img.width(), img.height(), k, 0);
  for (int q = 1; q <= inst.n; ++q) inst.row_sums[q - 1] = img.row_sum(q);
  for (int p = 1; p <= inst.m; ++p) inst.col_sums[p - 1] = img.col_sum(p);
  inst.block_values = degrade(img, k).values;
  return inst;
}

Instance perturb_instance(const Instance& inst, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("fraction must lie in [0,1]");
  Instance out = inst;
  if (inst.epsilon == 0) return out;

  std::vector<std::size_t> candidates;
  for (std::size_t b = 0; b < inst.block_count(); ++b)
    if (inst.reliable[b]) candidates.push_back(b);
  const auto wanted = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(inst.block_count()) - 1e-9));
  const std::size_t count = std::min(wanted, candidates.size());

  Rng rng(seed);
  rng.shuffle(candidates);
  const int kk = inst.k * inst.k;
  for (std::size_t idx = 0; idx < count; ++idx) {
    const std::size_t b = candidates[idx];
    out.reliable[b] = 0;
    const int shifted = inst.block_values[b] + rng.between(-inst.epsilon, inst.epsilon);
    out.block_values[b] = std::clamp(shifted, 0, kk);
  }
  return out;
}

}  // namespace drtomo
