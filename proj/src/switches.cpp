#include "drtomo/switches.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace drtomo {
namespace {

constexpr BlockType type_a(int r, int c) {
  return r == 1 ? (c == 1 ? BlockType::A11 : BlockType::A12) : (c == 1 ? BlockType::A21 : BlockType::A22);
}

constexpr BlockType type_c(int r, int c) {
  return r == 1 ? (c == 1 ? BlockType::C11 : BlockType::C12) : (c == 1 ? BlockType::C21 : BlockType::C22);
}

std::vector<SwitchRule> horizontal_rules(int klass) {
  using BT = BlockType;
  const Orientation h = Orientation::Horizontal;
  std::vector<SwitchRule> out;
  switch (klass) {
    case 1:
      for (int i = 1; i <= 2; ++i) out.push_back({1, h, 2, {type_a(1, i), BT::B2}, {type_a(2, i), BT::B33}});
      break;
    case 2:
      for (int i = 1; i <= 2; ++i) out.push_back({2, h, 2, {type_a(2, i), BT::B1}, {type_a(1, i), BT::B33}});
      break;
    case 3:
      out.push_back({3, h, 2, {BT::B1, BT::B2}, {BT::B33, BT::B33}});
      break;
    case 4:
      for (int i = 1; i <= 2; ++i) out.push_back({4, h, 2, {type_c(2, i), BT::B2}, {type_c(1, i), BT::B33}});
      break;
    case 5:
      for (int i = 1; i <= 2; ++i) out.push_back({5, h, 2, {type_c(1, i), BT::B1}, {type_c(2, i), BT::B33}});
      break;
    case 6:
      for (int i = 1; i <= 2; ++i)
        for (int i2 = 1; i2 <= 2; ++i2)
          out.push_back({6, h, 2, {type_a(1, i), type_c(1, i2)}, {type_a(2, i), type_c(2, i2)}});
      break;
    case 7:
      out.push_back({7, h, 1, {BT::B34, BT::Empty}, {BT::B33, BT::Empty}});
      break;
    default:
      break;
  }
  return out;
}

std::vector<SwitchRule> build_rules() {
  std::vector<SwitchRule> rules;
  for (int klass = 1; klass <= 7; ++klass) {
    const auto hs = horizontal_rules(klass);
    rules.insert(rules.end(), hs.begin(), hs.end());
    for (SwitchRule r : hs) {
      r.orientation = Orientation::Vertical;
      for (int s = 0; s < r.arity; ++s) {
        r.from[static_cast<std::size_t>(s)] = transpose(r.from[static_cast<std::size_t>(s)]);
        r.to[static_cast<std::size_t>(s)] = transpose(r.to[static_cast<std::size_t>(s)]);
      }
      rules.push_back(r);
    }
  }
  return rules;
}

int orientation_index(Orientation o) { return o == Orientation::Horizontal ? 0 : 1; }

void check_even(const BinaryImage& img) {
  if (img.width() % 2 != 0 || img.height() % 2 != 0)
    throw std::invalid_argument("local switches need even image dimensions");
}

bool same_strip(Orientation o, Corner a, Corner b) {
  return o == Orientation::Horizontal ? a.j == b.j : a.i == b.i;
}

bool valid_corner(const BinaryImage& img, Corner c) {
  return c.i >= 1 && c.j >= 1 && c.i < img.width() && c.j < img.height() && c.i % 2 == 1 && c.j % 2 == 1;
}

// Per-strip block-type membership plus the best candidate move of every
// (orientation, class, strip), kept current under applied moves.
class MoveIndex {
 public:
  MoveIndex(const BinaryImage& img, Direction direction)
      : direction_(direction), bx_(img.width() / 2), by_(img.height() / 2) {
    types_.resize(static_cast<std::size_t>(bx_) * static_cast<std::size_t>(by_));
    members_[0].resize(static_cast<std::size_t>(by_) * kBlockTypeCount);
    members_[1].resize(static_cast<std::size_t>(bx_) * kBlockTypeCount);
    for (int v = 0; v < by_; ++v)
      for (int u = 0; u < bx_; ++u) {
        const BlockType t = block_type_of(img.block_mask(corner(u, v)));
        types_[block(u, v)] = t;
        members_[0][slot(v, t)].insert(u);
        members_[1][slot(u, t)].insert(v);
      }
    for (int o = 0; o < 2; ++o) {
      const int strips = o == 0 ? by_ : bx_;
      for (auto& per_class : best_[o]) per_class.assign(static_cast<std::size_t>(strips), std::nullopt);
      for (int s = 0; s < strips; ++s) refresh(o, s);
    }
  }

  std::optional<SwitchMove> first() const {
    for (int klass = 0; klass < 7; ++klass)
      for (int o = 0; o < 2; ++o)
        if (!ordered_[o][klass].empty()) {
          const auto& [a, b, rule] = *ordered_[o][klass].begin();
          return SwitchMove{rule, direction_, a, b};
        }
    return std::nullopt;
  }

  void apply(BinaryImage& img, const SwitchMove& move) {
    apply_switch_in_place(img, move);
    std::set<std::pair<int, int>> touched;  // (orientation, strip)
    for (Corner c : {move.first, move.second}) {
      const int u = (c.i - 1) / 2;
      const int v = (c.j - 1) / 2;
      const BlockType before = types_[block(u, v)];
      const BlockType after = block_type_of(img.block_mask(c));
      if (before != after) {
        members_[0][slot(v, before)].erase(u);
        members_[1][slot(u, before)].erase(v);
        members_[0][slot(v, after)].insert(u);
        members_[1][slot(u, after)].insert(v);
        types_[block(u, v)] = after;
      }
      touched.insert({0, v});
      touched.insert({1, u});
    }
    for (const auto& [o, s] : touched) refresh(o, s);
  }

 private:
  using Candidate = std::tuple<Corner, Corner, int>;

  std::size_t block(int u, int v) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(bx_) + static_cast<std::size_t>(u);
  }
  static std::size_t slot(int strip, BlockType t) {
    return static_cast<std::size_t>(strip) * kBlockTypeCount + static_cast<std::size_t>(t);
  }
  static Corner corner(int u, int v) { return {2 * u + 1, 2 * v + 1}; }
  static Corner strip_corner(int o, int strip, int pos) {
    return o == 0 ? corner(pos, strip) : corner(strip, pos);
  }

  std::optional<Candidate> candidate(int o, int strip, int rule_index) const {
    const SwitchRule& rule = switch_rules()[static_cast<std::size_t>(rule_index)];
    const auto& src = rule.source(direction_);
    const auto& xs = members_[o][slot(strip, src[0])];
    if (xs.empty()) return std::nullopt;
    const Corner a = strip_corner(o, strip, *xs.begin());
    if (rule.arity == 1) return Candidate{a, a, rule_index};
    if (src[0] == src[1]) {
      if (xs.size() < 2) return std::nullopt;
      return Candidate{a, strip_corner(o, strip, *std::next(xs.begin())), rule_index};
    }
    const auto& ys = members_[o][slot(strip, src[1])];
    if (ys.empty()) return std::nullopt;
    return Candidate{a, strip_corner(o, strip, *ys.begin()), rule_index};
  }

  void refresh(int o, int strip) {
    const auto& rules = switch_rules();
    for (int klass = 0; klass < 7; ++klass) {
      auto& slot_best = best_[o][klass][static_cast<std::size_t>(strip)];
      if (slot_best) ordered_[o][klass].erase(*slot_best);
      slot_best.reset();
      for (int r = 0; r < static_cast<int>(rules.size()); ++r) {
        const SwitchRule& rule = rules[static_cast<std::size_t>(r)];
        if (rule.klass != klass + 1 || orientation_index(rule.orientation) != o) continue;
        auto cand = candidate(o, strip, r);
        if (!cand) continue;
        if (!slot_best || std::tie(std::get<0>(*cand), std::get<1>(*cand)) <
                              std::tie(std::get<0>(*slot_best), std::get<1>(*slot_best)))
          slot_best = cand;
      }
      if (slot_best) ordered_[o][klass].insert(*slot_best);
    }
  }

  Direction direction_;
  int bx_;
  int by_;
  std::vector<BlockType> types_;
  std::array<std::vector<std::set<int>>, 2> members_;
  std::array<std::array<std::vector<std::optional<Candidate>>, 7>, 2> best_;
  std::array<std::array<std::set<Candidate>, 7>, 2> ordered_;
};

int gradient_count(const BinaryImage& img, int p, int q) {
  const bool x = img.at(p, q);
  const int d1 = p < img.width() && img.at(p + 1, q) != x;
  const int d2 = q < img.height() && img.at(p, q + 1) != x;
  return d1 + d2;
}

struct TVDelta {
  long long da = 0;
  long long db = 0;
};

// Change of TV caused by move, from the cells whose forward differences the
// move can touch.
TVDelta tv_delta(BinaryImage& img, const SwitchMove& move) {
  std::vector<std::pair<int, int>> sites;
  const auto& rule = move.spec();
  const auto& src = rule.source(move.direction);
  const auto& dst = rule.target(move.direction);
  for (int s = 0; s < rule.arity; ++s) {
    const Corner c = s == 0 ? move.first : move.second;
    const BlockMask diff = pattern_of(src[static_cast<std::size_t>(s)]) ^ pattern_of(dst[static_cast<std::size_t>(s)]);
    for (int bit = 0; bit < 4; ++bit) {
      if (!(diff & (1 << bit))) continue;
      const int p = c.i + (bit & 1);
      const int q = c.j + (bit >> 1);
      sites.emplace_back(p, q);
      if (p > 1) sites.emplace_back(p - 1, q);
      if (q > 1) sites.emplace_back(p, q - 1);
    }
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());

  auto measure = [&] {
    TVDelta t;
    for (auto [p, q] : sites) {
      const int g = gradient_count(img, p, q);
      t.da += g == 1;
      t.db += g == 2;
    }
    return t;
  };
  const TVDelta before = measure();
  apply_switch_in_place(img, move);
  const TVDelta after = measure();
  SwitchMove back = move;
  back.direction = move.direction == Direction::Forward ? Direction::Reversed : Direction::Forward;
  apply_switch_in_place(img, back);
  return {after.da - before.da, after.db - before.db};
}

}  // namespace

const std::vector<SwitchRule>& switch_rules() {
  static const std::vector<SwitchRule> rules = build_rules();
  return rules;
}

std::string to_string(const SwitchMove& move) {
  const auto& rule = move.spec();
  std::string out = rule.orientation == Orientation::Horizontal ? "H" : "V";
  out += "<" + std::to_string(rule.klass) + ">";
  out += move.direction == Direction::Forward ? " fwd " : " rev ";
  out += to_string(move.first);
  if (rule.arity == 2) out += " " + to_string(move.second);
  const auto& src = rule.source(move.direction);
  const auto& dst = rule.target(move.direction);
  out += " " + to_string(src[0]);
  if (rule.arity == 2) out += "," + to_string(src[1]);
  out += " -> " + to_string(dst[0]);
  if (rule.arity == 2) out += "," + to_string(dst[1]);
  return out;
}

bool scan_less(const SwitchMove& a, const SwitchMove& b) {
  const auto key = [](const SwitchMove& m) {
    return std::make_tuple(m.klass(), orientation_index(m.orientation()), m.first, m.second,
                           static_cast<int>(m.direction), m.rule);
  };
  return key(a) < key(b);
}

bool is_applicable(const BinaryImage& img, const SwitchMove& move) {
  if (move.rule < 0 || move.rule >= static_cast<int>(switch_rules().size())) return false;
  const auto& rule = move.spec();
  const auto& src = rule.source(move.direction);
  if (!valid_corner(img, move.first) || block_type_of(img.block_mask(move.first)) != src[0]) return false;
  if (rule.arity == 1) return move.second == move.first;
  return move.second != move.first && valid_corner(img, move.second) &&
         same_strip(rule.orientation, move.first, move.second) &&
         block_type_of(img.block_mask(move.second)) == src[1];
}

void apply_switch_in_place(BinaryImage& img, const SwitchMove& move) {
  if (!is_applicable(img, move)) throw std::invalid_argument("switch " + to_string(move) + " does not apply");
  const auto& rule = move.spec();
  const auto& dst = rule.target(move.direction);
  img.set_block_mask(move.first, pattern_of(dst[0]));
  if (rule.arity == 2) img.set_block_mask(move.second, pattern_of(dst[1]));
}

BinaryImage apply_switch(const BinaryImage& img, const SwitchMove& move) {
  BinaryImage out = img;
  apply_switch_in_place(out, move);
  return out;
}

std::optional<SwitchMove> find_switch(const BinaryImage& img, Direction direction) {
  check_even(img);
  return MoveIndex(img, direction).first();
}

std::vector<SwitchMove> all_switches(const BinaryImage& img, Direction direction) {
  check_even(img);
  const auto& rules = switch_rules();
  const int bx = img.width() / 2;
  const int by = img.height() / 2;
  std::vector<BlockType> types(static_cast<std::size_t>(bx * by));
  for (int v = 0; v < by; ++v)
    for (int u = 0; u < bx; ++u)
      types[static_cast<std::size_t>(v * bx + u)] = block_type_of(img.block_mask({2 * u + 1, 2 * v + 1}));
  auto type_at = [&](Corner c) { return types[static_cast<std::size_t>((c.j - 1) / 2 * bx + (c.i - 1) / 2)]; };

  std::vector<SwitchMove> moves;
  for (int r = 0; r < static_cast<int>(rules.size()); ++r) {
    const SwitchRule& rule = rules[static_cast<std::size_t>(r)];
    const auto& src = rule.source(direction);
    const bool horizontal = rule.orientation == Orientation::Horizontal;
    for (int v = 0; v < by; ++v)
      for (int u = 0; u < bx; ++u) {
        const Corner a{2 * u + 1, 2 * v + 1};
        if (type_at(a) != src[0]) continue;
        if (rule.arity == 1) {
          moves.push_back({r, direction, a, a});
          continue;
        }
        const int len = horizontal ? bx : by;
        for (int t = 0; t < len; ++t) {
          const Corner b = horizontal ? Corner{2 * t + 1, a.j} : Corner{a.i, 2 * t + 1};
          if (b != a && type_at(b) == src[1]) moves.push_back({r, direction, a, b});
        }
      }
  }
  std::sort(moves.begin(), moves.end(), scan_less);
  return moves;
}

BinaryImage reduce(const BinaryImage& img, std::size_t& steps) {
  check_even(img);
  BinaryImage out = img;
  MoveIndex index(out, Direction::Forward);
  steps = 0;
  while (auto move = index.first()) {
    index.apply(out, *move);
    ++steps;
  }
  return out;
}

BinaryImage reduce(const BinaryImage& img) {
  std::size_t steps = 0;
  return reduce(img, steps);
}

bool is_reduced(const BinaryImage& img) { return !find_switch(img, Direction::Forward).has_value(); }

bool has_reversed_switch(const BinaryImage& img) { return find_switch(img, Direction::Reversed).has_value(); }

std::tuple<int, int, int> reduction_measure(const BinaryImage& img) {
  check_even(img);
  int diagonal = 0, top = 0, right = 0;
  for (int j = 1; j < img.height(); j += 2)
    for (int i = 1; i < img.width(); i += 2) {
      const BlockType t = block_type_of(img.block_mask({i, j}));
      diagonal += t == BlockType::B33;
      top += t == BlockType::A21 || t == BlockType::A22;
      right += t == BlockType::A12 || t == BlockType::A22;
    }
  return {diagonal, top, right};
}

int tv_sign(long long da, long long db) {
  if (da >= 0 && db >= 0) return (da != 0 || db != 0) ? 1 : 0;
  if (da <= 0 && db <= 0) return -1;
  const long long lhs = da * da;
  const long long rhs = 2 * db * db;
  return da > 0 ? (lhs > rhs ? 1 : -1) : (rhs > lhs ? 1 : -1);
}

std::strong_ordering operator<=>(const TVValue& x, const TVValue& y) {
  const int s = tv_sign(x.a - y.a, x.b - y.b);
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

double TVValue::approx() const { return static_cast<double>(a) + static_cast<double>(b) * 1.4142135623730951; }

TVValue tv(const BinaryImage& img) {
  TVValue t;
  for (int q = 1; q <= img.height(); ++q)
    for (int p = 1; p <= img.width(); ++p) {
      const int g = gradient_count(img, p, q);
      t.a += g == 1;
      t.b += g == 2;
    }
  return t;
}

TVDescent tv_descend(const Instance& inst, const BinaryImage& img) {
  if (!verify_solution(inst, img).satisfied()) throw std::invalid_argument("tv_descend: image does not solve the instance");
  check_even(img);
  TVDescent result{img, {tv(img)}, {}};
  BinaryImage& cur = result.image;
  while (true) {
    auto moves = all_switches(cur, Direction::Forward);
    auto reversed = all_switches(cur, Direction::Reversed);
    moves.insert(moves.end(), reversed.begin(), reversed.end());
    std::sort(moves.begin(), moves.end(), scan_less);

    std::optional<SwitchMove> best;
    TVDelta best_delta;
    for (const SwitchMove& move : moves) {
      const TVDelta d = tv_delta(cur, move);
      if (tv_sign(d.da, d.db) >= 0) continue;
      if (!best || tv_sign(d.da - best_delta.da, d.db - best_delta.db) < 0) {
        best = move;
        best_delta = d;
      }
    }
    if (!best) break;
    apply_switch_in_place(cur, *best);
    const TVValue& last = result.trace.back();
    result.trace.push_back({last.a + best_delta.da, last.b + best_delta.db});
    result.moves.push_back(*best);
  }
  return result;
}

}  // namespace drtomo
