#include "drtomo/hardness.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "drtomo/io.hpp"
#include "drtomo/oracle.hpp"

namespace drtomo {
namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

class BoardBuilder {
 public:
  explicit BoardBuilder(const OneInThreeInstance& sat) {
    validate_sat(sat);
    spec_.S = sat.S();
    spec_.T = sat.T;
    const int S = spec_.S, T = spec_.T;
    spec_.N = S * (6 * T + 2) + 2 * T;
    for (int s = 1; s <= S + 1; ++s) spec_.anchors.push_back((6 * T + 2) * (s - 1) + 1);
    const auto blocks = static_cast<std::size_t>(spec_.N / 2);
    spec_.labels.assign(blocks * blocks, BlockLabel::Zero);
    spec_.row_sums.assign(static_cast<std::size_t>(spec_.N), 0);
    spec_.col_sums.assign(static_cast<std::size_t>(spec_.N), 0);
    for (const auto& clause : sat.clauses) {
      std::vector<int> u, n;
      for (int lit : clause) (lit > 0 ? u : n).push_back(std::abs(lit));
      std::sort(u.begin(), u.end());
      std::sort(n.begin(), n.end());
      spec_.unnegated.push_back(u);
      spec_.negated.push_back(n);
    }
  }

  BoardSpec build() {
    initializer();
    for (int s = 1; s <= spec_.S + 1; ++s) connector(s);
    for (int s = 1; s <= spec_.S; ++s) clause_chip(s);
    return std::move(spec_);
  }

 private:
  void label(int i, int j, BlockLabel l) {
    if (i < 1 || j < 1 || i >= spec_.N || j >= spec_.N || i % 2 == 0 || j % 2 == 0)
      throw std::logic_error("board block (" + std::to_string(i) + "," + std::to_string(j) + ") is invalid");
    const auto bx = static_cast<std::size_t>(spec_.N / 2);
    spec_.labels[static_cast<std::size_t>((j - 1) / 2) * bx + static_cast<std::size_t>((i - 1) / 2)] = l;
  }
  void row(int q, int v) { spec_.row_sums[static_cast<std::size_t>(q - 1)] = v; }
  void col(int p, int v) { spec_.col_sums[static_cast<std::size_t>(p - 1)] = v; }
  void component(const char* kind, int s, int x0, int y0, int w, int h) {
    spec_.components.push_back({kind, s, {x0, y0, x0 + w - 1, y0 + h - 1}});
  }

  void initializer() {
    const int T = spec_.T;
    const int a = spec_.anchor(spec_.S + 1);
    component("initializer", 0, a, 1, 2 * T, 2 * T);
    for (int t = 1; t <= T; ++t) {
      const Corner c{a + 2 * (T - t), 2 * t - 1};
      label(c.i, c.j, BlockLabel::ApproxOne);
      spec_.initializer_chips.push_back(c);
    }
  }

  void connector(int s) {
    const int T = spec_.T;
    const int a = spec_.anchor(s);
    component("connector", s, a, a, 2 * T, 2 * T);
    std::vector<Corner> chips;
    for (int t = 1; t <= T; ++t) {
      const Corner c{a + 2 * (T - t), a + 2 * (t - 1)};
      label(c.i, c.j, BlockLabel::Two);
      chips.push_back(c);
    }
    spec_.connector_chips.push_back(chips);
    for (int l = 0; l < 2 * T; ++l) {
      row(a + l, l % 2 == 0 ? 3 : 1);
      col(a + l, l % 2 == 0 ? 3 : 1);
    }
  }

  void clause_chip(int s) {
    const int T = spec_.T;
    const int a = spec_.anchor(s);
    const auto& U = spec_.unnegated[static_cast<std::size_t>(s - 1)];
    const auto& Nn = spec_.negated[static_cast<std::size_t>(s - 1)];

    component("vertical-collector", s, a, a + 2 * T, 2 * T, 4 * T);
    component("vertical-verifier", s, a + 2 * T, a + 2 * T, 2, 4 * T);
    component("transmitter", s, a + 2 * T + 2, a + 2 * T, 4 * T, 4 * T);
    component("horizontal-verifier", s, a + 2 * T + 2, a + 6 * T, 4 * T, 2);
    component("horizontal-collector", s, a + 2 * T + 2, a + 6 * T + 2, 4 * T, 2 * T);

    // Verifier sums.
    row(a + 6 * T, 1);
    row(a + 6 * T + 1, 0);
    col(a + 2 * T + 1, 1);
    col(a + 2 * T, 0);
    // Transmitter sums.
    for (int l = 0; l < T; ++l) {
      const int base = a + 2 * T + 4 * l;
      const int pattern[4] = {0, 2, 1, 0};
      for (int d = 0; d < 4; ++d) {
        row(base + d, pattern[d]);
        col(base + 2 + d, pattern[d]);
      }
    }

    std::vector<Box> vchips, hchips;
    std::vector<std::vector<std::pair<int, int>>> configs;
    for (int t = 1; t <= T; ++t) {
      // Collectors.
      const int vx = a + 2 * (T - t);
      label(vx, a + 2 * T + 4 * t - 4, BlockLabel::ApproxOne);
      label(vx, a + 2 * T + 4 * t - 2, BlockLabel::ApproxOne);
      vchips.push_back({vx, a + 2 * T + 4 * t - 3, vx + 1, a + 2 * T + 4 * t - 2});
      const int hy = a + 6 * T + 2 * t;
      label(a + 2 * T + 4 * t - 2, hy, BlockLabel::ApproxOne);
      label(a + 2 * T + 4 * t, hy, BlockLabel::ApproxOne);
      hchips.push_back({a + 2 * T + 4 * t - 1, hy, a + 2 * T + 4 * t, hy + 1});

      const bool in_u = contains(U, t);
      const bool in_n = contains(Nn, t);
      // Verifiers.
      if (in_u) {
        label(a + 2 * T, a + 2 * T + 4 * t - 2, BlockLabel::ApproxOne);
        label(a + 2 * T + 4 * t - 2, a + 6 * T, BlockLabel::ApproxOne);
      } else if (in_n) {
        label(a + 2 * T, a + 2 * T + 4 * t - 4, BlockLabel::ApproxOne);
        label(a + 2 * T + 4 * t, a + 6 * T, BlockLabel::ApproxOne);
      }
      // Transmitter blocks: the lower one carries the unnegated route, the
      // upper one the negated route; a variable outside the clause uses both.
      if (!in_n) label(a + 2 * T + 4 * t, a + 2 * T + 4 * t - 4, BlockLabel::ApproxOne);
      if (!in_u) label(a + 2 * T + 4 * t - 2, a + 2 * T + 4 * t - 2, BlockLabel::ApproxOne);

      const int ox = a + 2 * T, oy = a + 2 * T;
      std::vector<std::pair<int, int>> pts;
      if (in_u) pts = {{1, 4 * t - 2}, {4 * t, 4 * t - 3}, {4 * t - 1, 4 * T}};
      else if (in_n) pts = {{1, 4 * t - 3}, {4 * t - 1, 4 * t - 2}, {4 * t, 4 * T}};
      else pts = {{4 * t - 1, 4 * t - 2}, {4 * t, 4 * t - 3}};
      for (auto& [x, y] : pts) {
        x += ox;
        y += oy;
      }
      configs.push_back(pts);
    }
    spec_.vertical_collector_chips.push_back(vchips);
    spec_.horizontal_collector_chips.push_back(hchips);
    spec_.configurations.push_back(configs);
  }

  BoardSpec spec_;
};

}  // namespace

void validate_sat(const OneInThreeInstance& sat) {
  if (sat.T < 1) throw std::invalid_argument("need at least one variable");
  if (sat.clauses.empty()) throw std::invalid_argument("need at least one clause");
  for (std::size_t s = 0; s < sat.clauses.size(); ++s) {
    const auto& cl = sat.clauses[s];
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > sat.T)
        throw std::invalid_argument("clause " + std::to_string(s + 1) + ": literal " + std::to_string(lit) +
                                    " outside [1," + std::to_string(sat.T) + "]");
    if (std::abs(cl[0]) == std::abs(cl[1]) || std::abs(cl[0]) == std::abs(cl[2]) ||
        std::abs(cl[1]) == std::abs(cl[2]))
      throw std::invalid_argument("clause " + std::to_string(s + 1) + " repeats a variable");
  }
}

OneInThreeInstance parse_sat(std::string_view text) {
  OneInThreeInstance sat;
  int expected = -1;
  int number = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c') continue;
    if (first == "p") {
      std::string kind;
      int T = 0, S = 0;
      if (expected >= 0) throw ParseError(number, "duplicate problem line");
      if (!(ls >> kind >> T >> S) || kind != "1in3") throw ParseError(number, "expected 'p 1in3 <T> <S>'");
      std::string extra;
      if (ls >> extra) throw ParseError(number, "trailing token '" + extra + "'");
      if (T < 1 || S < 1) throw ParseError(number, "T and S must be positive");
      sat.T = T;
      expected = S;
      continue;
    }
    if (expected < 0) throw ParseError(number, "clause before problem line");
    std::array<int, 3> clause{};
    std::istringstream cs(line);
    for (int& lit : clause) {
      std::string tok;
      if (!(cs >> tok)) throw ParseError(number, "clause needs three literals");
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(number, "bad literal '" + tok + "'");
    }
    std::string extra;
    if (cs >> extra) throw ParseError(number, "clause has more than three literals");
    sat.clauses.push_back(clause);
  }
  if (expected < 0) throw ParseError(0, "missing 'p 1in3' problem line");
  if (static_cast<int>(sat.clauses.size()) != expected)
    throw ParseError(0, "expected " + std::to_string(expected) + " clauses, got " +
                            std::to_string(sat.clauses.size()));
  try {
    validate_sat(sat);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  return sat;
}

std::string write_sat(const OneInThreeInstance& sat) {
  std::ostringstream os;
  os << "p 1in3 " << sat.T << " " << sat.S() << "\n";
  for (const auto& cl : sat.clauses) os << cl[0] << " " << cl[1] << " " << cl[2] << "\n";
  return os.str();
}

Assignment parse_assignment(std::string_view text) {
  Assignment a;
  for (char ch : text) {
    if (ch == 'T' || ch == 't' || ch == '1') a.push_back(true);
    else if (ch == 'F' || ch == 'f' || ch == '0') a.push_back(false);
    else throw std::invalid_argument(std::string("assignment character '") + ch + "' is not T or F");
  }
  if (a.empty()) throw std::invalid_argument("empty assignment");
  return a;
}

std::string format_assignment(const Assignment& a) {
  std::string out;
  for (bool b : a) out += b ? 'T' : 'F';
  return out;
}

bool satisfies_exactly_one(const OneInThreeInstance& sat, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(sat.T)) throw std::invalid_argument("assignment length differs from T");
  for (const auto& cl : sat.clauses) {
    int truths = 0;
    for (int lit : cl) truths += a[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    if (truths != 1) return false;
  }
  return true;
}

BoardSpec build_board(const OneInThreeInstance& sat) { return BoardBuilder(sat).build(); }

Instance gen_sat_instance(const BoardSpec& spec, int epsilon) {
  if (epsilon < 1) throw std::invalid_argument("board generation needs eps >= 1");
  Instance inst = make_empty_instance(spec.N, spec.N, 2, epsilon);
  inst.row_sums = spec.row_sums;
  inst.col_sums = spec.col_sums;
  for (std::size_t b = 0; b < spec.labels.size(); ++b) {
    switch (spec.labels[b]) {
      case BlockLabel::Zero: break;
      case BlockLabel::Two: inst.block_values[b] = 2; break;
      case BlockLabel::ApproxOne:
        inst.block_values[b] = 1;
        inst.reliable[b] = 0;
        break;
    }
  }
  return inst;
}

Instance gen_sat_instance(const OneInThreeInstance& sat, int epsilon) {
  return gen_sat_instance(build_board(sat), epsilon);
}

std::string layout_json(const BoardSpec& spec) {
  using nlohmann::json;
  auto corner = [](Corner c) { return json::array({c.i, c.j}); };
  auto box = [](const Box& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); };
  json doc;
  doc["S"] = spec.S;
  doc["T"] = spec.T;
  doc["N"] = spec.N;
  doc["anchors"] = spec.anchors;
  json comps = json::array();
  for (const auto& c : spec.components) comps.push_back({{"kind", c.kind}, {"s", c.s}, {"box", box(c.box)}});
  doc["components"] = comps;
  json init = json::array();
  for (Corner c : spec.initializer_chips) init.push_back(corner(c));
  doc["initializer_chips"] = init;
  json conn = json::array();
  for (const auto& chips : spec.connector_chips) {
    json row = json::array();
    for (Corner c : chips) row.push_back(corner(c));
    conn.push_back(row);
  }
  doc["connector_chips"] = conn;
  json clauses = json::array();
  for (int s = 0; s < spec.S; ++s) {
    const auto us = static_cast<std::size_t>(s);
    json cl;
    cl["unnegated"] = spec.unnegated[us];
    cl["negated"] = spec.negated[us];
    json vc = json::array(), hc = json::array(), cfg = json::array();
    for (const auto& b : spec.vertical_collector_chips[us]) vc.push_back(box(b));
    for (const auto& b : spec.horizontal_collector_chips[us]) hc.push_back(box(b));
    for (const auto& pts : spec.configurations[us]) {
      json p = json::array();
      for (auto [x, y] : pts) p.push_back(json::array({x, y}));
      cfg.push_back(p);
    }
    cl["vertical_collector_chips"] = vc;
    cl["horizontal_collector_chips"] = hc;
    cl["configurations"] = cfg;
    clauses.push_back(cl);
  }
  doc["clauses"] = clauses;
  return doc.dump(2) + "\n";
}

std::optional<BinaryImage> embed_assignment(const BoardSpec& spec, const Instance& inst, const Assignment& a) {
  if (inst.k != 2 || inst.m != spec.N || inst.n != spec.N)
    throw std::invalid_argument("instance does not match the board (" + std::to_string(spec.N) + "x" +
                                std::to_string(spec.N) + ", k=2 expected)");
  if (a.size() != static_cast<std::size_t>(spec.T))
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) + " values, board has T=" +
                                std::to_string(spec.T));
  OracleOptions options;
  for (int t = 0; t < spec.T; ++t) {
    const Corner c = spec.initializer_chips[static_cast<std::size_t>(t)];
    const BlockMask mask = pattern_of(a[static_cast<std::size_t>(t)] ? BlockType::B1 : BlockType::B31);
    options.fixed.push_back({c.i, c.j, (mask & kLowerLeft) != 0});
    options.fixed.push_back({c.i + 1, c.j, (mask & kLowerRight) != 0});
    options.fixed.push_back({c.i, c.j + 1, (mask & kUpperLeft) != 0});
    options.fixed.push_back({c.i + 1, c.j + 1, (mask & kUpperRight) != 0});
  }
  SearchBudget budget;
  budget.max_solutions = 2;
  const OracleResult res = oracle_solve(inst, budget, options);
  if (res.count >= 2) throw std::logic_error("board completion is not unique");
  if (!res.exhausted) throw std::runtime_error("board completion search did not finish");
  if (res.count == 0) return std::nullopt;
  return res.solutions.front();
}

Assignment extract_assignment(const BoardSpec& spec, const BinaryImage& img) {
  if (img.width() != spec.N || img.height() != spec.N)
    throw std::invalid_argument("image size differs from the board");
  Assignment a;
  for (int t = 0; t < spec.T; ++t) {
    const Corner c = spec.initializer_chips[static_cast<std::size_t>(t)];
    const BlockType type = classify_block(img, c);
    if (type == BlockType::B1) a.push_back(true);
    else if (type == BlockType::B31) a.push_back(false);
    else
      throw std::invalid_argument("initializer chip of variable " + std::to_string(t + 1) + " has type " +
                                  to_string(type));
  }
  return a;
}

Instance lift_instance(const Instance& inst, int k_prime) {
  if (inst.k != 2) throw std::invalid_argument("lifting starts from a k = 2 instance");
  if (k_prime < 2) throw std::invalid_argument("lifted block size must be at least 2");
  if (!is_well_formed(inst)) throw std::invalid_argument("cannot lift a malformed instance");
  const int bx = inst.blocks_x(), by = inst.blocks_y();
  Instance out = make_empty_instance(bx * k_prime, by * k_prime, k_prime, inst.epsilon);
  for (int s = 0; s < by; ++s) {
    out.row_sums[static_cast<std::size_t>(s * k_prime)] = inst.row_sums[static_cast<std::size_t>(2 * s)];
    out.row_sums[static_cast<std::size_t>(s * k_prime + 1)] = inst.row_sums[static_cast<std::size_t>(2 * s + 1)];
  }
  for (int s = 0; s < bx; ++s) {
    out.col_sums[static_cast<std::size_t>(s * k_prime)] = inst.col_sums[static_cast<std::size_t>(2 * s)];
    out.col_sums[static_cast<std::size_t>(s * k_prime + 1)] = inst.col_sums[static_cast<std::size_t>(2 * s + 1)];
  }
  out.block_values = inst.block_values;
  out.reliable = inst.reliable;
  return out;
}

BinaryImage lift_image(const BinaryImage& img, int k_prime) {
  if (img.width() % 2 != 0 || img.height() % 2 != 0 || k_prime < 2)
    throw std::invalid_argument("lift_image needs even dimensions and k' >= 2");
  BinaryImage out(img.width() / 2 * k_prime, img.height() / 2 * k_prime);
  for (int v = 0; v < img.height() / 2; ++v)
    for (int u = 0; u < img.width() / 2; ++u)
      out.set_block_mask({u * k_prime + 1, v * k_prime + 1}, img.block_mask({2 * u + 1, 2 * v + 1}));
  return out;
}

}  // namespace drtomo
