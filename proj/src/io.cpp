#include "drtomo/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace drtomo {
namespace {

constexpr int kMaxSide = 1 << 16;

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\f' || ch == '\v'; }

std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      if (i > start) line.tokens.push_back(raw.substr(start, i - start));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

int parse_int(std::string_view tok, int line, const char* what) {
  int value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(line, std::string(what) + " out of range: '" + std::string(tok) + "'");
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError(line, std::string("expected integer for ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

void expect_arity(const Line& line, std::size_t count, const char* key) {
  if (line.tokens.size() != count + 1)
    throw ParseError(line.number, std::string("'") + key + "' expects " + std::to_string(count) +
                                      " value(s), got " + std::to_string(line.tokens.size() - 1));
}

// Whitespace/comment aware scanner for netpbm headers and rasters.
class PnmScanner {
 public:
  explicit PnmScanner(std::string_view text) : text_(text) {}

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (is_space(ch)) {
        if (ch == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::optional<std::string_view> token() {
    skip_blank();
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '#') ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::optional<char> bit_char() {
    skip_blank();
    if (pos_ >= text_.size()) return std::nullopt;
    return text_[pos_++];
  }

  std::string_view magic() {
    // Magic number must be the first two bytes.
    if (text_.size() < 2) throw ParseError(1, "missing magic number");
    pos_ = 2;
    return text_.substr(0, 2);
  }

  int line() const noexcept { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

int read_dimension(PnmScanner& sc, const char* what) {
  auto tok = sc.token();
  if (!tok) throw ParseError(sc.line(), std::string("missing ") + what);
  const int v = parse_int(*tok, sc.line(), what);
  if (v <= 0 || v > kMaxSide)
    throw ParseError(sc.line(), std::string(what) + " " + std::to_string(v) + " outside [1," +
                                    std::to_string(kMaxSide) + "]");
  return v;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto lines = tokenize_lines(text);
  if (lines.empty()) throw ParseError(0, "empty instance document");

  const Line& header = lines.front();
  if (header.tokens.size() != 2 || header.tokens[0] != "NSR")
    throw ParseError(header.number, "expected header 'NSR 1'");
  if (header.tokens[1] != "1")
    throw ParseError(header.number, "unsupported format version '" + std::string(header.tokens[1]) + "'");

  std::optional<int> k, eps, m, n;
  std::optional<std::vector<int>> rows, cols;
  std::size_t idx = 1;
  int blocks_line = 0;
  for (; idx < lines.size(); ++idx) {
    const Line& line = lines[idx];
    const std::string_view key = line.tokens[0];
    auto once = [&](bool seen) {
      if (seen) throw ParseError(line.number, "duplicate '" + std::string(key) + "'");
    };
    if (key == "k") {
      once(k.has_value());
      expect_arity(line, 1, "k");
      k = parse_int(line.tokens[1], line.number, "k");
    } else if (key == "eps") {
      once(eps.has_value());
      expect_arity(line, 1, "eps");
      eps = parse_int(line.tokens[1], line.number, "eps");
    } else if (key == "size") {
      once(m.has_value());
      expect_arity(line, 2, "size");
      m = parse_int(line.tokens[1], line.number, "m");
      n = parse_int(line.tokens[2], line.number, "n");
      if (*m <= 0 || *n <= 0 || *m > kMaxSide || *n > kMaxSide)
        throw ParseError(line.number, "size out of range");
    } else if (key == "rows" || key == "cols") {
      auto& target = key == "rows" ? rows : cols;
      once(target.has_value());
      if (!m) throw ParseError(line.number, "'" + std::string(key) + "' before 'size'");
      const int expected = key == "rows" ? *n : *m;
      expect_arity(line, static_cast<std::size_t>(expected), key == "rows" ? "rows" : "cols");
      target.emplace();
      for (std::size_t t = 1; t < line.tokens.size(); ++t)
        target->push_back(parse_int(line.tokens[t], line.number, key == "rows" ? "row sum" : "column sum"));
    } else if (key == "blocks") {
      expect_arity(line, 0, "blocks");
      blocks_line = line.number;
      ++idx;
      break;
    } else {
      throw ParseError(line.number, "unknown keyword '" + std::string(key) + "'");
    }
  }
  const int fallback_line = lines.back().number;
  if (!k) throw ParseError(fallback_line, "missing 'k'");
  if (!eps) throw ParseError(fallback_line, "missing 'eps'");
  if (!m) throw ParseError(fallback_line, "missing 'size'");
  if (!rows) throw ParseError(fallback_line, "missing 'rows'");
  if (!cols) throw ParseError(fallback_line, "missing 'cols'");
  if (blocks_line == 0) throw ParseError(fallback_line, "missing 'blocks'");
  if (*k < 2) throw ParseError(0, "k must be at least 2");
  if (*m % *k != 0 || *n % *k != 0)
    throw ParseError(0, "size " + std::to_string(*m) + "x" + std::to_string(*n) +
                            " is not a multiple of k=" + std::to_string(*k));

  Instance inst;
  inst.k = *k;
  inst.epsilon = *eps;
  inst.m = *m;
  inst.n = *n;
  inst.row_sums = std::move(*rows);
  inst.col_sums = std::move(*cols);
  const int bx = inst.blocks_x();
  const int by = inst.blocks_y();
  inst.block_values.assign(inst.block_count(), 0);
  inst.reliable.assign(inst.block_count(), 1);

  if (lines.size() - idx != static_cast<std::size_t>(by))
    throw ParseError(lines.size() > idx ? lines[idx].number : blocks_line,
                     "expected " + std::to_string(by) + " block rows, got " +
                         std::to_string(lines.size() - idx));
  for (int row = 0; row < by; ++row) {
    const Line& line = lines[idx + static_cast<std::size_t>(row)];
    if (line.tokens.size() != static_cast<std::size_t>(bx))
      throw ParseError(line.number, "expected " + std::to_string(bx) + " block values, got " +
                                        std::to_string(line.tokens.size()));
    const int v = by - row;  // file lists the top block row first
    for (int u = 1; u <= bx; ++u) {
      std::string_view tok = line.tokens[static_cast<std::size_t>(u - 1)];
      bool unreliable = false;
      if (!tok.empty() && tok.back() == '?') {
        unreliable = true;
        tok.remove_suffix(1);
      }
      const std::size_t b = static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(bx) +
                            static_cast<std::size_t>(u - 1);
      inst.block_values[b] = parse_int(tok, line.number, "block value");
      inst.reliable[b] = unreliable ? 0 : 1;
    }
  }

  for (const auto& err : validate_instance(inst))
    if (err.kind != ValidationError::Kind::SumMismatch) throw ParseError(0, err.message);
  return inst;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream os;
  os << "NSR 1\n";
  os << "k " << inst.k << "\n";
  os << "eps " << inst.epsilon << "\n";
  os << "size " << inst.m << " " << inst.n << "\n";
  os << "rows";
  for (int r : inst.row_sums) os << " " << r;
  os << "\ncols";
  for (int c : inst.col_sums) os << " " << c;
  os << "\nblocks\n";
  const int bx = inst.blocks_x();
  for (int v = inst.blocks_y(); v >= 1; --v) {
    for (int u = 1; u <= bx; ++u) {
      const std::size_t b = static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(bx) +
                            static_cast<std::size_t>(u - 1);
      if (u > 1) os << " ";
      os << inst.block_values[b];
      if (!inst.reliable[b]) os << "?";
    }
    os << "\n";
  }
  return os.str();
}

BinaryImage read_image(std::string_view text) {
  PnmScanner sc(text);
  if (sc.magic() != "P1") throw ParseError(1, "not a plain PBM file (magic P1 expected)");
  const int m = read_dimension(sc, "width");
  const int n = read_dimension(sc, "height");
  BinaryImage img(m, n);
  for (int q = n; q >= 1; --q) {
    for (int p = 1; p <= m; ++p) {
      auto ch = sc.bit_char();
      if (!ch) throw ParseError(sc.line(), "raster ends early");
      if (*ch != '0' && *ch != '1')
        throw ParseError(sc.line(), std::string("non-bit token '") + *ch + "' in raster");
      img.set(p, q, *ch == '1');
    }
  }
  if (sc.bit_char()) throw ParseError(sc.line(), "trailing data after raster");
  return img;
}

std::string write_image(const BinaryImage& img) {
  std::string out = "P1\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(img.width() * 2) * static_cast<std::size_t>(img.height()));
  for (int q = img.height(); q >= 1; --q) {
    for (int p = 1; p <= img.width(); ++p) {
      if (p > 1) out += ' ';
      out += img.at(p, q) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

GrayImage read_gray(std::string_view text) {
  PnmScanner sc(text);
  if (sc.magic() != "P2") throw ParseError(1, "not a plain PGM file (magic P2 expected)");
  GrayImage g;
  g.width = read_dimension(sc, "width");
  g.height = read_dimension(sc, "height");
  auto maxtok = sc.token();
  if (!maxtok) throw ParseError(sc.line(), "missing maxval");
  g.maxval = parse_int(*maxtok, sc.line(), "maxval");
  if (g.maxval <= 0 || g.maxval > 65535) throw ParseError(sc.line(), "maxval outside [1,65535]");
  g.values.assign(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height), 0);
  for (int v = g.height; v >= 1; --v) {
    for (int u = 1; u <= g.width; ++u) {
      auto tok = sc.token();
      if (!tok) throw ParseError(sc.line(), "raster ends early");
      const int value = parse_int(*tok, sc.line(), "gray value");
      if (value < 0 || value > g.maxval) throw ParseError(sc.line(), "gray value exceeds maxval");
      g.values[static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(g.width) +
               static_cast<std::size_t>(u - 1)] = value;
    }
  }
  if (sc.token()) throw ParseError(sc.line(), "trailing data after raster");
  return g;
}

std::string write_gray(const GrayImage& g) {
  std::ostringstream os;
  os << "P2\n" << g.width << " " << g.height << "\n" << g.maxval << "\n";
  for (int v = g.height; v >= 1; --v) {
    for (int u = 1; u <= g.width; ++u) {
      if (u > 1) os << " ";
      os << g.at(u, v);
    }
    os << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace drtomo
