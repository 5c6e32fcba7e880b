#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "drtomo/core.hpp"

namespace drtomo {

/// Malformed input text. line() is 1-based, 0 when no single line is at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance text format:
//
//   NSR 1
//   k 2
//   eps 0
//   size <m> <n>
//   rows <r_1> ... <r_n>      (bottom to top)
//   cols <c_1> ... <c_m>      (left to right)
//   blocks
//   <n/k lines of m/k tokens, top block row first; "3" is reliable, "3?" not>
//
// '#' starts a comment that runs to the end of the line.
Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& inst);

/// Plain PBM (P1). The first raster row of the file is image row q = n.
BinaryImage read_image(std::string_view text);
std::string write_image(const BinaryImage& img);

/// Plain PGM (P2), first raster row = top block row.
GrayImage read_gray(std::string_view text);
std::string write_gray(const GrayImage& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace drtomo
