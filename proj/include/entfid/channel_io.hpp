// Copyright 2026 The entfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text matrix files.
//
// Channel file:
//
//   dim=<n> ops=<k>
//   <k blocks of n lines, each with n entries "re+imj" separated by spaces>
//
// State file: the same with header "dim=<n>" and a single block.
//
// The reader accepts any run of spaces or tabs between entries and skips
// blank lines; the writer emits single spaces and no blank lines.

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "entfid/channels.hpp"
#include "entfid/linalg.hpp"
#include "entfid/state.hpp"

namespace entfid::io {

/** Completeness and state tolerance applied to matrices read from text. */
inline constexpr double load_tolerance = 1e-8;

/** Malformed text; line and column are 1-based. */
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;
};

inline std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

inline complex parse_complex(const Token& tok, std::size_t line) {
  const std::string_view s = tok.text;
  auto fail = [&](const std::string& why) -> complex {
    throw ParseError(line, tok.column, "bad complex entry '" + std::string(s) + "': " + why);
  };
  if (s.size() < 2 || s.back() != 'j') return fail("expected the form re+imj");
  // The imaginary part starts at the last sign that is not leading and not an exponent sign.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = s.size() - 1; i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  if (split_at == std::string_view::npos) return fail("missing imaginary part");
  double re = 0.0, im = 0.0;
  if (!parse_double(s.substr(0, split_at), re)) return fail("invalid real part");
  std::string_view im_text = s.substr(split_at, s.size() - 1 - split_at);
  const bool negative = im_text.front() == '-';
  im_text.remove_prefix(1);
  if (im_text.empty() || im_text.front() == '+' || im_text.front() == '-' || !parse_double(im_text, im)) {
    return fail("invalid imaginary part");
  }
  return {re, negative ? -im : im};
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /** Next non-blank line; false at end of input. */
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!split(line).empty()) return true;
    }
    return false;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

/** Parses "key=<positive int>". */
inline std::size_t parse_field(const Token& tok, std::string_view key, std::size_t line) {
  const std::string prefix = std::string(key) + "=";
  if (tok.text.substr(0, prefix.size()) != prefix) {
    throw ParseError(line, tok.column, "expected '" + prefix + "<n>', got '" + std::string(tok.text) + "'");
  }
  const std::string_view digits = tok.text.substr(prefix.size());
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) {
    throw ParseError(line, tok.column + prefix.size(), "expected a positive integer after '" + prefix + "'");
  }
  return value;
}

inline ComplexMatrix read_block(LineReader& reader, std::size_t dim, std::size_t block) {
  ComplexMatrix m(dim, dim);
  std::string line;
  for (std::size_t r = 0; r < dim; ++r) {
    if (!reader.next(line)) {
      throw ParseError(reader.number() + 1, 1,
                       "unexpected end of input in matrix " + std::to_string(block + 1) + ", row " +
                           std::to_string(r + 1));
    }
    const auto tokens = split(line);
    if (tokens.size() != dim) {
      const std::size_t col = tokens.size() > dim ? tokens[dim].column : line.size() + 1;
      throw ParseError(reader.number(), col,
                       "expected " + std::to_string(dim) + " entries, found " + std::to_string(tokens.size()));
    }
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = parse_complex(tokens[c], reader.number());
  }
  return m;
}

inline void expect_end(LineReader& reader) {
  std::string line;
  if (reader.next(line)) throw ParseError(reader.number(), split(line).front().column, "trailing content after last matrix");
}

}  // namespace detail

/** Reads a Kraus channel; completeness is checked at load_tolerance. */
inline KrausChannel read_channel(std::istream& in) {
  detail::LineReader reader(in);
  std::string header;
  if (!reader.next(header)) throw ParseError(1, 1, "empty channel file");
  const auto fields = detail::split(header);
  if (fields.size() != 2) throw ParseError(reader.number(), 1, "header must be 'dim=<n> ops=<k>'");
  const std::size_t dim = detail::parse_field(fields[0], "dim", reader.number());
  const std::size_t ops = detail::parse_field(fields[1], "ops", reader.number());
  std::vector<ComplexMatrix> operators;
  for (std::size_t k = 0; k < ops; ++k) operators.push_back(detail::read_block(reader, dim, k));
  detail::expect_end(reader);
  return KrausChannel(std::move(operators), load_tolerance);
}

/** Reads a density matrix with header "dim=<n>"; validated at load_tolerance. */
inline DensityMatrix read_density_matrix(std::istream& in) {
  detail::LineReader reader(in);
  std::string header;
  if (!reader.next(header)) throw ParseError(1, 1, "empty state file");
  const auto fields = detail::split(header);
  if (fields.size() != 1) throw ParseError(reader.number(), 1, "header must be 'dim=<n>'");
  const std::size_t dim = detail::parse_field(fields[0], "dim", reader.number());
  ComplexMatrix m = detail::read_block(reader, dim, 0);
  detail::expect_end(reader);
  return DensityMatrix(std::move(m), {dim}, {load_tolerance, load_tolerance, load_tolerance});
}

/** "re+imj" with 17 significant digits, enough to round-trip a double. */
inline std::string format_complex(complex z) {
  char re[32], im[32];
  std::snprintf(re, sizeof re, "%.17g", z.real() == 0.0 ? 0.0 : z.real());
  std::snprintf(im, sizeof im, "%.17g", std::abs(z.imag()));
  const bool negative = z.imag() < 0.0;
  return std::string(re) + (negative ? "-" : "+") + im + "j";
}

inline void write_matrix_rows(std::ostream& out, const ComplexMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_complex(m(r, c));
    }
    out << '\n';
  }
}

inline void write_channel(std::ostream& out, const KrausChannel& ch) {
  out << "dim=" << ch.dim() << " ops=" << ch.operators().size() << '\n';
  for (const auto& e : ch.operators()) write_matrix_rows(out, e);
}

inline void write_density_matrix(std::ostream& out, const DensityMatrix& rho) {
  out << "dim=" << rho.dim() << '\n';
  write_matrix_rows(out, rho.matrix());
}

}  // namespace entfid::io
