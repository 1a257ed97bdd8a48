#ifndef OBPURSUIT_MATRIX_IO_HPP_
#define OBPURSUIT_MATRIX_IO_HPP_

// Matrix interchange format.
//
//   rows,cols,field          e.g. `4,3,complex`
//   <column 0 entries, comma separated>
//   <column 1 entries>
//   ...
//
// Entries are stored column by column, one line per column. Complex entries
// are written as `re+imi` (`1.5-2i`); real matrices write plain decimals. All values use 17
// significant digits so a write/read cycle is exact.

#include "obpursuit/types.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace obpursuit {

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_entry(Complex v, bool complex_field) {
  if (!complex_field) return format_double(v.real());
  std::string im = format_double(v.imag());
  if (im.front() != '-' && im.front() != '+') im = "+" + im;
  return format_double(v.real()) + im + "i";
}

inline double parse_double(const std::string& token, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(line) + ": bad number '" + token + "'");
  }
  if (used != token.size()) {
    throw FormatError("line " + std::to_string(line) + ": bad number '" + token + "'");
  }
  return v;
}

inline Complex parse_entry(std::string token, bool complex_field, int line) {
  while (!token.empty() && (token.back() == ' ' || token.back() == '\r')) token.pop_back();
  while (!token.empty() && token.front() == ' ') token.erase(token.begin());
  if (!complex_field) return {parse_double(token, line), 0.0};
  if (token.empty() || token.back() != 'i') {
    // A bare real value is accepted in a complex file.
    return {parse_double(token, line), 0.0};
  }
  token.pop_back();
  // Split at the last sign that is not part of an exponent and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = token.size(); i-- > 1;) {
    if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_double(token, line)};
  return {parse_double(token.substr(0, split), line),
          parse_double(token.substr(split), line)};
}

inline std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  return out;
}

}  // namespace detail

inline void write_matrix_csv(std::ostream& os, const CMatrix& m, bool complex_field = true) {
  os << m.rows() << ',' << m.cols() << ',' << (complex_field ? "complex" : "real") << '\n';
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i > 0) os << ',';
      os << detail::format_entry(m(i, j), complex_field);
    }
    os << '\n';
  }
}

// Field tag is chosen automatically: real when every imaginary part is zero.
inline void write_matrix_csv(const std::string& path, const CMatrix& m) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  const bool is_real = m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0;
  write_matrix_csv(os, m, !is_real);
}

inline CMatrix read_matrix_csv(std::istream& is) {
  std::string line;
  int lineno = 1;
  if (!std::getline(is, line)) throw FormatError("empty matrix file");
  const auto head = detail::split_commas(line);
  if (head.size() != 3) throw FormatError("line 1: expected header rows,cols,field");
  long rows = 0;
  long cols = 0;
  try {
    rows = std::stol(head[0]);
    cols = std::stol(head[1]);
  } catch (const std::exception&) {
    throw FormatError("line 1: bad dimensions");
  }
  std::string field = head[2];
  while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
  if (rows < 1 || cols < 1) throw FormatError("line 1: dimensions must be positive");
  if (field != "real" && field != "complex") {
    throw FormatError("line 1: field must be 'real' or 'complex'");
  }
  const bool complex_field = field == "complex";
  CMatrix m(rows, cols);
  for (long j = 0; j < cols; ++j) {
    ++lineno;
    if (!std::getline(is, line)) {
      throw FormatError("line " + std::to_string(lineno) + ": missing column " +
                        std::to_string(j));
    }
    const auto tokens = detail::split_commas(line);
    if (static_cast<long>(tokens.size()) != rows) {
      throw FormatError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(rows) + " entries, got " +
                        std::to_string(tokens.size()));
    }
    for (long i = 0; i < rows; ++i) {
      const Complex v = detail::parse_entry(tokens[static_cast<std::size_t>(i)],
                                            complex_field, lineno);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw FormatError("line " + std::to_string(lineno) + ": non-finite entry");
      }
      m(i, j) = v;
    }
  }
  return m;
}

inline CMatrix read_matrix_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path);
  return read_matrix_csv(is);
}

}  // namespace obpursuit

#endif  // OBPURSUIT_MATRIX_IO_HPP_
