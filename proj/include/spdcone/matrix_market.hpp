#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spdcone/error.hpp"
#include "spdcone/sym_matrix.hpp"

namespace spdcone {

// Matrix Market exchange format. Coordinate files load as sparse storage and
// array files as dense. Writing uses the `symmetric` qualifier (lower triangle
// only) and 17 significant digits, so a write/read cycle is bit-exact.

namespace detail {

inline std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, source_ + ":" + std::to_string(line_) + ": " + what);
  }

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  }

  bool raw(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  double parse_double(const std::string& token) const {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE) fail("bad numeric value '" + token + "'");
    return v;
  }

  long parse_index(const std::string& token) const {
    char* end = nullptr;
    const long v = std::strtol(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0') fail("bad integer '" + token + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::string source_;
  long line_ = 0;
};

inline std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

inline void format_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace detail

/// Parse a real (or integer) symmetric matrix. Errors carry `source:line`.
inline SymMatrix read_matrix_market(std::istream& in, const std::string& source = "<stream>") {
  detail::LineReader reader(in, source);
  std::string line;
  if (!reader.raw(line)) reader.fail("empty input");
  const auto banner = detail::split(detail::lowercase(line));
  if (banner.size() != 5 || banner[0] != "%%matrixmarket" || banner[1] != "matrix")
    reader.fail("missing '%%MatrixMarket matrix' banner");
  const std::string& format = banner[2];
  const std::string& field = banner[3];
  const std::string& symmetry = banner[4];
  if (format != "coordinate" && format != "array") reader.fail("unknown format '" + format + "'");
  if (field != "real" && field != "integer" && field != "double")
    reader.fail("unsupported field '" + field + "' (need real or integer)");
  if (symmetry != "symmetric" && symmetry != "general")
    reader.fail("unsupported symmetry '" + symmetry + "' (need symmetric or general)");
  const bool symmetric = symmetry == "symmetric";

  if (!reader.next(line)) reader.fail("missing size line");
  const auto size = detail::split(line);
  if (size.size() != (format == "coordinate" ? 3u : 2u)) reader.fail("malformed size line");
  const long rows = reader.parse_index(size[0]);
  const long cols = reader.parse_index(size[1]);
  if (rows < 1 || cols < 1) reader.fail("dimensions must be positive");
  if (rows != cols) reader.fail("matrix is not square");
  const Index n = rows;

  if (format == "coordinate") {
    const long count = reader.parse_index(size[2]);
    if (count < 0) reader.fail("negative entry count");
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(count));
    for (long e = 0; e < count; ++e) {
      if (!reader.next(line)) reader.fail("expected " + std::to_string(count) + " entries, got " + std::to_string(e));
      const auto tok = detail::split(line);
      if (tok.size() != 3) reader.fail("entry needs 'row col value'");
      const long i = reader.parse_index(tok[0]), j = reader.parse_index(tok[1]);
      if (i < 1 || j < 1 || i > n || j > n) reader.fail("index out of range");
      entries.emplace_back(i - 1, j - 1, reader.parse_double(tok[2]));
    }
    if (reader.next(line)) reader.fail("trailing data after entries");
    if (symmetric) return SymMatrix::from_triplets(n, entries);
    SparseMatrix full(n, n);
    full.setFromTriplets(entries.begin(), entries.end());
    return SymMatrix::from_sparse_full(full);
  }

  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = symmetric ? j : 0; i < n; ++i) {
      if (!reader.next(line)) reader.fail("too few array entries");
      const auto tok = detail::split(line);
      if (tok.size() != 1) reader.fail("array entry needs one value");
      m(i, j) = reader.parse_double(tok[0]);
    }
  }
  if (reader.next(line)) reader.fail("trailing data after entries");
  return symmetric ? SymMatrix::from_lower(m) : SymMatrix::from_dense(m);
}

inline SymMatrix read_matrix_market_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_matrix_market(in, path.string());
}

inline void write_matrix_market(std::ostream& out, const SymMatrix& m, const std::string& comment = {}) {
  const Index n = m.size();
  if (m.is_sparse()) {
    const auto& s = m.sparse_lower();
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    if (!comment.empty()) out << "% " << comment << "\n";
    out << n << " " << n << " " << s.nonZeros() << "\n";
    for (Index k = 0; k < s.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(s, k); it; ++it) {
        out << it.row() + 1 << " " << it.col() + 1 << " ";
        detail::format_value(out, it.value());
        out << "\n";
      }
    }
  } else {
    const auto& d = m.dense();
    out << "%%MatrixMarket matrix array real symmetric\n";
    if (!comment.empty()) out << "% " << comment << "\n";
    out << n << " " << n << "\n";
    for (Index j = 0; j < n; ++j) {
      for (Index i = j; i < n; ++i) {
        detail::format_value(out, d(i, j));
        out << "\n";
      }
    }
  }
}

inline void write_matrix_market_file(const std::filesystem::path& path, const SymMatrix& m,
                                     const std::string& comment = {}) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_matrix_market(out, m, comment);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace spdcone
