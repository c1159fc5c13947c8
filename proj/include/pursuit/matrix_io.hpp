#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pursuit/errors.hpp"
#include "pursuit/guarantees.hpp"
#include "pursuit/linalg.hpp"

// Text matrix format shared with the CLI: first line "m n", then m lines of n
// space-separated decimals. Values are written with 17 significant digits, so
// write -> parse round-trips bit-exactly.

namespace pursuit::io {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_matrix(std::ostream& out, const la::Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

inline void write_matrix_file(const std::string& path, const la::Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_matrix(out, m);
  if (!out) throw Error("write failed for '" + path + "'");
}

inline la::Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("missing header line 'm n'", 1);
  std::istringstream header(line);
  long long rows = 0, cols = 0;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows <= 0 || cols <= 0)
    throw ParseError("header must be two positive integers 'm n'", 1);

  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  for (long long i = 0; i < rows; ++i) {
    const std::size_t line_no = static_cast<std::size_t>(i) + 2;
    if (!std::getline(in, line))
      throw ParseError("expected " + std::to_string(rows) +
                           " data rows, file ends early",
                       line_no);
    std::istringstream row(line);
    for (long long j = 0; j < cols; ++j) {
      double v = 0.0;
      if (!(row >> v))
        throw ParseError("row has fewer than " + std::to_string(cols) +
                             " numeric entries",
                         line_no);
      if (!std::isfinite(v))
        throw ParseError("entry is not finite", line_no);
      entries.push_back(v);
    }
    if (row >> extra)
      throw ParseError("row has trailing content '" + extra + "'", line_no);
  }
  try {
    return la::Matrix(static_cast<std::size_t>(rows),
                      static_cast<std::size_t>(cols), std::move(entries));
  } catch (const ValueError& e) {
    throw ParseError(e.what(), 2);
  }
}

inline la::Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_matrix(in);
}

// Vectors are stored as single-column matrices; a single-row file is accepted
// and transposed on read.
inline la::Vector read_vector(std::istream& in) {
  const la::Matrix m = read_matrix(in);
  if (m.cols() == 1) return la::column(m, 0);
  if (m.rows() == 1) {
    la::Vector v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(0, j);
    return v;
  }
  throw ParseError("expected a vector (one row or one column)", 1);
}

inline la::Vector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_vector(in);
}

inline void write_vector_file(const std::string& path, const la::Vector& v) {
  la::Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  write_matrix_file(path, m);
}

// --- JSON views ---------------------------------------------------------------

inline nlohmann::json sparse_signal_json(const sensing::SparseSignal& x) {
  return {{"n", x.ambient_dim()},
          {"support", x.support()},
          {"values", x.values()}};
}

inline nlohmann::json bundle_json(const guarantees::CounterexampleBundle& b) {
  return {{"K", b.k},
          {"mu", b.mu},
          {"null_residual", b.null_residual},
          {"ambiguity_gap", b.ambiguity_gap},
          {"x1", sparse_signal_json(b.x1)},
          {"x2", sparse_signal_json(b.x2)}};
}

inline nlohmann::json iteration_record_json(const omp::IterationRecord& rec) {
  return {{"k", rec.k},
          {"correlations", rec.correlations.entries()},
          {"selected", rec.selected},
          {"support", rec.support},
          {"estimate", rec.estimate},
          {"residual", rec.residual.entries()},
          {"residual_norm", rec.residual_norm}};
}

}  // namespace pursuit::io
