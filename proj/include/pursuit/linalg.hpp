#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pursuit/errors.hpp"
#include "pursuit/tolerances.hpp"

// Self-contained dense kernel: row-major matrices, Householder least squares,
// cyclic Jacobi symmetric eigendecomposition, and the spectral / max norms.
// Everything is O(n^3) textbook material sized for desk-scale problems.

namespace pursuit::la {

class Vector {
 public:
  explicit Vector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ValueError("vector must have positive length");
    for (double v : entries_) {
      if (!std::isfinite(v)) throw ValueError("vector entry is not finite");
    }
  }
  explicit Vector(std::size_t len, double fill = 0.0)
      : entries_(len, fill) {
    if (len == 0) throw ValueError("vector must have positive length");
  }

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<double> entries_;
};

class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0)
      throw ValueError("matrix dimensions must be positive");
    if (entries_.size() != rows_ * cols_)
      throw ValueError("matrix entries length does not match rows * cols");
    for (double v : entries_) {
      if (!std::isfinite(v)) throw ValueError("matrix entry is not finite");
    }
  }
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
    if (rows_ == 0 || cols_ == 0)
      throw ValueError("matrix dimensions must be positive");
  }

  static Matrix identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const std::vector<double>& entries() const { return entries_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

// --- elementwise and BLAS-1 style helpers -----------------------------------

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw DimensionError("dot: vector lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

inline Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("add: vector lengths differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("sub: vector lengths differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector scale(const Vector& a, double alpha) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = alpha * a[i];
  return r;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("add: matrix shapes differ");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline Matrix sub(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("sub: matrix shapes differ");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline Matrix scale(const Matrix& a, double alpha) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = alpha * a(i, j);
  return r;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline Vector column(const Matrix& a, std::size_t j) {
  if (j >= a.cols()) throw ValueError("column index out of range");
  Vector c(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) c[i] = a(i, j);
  return c;
}

inline Matrix select_columns(const Matrix& a,
                             const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw ValueError("select_columns: empty index set");
  Matrix s(a.rows(), indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= a.cols())
      throw ValueError("select_columns: index " + std::to_string(indices[j]) +
                       " out of range");
    for (std::size_t i = 0; i < a.rows(); ++i) s(i, j) = a(i, indices[j]);
  }
  return s;
}

// --- products ----------------------------------------------------------------

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions differ (" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size())
    throw DimensionError("matvec: matrix cols != vector length");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// --- norms --------------------------------------------------------------------

inline double max_norm(const Matrix& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.entries()) s += v * v;
  return std::sqrt(s);
}

// --- least squares -------------------------------------------------------------

// Householder QR without pivoting (Golub & Van Loan, Algorithm 5.2.1),
// reflectors applied to the right-hand side on the fly. Requires m >= n.
// Rank is judged from the diagonal of R after the factorization.
inline Vector least_squares(const Matrix& a, const Vector& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m)
    throw DimensionError("least_squares: rhs length != matrix rows");
  if (n > m)
    throw DimensionError(
        "least_squares: more columns than rows, full column rank impossible");

  Matrix r = a;
  std::vector<double> rhs = b.entries();
  std::vector<double> v(m, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    double normx = 0.0;
    for (std::size_t i = k; i < m; ++i) normx += r(i, k) * r(i, k);
    normx = std::sqrt(normx);
    if (normx == 0.0) continue;  // zero pivot, caught below

    const double sign = r(k, k) >= 0.0 ? 1.0 : -1.0;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] += sign * normx;
      vnorm2 += v[i] * v[i];
    }

    for (std::size_t j = k; j < n; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < m; ++i) proj += v[i] * r(i, j);
      proj = 2.0 * proj / vnorm2;
      for (std::size_t i = k; i < m; ++i) r(i, j) -= proj * v[i];
    }
    double proj = 0.0;
    for (std::size_t i = k; i < m; ++i) proj += v[i] * rhs[i];
    proj = 2.0 * proj / vnorm2;
    for (std::size_t i = k; i < m; ++i) rhs[i] -= proj * v[i];
  }

  double max_pivot = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    max_pivot = std::max(max_pivot, std::abs(r(k, k)));
  for (std::size_t k = 0; k < n; ++k) {
    if (max_pivot == 0.0 || std::abs(r(k, k)) < tol::kRankPivot * max_pivot)
      throw RankDeficiencyError(
          "least_squares: rank-deficient matrix, column " + std::to_string(k),
          k);
  }

  Vector x(n);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = n - 1 - step;
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= r(i, j) * x[j];
    x[i] = s / r(i, i);
  }
  return x;
}

// --- symmetric eigendecomposition -----------------------------------------------

struct SymEig {
  Vector eigenvalues;   // sorted descending
  Matrix eigenvectors;  // column j pairs with eigenvalues[j]
};

namespace detail {

inline double off_diagonal_mass(const Matrix& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j) acc += s(i, j) * s(i, j);
  return std::sqrt(acc);
}

}  // namespace detail

// Cyclic Jacobi (Golub & Van Loan, Algorithm 8.4.3). Sweeps until the
// off-diagonal Frobenius mass falls below kJacobiOffDiagonal * ||S||_F.
inline SymEig sym_eig(const Matrix& s_in) {
  if (s_in.rows() != s_in.cols())
    throw DimensionError("sym_eig: matrix must be square");
  const std::size_t n = s_in.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      asym = std::max(asym, std::abs(s_in(i, j) - s_in(j, i)));
  if (asym > tol::kSymmetry)
    throw ValueError("sym_eig: input is not symmetric (max asymmetry " +
                     std::to_string(asym) + ")");

  Matrix s = s_in;
  Matrix u = Matrix::identity(n);
  const double target = tol::kJacobiOffDiagonal * frobenius_norm(s_in);

  bool converged = detail::off_diagonal_mass(s) <= target;
  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double app = s(p, p);
        const double aqq = s(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) /
            (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double sip = s(i, p);
          const double siq = s(i, q);
          s(i, p) = s(p, i) = c * sip - sn * siq;
          s(i, q) = s(q, i) = sn * sip + c * siq;
        }
        s(p, p) = app - t * apq;
        s(q, q) = aqq + t * apq;
        s(p, q) = s(q, p) = 0.0;

        for (std::size_t i = 0; i < n; ++i) {
          const double uip = u(i, p);
          const double uiq = u(i, q);
          u(i, p) = c * uip - sn * uiq;
          u(i, q) = sn * uip + c * uiq;
        }
      }
    }
    converged = detail::off_diagonal_mass(s) <= target;
  }
  if (!converged)
    throw Error("sym_eig: Jacobi iteration did not converge within " +
                std::to_string(tol::kJacobiMaxSweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return s(i, i) > s(j, j);
                   });

  Vector eigenvalues(n);
  Matrix eigenvectors(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    eigenvalues[j] = s(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) eigenvectors(i, j) = u(i, order[j]);
  }
  return {std::move(eigenvalues), std::move(eigenvectors)};
}

// Largest singular value, taken as sqrt(lambda_max(A'A)).
inline double spectral_norm(const Matrix& a) {
  const std::size_t n = a.cols();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += a(k, i) * a(k, j);
      g(i, j) = g(j, i) = s;
    }
  }
  const SymEig eig = sym_eig(g);
  return std::sqrt(std::max(0.0, eig.eigenvalues[0]));
}

}  // namespace pursuit::la
