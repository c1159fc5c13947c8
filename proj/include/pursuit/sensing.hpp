#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pursuit/errors.hpp"
#include "pursuit/linalg.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/tolerances.hpp"

// Sensing-matrix model: unit-norm column matrices, mutual coherence, Gram
// submatrices, the brute-force restricted isometry constant, and seeded
// Gaussian ensembles. Analysis functions reject non-unit columns instead of
// normalizing behind the caller's back; normalization is its own step.

namespace pursuit::sensing {

// m x n measurement operator with unit L2-norm columns. n > m is the typical
// compressive regime but n <= m is accepted.
class SensingMatrix {
 public:
  explicit SensingMatrix(la::Matrix phi) : phi_(std::move(phi)) {
    for (std::size_t j = 0; j < phi_.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < phi_.rows(); ++i) s += phi_(i, j) * phi_(i, j);
      if (std::abs(std::sqrt(s) - 1.0) > tol::kUnitColumn)
        throw NormalizationError(
            "sensing matrix column " + std::to_string(j) +
                " is not unit norm (got " + std::to_string(std::sqrt(s)) + ")",
            j);
    }
  }

  std::size_t m() const { return phi_.rows(); }
  std::size_t n() const { return phi_.cols(); }
  const la::Matrix& phi() const { return phi_; }
  la::Vector column(std::size_t j) const { return la::column(phi_, j); }

 private:
  la::Matrix phi_;
};

// Exactly K-sparse signal: strictly increasing support, nonzero values.
class SparseSignal {
 public:
  SparseSignal(std::size_t n, std::vector<std::size_t> support,
               std::vector<double> values)
      : n_(n), support_(std::move(support)), values_(std::move(values)) {
    if (support_.empty())
      throw ValueError("sparse signal must have at least one nonzero");
    if (support_.size() != values_.size())
      throw ValueError("sparse signal support and values lengths differ");
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (support_[i] >= n_)
        throw ValueError("sparse signal support index out of range");
      if (i > 0 && support_[i] <= support_[i - 1])
        throw ValueError("sparse signal support must be strictly increasing");
      if (values_[i] == 0.0 || !std::isfinite(values_[i]))
        throw ValueError("sparse signal values must be finite and nonzero");
    }
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t sparsity() const { return support_.size(); }
  const std::vector<std::size_t>& support() const { return support_; }
  const std::vector<double>& values() const { return values_; }

  la::Vector to_dense() const {
    la::Vector x(n_);
    for (std::size_t i = 0; i < support_.size(); ++i)
      x[support_[i]] = values_[i];
    return x;
  }

  double values_norm2() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> support_;
  std::vector<double> values_;
};

struct CoherenceReport {
  double mu;                                // max_{i != j} |<phi_i, phi_j>|
  std::pair<std::size_t, std::size_t> argpair;  // lexicographically smallest
  double gram_offdiag_max;                  // same quantity via Phi'Phi
};

// Scales every column to unit L2 norm. Columns with norm <= kZeroColumn are
// rejected by index.
inline SensingMatrix normalize_columns(const la::Matrix& raw) {
  la::Matrix scaled = raw;
  for (std::size_t j = 0; j < raw.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < raw.rows(); ++i) s += raw(i, j) * raw(i, j);
    const double norm = std::sqrt(s);
    if (norm <= tol::kZeroColumn)
      throw NormalizationError(
          "cannot normalize zero column " + std::to_string(j), j);
    for (std::size_t i = 0; i < raw.rows(); ++i) scaled(i, j) = raw(i, j) / norm;
  }
  return SensingMatrix(std::move(scaled));
}

// Mutual coherence, reported twice: once from direct pairwise inner products
// (mu, with the first maximizing pair in lexicographic order) and once as the
// largest off-diagonal magnitude of Phi'Phi. The two must agree to 1e-12.
inline CoherenceReport coherence(const SensingMatrix& phi) {
  const std::size_t n = phi.n();
  if (n < 2)
    throw DimensionError("coherence: needs at least two columns");

  double mu = -1.0;
  std::pair<std::size_t, std::size_t> argpair{0, 1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < phi.m(); ++k)
        s += phi.phi()(k, i) * phi.phi()(k, j);
      const double v = std::abs(s);
      if (v > mu) {
        mu = v;
        argpair = {i, j};
      }
    }
  }

  const la::Matrix g = la::matmul(la::transpose(phi.phi()), phi.phi());
  double offdiag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(g(i, j)));

  if (mu < 0.0 || mu > 1.0 + tol::kUnitColumn)
    throw ValueError("coherence: mu outside [0, 1] for unit-norm columns");
  return {mu, argpair, offdiag};
}

// Gram submatrix Phi_I' Phi_I for a strictly increasing support set.
inline la::Matrix gram(const SensingMatrix& phi,
                       const std::vector<std::size_t>& support) {
  if (support.empty()) throw ValueError("gram: empty support");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] >= phi.n())
      throw ValueError("gram: support index " + std::to_string(support[i]) +
                       " out of range");
    if (i > 0 && support[i] <= support[i - 1])
      throw ValueError("gram: support must be strictly increasing");
  }
  const std::size_t k = support.size();
  la::Matrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      for (std::size_t row = 0; row < phi.m(); ++row)
        s += phi.phi()(row, support[i]) * phi.phi()(row, support[j]);
      g(i, j) = g(j, i) = s;
    }
  }
  return g;
}

namespace detail {

// C(n, k) with an early exit above `cap` (returns cap + 1).
inline std::uint64_t binomial_capped(std::size_t n, std::size_t k,
                                     std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;  // partial products are exact integers
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace detail

// Brute-force isometry constant of order K: enumerates every support of size
// exactly K and takes max(lambda_max - 1, 1 - lambda_min) of its Gram matrix.
// Smaller supports are covered by eigenvalue interlacing, so size-K supports
// realize the maximum over all |I| <= K.
inline double ric_bruteforce(const SensingMatrix& phi, std::size_t k) {
  const std::size_t n = phi.n();
  if (k == 0 || k > n)
    throw DimensionError("ric_bruteforce: K must satisfy 1 <= K <= n");
  const std::uint64_t count =
      detail::binomial_capped(n, k, tol::kRicEnumerationCap);
  if (count > tol::kRicEnumerationCap)
    throw EnumerationCapError(
        "ric_bruteforce: C(" + std::to_string(n) + ", " + std::to_string(k) +
        ") exceeds the enumeration cap of " +
        std::to_string(tol::kRicEnumerationCap) + "; use a smaller instance");

  std::vector<std::size_t> support(k);
  for (std::size_t i = 0; i < k; ++i) support[i] = i;

  double delta = 0.0;
  while (true) {
    const la::SymEig eig = la::sym_eig(gram(phi, support));
    const double lam_max = eig.eigenvalues[0];
    const double lam_min = eig.eigenvalues[k - 1];
    delta = std::max({delta, lam_max - 1.0, 1.0 - lam_min});

    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && support[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++support[i - 1];
    for (std::size_t j = i; j < k; ++j) support[j] = support[j - 1] + 1;
  }
  return delta;
}

// Seeded i.i.d. standard normal entries (row-major draw order), columns then
// normalized. Identical seeds give bit-identical matrices.
inline SensingMatrix gaussian_ensemble(std::size_t m, std::size_t n,
                                       std::uint64_t seed) {
  if (m == 0 || n == 0)
    throw DimensionError("gaussian_ensemble: dimensions must be positive");
  rng::Xorshift64Star gen(seed);
  std::vector<double> entries(m * n);
  for (double& e : entries) e = gen.next_gaussian();
  return normalize_columns(la::Matrix(m, n, std::move(entries)));
}

// Welch feasibility floor sqrt((n - m) / (m (n - 1))) on the coherence of any
// m x n unit-norm frame with n > m.
inline double welch_bound(std::size_t m, std::size_t n) {
  if (m == 0 || n < 2 || n <= m)
    throw DimensionError("welch_bound: requires n > m >= 1 and n >= 2");
  return std::sqrt(static_cast<double>(n - m) /
                   (static_cast<double>(m) * static_cast<double>(n - 1)));
}

}  // namespace pursuit::sensing
