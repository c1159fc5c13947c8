#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pursuit/errors.hpp"
#include "pursuit/linalg.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/tolerances.hpp"

// Orthogonal matching pursuit with a full per-iteration trace. Each iteration
// selects the column whose correlation with the current residual is largest
// in magnitude (ties go to the lowest index), re-estimates by least squares
// on all selected columns, and subtracts the projection from the measurement.
// Correlations are computed against every column each iteration, including
// already-selected ones; residual orthogonality keeps those near zero, so a
// repeat selection can only happen on degenerate input and then surfaces as a
// rank-deficiency error.

namespace pursuit::omp {

struct IterationRecord {
  std::size_t k;                        // 1-based iteration index
  la::Vector correlations;              // |<r^{k-1}, phi_j>| for every j
  std::size_t selected;                 // argmax, lowest index on ties
  std::vector<std::size_t> support;     // selection order, size k
  std::vector<double> estimate;         // least-squares coefficients, aligned
  la::Vector residual;                  // r^k
  double residual_norm;
};

struct RecoveryResult {
  std::vector<std::size_t> support;     // final support, sorted ascending
  la::Vector estimate;                  // full length, zero off support
  std::vector<IterationRecord> trace;
  double residual_norm;
};

struct Options {
  // Stop once ||r|| <= kEarlyExitResidual * ||y||. Off by default: the
  // reference schedule runs exactly K iterations.
  bool early_exit = false;
};

inline RecoveryResult omp_recover(const sensing::SensingMatrix& phi,
                                  const la::Vector& y, std::size_t k,
                                  Options options = {}) {
  const std::size_t m = phi.m();
  const std::size_t n = phi.n();
  if (y.size() != m)
    throw DimensionError("omp_recover: measurement length != matrix rows");
  if (k == 0 || k > std::min(m, n))
    throw DimensionError("omp_recover: K must satisfy 1 <= K <= min(m, n)");

  const double y_norm = la::norm2(y);
  la::Vector residual = y;
  std::vector<std::size_t> selected_order;
  std::vector<IterationRecord> trace;

  for (std::size_t iter = 1; iter <= k; ++iter) {
    la::Vector correlations(n);
    for (std::size_t j = 0; j < n; ++j)
      correlations[j] = std::abs(la::dot(residual, phi.column(j)));

    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (correlations[j] > correlations[best]) best = j;

    selected_order.push_back(best);
    const la::Matrix sub = la::select_columns(phi.phi(), selected_order);
    la::Vector coeffs(1);
    try {
      coeffs = la::least_squares(sub, y);
    } catch (const RankDeficiencyError& e) {
      std::ostringstream msg;
      msg << "omp_recover: selected columns {";
      for (std::size_t i = 0; i < selected_order.size(); ++i)
        msg << (i ? ", " : "") << selected_order[i];
      msg << "} are rank-deficient: " << e.what();
      throw RankDeficiencyError(msg.str(), selected_order[e.column]);
    }
    residual = la::sub(y, la::matvec(sub, coeffs));
    const double rnorm = la::norm2(residual);

    trace.push_back(IterationRecord{iter, std::move(correlations), best,
                                    selected_order, coeffs.entries(), residual,
                                    rnorm});
    if (options.early_exit && rnorm <= tol::kEarlyExitResidual * y_norm) break;
  }

  // Re-solve on the final support in canonical (sorted) column order; equals
  // the last estimate up to rounding.
  std::vector<std::size_t> support = selected_order;
  std::sort(support.begin(), support.end());
  const la::Matrix sub = la::select_columns(phi.phi(), support);
  const la::Vector coeffs = la::least_squares(sub, y);
  la::Vector estimate(n);
  for (std::size_t i = 0; i < support.size(); ++i)
    estimate[support[i]] = coeffs[i];
  const double final_norm = la::norm2(la::sub(y, la::matvec(sub, coeffs)));

  return {std::move(support), std::move(estimate), std::move(trace),
          final_norm};
}

struct ExactRecovery {
  bool success;
  RecoveryResult result;
};

// Measures x with phi, recovers with K = sparsity(x), and declares success
// iff the support matches exactly and values agree to kExactRecovery relative
// to max(1, ||x||_2).
inline ExactRecovery exact_recovery(const sensing::SensingMatrix& phi,
                                    const sensing::SparseSignal& x) {
  if (x.ambient_dim() != phi.n())
    throw DimensionError("exact_recovery: signal dimension != matrix columns");
  const la::Vector y = la::matvec(phi.phi(), x.to_dense());
  RecoveryResult result = omp_recover(phi, y, x.sparsity());

  bool ok = result.support == x.support();
  if (ok) {
    const la::Vector truth = x.to_dense();
    double max_err = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i)
      max_err = std::max(max_err, std::abs(result.estimate[i] - truth[i]));
    ok = max_err <= tol::kExactRecovery * std::max(1.0, x.values_norm2());
  }
  return {ok, std::move(result)};
}

struct FirstIterationDiagnostics {
  double in_support_lower;    // (1/sqrt(K)) (1 - (K-1) mu) ||x_T||_2
  double max_correlation;     // max_j |<phi_j, y>|
  bool lower_is_vacuous;      // (K-1) mu >= 1, bound non-positive
  // Absent when the support covers every column.
  std::optional<double> offsupport_max;    // max_{t not in T} |<phi_t, y>|
  std::optional<double> offsupport_bound;  // sqrt(K) mu ||x_T||_2
};

// First-iteration correlation bounds: the best in-support correlation is at
// least (1/sqrt(K))(1-(K-1)mu)||x_T||, while every off-support correlation is
// at most sqrt(K) mu ||x_T||. Strict separation of the two bounds is exactly
// the mu < 1/(2K-1) recovery condition.
inline FirstIterationDiagnostics first_iteration_diagnostics(
    const sensing::SensingMatrix& phi, const sensing::SparseSignal& x) {
  if (x.ambient_dim() != phi.n())
    throw DimensionError(
        "first_iteration_diagnostics: signal dimension != matrix columns");
  const std::size_t n = phi.n();
  const std::size_t k = x.sparsity();
  const double mu = n >= 2 ? sensing::coherence(phi).mu : 0.0;
  const double xnorm = x.values_norm2();
  const double sqrt_k = std::sqrt(static_cast<double>(k));

  const la::Vector y = la::matvec(phi.phi(), x.to_dense());
  double max_corr = 0.0;
  double off_max = -1.0;
  std::size_t support_pos = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = std::abs(la::dot(phi.column(j), y));
    max_corr = std::max(max_corr, c);
    const bool in_support =
        support_pos < x.support().size() && x.support()[support_pos] == j;
    if (in_support)
      ++support_pos;
    else
      off_max = std::max(off_max, c);
  }

  FirstIterationDiagnostics d{};
  d.in_support_lower =
      (1.0 / sqrt_k) * (1.0 - (static_cast<double>(k) - 1.0) * mu) * xnorm;
  d.max_correlation = max_corr;
  d.lower_is_vacuous = (static_cast<double>(k) - 1.0) * mu >= 1.0;
  if (k < n) {
    d.offsupport_max = off_max;
    d.offsupport_bound = sqrt_k * mu * xnorm;
  }
  return d;
}

}  // namespace pursuit::omp
