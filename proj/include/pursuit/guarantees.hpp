#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pursuit/errors.hpp"
#include "pursuit/linalg.hpp"
#include "pursuit/omp.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/tolerances.hpp"

// Recovery-condition evaluation and the boundary construction showing the
// coherence threshold 1/(2K-1) cannot be relaxed: at mu = 1/(2K-1) there are
// two distinct K-sparse signals with identical measurements.

namespace pursuit::guarantees {

struct GuaranteeReport {
  std::size_t k;
  double mu;
  double mu_threshold;             // 1 / (2K - 1)
  bool condition_holds;            // mu < mu_threshold
  // Brute-forced isometry constants; absent if disabled or over the cap.
  std::optional<double> delta_k;
  std::optional<double> delta_k_plus_1;
  std::optional<bool> rip_third_sqrt_holds;     // delta_{K+1} < 1/(3 sqrt(K))
  std::optional<bool> rip_sqrt_plus_one_holds;  // delta_{K+1} < 1/(sqrt(K)+1)
  std::optional<double> ric_coherence_slack;    // (K-1) mu - delta_K, >= 0
};

// Evaluates every recovery predicate the toolkit knows about. Brute-force
// isometry constants are attempted only when with_ric is set and are dropped
// (not an error) if the support enumeration would exceed its cap.
inline GuaranteeReport evaluate_guarantees(const sensing::SensingMatrix& phi,
                                           std::size_t k, bool with_ric) {
  if (k == 0) throw DimensionError("evaluate_guarantees: K must be positive");
  GuaranteeReport report{};
  report.k = k;
  report.mu = sensing::coherence(phi).mu;
  report.mu_threshold = 1.0 / (2.0 * static_cast<double>(k) - 1.0);
  report.condition_holds = report.mu < report.mu_threshold;

  if (with_ric) {
    try {
      report.delta_k = sensing::ric_bruteforce(phi, k);
      report.ric_coherence_slack =
          (static_cast<double>(k) - 1.0) * report.mu - *report.delta_k;
    } catch (const EnumerationCapError&) {
    }
    if (k + 1 <= phi.n()) {
      try {
        report.delta_k_plus_1 = sensing::ric_bruteforce(phi, k + 1);
        const double sqrt_k = std::sqrt(static_cast<double>(k));
        report.rip_third_sqrt_holds =
            *report.delta_k_plus_1 < 1.0 / (3.0 * sqrt_k);
        report.rip_sqrt_plus_one_holds =
            *report.delta_k_plus_1 < 1.0 / (sqrt_k + 1.0);
      } catch (const EnumerationCapError&) {
      }
    }
  }
  return report;
}

struct GramOperatorCheck {
  bool lower_ok;        // (1 - delta) ||u|| <= ||G u|| + slack
  bool upper_ok;        // ||G u|| <= (1 + delta) ||u|| + slack
  double product_norm;  // ||Phi_I' Phi_I u||_2
  double lower;         // (1 - delta) ||u||_2
  double upper;         // (1 + delta) ||u||_2
};

// Two-sided bound on the Gram operator for a support set I, using a
// caller-supplied isometry constant delta = delta_{|I|} < 1. Both directions
// are evaluated with 1e-9 slack.
inline GramOperatorCheck check_gram_operator_bounds(
    const sensing::SensingMatrix& phi, const std::vector<std::size_t>& support,
    const la::Vector& u, double delta) {
  if (delta >= 1.0)
    throw ValueError("check_gram_operator_bounds: requires delta < 1");
  if (u.size() != support.size())
    throw DimensionError(
        "check_gram_operator_bounds: u length != support size");
  constexpr double kSlack = 1e-9;
  const la::Matrix g = sensing::gram(phi, support);
  const double unorm = la::norm2(u);
  const double gnorm = la::norm2(la::matvec(g, u));
  const double lower = (1.0 - delta) * unorm;
  const double upper = (1.0 + delta) * unorm;
  return {lower - kSlack <= gnorm, gnorm <= upper + kSlack, gnorm, lower,
          upper};
}

struct GramDecomposition {
  la::Matrix deviation;        // A = Phi_T' Phi_T - (1 - mu) I
  double deviation_max_norm;   // ||A||_max, equals mu up to unit-norm error
  double spectral_bound;       // 1 + (K - 1) mu
  double gram_spectral_norm;   // ||Phi_T' Phi_T||_2
};

// Splits the Gram matrix of a support as (1 - mu) I + A, with mu the global
// coherence. The diagonal of A is mu up to the unit-norm tolerance and every
// off-diagonal is bounded by mu, which yields the spectral bound
// ||Phi_T' Phi_T||_2 <= 1 + (K-1) mu. A violation of that bound is
// impossible for valid inputs and reported as an internal error.
inline GramDecomposition check_gram_decomposition(
    const sensing::SensingMatrix& phi,
    const std::vector<std::size_t>& support) {
  const double mu = sensing::coherence(phi).mu;
  const la::Matrix g = sensing::gram(phi, support);
  const std::size_t k = support.size();
  la::Matrix deviation = g;
  for (std::size_t i = 0; i < k; ++i) deviation(i, i) -= 1.0 - mu;

  GramDecomposition d{std::move(deviation), 0.0,
                      1.0 + (static_cast<double>(k) - 1.0) * mu,
                      la::spectral_norm(g)};
  d.deviation_max_norm = la::max_norm(d.deviation);
  if (d.gram_spectral_norm > d.spectral_bound + 1e-9)
    throw Error(
        "check_gram_decomposition: spectral bound violated; kernel is "
        "inconsistent");
  return d;
}

// Boundary certificate: a matrix at mu = 1/(2K-1) together with two disjoint
// K-sparse signals that share one measurement.
struct CounterexampleBundle {
  std::size_t k;
  sensing::SensingMatrix phi;  // (2K-1) x 2K by default, 2K x 2K if untrimmed
  std::size_t rank;            // count of nonzero eigenvalues, always 2K-1
  la::Vector null_vector;      // z with Phi z = 0, the all-ones direction
  sensing::SparseSignal x1;    // first K coordinates of z
  sensing::SparseSignal x2;    // minus the last K coordinates of z
  double mu;
  double gram_error;           // ||Phi'Phi - G_target||_max
  double null_residual;        // ||Phi z||_2
  double ambiguity_gap;        // ||Phi x1 - Phi x2||_2
};

// Builds the 2K x 2K Gram target with unit diagonal and off-diagonals
// -1/(2K-1), factors it as U Lambda U', and takes Phi = sqrt(Lambda) U'.
// The target is singular by design (row sums vanish), so one eigenvalue is
// zero and its eigenvector spans the null space of Phi. Dropping the zero
// eigenvalue's row (the default) changes no inner products; `trimmed = false`
// keeps the full square shape with an explicit zero row.
inline CounterexampleBundle construct_counterexample(std::size_t k,
                                                     bool trimmed = true) {
  if (k == 0 || k > tol::kCounterexampleMaxK)
    throw DimensionError("construct_counterexample: K must be in 1.." +
                         std::to_string(tol::kCounterexampleMaxK));
  const std::size_t n = 2 * k;
  const double off = -1.0 / (2.0 * static_cast<double>(k) - 1.0);
  la::Matrix target(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) target(i, j) = i == j ? 1.0 : off;

  const la::SymEig eig = la::sym_eig(target);
  const double lambda_max = eig.eigenvalues[0];
  std::size_t zero_count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (eig.eigenvalues[i] < tol::kZeroEigenvalue * lambda_max) ++zero_count;
  if (zero_count != 1)
    throw ConstructionError(
        "construct_counterexample: expected exactly one zero eigenvalue, got " +
        std::to_string(zero_count));
  const std::size_t rank = n - 1;

  // Rows of sqrt(Lambda) U'; eigenvalues are sorted descending so the zero
  // eigenvalue sits last.
  const std::size_t rows = trimmed ? rank : n;
  la::Matrix phi_raw(rows, n);
  for (std::size_t i = 0; i < rows; ++i) {
    const double lam = i < rank ? std::sqrt(std::max(0.0, eig.eigenvalues[i]))
                                : 0.0;
    for (std::size_t j = 0; j < n; ++j)
      phi_raw(i, j) = lam * eig.eigenvectors(j, i);
  }
  sensing::SensingMatrix phi{phi_raw};

  la::Vector z(n);
  const double flip = eig.eigenvectors(0, n - 1) >= 0.0 ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n; ++j)
    z[j] = flip * eig.eigenvectors(j, n - 1);

  std::vector<std::size_t> s1(k), s2(k);
  std::vector<double> v1(k), v2(k);
  for (std::size_t i = 0; i < k; ++i) {
    s1[i] = i;
    v1[i] = z[i];
    s2[i] = k + i;
    v2[i] = -z[k + i];
  }
  sensing::SparseSignal x1(n, std::move(s1), std::move(v1));
  sensing::SparseSignal x2(n, std::move(s2), std::move(v2));

  const double mu = sensing::coherence(phi).mu;
  const double gram_error = la::max_norm(
      la::sub(la::matmul(la::transpose(phi.phi()), phi.phi()), target));
  const double null_residual = la::norm2(la::matvec(phi.phi(), z));
  const double ambiguity_gap = la::norm2(
      la::sub(la::matvec(phi.phi(), x1.to_dense()),
              la::matvec(phi.phi(), x2.to_dense())));

  CounterexampleBundle bundle{k,  std::move(phi), rank,
                              std::move(z), std::move(x1), std::move(x2),
                              mu, gram_error, null_residual, ambiguity_gap};
  if (bundle.null_residual > tol::kBundleResidual ||
      bundle.ambiguity_gap > tol::kBundleResidual)
    throw ConstructionError(
        "construct_counterexample: null-space residual out of tolerance");
  if (std::abs(bundle.mu - (-off)) > tol::kBundleResidual)
    throw ConstructionError(
        "construct_counterexample: coherence missed the boundary value");
  return bundle;
}

enum class MatchOutcome { kMatchedX1, kMatchedX2, kNeither };

struct FailureReport {
  double measurement_gap;       // ||Phi x1 - Phi x2||_2, certified tiny
  MatchOutcome outcome_y1;      // what the run on y1 = Phi x1 returned
  MatchOutcome outcome_y2;      // what the run on y2 = Phi x2 returned
  // The certified failure mode: y1 and y2 are one measurement point (equal
  // in exact arithmetic, within kBundleResidual in floating point) with two
  // distinct K-sparse preimages, so any single output misses at least one.
  // Per-run outcomes are informational; at the boundary the argmax ties are
  // exact and rounding in y decides which preimage a given query returns.
  bool ambiguity_certified;     // x1 != x2 and neither matched twice
  bool x1_recovered_from_y1;    // informational
  bool x2_recovered_from_y2;    // informational
  omp::RecoveryResult run_y1;
  omp::RecoveryResult run_y2;
};

// True when a recovery result reproduces the signal: same support, values
// within the exact-recovery tolerance.
inline bool recovers(const omp::RecoveryResult& result,
                     const sensing::SparseSignal& x) {
  if (result.support != x.support()) return false;
  const la::Vector truth = x.to_dense();
  double max_err = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    max_err = std::max(max_err, std::abs(result.estimate[i] - truth[i]));
  return max_err <= tol::kExactRecovery * std::max(1.0, x.values_norm2());
}

namespace detail {

inline MatchOutcome classify(const omp::RecoveryResult& result,
                             const CounterexampleBundle& bundle) {
  if (recovers(result, bundle.x1)) return MatchOutcome::kMatchedX1;
  if (recovers(result, bundle.x2)) return MatchOutcome::kMatchedX2;
  return MatchOutcome::kNeither;
}

}  // namespace detail

// Runs the recovery on both measurements of a bundle. The two measurements
// agree to kBundleResidual (exactly, in exact arithmetic), so they are one
// point of the measurement map with two K-sparse preimages; whichever signal
// the deterministic tie-break favors, the other one is not recovered.
inline FailureReport demonstrate_failure(const CounterexampleBundle& bundle) {
  const la::Vector y1 = la::matvec(bundle.phi.phi(), bundle.x1.to_dense());
  const la::Vector y2 = la::matvec(bundle.phi.phi(), bundle.x2.to_dense());
  const double gap = la::norm2(la::sub(y1, y2));

  omp::RecoveryResult r1 = omp::omp_recover(bundle.phi, y1, bundle.k);
  omp::RecoveryResult r2 = omp::omp_recover(bundle.phi, y2, bundle.k);

  const bool distinct = !(bundle.x1.to_dense() == bundle.x2.to_dense());
  const bool certified = distinct && gap <= tol::kBundleResidual &&
                         !(recovers(r1, bundle.x1) && recovers(r1, bundle.x2));

  FailureReport report{gap,
                       detail::classify(r1, bundle),
                       detail::classify(r2, bundle),
                       certified,
                       recovers(r1, bundle.x1),
                       recovers(r2, bundle.x2),
                       std::move(r1),
                       std::move(r2)};
  return report;
}

}  // namespace pursuit::guarantees
