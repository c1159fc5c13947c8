#pragma once

#include <cstddef>

// Central table of numeric tolerances and guards. Every comparison made by
// the library reads from here; nothing is tuned locally at call sites.

namespace pursuit::tol {

// --- dense kernel -----------------------------------------------------------

// A least-squares pivot |r_kk| below kRankPivot * max_k |r_kk| marks the
// matrix rank-deficient.
inline constexpr double kRankPivot = 1e-12;

// Maximum |S(i,j) - S(j,i)| accepted by the symmetric eigensolver.
inline constexpr double kSymmetry = 1e-12;

// Jacobi sweep terminates once the off-diagonal Frobenius mass drops below
// kJacobiOffDiagonal * ||S||_F.
inline constexpr double kJacobiOffDiagonal = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

// --- sensing ----------------------------------------------------------------

// Column norms of a sensing matrix must satisfy | ||phi_j||_2 - 1 | <= this.
inline constexpr double kUnitColumn = 1e-10;

// Columns with norm at or below this cannot be normalized.
inline constexpr double kZeroColumn = 1e-12;

// Support-enumeration guard for the brute-force isometry constant.
inline constexpr std::size_t kRicEnumerationCap = 200000;

// --- recovery ---------------------------------------------------------------

// Exact recovery: max |x_hat - x| <= kExactRecovery * max(1, ||x||_2).
inline constexpr double kExactRecovery = 1e-8;

// Opt-in early exit once ||r|| <= kEarlyExitResidual * ||y||_2.
inline constexpr double kEarlyExitResidual = 1e-12;

// --- boundary construction --------------------------------------------------

// Eigenvalues below kZeroEigenvalue * lambda_max count as zero when ranking
// the target Gram matrix.
inline constexpr double kZeroEigenvalue = 1e-10;

// Null-space and ambiguity residuals of a constructed bundle.
inline constexpr double kBundleResidual = 1e-9;

// Largest sparsity accepted by the boundary construction.
inline constexpr std::size_t kCounterexampleMaxK = 64;

}  // namespace pursuit::tol
