#pragma once

#include <cstddef>

// Every numerical threshold used by the library lives here.
namespace isospin::tol {

inline constexpr std::size_t kMaxDim = 64;

// Input validation.
inline constexpr double kHermitian = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsdFloor = 1e-10;
inline constexpr double kPureNorm = 1e-12;
inline constexpr double kBlochNorm = 1e-12;
inline constexpr double kProbabilitySum = 1e-12;
inline constexpr double kTracePreserving = 1e-10;

// Jacobi eigensolver.
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffDiagonal = 1e-14;

// Eigenvalues in [-kEntropyClip, 0) are treated as zero by the entropy.
inline constexpr double kEntropyClip = 1e-12;

// SVD: singular values below this fraction of the largest are treated as zero.
inline constexpr double kSvdRankCutoff = 1e-14;

// Minimum output entropy search.
inline constexpr int kDefaultRestarts = 64;
inline constexpr double kDefaultSimplexTol = 1e-10;
inline constexpr double kInitialSimplexStep = 0.25;

// Covariance gate for the Holevo shortcut.
inline constexpr double kCovarianceGate = 1e-8;

// Verification thresholds.
inline constexpr double kExactAlgebra = 1e-15;
inline constexpr double kIdentity = 1e-12;
inline constexpr double kAdditivity = 1e-6;
inline constexpr double kEntangledSlack = 1e-9;
inline constexpr double kOptimizerValue = 1e-7;

// Second-derivative finite difference step.
inline constexpr double kFdStep = 1e-4;

}  // namespace isospin::tol
