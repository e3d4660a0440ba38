#pragma once

// Eigenvalues of dense unitary matrices.
//
// Two routes, both LAPACK backed:
//  * Schur: complex Schur form (zgees). For a normal matrix the triangular
//    factor is diagonal, so its diagonal holds the eigenvalues and the Schur
//    vectors are an orthonormal eigenbasis.
//  * Cayley: for a unitary A and a phase e^{i phi} off the spectrum,
//    H = i (I + e^{-i phi} A)^{-1} (I - e^{-i phi} A) is Hermitian with
//    eigenvalues tan(alpha / 2), where e^{i(phi + alpha)} runs over the
//    spectrum of A.

#include <cstddef>
#include <vector>

#include "mqw/types.hpp"

namespace mqw {

enum class EigenMethod { automatic, schur, cayley };

/// Sizes above this use the Cayley route under EigenMethod::automatic.
inline constexpr Eigen::Index kCayleyThreshold = 1024;

struct SchurEigenpairs {
  std::vector<Complex> values;
  /// Column k is a unit eigenvector for values[k].
  DenseMatrix vectors;
};

std::vector<Complex> unitary_eigenvalues_raw(const DenseMatrix& a,
                                             EigenMethod method = EigenMethod::automatic);
SchurEigenpairs unitary_schur(const DenseMatrix& a);

/// Distance from the Cayley pole to the spectrum actually used by the last
/// Cayley solve on this thread (diagnostic only).
double last_cayley_pole_distance();

/// Unitarity residual, exact for small matrices and estimated with a few
/// deterministic random probes max |A^*(A x) - x| above `exact_limit`.
double unitarity_residual_estimate(const DenseMatrix& a, Eigen::Index exact_limit = 1024);

}  // namespace mqw
