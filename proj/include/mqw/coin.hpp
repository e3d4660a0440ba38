#pragma once

// Coin operator systems {C_0, ..., C_n} on a d-dimensional coin space K:
// C_j^* C_k = C_j C_k^* = 0 for j != k, and S = sum_j C_j is unitary.
//
// Every such system has the normal form C_j = S P_j where P_j = S^* C_j are
// orthogonal projections summing to I. The constructors below all produce
// that form from a unitary S and a partition of the coin indices.

#include <cstdint>
#include <vector>

#include "mqw/types.hpp"

namespace mqw {

class CoinSystem {
 public:
  /// Checks shape only: n+1 square matrices of a common size d >= n+1.
  /// Algebraic validity is reported by validate_coin_system.
  CoinSystem(int n, std::vector<DenseMatrix> ops);

  int n() const { return n_; }
  int d() const { return d_; }
  const DenseMatrix& op(int j) const { return ops_.at(static_cast<std::size_t>(j)); }
  const std::vector<DenseMatrix>& ops() const { return ops_; }

  /// S = sum_j C_j.
  DenseMatrix sum() const;

 private:
  int n_;
  int d_;
  std::vector<DenseMatrix> ops_;
};

struct CoinReport {
  double mutual_annihilation = 0.0;  // max over j != k of |C_j^* C_k|, |C_j C_k^*|
  double sum_unitarity = 0.0;        // |S^* S - I|, |S S^* - I|
  double completeness = 0.0;         // |sum_j C_j^* C_j - I|

  bool passed(double tol = kCompositeTol) const {
    return mutual_annihilation <= tol && sum_unitarity <= tol;
  }
};

CoinReport validate_coin_system(const CoinSystem& cs);
/// Throws ValidationError when validate_coin_system does not pass at tol.
void require_valid(const CoinSystem& cs, double tol = kCompositeTol);

using Partition = std::vector<std::vector<int>>;

/// C_j = S P_j with P_j the coordinate projection onto block j.
CoinSystem coin_from_unitary_partition(const DenseMatrix& s, const Partition& blocks);

/// Singleton partition {{0}, ..., {d-1}}.
Partition singleton_partition(int d);

/// Grover diffusion 2/(n+1) J - I with singleton blocks; d = n+1, n >= 1.
CoinSystem grover_coin_system(int n);
/// Hadamard (1/sqrt 2)[[1,1],[1,-1]] split as ({0},{1}); n = 1, d = 2.
CoinSystem hadamard_partition_coin();
/// Unitary discrete Fourier transform of size n+1 with singleton blocks.
CoinSystem fourier_coin_system(int n);
/// S = I with singleton blocks, so C_j = e_j e_j^*.
CoinSystem identity_coin_system(int n);

/// Haar unitary from a seeded complex Gaussian matrix (QR with phase fix)
/// and a random partition into n+1 blocks whose sizes differ by at most one.
CoinSystem random_coin_system(int n, int d, std::uint64_t seed);

/// U_sigma = sum_j E_sigma(j) C_j.
DenseMatrix algebraic_sum(const CoinSystem& cs, Subset sigma);

}  // namespace mqw
