#pragma once

// Bernoulli Fock space h_n spanned by {Z_sigma : sigma subset of {0..n}} and
// the quantum Bernoulli noise operators acting on it.
//
// Basis vector Z_sigma sits at index sigma.bits(), so Z_empty is index 0 and
// the annihilator for direction k is a bit-clear, the creator a bit-set.

#include "mqw/types.hpp"

namespace mqw {

class FockSpace {
 public:
  explicit FockSpace(int n);

  int n() const { return n_; }
  std::size_t dim() const { return vertex_count(n_); }

  /// Z_sigma as a unit coordinate vector.
  Vector basis_vector(Subset sigma) const;
  SparseMatrix identity() const;

 private:
  int n_;
};

/// d_k: Z_sigma -> 1_sigma(k) Z_{sigma \ k}. Entries are exact 0/1.
SparseMatrix annihilation_operator(int n, int k);
/// d_k^*: Z_sigma -> (1 - 1_sigma(k)) Z_{sigma u k}.
SparseMatrix creation_operator(int n, int k);

struct CarReport {
  int n = 0;
  double annihilators_commute = 0.0;   // d_j d_k - d_k d_j, j != k
  double creators_commute = 0.0;       // d_j* d_k* - d_k* d_j*, j != k
  double mixed_commute = 0.0;          // d_j* d_k - d_k d_j*, j != k
  double annihilator_square = 0.0;     // d_j d_j
  double creator_square = 0.0;         // d_j* d_j*
  double anticommutator = 0.0;         // d_j* d_j + d_j d_j* - I

  double max_residual() const;
  bool passed(double tol = kConstructTol) const { return max_residual() <= tol; }
};

CarReport verify_car(int n);

}  // namespace mqw
