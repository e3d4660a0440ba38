#pragma once

// The magnetic walk W = sum_j Xi_j (x) C_j on h_n (x) K.
//
// Composite index convention: position-major, i.e. Z_sigma (x) e_c sits at
// sigma * d + c. A state is therefore viewed as a d x 2^{n+1} column-major
// matrix X whose column sigma is the coin vector at vertex sigma, and
//
//   W vec(X) = vec( sum_j C_j X Xi_j^T ).
//
// That identity drives the matrix-free step: one d x d by d x 2^{n+1} product
// per direction plus a permutation-with-phases on the columns.

#include <map>
#include <vector>

#include "mqw/coin.hpp"
#include "mqw/magnetic.hpp"

namespace mqw {

class WalkOperator {
 public:
  /// General sum of shift (x) coin terms. Shifts must be 2^{n+1} square and
  /// there must be one per coin operator.
  WalkOperator(MagneticPotential nu, CoinSystem coins, std::vector<SparseMatrix> shifts);

  int n() const { return coins_.n(); }
  int d() const { return coins_.d(); }
  std::size_t positions() const { return vertex_count(n()); }
  std::size_t dim() const { return positions() * static_cast<std::size_t>(d()); }

  const MagneticPotential& potential() const { return nu_; }
  const CoinSystem& coins() const { return coins_; }
  const std::vector<SparseMatrix>& shifts() const { return shifts_; }

  /// Matrix-free application, O((n+1) 2^{n+1} d^2).
  Vector apply(const Vector& state) const;

  /// sum_j kron(Xi_j, C_j). Throws CapacityError past max_dim.
  DenseMatrix dense(std::size_t max_dim = 22528) const;

 private:
  MagneticPotential nu_;
  CoinSystem coins_;
  std::vector<SparseMatrix> shifts_;
};

/// max |W_a - W_b| over all entries, accumulated block by block without
/// materialising either operator.
double max_difference(const WalkOperator& a, const WalkOperator& b);

/// Validates the coin system and builds W from the magnetic shifts.
WalkOperator evolution_operator(const MagneticPotential& nu, const CoinSystem& cs);

/// W_C = sum_k (d_k^* + d_k) (x) C_k, assembled directly from the ladder
/// operators rather than through the magnetic shifts.
WalkOperator null_potential_operator(const CoinSystem& cs);

struct WalkState {
  Vector vector;
  std::size_t t = 0;
};

WalkState vertex_state(const WalkOperator& op, Subset sigma, int coin_index);
/// Z_sigma (x) (1/sqrt d) sum_c e_c.
WalkState uniform_coin_state(const WalkOperator& op, Subset sigma);
/// Magnetic basis vector for sigma tensored with a coin vector u (normalised).
WalkState magnetic_eigenstate(const WalkOperator& op, Subset sigma, const Vector& u);

/// Position-major Kronecker product a (x) b.
Vector tensor(const Vector& position, const Vector& coin);

WalkState step(const WalkOperator& op, const WalkState& state);
WalkState evolve(const WalkOperator& op, const WalkState& initial, std::size_t steps);

/// p(sigma) = sum_c |<Z_sigma (x) e_c, state>|^2, indexed by sigma.bits().
std::vector<double> position_distribution(const WalkOperator& op, const WalkState& state);

struct IntertwiningReport {
  /// max over sigma, coin basis e_c of |W(Z^_sigma (x) e_c) - Z^_sigma (x) U_sigma e_c|.
  double max_residual = 0.0;
  /// Largest entry outside the d x d diagonal blocks of (B (x) I)^* W (B (x) I).
  double off_block = 0.0;
  /// Largest deviation of diagonal block sigma from U_sigma.
  double block_deviation = 0.0;
  bool dense_checked = false;

  bool passed(double tol = kCompositeTol) const {
    return max_residual <= tol && (!dense_checked || (off_block <= tol && block_deviation <= tol));
  }
};

/// The dense block check runs only when dim() <= dense_limit.
IntertwiningReport intertwining_check(const WalkOperator& op, std::size_t dense_limit = 4096);

}  // namespace mqw
