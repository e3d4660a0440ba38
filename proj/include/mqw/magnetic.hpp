#pragma once

// Magnetic potentials and the magnetic shift involutions built from them.
//
//   Xi_j = e^{-i nu_j} d_j^* + e^{i nu_j} d_j
//
// moves a walker across edge direction j of the hypercube and picks up the
// phase e^{-i nu_j} when stepping up (j added) or e^{+i nu_j} when stepping
// down (j removed).

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "mqw/types.hpp"

namespace mqw {

/// Reduced phases (nu_0, ..., nu_n), each in [-pi, pi].
class MagneticPotential {
 public:
  explicit MagneticPotential(std::vector<double> phases);

  static MagneticPotential null(int n);
  /// Each phase i.i.d. uniform on [-pi, pi].
  static MagneticPotential random(int n, std::mt19937_64& rng);

  int n() const { return static_cast<int>(phases_.size()) - 1; }
  double phase(int j) const { return phases_.at(static_cast<std::size_t>(j)); }
  const std::vector<double>& phases() const { return phases_; }

  /// sum_{j in gamma} nu_j (zero for the empty set).
  double phase_sum(Subset gamma) const;

  friend bool operator==(const MagneticPotential&, const MagneticPotential&) = default;

 private:
  std::vector<double> phases_;
};

/// The full antisymmetric function nu(sigma, tau) on pairs of vertices.
/// Pairs never set read as zero.
class FullPotentialTable {
 public:
  explicit FullPotentialTable(int n);

  int n() const { return n_; }
  void set(Subset sigma, Subset tau, double value);
  double value(Subset sigma, Subset tau) const;
  const std::map<std::pair<std::uint32_t, std::uint32_t>, double>& entries() const {
    return entries_;
  }

  /// Throws ValidationError naming the first pair that breaks antisymmetry
  /// or leaves [-pi, pi].
  void validate() const;

 private:
  int n_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> entries_;
};

/// nu_j = nu({j}, {0..n} \ {j}).
MagneticPotential reduce_potential(const FullPotentialTable& full);
MagneticPotential null_potential(int n);

SparseMatrix magnetic_shift(int n, int j, const MagneticPotential& nu);

/// Phase factor in Xi_j Z_sigma = phase * Z_{sigma xor j}.
Complex shift_phase(Subset sigma, int j, const MagneticPotential& nu);

/// Applies prod_{j in gamma} Xi_j to Z_empty and to Z_gamma.
std::pair<Vector, Vector> shift_product_action(Subset gamma, const MagneticPotential& nu);

/// prod_j (I + E_sigma(j) Xi_j), E_sigma(j) = +1 if j in sigma else -1.
DenseMatrix xi_hat(Subset sigma, const MagneticPotential& nu);

/// Closed form: component on Z_gamma is
/// 2^{-(n+1)/2} (-1)^{#(gamma \ sigma)} e^{-i sum_{j in gamma} nu_j}.
Vector magnetic_basis_vector(Subset sigma, const MagneticPotential& nu);

/// Same vector obtained by applying the factors I + E_sigma(j) Xi_j to
/// Z_empty one at a time and normalising by 2^{-(n+1)/2}.
Vector magnetic_basis_vector_from_product(Subset sigma, const MagneticPotential& nu);

/// Unitary whose column sigma is the magnetic basis vector for sigma.
DenseMatrix magnetic_basis_change(const MagneticPotential& nu);

struct MagneticReport {
  double involution = 0.0;    // |Xi_j^2 - I|
  double hermiticity = 0.0;   // |Xi_j - Xi_j^*|
  double commutation = 0.0;   // |Xi_j Xi_k - Xi_k Xi_j|
  double gram = 0.0;          // |B^* B - I| for the magnetic basis B
  double eigen_relation = 0.0;  // |Xi_j Z^_sigma - E_sigma(j) Z^_sigma|
  double formula_agreement = 0.0;  // closed form versus operator product

  bool passed(double construct_tol = kConstructTol, double composite_tol = kCompositeTol) const {
    return involution <= construct_tol && hermiticity <= construct_tol &&
           commutation <= construct_tol && formula_agreement <= construct_tol &&
           gram <= composite_tol && eigen_relation <= composite_tol;
  }
};

MagneticReport check_magnetic_structure(const MagneticPotential& nu);

}  // namespace mqw
