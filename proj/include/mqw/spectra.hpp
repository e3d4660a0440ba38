#pragma once

// Unit-circle spectra and numerical checks of the spectral statements for the
// magnetic walk:
//  * the point spectrum of W equals the union over sigma of Spec(U_sigma);
//  * the approximate spectrum of W equals the union of Aev(U_sigma);
//  * neither depends on the magnetic potential.
//
// All set comparisons use the Hausdorff distance in the complex plane. The
// multiset comparison (multiplicities of W equal the summed multiplicities of
// the U_sigma) is reported next to the set check but never folded into it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqw/coin.hpp"
#include "mqw/eigensolver.hpp"
#include "mqw/magnetic.hpp"

namespace mqw {

struct SpectralValue {
  Complex value;
  int multiplicity = 1;

  /// Principal argument in (-pi, pi].
  double arg() const;
};

struct SpectrumReport {
  std::vector<SpectralValue> eigenvalues;  // sorted by arg
  std::string source;
  std::optional<std::vector<double>> nu;
  double tolerance = kSpectrumTol;

  std::size_t total_multiplicity() const;
  std::vector<Complex> values() const;
};

/// direct: eigenvalues of the whole walk matrix. parity: every step flips
/// vertex parity, so in parity order W = [[0, B], [C, 0]] and the spectrum is
/// {+sqrt(mu), -sqrt(mu) : mu in Spec(BC)}, a half-size problem.
/// automatic picks parity above kCayleyThreshold.
enum class WalkRoute { automatic, direct, parity };

struct SpectrumOptions {
  double cluster_tol = kSpectrumTol;
  double unitarity_tol = kSpectrumTol;
  EigenMethod method = EigenMethod::automatic;
  WalkRoute walk_route = WalkRoute::automatic;
};

/// Single-linkage clustering on arc distance; each cluster becomes one value
/// (its mean, projected onto the circle) with multiplicity = cluster size.
SpectrumReport cluster_eigenvalues(const std::vector<Complex>& raw, double tol);

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);
double hausdorff_distance(const SpectrumReport& a, const SpectrumReport& b);

struct MultisetComparison {
  bool equal = true;
  std::size_t clusters = 0;
  std::size_t mismatched = 0;
};

/// Clusters both spectra jointly and compares the multiplicity each side
/// contributes to every joint cluster.
MultisetComparison compare_multisets(const SpectrumReport& a, const SpectrumReport& b, double tol);

/// Throws ArgumentError when a is not unitary to opts.unitarity_tol.
SpectrumReport unitary_eigenvalues(const DenseMatrix& a, const SpectrumOptions& opts = {});

/// In finite dimension the approximate spectrum is the spectrum, so this is
/// unitary_eigenvalues under another label. approximate_spectrum_witnesses
/// supplies the explicit (constant) witness sequences.
SpectrumReport approximate_spectrum(const DenseMatrix& a, const SpectrumOptions& opts = {});

struct WitnessReport {
  std::size_t count = 0;
  /// max_k |A x_k - lambda_k x_k| over unit eigenvectors x_k.
  double max_residual = 0.0;
};

WitnessReport approximate_spectrum_witnesses(const DenseMatrix& a);

/// min over unit x of |A x - mu x|, i.e. the smallest singular value of A - mu I.
double min_residual_norm(const DenseMatrix& a, Complex mu);

/// Largest n and matrix side for which W is materialised densely.
inline constexpr int kMaxDenseOrder = 10;
inline constexpr std::size_t kMaxDenseDim = 22528;

class WalkOperator;
/// Spectrum of the dense walk matrix, routed per opts.walk_route.
SpectrumReport walk_spectrum(const WalkOperator& op, const SpectrumOptions& opts = {});

SpectrumReport walk_point_spectrum(const MagneticPotential& nu, const CoinSystem& cs,
                                   const SpectrumOptions& opts = {});

struct UnionSpectrum {
  /// All eigenvalues of all U_sigma, multiplicities summed across sigma.
  SpectrumReport multiset;
  /// Distinct values of the union.
  std::vector<Complex> set() const { return multiset.values(); }
};

UnionSpectrum coin_union_spectrum(const CoinSystem& cs, const SpectrumOptions& opts = {});

struct PointSpectrumCheck {
  bool passed = false;
  double hausdorff = 0.0;
  MultisetComparison multiset;
  SpectrumReport walk;
  SpectrumReport coin_union;
};

/// Validates the coin system first (ValidationError) and applies the dense
/// capacity guard (CapacityError).
PointSpectrumCheck verify_point_spectrum_theorem(const MagneticPotential& nu, const CoinSystem& cs,
                                                 double tol = kSpectrumTol,
                                                 const SpectrumOptions& opts = {});

struct ApproximateSpectrumCheck {
  bool passed = false;
  double hausdorff = 0.0;
  MultisetComparison multiset;
  /// Set distance to the point-spectrum route, for both sides.
  double point_route_walk_distance = 0.0;
  double point_route_union_distance = 0.0;
  bool agrees_with_point_check = false;
  /// max |W Psi - lambda Psi| over Psi = Z^_sigma (x) u, (lambda, u) eigenpairs of U_sigma.
  double lifted_witness_residual = 0.0;
  std::size_t lifted_witnesses = 0;
  /// Witnesses taken directly from a Schur basis of W (small sizes only).
  std::optional<WitnessReport> walk_witnesses;
  SpectrumReport walk;
  SpectrumReport coin_union;
};

/// Reuses `point` for the cross-route comparison when given, otherwise runs
/// verify_point_spectrum_theorem itself.
ApproximateSpectrumCheck verify_approximate_spectrum_theorem(const MagneticPotential& nu,
                                                             const CoinSystem& cs,
                                                             double tol = kSpectrumTol,
                                                             const SpectrumOptions& opts = {},
                                                             const PointSpectrumCheck* point = nullptr);

struct StabilityCheck {
  bool passed = false;
  double max_spectrum_distance = 0.0;
  double max_operator_difference = 0.0;
  bool nonvacuous = false;
  std::vector<MagneticPotential> potentials;  // null first, then the random draws
  std::vector<SpectrumReport> spectra;
};

StabilityCheck verify_spectral_stability(const CoinSystem& cs, int samples, std::uint64_t seed,
                                         double tol = kSpectrumTol,
                                         const SpectrumOptions& opts = {});

/// Same as verify_spectral_stability over an explicit list of potentials.
StabilityCheck verify_spectral_stability(const CoinSystem& cs,
                                         const std::vector<MagneticPotential>& potentials,
                                         double tol = kSpectrumTol,
                                         const SpectrumOptions& opts = {});

}  // namespace mqw
