#include "mqw/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mqw/walk.hpp"

namespace mqw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

// A raw eigenvalue tagged with how much it contributes to each of two sides.
struct Weighted {
  Complex value;
  double arg;
  int left;
  int right;
};

struct Cluster {
  Complex sum{0.0, 0.0};
  int left = 0;
  int right = 0;
  int count = 0;
};

// Single linkage on arc distance over the circle, including the seam at +-pi.
std::vector<Cluster> single_linkage(std::vector<Weighted> items, double tol) {
  std::vector<Cluster> clusters;
  if (items.empty()) return clusters;
  std::sort(items.begin(), items.end(),
            [](const Weighted& a, const Weighted& b) { return a.arg < b.arg; });
  double previous = items.front().arg;
  clusters.emplace_back();
  for (const auto& item : items) {
    if (item.arg - previous > tol) clusters.emplace_back();
    Cluster& c = clusters.back();
    c.sum += item.value * static_cast<double>(item.left + item.right);
    c.left += item.left;
    c.right += item.right;
    c.count += item.left + item.right;
    previous = item.arg;
  }
  if (clusters.size() > 1 && items.front().arg + kTwoPi - items.back().arg <= tol) {
    Cluster& first = clusters.front();
    const Cluster& last = clusters.back();
    first.sum += last.sum;
    first.left += last.left;
    first.right += last.right;
    first.count += last.count;
    clusters.pop_back();
  }
  return clusters;
}

Complex on_circle(Complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : Complex{1.0, 0.0};
}

std::vector<Weighted> weighted_from(const SpectrumReport& report, bool left) {
  std::vector<Weighted> out;
  for (const auto& ev : report.eigenvalues) {
    out.push_back({ev.value, ev.arg(), left ? ev.multiplicity : 0, left ? 0 : ev.multiplicity});
  }
  return out;
}

void require_dense_capacity(const CoinSystem& cs) {
  const std::size_t dim = vertex_count(cs.n()) * static_cast<std::size_t>(cs.d());
  if (cs.n() > kMaxDenseOrder || dim > kMaxDenseDim) {
    throw CapacityError("dense walk spectrum needs n <= " + std::to_string(kMaxDenseOrder) +
                        " and dimension <= " + std::to_string(kMaxDenseDim) + " (got n = " +
                        std::to_string(cs.n()) + ", dimension " + std::to_string(dim) +
                        "); use the coin union spectrum instead");
  }
}

SpectrumReport coin_union(const CoinSystem& cs, const SpectrumOptions& opts, bool approximate) {
  std::vector<Complex> raw;
  raw.reserve(vertex_count(cs.n()) * static_cast<std::size_t>(cs.d()));
  for (std::uint32_t bits = 0; bits < vertex_count(cs.n()); ++bits) {
    const DenseMatrix u = algebraic_sum(cs, Subset{bits});
    SpectrumOptions per_sigma = opts;
    per_sigma.method = EigenMethod::schur;
    const SpectrumReport part =
        approximate ? approximate_spectrum(u, per_sigma) : unitary_eigenvalues(u, per_sigma);
    for (const auto& ev : part.eigenvalues) raw.insert(raw.end(), ev.multiplicity, ev.value);
  }
  SpectrumReport report = cluster_eigenvalues(raw, opts.cluster_tol);
  report.source = approximate ? "union of Aev(U_sigma)" : "union of Spec(U_sigma)";
  return report;
}

}  // namespace

double SpectralValue::arg() const { return principal_arg(value); }

std::size_t SpectrumReport::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& ev : eigenvalues) total += static_cast<std::size_t>(ev.multiplicity);
  return total;
}

std::vector<Complex> SpectrumReport::values() const {
  std::vector<Complex> out;
  out.reserve(eigenvalues.size());
  for (const auto& ev : eigenvalues) out.push_back(ev.value);
  return out;
}

SpectrumReport cluster_eigenvalues(const std::vector<Complex>& raw, double tol) {
  std::vector<Weighted> items;
  items.reserve(raw.size());
  for (const Complex z : raw) items.push_back({z, principal_arg(z), 1, 0});
  SpectrumReport report;
  report.tolerance = tol;
  for (const auto& c : single_linkage(std::move(items), tol)) {
    report.eigenvalues.push_back({on_circle(c.sum / static_cast<double>(c.count)), c.count});
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const SpectralValue& a, const SpectralValue& b) { return a.arg() < b.arg(); });
  return report;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const Complex x : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const Complex y : to) nearest = std::min(nearest, std::abs(x - y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(const SpectrumReport& a, const SpectrumReport& b) {
  return hausdorff_distance(a.values(), b.values());
}

MultisetComparison compare_multisets(const SpectrumReport& a, const SpectrumReport& b, double tol) {
  std::vector<Weighted> items = weighted_from(a, true);
  const std::vector<Weighted> right = weighted_from(b, false);
  items.insert(items.end(), right.begin(), right.end());
  MultisetComparison out;
  for (const auto& c : single_linkage(std::move(items), tol)) {
    ++out.clusters;
    if (c.left != c.right) ++out.mismatched;
  }
  out.equal = out.mismatched == 0;
  return out;
}

SpectrumReport unitary_eigenvalues(const DenseMatrix& a, const SpectrumOptions& opts) {
  if (a.rows() != a.cols()) throw ArgumentError("spectrum needs a square matrix");
  const double residual = unitarity_residual_estimate(a);
  if (!(residual <= opts.unitarity_tol)) {
    throw ArgumentError("matrix is not unitary (residual " + std::to_string(residual) + ")");
  }
  const std::vector<Complex> raw = unitary_eigenvalues_raw(a, opts.method);
  for (const Complex z : raw) {
    if (std::abs(std::abs(z) - 1.0) > opts.unitarity_tol) {
      throw std::runtime_error("eigensolver returned an eigenvalue off the unit circle");
    }
  }
  SpectrumReport report = cluster_eigenvalues(raw, opts.cluster_tol);
  report.source = "matrix";
  return report;
}

SpectrumReport approximate_spectrum(const DenseMatrix& a, const SpectrumOptions& opts) {
  SpectrumReport report = unitary_eigenvalues(a, opts);
  report.source = "approximate spectrum";
  return report;
}

WitnessReport approximate_spectrum_witnesses(const DenseMatrix& a) {
  const SchurEigenpairs pairs = unitary_schur(a);
  WitnessReport report;
  for (std::size_t k = 0; k < pairs.values.size(); ++k) {
    const auto x = pairs.vectors.col(static_cast<Eigen::Index>(k));
    report.max_residual =
        std::max(report.max_residual, (a * x - pairs.values[k] * x).norm() / x.norm());
    ++report.count;
  }
  return report;
}

double min_residual_norm(const DenseMatrix& a, Complex mu) {
  if (a.rows() != a.cols()) throw ArgumentError("residual norm needs a square matrix");
  const DenseMatrix shifted = a - mu * DenseMatrix::Identity(a.rows(), a.cols());
  const Eigen::BDCSVD<DenseMatrix> svd(shifted);
  return svd.singularValues().minCoeff();
}

SpectrumReport walk_spectrum(const WalkOperator& op, const SpectrumOptions& opts) {
  const DenseMatrix w = op.dense(kMaxDenseDim);
  const bool parity = opts.walk_route == WalkRoute::parity ||
                      (opts.walk_route == WalkRoute::automatic && w.rows() > kCayleyThreshold);
  if (!parity) return unitary_eigenvalues(w, opts);

  const double residual = unitarity_residual_estimate(w);
  if (!(residual <= opts.unitarity_tol)) {
    throw ArgumentError("walk matrix is not unitary (residual " + std::to_string(residual) + ")");
  }
  std::vector<Eigen::Index> even, odd;
  for (std::uint32_t s = 0; s < op.positions(); ++s) {
    auto& side = Subset{s}.size() % 2 == 0 ? even : odd;
    for (int c = 0; c < op.d(); ++c) side.push_back(static_cast<Eigen::Index>(s) * op.d() + c);
  }
  const DenseMatrix to_odd = w(odd, even);
  const DenseMatrix to_even = w(even, odd);
  if (w(even, even).cwiseAbs().maxCoeff() != 0.0 || w(odd, odd).cwiseAbs().maxCoeff() != 0.0) {
    throw std::logic_error("walk matrix does not alternate vertex parity");
  }
  const DenseMatrix two_step = to_even * to_odd;
  std::vector<Complex> raw;
  raw.reserve(static_cast<std::size_t>(w.rows()));
  for (const Complex mu : unitary_eigenvalues_raw(two_step, opts.method)) {
    if (std::abs(std::abs(mu) - 1.0) > opts.unitarity_tol) {
      throw std::runtime_error("eigensolver returned an eigenvalue off the unit circle");
    }
    const Complex root = std::sqrt(mu);
    raw.push_back(root);
    raw.push_back(-root);
  }
  SpectrumReport report = cluster_eigenvalues(raw, opts.cluster_tol);
  report.source = "matrix";
  return report;
}

SpectrumReport walk_point_spectrum(const MagneticPotential& nu, const CoinSystem& cs,
                                   const SpectrumOptions& opts) {
  require_valid(cs);
  require_dense_capacity(cs);
  SpectrumReport report = walk_spectrum(evolution_operator(nu, cs), opts);
  report.source = "Spec(W^(nu))";
  report.nu = nu.phases();
  return report;
}

UnionSpectrum coin_union_spectrum(const CoinSystem& cs, const SpectrumOptions& opts) {
  return {coin_union(cs, opts, false)};
}

PointSpectrumCheck verify_point_spectrum_theorem(const MagneticPotential& nu, const CoinSystem& cs,
                                                 double tol, const SpectrumOptions& opts) {
  require_valid(cs);
  require_dense_capacity(cs);
  PointSpectrumCheck check;
  check.walk = walk_point_spectrum(nu, cs, opts);
  check.coin_union = coin_union_spectrum(cs, opts).multiset;
  check.hausdorff = hausdorff_distance(check.walk, check.coin_union);
  check.multiset = compare_multisets(check.walk, check.coin_union, opts.cluster_tol);
  check.passed = check.hausdorff <= tol;
  return check;
}

ApproximateSpectrumCheck verify_approximate_spectrum_theorem(const MagneticPotential& nu,
                                                             const CoinSystem& cs, double tol,
                                                             const SpectrumOptions& opts,
                                                             const PointSpectrumCheck* point) {
  require_valid(cs);
  require_dense_capacity(cs);
  const WalkOperator op = evolution_operator(nu, cs);
  const DenseMatrix w = op.dense(kMaxDenseDim);

  ApproximateSpectrumCheck check;
  check.walk = approximate_spectrum(w, opts);
  check.walk.source = "Aev(W^(nu))";
  check.walk.nu = nu.phases();
  check.coin_union = coin_union(cs, opts, true);
  check.hausdorff = hausdorff_distance(check.walk, check.coin_union);
  check.multiset = compare_multisets(check.walk, check.coin_union, opts.cluster_tol);

  PointSpectrumCheck local;
  if (point == nullptr) {
    local = verify_point_spectrum_theorem(nu, cs, tol, opts);
    point = &local;
  }
  check.point_route_walk_distance = hausdorff_distance(check.walk, point->walk);
  check.point_route_union_distance = hausdorff_distance(check.coin_union, point->coin_union);
  check.agrees_with_point_check = check.point_route_walk_distance <= tol &&
                                  check.point_route_union_distance <= tol &&
                                  (check.hausdorff <= tol) == point->passed;

  for (std::uint32_t bits = 0; bits < op.positions(); ++bits) {
    const Subset sigma{bits};
    const SchurEigenpairs pairs = unitary_schur(algebraic_sum(cs, sigma));
    const Vector zhat = magnetic_basis_vector(sigma, nu);
    for (std::size_t k = 0; k < pairs.values.size(); ++k) {
      const Vector u = pairs.vectors.col(static_cast<Eigen::Index>(k)).normalized();
      const Vector psi = tensor(zhat, u);
      const double r = (op.apply(psi) - pairs.values[k] * psi).norm();
      check.lifted_witness_residual = std::max(check.lifted_witness_residual, r);
      ++check.lifted_witnesses;
    }
  }
  if (op.dim() <= static_cast<std::size_t>(kCayleyThreshold)) {
    check.walk_witnesses = approximate_spectrum_witnesses(w);
  }

  check.passed = check.hausdorff <= tol && check.lifted_witness_residual <= tol &&
                 check.agrees_with_point_check &&
                 (!check.walk_witnesses || check.walk_witnesses->max_residual <= tol);
  return check;
}

StabilityCheck verify_spectral_stability(const CoinSystem& cs, int samples, std::uint64_t seed,
                                         double tol, const SpectrumOptions& opts) {
  if (samples < 2) throw ArgumentError("spectral stability needs at least 2 samples");
  std::mt19937_64 rng(seed);
  std::vector<MagneticPotential> potentials{MagneticPotential::null(cs.n())};
  for (int s = 0; s < samples; ++s) potentials.push_back(MagneticPotential::random(cs.n(), rng));
  return verify_spectral_stability(cs, potentials, tol, opts);
}

StabilityCheck verify_spectral_stability(const CoinSystem& cs,
                                         const std::vector<MagneticPotential>& potentials,
                                         double tol, const SpectrumOptions& opts) {
  if (potentials.size() < 2) throw ArgumentError("spectral stability needs at least 2 potentials");
  require_valid(cs);
  require_dense_capacity(cs);
  StabilityCheck check;
  check.potentials = potentials;
  std::vector<WalkOperator> operators;
  for (const auto& nu : potentials) {
    operators.push_back(evolution_operator(nu, cs));
    SpectrumReport report = walk_spectrum(operators.back(), opts);
    report.source = "Spec(W^(nu))";
    report.nu = nu.phases();
    check.spectra.push_back(std::move(report));
  }
  for (std::size_t a = 0; a < potentials.size(); ++a) {
    for (std::size_t b = a + 1; b < potentials.size(); ++b) {
      check.max_spectrum_distance =
          std::max(check.max_spectrum_distance, hausdorff_distance(check.spectra[a], check.spectra[b]));
      check.max_operator_difference =
          std::max(check.max_operator_difference, max_difference(operators[a], operators[b]));
    }
  }
  check.nonvacuous = check.max_operator_difference > 1e-6;
  check.passed = check.max_spectrum_distance <= tol && check.nonvacuous;
  return check;
}

}  // namespace mqw
