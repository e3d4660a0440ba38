#include "mqw/eigensolver.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <cmath>
#include <numbers>
#include <random>

namespace mqw {

namespace {

static_assert(sizeof(lapack_complex_double) == sizeof(Complex));

lapack_complex_double* raw(DenseMatrix& m) {
  return reinterpret_cast<lapack_complex_double*>(m.data());
}

thread_local double g_last_pole_distance = 0.0;

void check_info(lapack_int info, const char* routine) {
  if (info != 0) {
    throw std::runtime_error(std::string(routine) + " failed with info " + std::to_string(info));
  }
}

std::vector<Complex> schur_values(const DenseMatrix& a, DenseMatrix* vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  DenseMatrix t = a;
  std::vector<Complex> w(static_cast<std::size_t>(n));
  lapack_int sdim = 0;
  if (vectors != nullptr) vectors->resize(n, n);
  const lapack_int info = LAPACKE_zgees(
      LAPACK_COL_MAJOR, vectors != nullptr ? 'V' : 'N', 'N', nullptr, n, raw(t), n, &sdim,
      reinterpret_cast<lapack_complex_double*>(w.data()),
      vectors != nullptr ? raw(*vectors) : nullptr, n);
  check_info(info, "zgees");
  return w;
}

// Inverse power iteration on an LU factored normal matrix: converges to the
// reciprocal of its smallest eigenvalue modulus.
double smallest_modulus(DenseMatrix& lu, std::vector<lapack_int>& pivots) {
  const auto n = static_cast<lapack_int>(lu.rows());
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Vector x(n);
  for (auto& v : x) v = Complex{gauss(rng), gauss(rng)};
  x.normalize();
  double growth = 0.0;
  for (int it = 0; it < 20; ++it) {
    check_info(LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, raw(lu), n, pivots.data(),
                              reinterpret_cast<lapack_complex_double*>(x.data()), n),
               "zgetrs");
    growth = x.norm();
    if (!std::isfinite(growth) || growth == 0.0) return 0.0;
    x /= growth;
  }
  return 1.0 / growth;
}

std::vector<Complex> cayley_values(const DenseMatrix& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  const auto id = DenseMatrix::Identity(n, n);

  // Candidate poles along a golden-angle sequence; keep the first one whose
  // distance to the spectrum is comfortable, else the best seen.
  constexpr double kGolden = 0.6180339887498949;
  constexpr double kComfortable = 1e-4;
  constexpr int kAttempts = 8;

  DenseMatrix best_lu;
  std::vector<lapack_int> best_pivots;
  Complex best_rotation;
  double best_phi = 0.0;
  double best_distance = -1.0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const double frac = std::fmod(0.3090169943749474 + attempt * kGolden, 1.0);
    const double phi = std::numbers::pi * (2.0 * frac - 1.0);
    const Complex rotation = std::polar(1.0, -phi);
    DenseMatrix lu = id + rotation * a;
    std::vector<lapack_int> pivots(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, raw(lu), n, pivots.data());
    if (info < 0) check_info(info, "zgetrf");
    const double distance = info > 0 ? 0.0 : smallest_modulus(lu, pivots);
    if (distance > best_distance) {
      best_distance = distance;
      best_phi = phi;
      best_rotation = rotation;
      best_lu = std::move(lu);
      best_pivots = std::move(pivots);
    }
    if (best_distance >= kComfortable) break;
  }
  if (best_distance <= 0.0) throw std::runtime_error("Cayley transform: no usable pole found");
  g_last_pole_distance = best_distance;

  DenseMatrix h = id - best_rotation * a;
  check_info(LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, n, raw(best_lu), n, best_pivots.data(), raw(h),
                            n),
             "zgetrs");
  best_lu.resize(0, 0);
  h *= Complex{0.0, 1.0};
  for (lapack_int c = 0; c < n; ++c) {
    for (lapack_int r = 0; r < c; ++r) {
      const Complex mean = 0.5 * (h(r, c) + std::conj(h(c, r)));
      h(r, c) = mean;
      h(c, r) = std::conj(mean);
    }
    h(c, c) = h(c, c).real();
  }

  std::vector<double> tangents(static_cast<std::size_t>(n));
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, raw(h), n, tangents.data()), "zheevd");

  std::vector<Complex> values;
  values.reserve(tangents.size());
  for (double t : tangents) values.push_back(std::polar(1.0, best_phi + 2.0 * std::atan(t)));
  return values;
}

}  // namespace

std::vector<Complex> unitary_eigenvalues_raw(const DenseMatrix& a, EigenMethod method) {
  if (a.rows() != a.cols()) throw ArgumentError("eigenvalues need a square matrix");
  if (a.rows() == 0) return {};
  if (method == EigenMethod::automatic) {
    method = a.rows() > kCayleyThreshold ? EigenMethod::cayley : EigenMethod::schur;
  }
  return method == EigenMethod::cayley ? cayley_values(a) : schur_values(a, nullptr);
}

SchurEigenpairs unitary_schur(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("eigenvalues need a square matrix");
  SchurEigenpairs out;
  if (a.rows() == 0) return out;
  out.values = schur_values(a, &out.vectors);
  return out;
}

double last_cayley_pole_distance() { return g_last_pole_distance; }

double unitarity_residual_estimate(const DenseMatrix& a, Eigen::Index exact_limit) {
  if (a.rows() != a.cols()) throw ArgumentError("unitarity check needs a square matrix");
  if (a.rows() <= exact_limit) return unitarity_residual(a);
  std::mt19937_64 rng(0x0babe);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int probe = 0; probe < 4; ++probe) {
    Vector x(a.rows());
    for (auto& v : x) v = Complex{gauss(rng), gauss(rng)};
    x.normalize();
    const Vector ax = a * x;
    const Vector ahx = a.adjoint() * x;
    worst = std::max({worst, (a.adjoint() * ax - x).norm(), (a * ahx - x).norm()});
  }
  return worst;
}

}  // namespace mqw
