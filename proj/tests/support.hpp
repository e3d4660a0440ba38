#pragma once

// Seeded generators and brute-force oracles shared by the unit tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mqw/coin.hpp"
#include "mqw/magnetic.hpp"
#include "mqw/types.hpp"

namespace testing {

using mqw::Complex;
using mqw::DenseMatrix;
using mqw::Vector;

inline constexpr double kPi = std::numbers::pi;

/// Small reproducible generator for property sweeps.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::uint64_t seed() { return rng_(); }
  std::mt19937_64& engine() { return rng_; }

  mqw::MagneticPotential potential(int n) { return mqw::MagneticPotential::random(n, rng_); }

  mqw::CoinSystem coins(int n, int max_d) {
    const int d = integer(n + 1, std::max(n + 1, max_d));
    return mqw::random_coin_system(n, d, seed());
  }

  Vector unit_vector(Eigen::Index dim) {
    std::normal_distribution<double> g;
    Vector v(dim);
    for (auto& z : v) z = Complex(g(rng_), g(rng_));
    return v / v.norm();
  }

 private:
  std::mt19937_64 rng_;
};

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

/// Annihilation operator written straight from its action on basis vectors.
inline DenseMatrix naive_annihilation(int n, int k) {
  const auto dim = Eigen::Index{1} << (n + 1);
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index sigma = 0; sigma < dim; ++sigma) {
    if ((sigma >> k) & 1) m(sigma & ~(Eigen::Index{1} << k), sigma) = 1.0;
  }
  return m;
}

/// Magnetic shift from its action: up moves pick e^{-i nu}, down moves e^{+i nu}.
inline DenseMatrix naive_shift(int n, int j, double nu) {
  const auto dim = Eigen::Index{1} << (n + 1);
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index sigma = 0; sigma < dim; ++sigma) {
    const bool inside = (sigma >> j) & 1;
    m(sigma ^ (Eigen::Index{1} << j), sigma) = std::polar(1.0, inside ? nu : -nu);
  }
  return m;
}

/// Sum of kron(Xi_j, C_j) assembled densely.
inline DenseMatrix naive_walk(const mqw::MagneticPotential& nu, const mqw::CoinSystem& cs) {
  const auto dim = (Eigen::Index{1} << (cs.n() + 1)) * cs.d();
  DenseMatrix w = DenseMatrix::Zero(dim, dim);
  for (int j = 0; j <= cs.n(); ++j) w += kron(naive_shift(cs.n(), j, nu.phase(j)), cs.op(j));
  return w;
}

/// Eigenvalues from Eigen's general complex solver.
inline std::vector<Complex> oracle_eigenvalues(const DenseMatrix& a) {
  Eigen::ComplexEigenSolver<DenseMatrix> solver(a, false);
  std::vector<Complex> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return out;
}

/// Greedy matching of two equally sized multisets; largest matched distance.
inline double matched_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const Complex x : a) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < b.size(); ++k) {
      if (std::abs(b[k] - x) < std::abs(b[best] - x)) best = k;
    }
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

inline std::vector<Complex> expand(const std::vector<std::pair<Complex, int>>& values) {
  std::vector<Complex> out;
  for (const auto& [z, m] : values) out.insert(out.end(), static_cast<std::size_t>(m), z);
  return out;
}

}  // namespace testing
