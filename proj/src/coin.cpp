#include "mqw/coin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace mqw {

CoinSystem::CoinSystem(int n, std::vector<DenseMatrix> ops) : n_(n), ops_(std::move(ops)) {
  require_order(n);
  if (ops_.size() != static_cast<std::size_t>(n + 1)) {
    throw ArgumentError("coin system needs n+1 = " + std::to_string(n + 1) + " operators, got " +
                        std::to_string(ops_.size()));
  }
  d_ = static_cast<int>(ops_.front().rows());
  for (std::size_t j = 0; j < ops_.size(); ++j) {
    if (ops_[j].rows() != d_ || ops_[j].cols() != d_) {
      throw ArgumentError("coin operator C_" + std::to_string(j) + " is not " +
                          std::to_string(d_) + "x" + std::to_string(d_));
    }
  }
  if (d_ < n + 1) {
    throw ArgumentError("coin dimension " + std::to_string(d_) + " is below n+1 = " +
                        std::to_string(n + 1));
  }
}

DenseMatrix CoinSystem::sum() const {
  DenseMatrix s = DenseMatrix::Zero(d_, d_);
  for (const auto& c : ops_) s += c;
  return s;
}

CoinReport validate_coin_system(const CoinSystem& cs) {
  CoinReport report;
  const int n = cs.n();
  DenseMatrix completeness = -DenseMatrix::Identity(cs.d(), cs.d());
  for (int j = 0; j <= n; ++j) {
    completeness += cs.op(j).adjoint() * cs.op(j);
    for (int k = 0; k <= n; ++k) {
      if (j == k) continue;
      report.mutual_annihilation =
          std::max({report.mutual_annihilation, max_abs(DenseMatrix(cs.op(j).adjoint() * cs.op(k))),
                    max_abs(DenseMatrix(cs.op(j) * cs.op(k).adjoint()))});
    }
  }
  report.sum_unitarity = unitarity_residual(cs.sum());
  report.completeness = max_abs(completeness);
  return report;
}

void require_valid(const CoinSystem& cs, double tol) {
  const CoinReport r = validate_coin_system(cs);
  if (!r.passed(tol)) {
    throw ValidationError("invalid coin operator system: mutual annihilation residual " +
                          std::to_string(r.mutual_annihilation) + ", sum unitarity residual " +
                          std::to_string(r.sum_unitarity));
  }
}

CoinSystem coin_from_unitary_partition(const DenseMatrix& s, const Partition& blocks) {
  if (s.rows() != s.cols()) throw ArgumentError("coin unitary must be square");
  const int d = static_cast<int>(s.rows());
  if (unitarity_residual(s) > kCompositeTol) throw ArgumentError("coin matrix S is not unitary");
  if (blocks.empty()) throw ArgumentError("partition has no blocks");

  std::vector<int> owner(static_cast<std::size_t>(d), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw ArgumentError("partition block " + std::to_string(b) + " is empty");
    for (int idx : blocks[b]) {
      if (idx < 0 || idx >= d) {
        throw ArgumentError("partition index " + std::to_string(idx) + " outside 0.." +
                            std::to_string(d - 1));
      }
      if (owner[static_cast<std::size_t>(idx)] != -1) {
        throw ArgumentError("partition blocks overlap at index " + std::to_string(idx));
      }
      owner[static_cast<std::size_t>(idx)] = static_cast<int>(b);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    throw ArgumentError("partition does not cover every coin index");
  }

  std::vector<DenseMatrix> ops;
  ops.reserve(blocks.size());
  for (const auto& block : blocks) {
    DenseMatrix c = DenseMatrix::Zero(d, d);
    for (int idx : block) c.col(idx) = s.col(idx);
    ops.push_back(std::move(c));
  }
  return CoinSystem(static_cast<int>(blocks.size()) - 1, std::move(ops));
}

Partition singleton_partition(int d) {
  Partition p(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = {i};
  return p;
}

CoinSystem grover_coin_system(int n) {
  if (n < 1) throw ArgumentError("Grover coin needs n >= 1");
  require_order(n);
  const int d = n + 1;
  const DenseMatrix s = DenseMatrix::Constant(d, d, 2.0 / d) - DenseMatrix::Identity(d, d);
  return coin_from_unitary_partition(s, singleton_partition(d));
}

CoinSystem hadamard_partition_coin() {
  DenseMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  return coin_from_unitary_partition(h, singleton_partition(2));
}

CoinSystem fourier_coin_system(int n) {
  require_order(n);
  const int d = n + 1;
  DenseMatrix f(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((r * c) % d) / d;
      f(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), angle);
    }
  }
  return coin_from_unitary_partition(f, singleton_partition(d));
}

CoinSystem identity_coin_system(int n) {
  require_order(n);
  return coin_from_unitary_partition(DenseMatrix::Identity(n + 1, n + 1), singleton_partition(n + 1));
}

CoinSystem random_coin_system(int n, int d, std::uint64_t seed) {
  require_order(n);
  if (d < n + 1) {
    throw ArgumentError("coin dimension " + std::to_string(d) + " is below n+1 = " +
                        std::to_string(n + 1));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  DenseMatrix z(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) z(r, c) = Complex{gauss(rng), gauss(rng)};
  }
  const Eigen::HouseholderQR<DenseMatrix> qr(z);
  DenseMatrix q = qr.householderQ();
  const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Rotate column phases so diag(R) is positive; this makes q Haar distributed.
  for (int c = 0; c < d; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int blocks = n + 1;
  Partition partition(static_cast<std::size_t>(blocks));
  for (int i = 0; i < d; ++i) partition[static_cast<std::size_t>(i % blocks)].push_back(order[static_cast<std::size_t>(i)]);
  for (auto& b : partition) std::sort(b.begin(), b.end());

  return coin_from_unitary_partition(q, partition);
}

DenseMatrix algebraic_sum(const CoinSystem& cs, Subset sigma) {
  require_subset(cs.n(), sigma);
  DenseMatrix u = DenseMatrix::Zero(cs.d(), cs.d());
  for (int j = 0; j <= cs.n(); ++j) {
    if (sigma.contains(j)) {
      u += cs.op(j);
    } else {
      u -= cs.op(j);
    }
  }
  return u;
}

}  // namespace mqw
