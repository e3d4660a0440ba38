#include "mqw/fock.hpp"

#include <algorithm>
#include <vector>

namespace mqw {

FockSpace::FockSpace(int n) : n_(n) { require_order(n); }

Vector FockSpace::basis_vector(Subset sigma) const {
  require_subset(n_, sigma);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim()));
  v(static_cast<Eigen::Index>(sigma.index())) = 1.0;
  return v;
}

SparseMatrix FockSpace::identity() const {
  const auto dim_i = static_cast<Eigen::Index>(dim());
  SparseMatrix id(dim_i, dim_i);
  id.setIdentity();
  return id;
}

namespace {

SparseMatrix ladder(int n, int k, bool create) {
  require_direction(n, k);
  const auto dim = static_cast<Eigen::Index>(vertex_count(n));
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim / 2));
  for (std::uint32_t bits = 0; bits < static_cast<std::uint32_t>(dim); ++bits) {
    const Subset sigma{bits};
    if (sigma.contains(k) == create) continue;
    const Subset target = create ? sigma.with(k) : sigma.without(k);
    entries.emplace_back(static_cast<Eigen::Index>(target.index()),
                         static_cast<Eigen::Index>(sigma.index()), Complex{1.0, 0.0});
  }
  SparseMatrix op(dim, dim);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

}  // namespace

SparseMatrix annihilation_operator(int n, int k) { return ladder(n, k, false); }

SparseMatrix creation_operator(int n, int k) { return ladder(n, k, true); }

double CarReport::max_residual() const {
  return std::max({annihilators_commute, creators_commute, mixed_commute, annihilator_square,
                   creator_square, anticommutator});
}

CarReport verify_car(int n) {
  require_order(n);
  CarReport report;
  report.n = n;

  std::vector<SparseMatrix> down, up;
  for (int k = 0; k <= n; ++k) {
    down.push_back(annihilation_operator(n, k));
    up.push_back(creation_operator(n, k));
  }
  const SparseMatrix id = FockSpace(n).identity();

  auto residual = [](const SparseMatrix& m) { return max_abs(m); };

  for (int j = 0; j <= n; ++j) {
    report.annihilator_square =
        std::max(report.annihilator_square, residual(SparseMatrix(down[j] * down[j])));
    report.creator_square = std::max(report.creator_square, residual(SparseMatrix(up[j] * up[j])));
    report.anticommutator = std::max(
        report.anticommutator, residual(SparseMatrix(up[j] * down[j] + down[j] * up[j] - id)));
    for (int k = 0; k <= n; ++k) {
      if (j == k) continue;
      report.annihilators_commute = std::max(
          report.annihilators_commute, residual(SparseMatrix(down[j] * down[k] - down[k] * down[j])));
      report.creators_commute = std::max(report.creators_commute,
                                         residual(SparseMatrix(up[j] * up[k] - up[k] * up[j])));
      report.mixed_commute = std::max(report.mixed_commute,
                                      residual(SparseMatrix(up[j] * down[k] - down[k] * up[j])));
    }
  }
  return report;
}

}  // namespace mqw
