#include "mqw/walk.hpp"

#include <cmath>

#include "mqw/fock.hpp"

namespace mqw {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

void require_state_dim(const WalkOperator& op, const Vector& v) {
  if (static_cast<std::size_t>(v.size()) != op.dim()) {
    throw ArgumentError("state has dimension " + std::to_string(v.size()) + ", walk expects " +
                        std::to_string(op.dim()));
  }
}

}  // namespace

WalkOperator::WalkOperator(MagneticPotential nu, CoinSystem coins, std::vector<SparseMatrix> shifts)
    : nu_(std::move(nu)), coins_(std::move(coins)), shifts_(std::move(shifts)) {
  if (nu_.n() != coins_.n()) {
    throw ArgumentError("potential has n = " + std::to_string(nu_.n()) + " but coin system has n = " +
                        std::to_string(coins_.n()));
  }
  if (shifts_.size() != coins_.ops().size()) throw ArgumentError("one shift per coin operator");
  for (const auto& s : shifts_) {
    if (static_cast<std::size_t>(s.rows()) != positions() ||
        static_cast<std::size_t>(s.cols()) != positions()) {
      throw ArgumentError("shift operator does not act on h_n");
    }
  }
}

Vector WalkOperator::apply(const Vector& state) const {
  require_state_dim(*this, state);
  const auto p = idx(positions());
  const Eigen::Map<const DenseMatrix> x(state.data(), d(), p);
  Vector out = Vector::Zero(state.size());
  Eigen::Map<DenseMatrix> y(out.data(), d(), p);
  DenseMatrix coin_applied(d(), p);
  for (std::size_t j = 0; j < shifts_.size(); ++j) {
    coin_applied.noalias() = coins_.ops()[j] * x;
    // Column sigma of the coin-applied state lands on every row tau of the
    // shift's column sigma.
    const SparseMatrix& s = shifts_[j];
    for (Eigen::Index col = 0; col < s.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(s, col); it; ++it) {
        y.col(it.row()) += it.value() * coin_applied.col(col);
      }
    }
  }
  return out;
}

DenseMatrix WalkOperator::dense(std::size_t max_dim) const {
  if (dim() > max_dim) {
    throw CapacityError("dense walk operator of dimension " + std::to_string(dim()) +
                        " exceeds the limit " + std::to_string(max_dim));
  }
  const auto d_i = idx(static_cast<std::size_t>(d()));
  DenseMatrix w = DenseMatrix::Zero(idx(dim()), idx(dim()));
  for (std::size_t j = 0; j < shifts_.size(); ++j) {
    const SparseMatrix& s = shifts_[j];
    for (Eigen::Index col = 0; col < s.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(s, col); it; ++it) {
        w.block(it.row() * d_i, col * d_i, d_i, d_i) += it.value() * coins_.ops()[j];
      }
    }
  }
  return w;
}

double max_difference(const WalkOperator& a, const WalkOperator& b) {
  if (a.n() != b.n() || a.d() != b.d() || a.shifts().size() != b.shifts().size()) {
    throw ArgumentError("walk operators act on different spaces");
  }
  std::map<std::pair<Eigen::Index, Eigen::Index>, DenseMatrix> blocks;
  auto accumulate = [&blocks](const WalkOperator& op, double sign) {
    for (std::size_t j = 0; j < op.shifts().size(); ++j) {
      const SparseMatrix& s = op.shifts()[j];
      for (Eigen::Index col = 0; col < s.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(s, col); it; ++it) {
          auto [pos, fresh] = blocks.try_emplace({it.row(), col});
          if (fresh) pos->second = DenseMatrix::Zero(op.d(), op.d());
          pos->second += (sign * it.value()) * op.coins().ops()[j];
        }
      }
    }
  };
  accumulate(a, 1.0);
  accumulate(b, -1.0);
  double worst = 0.0;
  for (const auto& [key, block] : blocks) worst = std::max(worst, max_abs(block));
  return worst;
}

WalkOperator evolution_operator(const MagneticPotential& nu, const CoinSystem& cs) {
  if (nu.n() != cs.n()) {
    throw ArgumentError("potential has n = " + std::to_string(nu.n()) + " but coin system has n = " +
                        std::to_string(cs.n()));
  }
  require_valid(cs);
  std::vector<SparseMatrix> shifts;
  for (int j = 0; j <= cs.n(); ++j) shifts.push_back(magnetic_shift(cs.n(), j, nu));
  return WalkOperator(nu, cs, std::move(shifts));
}

WalkOperator null_potential_operator(const CoinSystem& cs) {
  require_valid(cs);
  std::vector<SparseMatrix> shifts;
  for (int k = 0; k <= cs.n(); ++k) {
    shifts.emplace_back(creation_operator(cs.n(), k) + annihilation_operator(cs.n(), k));
  }
  return WalkOperator(MagneticPotential::null(cs.n()), cs, std::move(shifts));
}

Vector tensor(const Vector& position, const Vector& coin) {
  Vector out(position.size() * coin.size());
  for (Eigen::Index s = 0; s < position.size(); ++s) {
    out.segment(s * coin.size(), coin.size()) = position(s) * coin;
  }
  return out;
}

WalkState vertex_state(const WalkOperator& op, Subset sigma, int coin_index) {
  require_subset(op.n(), sigma);
  if (coin_index < 0 || coin_index >= op.d()) {
    throw ArgumentError("coin index " + std::to_string(coin_index) + " outside 0.." +
                        std::to_string(op.d() - 1));
  }
  Vector v = Vector::Zero(idx(op.dim()));
  v(idx(sigma.index()) * op.d() + coin_index) = 1.0;
  return {v, 0};
}

WalkState uniform_coin_state(const WalkOperator& op, Subset sigma) {
  require_subset(op.n(), sigma);
  Vector v = Vector::Zero(idx(op.dim()));
  v.segment(idx(sigma.index()) * op.d(), op.d()).setConstant(1.0 / std::sqrt(op.d()));
  return {v, 0};
}

WalkState magnetic_eigenstate(const WalkOperator& op, Subset sigma, const Vector& u) {
  if (u.size() != op.d()) throw ArgumentError("coin vector has wrong dimension");
  const double norm = u.norm();
  if (norm == 0.0) throw ArgumentError("coin vector is zero");
  return {tensor(magnetic_basis_vector(sigma, op.potential()), u / norm), 0};
}

WalkState step(const WalkOperator& op, const WalkState& state) {
  return {op.apply(state.vector), state.t + 1};
}

WalkState evolve(const WalkOperator& op, const WalkState& initial, std::size_t steps) {
  WalkState s = initial;
  for (std::size_t i = 0; i < steps; ++i) s = step(op, s);
  return s;
}

std::vector<double> position_distribution(const WalkOperator& op, const WalkState& state) {
  require_state_dim(op, state.vector);
  std::vector<double> p(op.positions(), 0.0);
  for (std::size_t s = 0; s < p.size(); ++s) {
    p[s] = state.vector.segment(idx(s) * op.d(), op.d()).squaredNorm();
  }
  return p;
}

IntertwiningReport intertwining_check(const WalkOperator& op, std::size_t dense_limit) {
  IntertwiningReport report;
  const int d = op.d();
  std::vector<DenseMatrix> blocks;
  for (std::uint32_t bits = 0; bits < op.positions(); ++bits) {
    const Subset sigma{bits};
    const DenseMatrix u = algebraic_sum(op.coins(), sigma);
    const Vector zhat = magnetic_basis_vector(sigma, op.potential());
    for (int c = 0; c < d; ++c) {
      const Vector lhs = op.apply(tensor(zhat, Vector::Unit(d, c)));
      const Vector rhs = tensor(zhat, u.col(c));
      report.max_residual = std::max(report.max_residual, (lhs - rhs).norm());
    }
    blocks.push_back(u);
  }

  if (op.dim() <= dense_limit) {
    report.dense_checked = true;
    const DenseMatrix basis = magnetic_basis_change(op.potential());
    const auto p = idx(op.positions());
    DenseMatrix lifted = DenseMatrix::Zero(idx(op.dim()), idx(op.dim()));
    for (Eigen::Index r = 0; r < p; ++r) {
      for (Eigen::Index c = 0; c < p; ++c) {
        lifted.block(r * d, c * d, d, d).diagonal().setConstant(basis(r, c));
      }
    }
    const DenseMatrix conjugated = lifted.adjoint() * op.dense() * lifted;
    for (Eigen::Index r = 0; r < p; ++r) {
      for (Eigen::Index c = 0; c < p; ++c) {
        const auto block = conjugated.block(r * d, c * d, d, d);
        if (r == c) {
          report.block_deviation =
              std::max(report.block_deviation, max_abs(DenseMatrix(block - blocks[static_cast<std::size_t>(r)])));
        } else {
          report.off_block = std::max(report.off_block, max_abs(DenseMatrix(block)));
        }
      }
    }
  }
  return report;
}

}  // namespace mqw
