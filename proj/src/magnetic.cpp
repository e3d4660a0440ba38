#include "mqw/magnetic.hpp"

#include <cmath>
#include <numbers>

#include "mqw/fock.hpp"

namespace mqw {

namespace {

constexpr double kPi = std::numbers::pi;

bool in_phase_range(double v) { return v >= -kPi && v <= kPi; }

std::string pair_name(std::uint32_t s, std::uint32_t t) {
  return "(" + Subset{s}.to_string() + ", " + Subset{t}.to_string() + ")";
}

}  // namespace

MagneticPotential::MagneticPotential(std::vector<double> phases) : phases_(std::move(phases)) {
  if (phases_.empty()) throw ArgumentError("magnetic potential needs at least one phase");
  require_order(n());
  for (std::size_t j = 0; j < phases_.size(); ++j) {
    if (!std::isfinite(phases_[j]) || !in_phase_range(phases_[j])) {
      throw ArgumentError("phase nu_" + std::to_string(j) + " = " + std::to_string(phases_[j]) +
                          " outside [-pi, pi]");
    }
  }
}

MagneticPotential MagneticPotential::null(int n) {
  require_order(n);
  return MagneticPotential(std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
}

MagneticPotential MagneticPotential::random(int n, std::mt19937_64& rng) {
  require_order(n);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::vector<double> phases(static_cast<std::size_t>(n + 1));
  for (auto& p : phases) p = phase(rng);
  return MagneticPotential(std::move(phases));
}

double MagneticPotential::phase_sum(Subset gamma) const {
  double sum = 0.0;
  for (int j = 0; j <= n(); ++j) {
    if (gamma.contains(j)) sum += phase(j);
  }
  return sum;
}

FullPotentialTable::FullPotentialTable(int n) : n_(n) { require_order(n); }

void FullPotentialTable::set(Subset sigma, Subset tau, double value) {
  require_subset(n_, sigma);
  require_subset(n_, tau);
  entries_[{sigma.bits(), tau.bits()}] = value;
}

double FullPotentialTable::value(Subset sigma, Subset tau) const {
  const auto it = entries_.find({sigma.bits(), tau.bits()});
  return it == entries_.end() ? 0.0 : it->second;
}

void FullPotentialTable::validate() const {
  for (const auto& [key, v] : entries_) {
    const auto [s, t] = key;
    if (!std::isfinite(v) || !in_phase_range(v)) {
      throw ValidationError("potential value at " + pair_name(s, t) + " outside [-pi, pi]");
    }
    const double mirror = value(Subset{t}, Subset{s});
    if (std::abs(v + mirror) > kConstructTol) {
      throw ValidationError("antisymmetry violated at " + pair_name(s, t) + ": " +
                            std::to_string(v) + " vs " + std::to_string(mirror));
    }
  }
}

MagneticPotential reduce_potential(const FullPotentialTable& full) {
  full.validate();
  const int n = full.n();
  std::vector<double> phases(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) {
    const Subset single = Subset::singleton(j);
    phases[static_cast<std::size_t>(j)] = full.value(single, single.complement(n));
  }
  return MagneticPotential(std::move(phases));
}

MagneticPotential null_potential(int n) { return MagneticPotential::null(n); }

Complex shift_phase(Subset sigma, int j, const MagneticPotential& nu) {
  return std::polar(1.0, sigma.contains(j) ? nu.phase(j) : -nu.phase(j));
}

SparseMatrix magnetic_shift(int n, int j, const MagneticPotential& nu) {
  require_direction(n, j);
  if (nu.n() != n) throw ArgumentError("potential order does not match n");
  const Complex up = std::polar(1.0, -nu.phase(j));
  const Complex down = std::polar(1.0, nu.phase(j));
  return SparseMatrix(up * creation_operator(n, j) + down * annihilation_operator(n, j));
}

std::pair<Vector, Vector> shift_product_action(Subset gamma, const MagneticPotential& nu) {
  const int n = nu.n();
  require_subset(n, gamma);
  const FockSpace space(n);
  Vector from_empty = space.basis_vector(Subset::empty());
  Vector from_gamma = space.basis_vector(gamma);
  for (int j = 0; j <= n; ++j) {
    if (!gamma.contains(j)) continue;
    const SparseMatrix shift = magnetic_shift(n, j, nu);
    from_empty = shift * from_empty;
    from_gamma = shift * from_gamma;
  }
  return {from_empty, from_gamma};
}

DenseMatrix xi_hat(Subset sigma, const MagneticPotential& nu) {
  const int n = nu.n();
  require_subset(n, sigma);
  const SparseMatrix id = FockSpace(n).identity();
  DenseMatrix product = DenseMatrix(id);
  for (int j = 0; j <= n; ++j) {
    const SparseMatrix factor = id + static_cast<double>(sigma.sign(j)) * magnetic_shift(n, j, nu);
    product = DenseMatrix(factor * product);
  }
  return product;
}

Vector magnetic_basis_vector(Subset sigma, const MagneticPotential& nu) {
  const int n = nu.n();
  require_subset(n, sigma);
  const std::size_t dim = vertex_count(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Vector v(static_cast<Eigen::Index>(dim));
  for (std::uint32_t bits = 0; bits < dim; ++bits) {
    const Subset gamma{bits};
    const double sign = (gamma.minus(sigma).size() % 2 == 0) ? 1.0 : -1.0;
    v(bits) = std::polar(scale * sign, -nu.phase_sum(gamma));
  }
  return v;
}

Vector magnetic_basis_vector_from_product(Subset sigma, const MagneticPotential& nu) {
  const int n = nu.n();
  require_subset(n, sigma);
  const FockSpace space(n);
  Vector v = space.basis_vector(Subset::empty());
  for (int j = 0; j <= n; ++j) {
    const double sign = static_cast<double>(sigma.sign(j));
    v = v + sign * (magnetic_shift(n, j, nu) * v);
  }
  return v / std::sqrt(static_cast<double>(space.dim()));
}

DenseMatrix magnetic_basis_change(const MagneticPotential& nu) {
  const auto dim = static_cast<Eigen::Index>(vertex_count(nu.n()));
  DenseMatrix basis(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    basis.col(s) = magnetic_basis_vector(Subset{static_cast<std::uint32_t>(s)}, nu);
  }
  return basis;
}

MagneticReport check_magnetic_structure(const MagneticPotential& nu) {
  const int n = nu.n();
  const SparseMatrix id = FockSpace(n).identity();
  std::vector<SparseMatrix> shifts;
  for (int j = 0; j <= n; ++j) shifts.push_back(magnetic_shift(n, j, nu));

  MagneticReport report;
  for (int j = 0; j <= n; ++j) {
    const SparseMatrix& xi = shifts[static_cast<std::size_t>(j)];
    report.involution = std::max(report.involution, max_abs(SparseMatrix(xi * xi - id)));
    report.hermiticity =
        std::max(report.hermiticity, max_abs(SparseMatrix(xi - SparseMatrix(xi.adjoint()))));
    for (int k = j + 1; k <= n; ++k) {
      const SparseMatrix& other = shifts[static_cast<std::size_t>(k)];
      report.commutation =
          std::max(report.commutation, max_abs(SparseMatrix(xi * other - other * xi)));
    }
  }

  const DenseMatrix basis = magnetic_basis_change(nu);
  report.gram = max_abs(DenseMatrix(basis.adjoint() * basis -
                                    DenseMatrix::Identity(basis.rows(), basis.cols())));
  for (Eigen::Index s = 0; s < basis.cols(); ++s) {
    const Subset sigma{static_cast<std::uint32_t>(s)};
    const Vector closed = basis.col(s);
    report.formula_agreement = std::max(
        report.formula_agreement, (closed - magnetic_basis_vector_from_product(sigma, nu)).cwiseAbs().maxCoeff());
    for (int j = 0; j <= n; ++j) {
      const Vector lhs = shifts[static_cast<std::size_t>(j)] * closed;
      report.eigen_relation = std::max(
          report.eigen_relation,
          (lhs - static_cast<double>(sigma.sign(j)) * closed).cwiseAbs().maxCoeff());
    }
  }
  return report;
}

}  // namespace mqw
