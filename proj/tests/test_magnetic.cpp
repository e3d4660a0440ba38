#include <doctest.h>

#include "mqw/fock.hpp"
#include "mqw/magnetic.hpp"
#include "support.hpp"

using namespace mqw;
using testing::kPi;

TEST_CASE("potential phases must lie in [-pi, pi]") {
  CHECK_NOTHROW(MagneticPotential({-kPi, 0.0, kPi}));
  CHECK_THROWS_AS(MagneticPotential({0.0, 3.5}), ArgumentError);
  CHECK_THROWS_AS(MagneticPotential({NAN}), ArgumentError);
  CHECK_THROWS_AS(MagneticPotential(std::vector<double>{}), ArgumentError);
  const auto null = MagneticPotential::null(3);
  CHECK(null.n() == 3);
  for (double p : null.phases()) CHECK(p == 0.0);
}

TEST_CASE("random potentials are reproducible and in range") {
  std::mt19937_64 a(5), b(5);
  const auto p = MagneticPotential::random(6, a);
  CHECK(p == MagneticPotential::random(6, b));
  for (double v : p.phases()) CHECK(std::abs(v) <= kPi);
}

TEST_CASE("full potential table reduces to the singleton phases") {
  const int n = 2;
  FullPotentialTable table(n);
  const double phases[] = {0.4, -1.1, 2.5};
  for (int j = 0; j <= n; ++j) {
    const Subset s = Subset::singleton(j);
    table.set(s, s.complement(n), phases[j]);
    table.set(s.complement(n), s, -phases[j]);
  }
  table.set(Subset{0b011}, Subset{0b110}, 0.7);
  table.set(Subset{0b110}, Subset{0b011}, -0.7);
  const MagneticPotential nu = reduce_potential(table);
  for (int j = 0; j <= n; ++j) CHECK(nu.phase(j) == phases[j]);
}

TEST_CASE("antisymmetry violation names the pair") {
  FullPotentialTable table(1);
  table.set(Subset{0b01}, Subset{0b10}, 0.5);
  table.set(Subset{0b10}, Subset{0b01}, 0.5);
  try {
    table.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("({0}, {1})") != std::string::npos);
  }
  FullPotentialTable missing(1);
  missing.set(Subset{0b01}, Subset{0b10}, 0.5);
  CHECK_THROWS_AS(reduce_potential(missing), ValidationError);
  FullPotentialTable wide(1);
  wide.set(Subset{0b01}, Subset{0b10}, 4.0);
  wide.set(Subset{0b10}, Subset{0b01}, -4.0);
  CHECK_THROWS_AS(wide.validate(), ValidationError);
}

TEST_CASE("n=0 shift is the phased swap") {
  const double nu = 0.8;
  DenseMatrix expected(2, 2);
  expected << 0, std::polar(1.0, nu), std::polar(1.0, -nu), 0;
  const DenseMatrix xi = DenseMatrix(magnetic_shift(0, 0, MagneticPotential({nu})));
  CHECK((xi - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shifts agree with the basis action oracle") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(0, 5);
    const auto nu = gen.potential(n);
    for (int j = 0; j <= n; ++j) {
      const DenseMatrix xi = DenseMatrix(magnetic_shift(n, j, nu));
      CHECK((xi - testing::naive_shift(n, j, nu.phase(j))).cwiseAbs().maxCoeff() <= 1e-15);
      for (std::uint32_t s = 0; s < vertex_count(n); ++s) {
        const Subset sigma{s};
        CHECK(xi(sigma.toggled(j).bits(), s) == shift_phase(sigma, j, nu));
      }
    }
  }
}

TEST_CASE("shifts are commuting hermitian involutions") {
  testing::Gen gen(22);
  for (int n = 0; n <= 6; ++n) {
    for (int draw = 0; draw < 10; ++draw) {
      const auto nu = gen.potential(n);
      const MagneticReport report = check_magnetic_structure(nu);
      CHECK(report.involution <= kConstructTol);
      CHECK(report.hermiticity <= kConstructTol);
      CHECK(report.commutation <= kConstructTol);
    }
  }
}

TEST_CASE("product of shifts moves the empty vertex to gamma with the phase sum") {
  testing::Gen gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(0, 5);
    const auto nu = gen.potential(n);
    const Subset gamma{static_cast<std::uint32_t>(gen.integer(0, static_cast<int>(vertex_count(n)) - 1))};
    const auto [from_empty, from_gamma] = shift_product_action(gamma, nu);
    const FockSpace space(n);
    const Complex phase = std::polar(1.0, -nu.phase_sum(gamma));
    CHECK((from_empty - phase * space.basis_vector(gamma)).norm() <= 1e-12);
    CHECK((from_gamma - std::conj(phase) * space.basis_vector(Subset::empty())).norm() <= 1e-12);
  }
}

TEST_CASE("magnetic basis: closed form, product form and xi_hat agree") {
  testing::Gen gen(24);
  for (int n = 0; n <= 5; ++n) {
    for (int draw = 0; draw < 5; ++draw) {
      const auto nu = gen.potential(n);
      const MagneticReport report = check_magnetic_structure(nu);
      CHECK(report.gram <= kCompositeTol);
      CHECK(report.eigen_relation <= kCompositeTol);
      CHECK(report.formula_agreement <= kConstructTol);
      CHECK(report.passed());
      const double scale = 1.0 / std::sqrt(static_cast<double>(vertex_count(n)));
      for (std::uint32_t s = 0; s < vertex_count(n); ++s) {
        const Vector via_hat = scale * xi_hat(Subset{s}, nu).col(0);
        CHECK((via_hat - magnetic_basis_vector(Subset{s}, nu)).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}

TEST_CASE("null-potential basis vectors have flat moduli") {
  for (int n = 0; n <= 4; ++n) {
    const double modulus = std::pow(2.0, -(n + 1) / 2.0);
    for (std::uint32_t s = 0; s < vertex_count(n); ++s) {
      const Vector v = magnetic_basis_vector(Subset{s}, MagneticPotential::null(n));
      CHECK((v.cwiseAbs().array() - modulus).abs().maxCoeff() <= 1e-15);
    }
  }
}

TEST_CASE("n=0 magnetic basis by hand") {
  const double nu = -1.3;
  const MagneticPotential pot({nu});
  const double r = 1.0 / std::sqrt(2.0);
  // empty set: (Z_empty - e^{-i nu} Z_0) / sqrt 2, eigenvalue -1
  const Vector e = magnetic_basis_vector(Subset::empty(), pot);
  CHECK(std::abs(e(0) - r) <= 1e-15);
  CHECK(std::abs(e(1) + r * std::polar(1.0, -nu)) <= 1e-15);
  const Vector f = magnetic_basis_vector(Subset::singleton(0), pot);
  CHECK(std::abs(f(1) - r * std::polar(1.0, -nu)) <= 1e-15);
  const DenseMatrix xi = DenseMatrix(magnetic_shift(0, 0, pot));
  CHECK((xi * e + e).norm() <= 1e-15);
  CHECK((xi * f - f).norm() <= 1e-15);
}
