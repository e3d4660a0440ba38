#include <doctest.h>

#include "mqw/eigensolver.hpp"
#include "mqw/fock.hpp"
#include "mqw/walk.hpp"
#include "support.hpp"

using namespace mqw;

TEST_CASE("n=0 trivial coin gives the swap") {
  const CoinSystem cs(0, {DenseMatrix::Identity(1, 1)});
  DenseMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(evolution_operator(MagneticPotential::null(0), cs).dense() == swap);
}

TEST_CASE("null-potential walk for C_0 = [[i]]") {
  DenseMatrix c(1, 1);
  c << Complex(0, 1);
  const CoinSystem cs(0, {c});
  DenseMatrix expected(2, 2);
  expected << 0, Complex(0, 1), Complex(0, 1), 0;
  CHECK(null_potential_operator(cs).dense() == expected);
}

TEST_CASE("dense walk equals the Kronecker sum and is unitary") {
  testing::Gen gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(0, 3);
    const CoinSystem cs = gen.coins(n, 6);
    const auto nu = gen.potential(n);
    const DenseMatrix w = evolution_operator(nu, cs).dense();
    CHECK((w - testing::naive_walk(nu, cs)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(unitarity_residual(w) <= kCompositeTol);
  }
  const DenseMatrix h = evolution_operator(MagneticPotential::null(1), hadamard_partition_coin()).dense();
  CHECK(h.rows() == 8);
  CHECK(unitarity_residual(h) <= kConstructTol);
}

TEST_CASE("null potential reduces exactly to the creation plus annihilation walk") {
  testing::Gen gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(0, 4);
    const CoinSystem cs = gen.coins(n, 6);
    const DenseMatrix a = evolution_operator(MagneticPotential::null(n), cs).dense();
    const DenseMatrix b = null_potential_operator(cs).dense();
    CHECK(a == b);
    CHECK(unitarity_residual(b) <= kConstructTol);
  }
}

TEST_CASE("potential and coin orders must match") {
  CHECK_THROWS_AS(evolution_operator(MagneticPotential::null(2), grover_coin_system(1)), ArgumentError);
  const WalkOperator op = evolution_operator(MagneticPotential::null(1), grover_coin_system(1));
  CHECK_THROWS_AS(step(op, WalkState{Vector::Zero(5), 0}), ArgumentError);
  CHECK_THROWS_AS(vertex_state(op, Subset::empty(), 2), ArgumentError);
}

TEST_CASE("matrix-free step matches the dense product") {
  testing::Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(0, 3);
    const WalkOperator op = evolution_operator(gen.potential(n), gen.coins(n, 7));
    const Vector x = gen.unit_vector(static_cast<Eigen::Index>(op.dim()));
    const Vector y = op.apply(x);
    CHECK((y - op.dense() * x).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(y.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("evolution composes steps and matches dense powers") {
  testing::Gen gen(44);
  const int n = 3;
  const WalkOperator op = evolution_operator(gen.potential(n), gen.coins(n, 5));
  const WalkState start{gen.unit_vector(static_cast<Eigen::Index>(op.dim())), 0};
  CHECK(evolve(op, start, 0).vector == start.vector);
  const WalkState two = evolve(op, start, 2);
  CHECK(two.t == 2);
  CHECK(two.vector == step(op, step(op, start)).vector);
  const DenseMatrix w = op.dense();
  Vector power = start.vector;
  for (int t = 1; t <= 64; ++t) power = w * power;
  CHECK((evolve(op, start, 64).vector - power).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("1000 steps preserve the norm") {
  testing::Gen gen(45);
  const int n = 3;
  const WalkOperator op = evolution_operator(gen.potential(n), gen.coins(n, 6));
  WalkState state = uniform_coin_state(op, Subset{0b0101});
  const WalkState end = evolve(op, state, 1000);
  CHECK(end.t == 1000);
  CHECK(std::abs(end.vector.norm() - 1.0) <= 1e-8);
}

TEST_CASE("one step from a vertex only reaches its neighbours") {
  testing::Gen gen(46);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(0, 4);
    const WalkOperator op = evolution_operator(gen.potential(n), gen.coins(n, 6));
    const Subset sigma{static_cast<std::uint32_t>(gen.integer(0, static_cast<int>(op.positions()) - 1))};
    const auto p = position_distribution(op, step(op, uniform_coin_state(op, sigma)));
    double total = 0.0;
    for (std::uint32_t s = 0; s < p.size(); ++s) {
      if (!Subset{s}.adjacent(sigma)) CHECK(p[s] == 0.0);
      total += p[s];
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("position distribution readouts") {
  const int n = 2;
  const WalkOperator op = evolution_operator(MagneticPotential::null(n), grover_coin_system(n));
  const auto p = position_distribution(op, vertex_state(op, Subset::empty(), 0));
  CHECK(p[0] == 1.0);
  for (std::size_t s = 1; s < p.size(); ++s) CHECK(p[s] == 0.0);

  Vector e0 = Vector::Zero(op.d());
  e0(0) = 1.0;
  const auto flat = position_distribution(op, WalkState{tensor(magnetic_basis_vector(Subset{0b101}, op.potential()), e0), 0});
  for (double v : flat) CHECK(std::abs(v - 1.0 / 8.0) <= 1e-15);

  // Grover coin: C_j e_0 vanishes for j != 0, so Z_empty x e_0 moves to {0} only.
  const auto moved = position_distribution(op, step(op, vertex_state(op, Subset::empty(), 0)));
  CHECK(std::abs(moved[1] - 1.0) <= 1e-15);
}

TEST_CASE("magnetic eigenstates are multiplied by coin eigenvalues") {
  testing::Gen gen(47);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(0, 3);
    const WalkOperator op = evolution_operator(gen.potential(n), gen.coins(n, 5));
    const Subset sigma{static_cast<std::uint32_t>(gen.integer(0, static_cast<int>(op.positions()) - 1))};
    const SchurEigenpairs pairs = unitary_schur(algebraic_sum(op.coins(), sigma));
    for (int k = 0; k < op.d(); ++k) {
      const WalkState psi = magnetic_eigenstate(op, sigma, pairs.vectors.col(k));
      const Complex lambda = pairs.values[static_cast<std::size_t>(k)];
      CHECK(std::abs(std::abs(lambda) - 1.0) <= 1e-12);
      CHECK((step(op, psi).vector - lambda * psi.vector).norm() <= 1e-12);
    }
  }
}

TEST_CASE("n=0 intertwining gives diag(-C_0, +C_0)") {
  DenseMatrix c(1, 1);
  c << std::polar(1.0, 0.6);
  const CoinSystem cs(0, {c});
  const MagneticPotential nu({1.1});
  const DenseMatrix w = evolution_operator(nu, cs).dense();
  const DenseMatrix b = magnetic_basis_change(nu);
  const DenseMatrix conj = b.adjoint() * w * b;
  CHECK(std::abs(conj(0, 0) + c(0, 0)) <= 1e-15);
  CHECK(std::abs(conj(1, 1) - c(0, 0)) <= 1e-15);
  CHECK(std::abs(conj(0, 1)) <= 1e-15);
  CHECK(std::abs(conj(1, 0)) <= 1e-15);
}

TEST_CASE("conjugating by the magnetic basis block-diagonalises the walk") {
  testing::Gen gen(48);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(0, 3);
    const WalkOperator op = evolution_operator(gen.potential(n), gen.coins(n, 6));
    const IntertwiningReport report = intertwining_check(op);
    CHECK(report.dense_checked);
    CHECK(report.max_residual <= kCompositeTol);
    CHECK(report.off_block <= kCompositeTol);
    CHECK(report.block_deviation <= kCompositeTol);

    const DenseMatrix lift = testing::kron(magnetic_basis_change(op.potential()),
                                           DenseMatrix::Identity(op.d(), op.d()));
    const DenseMatrix conj = lift.adjoint() * op.dense() * lift;
    for (std::uint32_t s = 0; s < op.positions(); ++s) {
      const auto at = static_cast<Eigen::Index>(s) * op.d();
      CHECK((conj.block(at, at, op.d(), op.d()) - algebraic_sum(op.coins(), Subset{s}))
                .cwiseAbs()
                .maxCoeff() <= kCompositeTol);
    }
  }
  const WalkOperator h = evolution_operator(MagneticPotential({0.3, -2.0}), hadamard_partition_coin());
  CHECK(intertwining_check(h).max_residual <= 1e-12);
}

TEST_CASE("dense materialisation respects the capacity guard") {
  const WalkOperator op = evolution_operator(MagneticPotential::null(11), grover_coin_system(11));
  CHECK_THROWS_AS(op.dense(), CapacityError);
}
