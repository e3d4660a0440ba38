#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace mqw {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

// Construction-exact identities (CAR, involutions) versus identities that
// involve products of up to n+1 operators (Gram matrices, eigen-relations).
inline constexpr double kConstructTol = 1e-12;
inline constexpr double kCompositeTol = 1e-10;
inline constexpr double kSpectrumTol = 1e-8;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset of {0,...,n} stored as a bit mask. Doubles as a hypercube vertex
/// and as the index of the Fock basis vector attached to it.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  static constexpr Subset empty() { return Subset{}; }
  static constexpr Subset singleton(int j) { return Subset{1u << j}; }
  /// The full set {0,...,n}.
  static constexpr Subset full(int n) { return Subset{(1u << (n + 1)) - 1u}; }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr std::size_t index() const { return bits_; }
  constexpr bool contains(int j) const { return (bits_ >> j) & 1u; }
  int size() const;

  constexpr Subset with(int j) const { return Subset{bits_ | (1u << j)}; }
  constexpr Subset without(int j) const { return Subset{bits_ & ~(1u << j)}; }
  constexpr Subset toggled(int j) const { return Subset{bits_ ^ (1u << j)}; }
  constexpr Subset symmetric_difference(Subset o) const { return Subset{bits_ ^ o.bits_}; }
  constexpr Subset minus(Subset o) const { return Subset{bits_ & ~o.bits_}; }
  constexpr Subset complement(int n) const { return Subset{full(n).bits_ & ~bits_}; }

  /// Sign +1 if j is in the set, -1 otherwise.
  constexpr int sign(int j) const { return contains(j) ? 1 : -1; }

  bool adjacent(Subset o) const;
  bool fits(int n) const { return bits_ < (1u << (n + 1)); }

  std::string to_string() const;

  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset, Subset) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Number of vertices of the (n+1)-cube, i.e. dim h_n.
constexpr std::size_t vertex_count(int n) { return std::size_t{1} << (n + 1); }

void require_order(int n, int max_n = 24);
void require_direction(int n, int j);
void require_subset(int n, Subset s);

double max_abs(const DenseMatrix& m);
double max_abs(const SparseMatrix& m);
/// ||A* A - I||_max combined with ||A A* - I||_max.
double unitarity_residual(const DenseMatrix& a);

}  // namespace mqw
