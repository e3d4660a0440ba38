#include "mqw/types.hpp"

#include <bit>

namespace mqw {

int Subset::size() const { return std::popcount(bits_); }

bool Subset::adjacent(Subset o) const { return std::popcount(bits_ ^ o.bits_) == 1; }

std::string Subset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int j = 0; j < 32; ++j) {
    if (!contains(j)) continue;
    if (!first) out += ",";
    out += std::to_string(j);
    first = false;
  }
  return out + "}";
}

void require_order(int n, int max_n) {
  if (n < 0 || n > max_n) {
    throw ArgumentError("n must lie in [0, " + std::to_string(max_n) + "], got " +
                        std::to_string(n));
  }
}

void require_direction(int n, int j) {
  require_order(n);
  if (j < 0 || j > n) {
    throw ArgumentError("direction " + std::to_string(j) + " outside 0.." + std::to_string(n));
  }
}

void require_subset(int n, Subset s) {
  require_order(n);
  if (!s.fits(n)) {
    throw ArgumentError("subset mask " + std::to_string(s.bits()) + " is not contained in {0.." +
                        std::to_string(n) + "}");
  }
}

double max_abs(const DenseMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

double unitarity_residual(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("unitarity check needs a square matrix");
  const auto id = DenseMatrix::Identity(a.rows(), a.cols());
  return std::max(max_abs(DenseMatrix(a.adjoint() * a - id)),
                  max_abs(DenseMatrix(a * a.adjoint() - id)));
}

}  // namespace mqw
