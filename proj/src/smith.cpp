#include "sandpile/smith.hpp"

#include <stdexcept>

namespace sandpile {

BigInt AbelianGroupDecomposition::torsion_order() const {
  BigInt order(1);
  for (const auto& d : invariant_factors) order *= d;
  return order;
}

std::ostream& operator<<(std::ostream& os, const AbelianGroupDecomposition& g) {
  os << '[';
  for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
    if (i) os << ", ";
    os << g.invariant_factors[i];
  }
  return os << "] + Z^" << g.free_rank;
}

bool is_divisibility_chain(const std::vector<BigInt>& factors) {
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i] == 0 || factors[i + 1] % factors[i] != 0) return false;
  }
  return true;
}

std::vector<BigInt> normalize_invariant_factors(std::vector<BigInt> factors) {
  std::vector<BigInt> out;
  out.reserve(factors.size());
  for (auto& d : factors) {
    if (d < 0) d = -d;
    if (d != 1) out.push_back(std::move(d));
  }
  if (!is_divisibility_chain(out)) {
    throw std::invalid_argument("normalize_invariant_factors: factors do not form a divisibility chain");
  }
  return out;
}

AbelianGroupDecomposition cokernel(const SmithDecomposition<BigInt>& snf) {
  AbelianGroupDecomposition g;
  for (Index i = 0; i < snf.rank; ++i) {
    const auto& d = snf.diagonal[static_cast<std::size_t>(i)];
    if (d > 1) g.invariant_factors.push_back(d);
  }
  g.free_rank = snf.rows - snf.rank;
  return g;
}

AbelianGroupDecomposition cokernel(const BigIntMatrix& m) { return cokernel(smith_normal_form(m)); }

bool certify_smith(const BigIntMatrix& m, const SmithDecomposition<BigInt>& snf) {
  if (!snf.transforms) return false;
  const auto& [u, v] = *snf.transforms;
  if (u.rows() != m.rows() || v.rows() != m.cols()) return false;
  const BigIntMatrix product = u * m * v;
  if (product != snf.diagonal_matrix()) return false;
  const BigInt du = determinant(u);
  const BigInt dv = determinant(v);
  return abs(du) == 1 && abs(dv) == 1;
}

}  // namespace sandpile
