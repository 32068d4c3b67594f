#include "sandpile/critical_group.hpp"

#include "sandpile/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace sandpile {

Index ElementaryDivisorProfile::multiplicity(int i) const {
  auto it = multiplicities.find(i);
  return it == multiplicities.end() ? 0 : it->second;
}

void ElementaryDivisorProfile::set(int i, Index count) {
  if (i < 0 || count < 0) throw std::invalid_argument("ElementaryDivisorProfile: negative index or count");
  if (count == 0) multiplicities.erase(i);
  else multiplicities[i] = count;
}

int ElementaryDivisorProfile::max_exponent() const {
  return multiplicities.empty() ? 0 : multiplicities.rbegin()->first;
}

Index ElementaryDivisorProfile::torsion_count() const {
  Index total = 0;
  for (const auto& [i, e] : multiplicities)
    if (i > 0) total += e;
  return total;
}

Index ElementaryDivisorProfile::total() const {
  Index total = 0;
  for (const auto& [i, e] : multiplicities) total += e;
  return total;
}

long long ElementaryDivisorProfile::weighted_sum() const {
  long long total = 0;
  for (const auto& [i, e] : multiplicities) total += static_cast<long long>(i) * e;
  return total;
}

std::ostream& operator<<(std::ostream& os, const ElementaryDivisorProfile& p) {
  os << "p=" << p.prime << " {";
  bool first = true;
  for (const auto& [i, e] : p.multiplicities) {
    os << (first ? "" : ", ") << "e_" << i << '=' << e;
    first = false;
  }
  return os << "} kernel_rank=" << p.kernel_rank;
}

AbelianGroupDecomposition critical_group(const BigIntMatrix& laplacian) { return cokernel(laplacian); }

BigInt spanning_tree_count(const BigIntMatrix& laplacian, Index deleted) {
  const Index v = laplacian.rows();
  if (v != laplacian.cols()) throw ShapeError("spanning_tree_count: Laplacian must be square");
  if (v == 0) return BigInt(0);
  if (deleted < 0 || deleted >= v) throw std::out_of_range("spanning_tree_count: deleted index out of range");
  BigIntMatrix minor(v - 1, v - 1);
  for (Index i = 0, r = 0; i < v; ++i) {
    if (i == deleted) continue;
    for (Index j = 0, c = 0; j < v; ++j) {
      if (j == deleted) continue;
      minor(r, c++) = laplacian(i, j);
    }
    ++r;
  }
  return determinant(std::move(minor));
}

BigInt spanning_tree_count(const Graph& g) { return spanning_tree_count(laplacian_matrix(g)); }

ElementaryDivisorProfile p_elementary_divisors(const SmithDecomposition<BigInt>& snf, Prime p) {
  require_prime(p, "p_elementary_divisors");
  ElementaryDivisorProfile out;
  out.prime = p;
  for (Index i = 0; i < snf.rank; ++i) {
    const int v = valuation(snf.diagonal[std::size_t(i)], p);
    out.multiplicities[v] += 1;
  }
  out.kernel_rank = snf.cols - snf.rank;
  return out;
}

ElementaryDivisorProfile p_elementary_divisors(const BigIntMatrix& m, Prime p) {
  require_prime(p, "p_elementary_divisors");
  return p_elementary_divisors(smith_normal_form(m), p);
}

MbarFiltration mbar_filtration(const BigIntMatrix& m, Prime p, int i_max) {
  require_prime(p, "mbar_filtration");
  if (i_max < 1) throw std::invalid_argument("mbar_filtration: i_max must be at least 1");
  MbarFiltration out;
  out.prime = p;
  out.dims.reserve(std::size_t(i_max) + 1);
  out.dims.push_back(m.cols());
  for (int i = 1; i <= i_max; ++i) out.dims.push_back(kernel_dimension_mod(m, p, i));
  out.kernel_dim = m.cols() - rank(m);
  return out;
}

bool verify_mdim_identity(const ElementaryDivisorProfile& profile, const MbarFiltration& filt) {
  if (profile.prime != filt.prime) {
    throw std::invalid_argument("verify_mdim_identity: profile is for p=" + std::to_string(profile.prime) +
                                " but filtration is for p=" + std::to_string(filt.prime));
  }
  for (int i = 0; i <= filt.i_max(); ++i) {
    Index tail = 0;
    for (const auto& [j, e] : profile.multiplicities)
      if (j >= i) tail += e;
    if (filt.dims[std::size_t(i)] != filt.kernel_dim + tail) return false;
  }
  return true;
}

bool verify_eigenspace_bound(int n, Prime p, long long u, Index b, const MbarFiltration& filt) {
  if (filt.prime != p) throw std::invalid_argument("verify_eigenspace_bound: filtration prime mismatch");
  const long long vertices = static_cast<long long>(n) * (n - 1) / 2;
  if (filt.dims.empty() || filt.dims.front() != vertices) {
    throw ShapeError("verify_eigenspace_bound: filtration does not belong to KG(" + std::to_string(n) + ",2)");
  }
  const int a = valuation(u, p);
  if (a > filt.i_max()) {
    throw std::out_of_range("verify_eigenspace_bound: v_p(u) = " + std::to_string(a) +
                            " exceeds the filtration depth " + std::to_string(filt.i_max()));
  }
  return filt.dims[std::size_t(a)] >= b;
}

std::vector<BigInt> regroup_elementary_divisors(std::span<const ElementaryDivisorProfile> profiles) {
  // Largest invariant factor takes the largest power of every prime, and so on.
  std::size_t length = 0;
  std::vector<std::vector<int>> exponents;
  for (const auto& prof : profiles) {
    std::vector<int> ex;
    for (const auto& [i, e] : prof.multiplicities)
      if (i > 0) ex.insert(ex.end(), std::size_t(e), i);
    std::sort(ex.rbegin(), ex.rend());
    length = std::max(length, ex.size());
    exponents.push_back(std::move(ex));
  }
  std::vector<BigInt> factors(length, BigInt(1));
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const BigInt p(profiles[k].prime);
    for (std::size_t t = 0; t < exponents[k].size(); ++t) factors[t] *= ipow(p, exponents[k][t]);
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

}  // namespace sandpile
