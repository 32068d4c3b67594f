#pragma once

#include "sandpile/graph.hpp"
#include "sandpile/number_theory.hpp"
#include "sandpile/smith.hpp"

#include <map>
#include <ostream>
#include <span>
#include <vector>

namespace sandpile {

/// p-part of the Smith normal form: e_i counts the diagonal entries with
/// p-adic valuation exactly i; `kernel_rank` is the rank of the free part.
/// Only nonzero multiplicities are stored.
struct ElementaryDivisorProfile {
  Prime prime = 2;
  std::map<int, Index> multiplicities;
  Index kernel_rank = 0;

  Index multiplicity(int i) const;
  void set(int i, Index count);
  int max_exponent() const;
  Index torsion_count() const;  // sum of e_i over i >= 1
  Index total() const;          // sum of all e_i, including e_0
  long long weighted_sum() const;  // sum of i * e_i

  friend bool operator==(const ElementaryDivisorProfile&, const ElementaryDivisorProfile&) = default;
};

std::ostream& operator<<(std::ostream& os, const ElementaryDivisorProfile& p);

/// dims[i] = dim_F of the reduction mod p of {x : p^i | M x}, i = 0..i_max.
struct MbarFiltration {
  Prime prime = 2;
  std::vector<Index> dims;
  Index kernel_dim = 0;

  int i_max() const { return static_cast<int>(dims.size()) - 1; }
};

/// Torsion subgroup of Z^V / im(L) together with the free rank.
AbelianGroupDecomposition critical_group(const BigIntMatrix& laplacian);

/// Matrix-Tree count: determinant of L with the first row and column deleted.
BigInt spanning_tree_count(const Graph& g);
BigInt spanning_tree_count(const BigIntMatrix& laplacian, Index deleted = 0);

ElementaryDivisorProfile p_elementary_divisors(const BigIntMatrix& m, Prime p);
ElementaryDivisorProfile p_elementary_divisors(const SmithDecomposition<BigInt>& snf, Prime p);

/// Filtration computed through Z/p^i row reduction, independent of the
/// Smith normal form. kernel_dim is cols - rank(M) over Q, the dimension of
/// the reduction of the (pure) rational kernel.
MbarFiltration mbar_filtration(const BigIntMatrix& m, Prime p, int i_max);

/// dims[i] = kernel_dim + sum_{j >= i} e_j for every i in the filtration.
/// Throws std::invalid_argument if the primes differ.
bool verify_mdim_identity(const ElementaryDivisorProfile& profile, const MbarFiltration& filt);

/// An integral eigenvalue u of KG(n,2)'s Laplacian with eigenspace of
/// dimension b forces dims[v_p(u)] >= b. Throws std::out_of_range when the
/// filtration is too short to witness v_p(u).
bool verify_eigenspace_bound(int n, Prime p, long long u, Index b, const MbarFiltration& filt);

/// Reassembles per-prime elementary divisors into an ascending invariant
/// factor chain (unit factors dropped).
std::vector<BigInt> regroup_elementary_divisors(std::span<const ElementaryDivisorProfile> profiles);

}  // namespace sandpile
