#pragma once

#include "sandpile/matrix.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace sandpile {

template <typename Scalar>
struct UnimodularPair {
  Matrix<Scalar> left;   // U, rows x rows
  Matrix<Scalar> right;  // V, cols x cols
};

/// Result of reducing M to Smith normal form S = U * M * V.
///
/// `diagonal` holds s_11 .. s_kk with k = min(rows, cols). All entries are
/// nonnegative, the first `rank` are nonzero and form a divisibility chain,
/// the rest are zero.
template <typename Scalar>
struct SmithDecomposition {
  Index rows = 0;
  Index cols = 0;
  std::vector<Scalar> diagonal;
  Index rank = 0;
  std::optional<UnimodularPair<Scalar>> transforms;

  Matrix<Scalar> diagonal_matrix() const {
    Matrix<Scalar> s = Matrix<Scalar>::Zero(rows, cols);
    for (std::size_t i = 0; i < diagonal.size(); ++i) s(Index(i), Index(i)) = diagonal[i];
    return s;
  }
};

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

// Locates the nonzero entry of minimal absolute value in a(t:, t:).
template <typename Scalar>
bool find_min_pivot(const Matrix<Scalar>& a, Index t, Index& pi, Index& pj) {
  bool found = false;
  Scalar best;
  for (Index j = t; j < a.cols(); ++j) {
    for (Index i = t; i < a.rows(); ++i) {
      if (a(i, j) == 0) continue;
      Scalar v = abs_value(a(i, j));
      if (!found || v < best) {
        best = std::move(v);
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  }
  return found;
}

}  // namespace detail

/// Smith normal form by gcd-driven elimination.
///
/// Each step moves the smallest nonzero entry of the trailing submatrix to the
/// pivot position and clears its row and column by Euclidean division. If a
/// remainder survives, a smaller pivot exists and the step repeats. Once the
/// pivot row and column are clear, any trailing entry not divisible by the
/// pivot is folded into the pivot row, which forces a smaller pivot on the next
/// sweep. When `want_transforms` is set the row and column operations are
/// mirrored into U and V so that U * M * V = S exactly.
template <typename Scalar>
SmithDecomposition<Scalar> smith_normal_form(Matrix<Scalar> a, bool want_transforms = false) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index k = std::min(m, n);

  Matrix<Scalar> u, v;
  if (want_transforms) {
    u = Matrix<Scalar>::Identity(m, m);
    v = Matrix<Scalar>::Identity(n, n);
  }

  Index rank = 0;
  for (Index t = 0; t < k; ++t) {
    Index pi = t, pj = t;
    if (!detail::find_min_pivot(a, t, pi, pj)) break;

    for (;;) {
      if (pi != t) {
        a.row(t).swap(a.row(pi));
        if (want_transforms) u.row(t).swap(u.row(pi));
      }
      if (pj != t) {
        a.col(t).swap(a.col(pj));
        if (want_transforms) v.col(t).swap(v.col(pj));
      }
      const Scalar pivot = a(t, t);
      const Index tail = n - t;
      bool clean = true;

      for (Index i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        const Scalar q = a(i, t) / pivot;
        if (q != 0) {
          a.row(i).tail(tail) -= q * a.row(t).tail(tail);
          if (want_transforms) u.row(i) -= q * u.row(t);
        }
        if (a(i, t) != 0) clean = false;
      }
      const Index tail_rows = m - t;
      for (Index j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        const Scalar q = a(t, j) / pivot;
        if (q != 0) {
          a.col(j).tail(tail_rows) -= q * a.col(t).tail(tail_rows);
          if (want_transforms) v.col(j) -= q * v.col(t);
        }
        if (a(t, j) != 0) clean = false;
      }

      if (!clean) {
        detail::find_min_pivot(a, t, pi, pj);
        continue;
      }

      // Row t and column t are clear; enforce that the pivot divides the rest.
      Index bad_row = -1;
      for (Index j = t + 1; j < n && bad_row < 0; ++j)
        for (Index i = t + 1; i < m; ++i)
          if (a(i, j) % pivot != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;

      a.row(t).tail(tail) += a.row(bad_row).tail(tail);
      if (want_transforms) u.row(t) += u.row(bad_row);
      pi = t;
      pj = t;
    }

    if (a(t, t) < 0) {
      a(t, t) = -a(t, t);
      if (want_transforms) u.row(t) = -u.row(t);
    }
    ++rank;
  }

  SmithDecomposition<Scalar> out;
  out.rows = m;
  out.cols = n;
  out.rank = rank;
  out.diagonal.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) out.diagonal.push_back(i < rank ? a(i, i) : Scalar(0));
  if (want_transforms) out.transforms = UnimodularPair<Scalar>{std::move(u), std::move(v)};
  return out;
}

/// Cyclic decomposition of a finitely generated abelian group:
/// Z/d_1 + ... + Z/d_t + Z^free_rank with 1 < d_1 | d_2 | ... | d_t.
struct AbelianGroupDecomposition {
  std::vector<BigInt> invariant_factors;
  Index free_rank = 0;

  /// Order of the torsion part.
  BigInt torsion_order() const;
  bool is_trivial_torsion() const { return invariant_factors.empty(); }

  friend bool operator==(const AbelianGroupDecomposition&, const AbelianGroupDecomposition&) = default;
};

std::ostream& operator<<(std::ostream& os, const AbelianGroupDecomposition& g);

/// Drops unit factors and checks the divisibility chain. Throws
/// std::invalid_argument if the remaining factors are not a chain.
std::vector<BigInt> normalize_invariant_factors(std::vector<BigInt> factors);

bool is_divisibility_chain(const std::vector<BigInt>& factors);

/// Z^rows / im(M).
AbelianGroupDecomposition cokernel(const BigIntMatrix& m);
AbelianGroupDecomposition cokernel(const SmithDecomposition<BigInt>& snf);

/// Checks U * M * V = S and |det U| = |det V| = 1.
bool certify_smith(const BigIntMatrix& m, const SmithDecomposition<BigInt>& snf);

}  // namespace sandpile
