#pragma once

// Dense exact integer matrices.
//
// Every matrix in this library is an Eigen dense matrix templated on its
// scalar. The default scalar is an arbitrary-precision integer (GMP backed);
// fixed-width integers are used where bounds are known to be small, e.g. the
// structural identity checks on Kneser adjacency matrices.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

namespace sandpile {

using BigInt = boost::multiprecision::mpz_int;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using BigIntMatrix = Matrix<BigInt>;

/// Raised when an operation receives a matrix of the wrong dimensions.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds a matrix from nested row lists, e.g. `make_matrix<BigInt>({{2, 4}, {6, 8}})`.
template <typename Scalar = BigInt>
Matrix<Scalar> make_matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Matrix<Scalar> out(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) throw ShapeError("make_matrix: ragged row list");
    Index j = 0;
    for (long long v : row) out(i, j++) = Scalar(v);
    ++i;
  }
  return out;
}

/// Square diagonal matrix with the given entries.
template <typename Scalar = BigInt>
Matrix<Scalar> make_diagonal(std::initializer_list<long long> entries) {
  const Index n = static_cast<Index>(entries.size());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  Index i = 0;
  for (long long v : entries) {
    out(i, i) = Scalar(v);
    ++i;
  }
  return out;
}

template <typename To, typename From>
Matrix<To> cast_matrix(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = static_cast<To>(m(i, j));
  return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination. The empty matrix
/// has determinant 1.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("determinant: matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected square");
  }
  const Index n = a.rows();
  if (n == 0) return Scalar(1);
  Scalar previous(1);
  bool negate = false;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index pivot = k + 1;
      while (pivot < n && a(pivot, k) == 0) ++pivot;
      if (pivot == n) return Scalar(0);
      a.row(k).swap(a.row(pivot));
      negate = !negate;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = Scalar(a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  Scalar det = a(n - 1, n - 1);
  return negate ? Scalar(-det) : det;
}

/// Rank over the rationals by fraction-free row echelon reduction.
template <typename Scalar>
Index rank(Matrix<Scalar> a) {
  const Index m = a.rows();
  const Index n = a.cols();
  Scalar previous(1);
  Index r = 0;
  for (Index c = 0; c < n && r < m; ++c) {
    Index pivot = r;
    while (pivot < m && a(pivot, c) == 0) ++pivot;
    if (pivot == m) continue;
    if (pivot != r) a.row(r).swap(a.row(pivot));
    for (Index i = r + 1; i < m; ++i) {
      for (Index j = c + 1; j < n; ++j) {
        a(i, j) = Scalar(a(i, j) * a(r, c) - a(i, c) * a(r, j)) / previous;
      }
      a(i, c) = 0;
    }
    previous = a(r, c);
    ++r;
  }
  return r;
}

/// Conjugates a square matrix by a permutation: out(i, j) = m(perm[i], perm[j]).
template <typename Scalar, typename Permutation>
Matrix<Scalar> permute_symmetric(const Matrix<Scalar>& m, const Permutation& perm) {
  if (m.rows() != m.cols() || static_cast<Index>(perm.size()) != m.rows()) {
    throw ShapeError("permute_symmetric: permutation does not match matrix size");
  }
  Matrix<Scalar> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out(i, j) = m(static_cast<Index>(perm[i]), static_cast<Index>(perm[j]));
  return out;
}

}  // namespace sandpile
