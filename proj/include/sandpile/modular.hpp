#pragma once

#include "sandpile/matrix.hpp"
#include "sandpile/number_theory.hpp"

#include <cstdint>

namespace sandpile {

/// Matrix over the residue ring Z/p^e, entries kept in [0, p^e).
struct ResidueMatrix {
  Prime prime = 2;
  int exponent = 1;
  std::int64_t modulus = 2;
  Matrix<std::int64_t> entries;
};

/// Reduces an integer matrix modulo p^e. Throws if p is not prime, e < 1, or
/// p^e does not fit comfortably in 62 bits.
ResidueMatrix reduce_mod(const BigIntMatrix& m, Prime p, int exponent);

/// Howell form of the row span of `a` over Z/p^e.
///
/// Rows are in echelon form; each pivot is a power p^v with v < e; entries
/// above a pivot p^v lie in [0, p^v); and for every column c, the rows whose
/// pivot lies at or right of c span every element of the row module that
/// vanishes on the columns before c. Zero rows are dropped.
ResidueMatrix howell_form(const ResidueMatrix& a);

/// F_p-rank of an integer matrix reduced mod p.
Index rank_mod_p(const Matrix<std::int64_t>& a, Prime p);

/// Dimension over F = Z/p of the reduction mod p of {x : M x = 0 mod p^e}.
///
/// Computed from the Howell form of [M^T | I]: the rows that vanish on the
/// M^T block span the solution module, and their identity block is reduced
/// mod p. Does not use the Smith normal form.
Index kernel_dimension_mod(const BigIntMatrix& m, Prime p, int exponent);

}  // namespace sandpile
