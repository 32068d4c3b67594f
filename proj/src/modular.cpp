#include "sandpile/modular.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace sandpile {
namespace {

using Row = std::vector<std::int64_t>;

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

std::int64_t sub_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  std::int64_t d = a - b;
  return d < 0 ? d + q : d;
}

// Inverse of a unit modulo q by the extended Euclidean algorithm.
std::int64_t inverse_mod(std::int64_t a, std::int64_t q) {
  std::int64_t r0 = q, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t quot = r0 / r1;
    std::int64_t tmp = r0 - quot * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - quot * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) throw std::logic_error("inverse_mod: argument is not a unit");
  return t0 < 0 ? t0 + q : t0;
}

struct LocalRing {
  std::int64_t p;
  int e;
  std::int64_t q;

  int val(std::int64_t x) const {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
  std::int64_t power(int v) const {
    std::int64_t r = 1;
    for (int i = 0; i < v; ++i) r *= p;
    return r;
  }
  // row_a -= c * row_b over the columns [from, end)
  void axpy(Row& a, std::int64_t c, const Row& b, std::size_t from) const {
    if (c == 0) return;
    for (std::size_t j = from; j < a.size(); ++j) a[j] = sub_mod(a[j], mul_mod(c, b[j], q), q);
  }
  void scale(Row& a, std::int64_t c) const {
    for (auto& x : a) x = mul_mod(c, x, q);
  }
};

bool is_zero(const Row& r) {
  for (auto x : r)
    if (x != 0) return false;
  return true;
}

}  // namespace

ResidueMatrix reduce_mod(const BigIntMatrix& m, Prime p, int exponent) {
  require_prime(p, "reduce_mod");
  if (exponent < 1) throw std::invalid_argument("reduce_mod: exponent must be at least 1");
  BigInt q = ipow(BigInt(p), exponent);
  if (q > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw std::out_of_range("reduce_mod: p^e exceeds the supported residue range");
  }
  ResidueMatrix out;
  out.prime = p;
  out.exponent = exponent;
  out.modulus = q.convert_to<std::int64_t>();
  out.entries.resize(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      BigInt r = m(i, j) % q;
      if (r < 0) r += q;
      out.entries(i, j) = r.convert_to<std::int64_t>();
    }
  }
  return out;
}

ResidueMatrix howell_form(const ResidueMatrix& a) {
  const LocalRing ring{static_cast<std::int64_t>(a.prime), a.exponent, a.modulus};
  const Index cols = a.entries.cols();

  std::vector<Row> work;
  work.reserve(static_cast<std::size_t>(a.entries.rows()));
  for (Index i = 0; i < a.entries.rows(); ++i) {
    Row r(static_cast<std::size_t>(cols));
    for (Index j = 0; j < cols; ++j) r[static_cast<std::size_t>(j)] = a.entries(i, j);
    if (!is_zero(r)) work.push_back(std::move(r));
  }

  std::vector<Row> pivots;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < static_cast<std::size_t>(cols) && !work.empty(); ++c) {
    std::size_t best = work.size();
    int best_val = ring.e;
    for (std::size_t i = 0; i < work.size(); ++i) {
      const int v = ring.val(work[i][c]);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == work.size()) continue;

    Row pivot = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));

    // Normalize the pivot entry to exactly p^v.
    const std::int64_t pv = ring.power(best_val);
    ring.scale(pivot, inverse_mod(pivot[c] / pv, ring.q));

    for (auto& r : work) ring.axpy(r, r[c] / pv, pivot, c);

    // Annihilator row: p^(e-v) * pivot vanishes at c but may not elsewhere.
    if (best_val > 0) {
      Row ann = pivot;
      ring.scale(ann, ring.power(ring.e - best_val));
      if (!is_zero(ann)) work.push_back(std::move(ann));
    }

    for (std::size_t k = 0; k < pivots.size(); ++k) ring.axpy(pivots[k], pivots[k][c] / pv, pivot, c);

    std::erase_if(work, is_zero);
    pivots.push_back(std::move(pivot));
    pivot_cols.push_back(c);
  }

  ResidueMatrix out;
  out.prime = a.prime;
  out.exponent = a.exponent;
  out.modulus = a.modulus;
  out.entries.resize(static_cast<Index>(pivots.size()), cols);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (Index j = 0; j < cols; ++j) out.entries(Index(i), j) = pivots[i][static_cast<std::size_t>(j)];
  return out;
}

Index rank_mod_p(const Matrix<std::int64_t>& a, Prime p) {
  require_prime(p, "rank_mod_p");
  const auto q = static_cast<std::int64_t>(p);
  Matrix<std::int64_t> w = a.unaryExpr([q](std::int64_t x) { return ((x % q) + q) % q; });
  const Index m = w.rows();
  const Index n = w.cols();
  Index r = 0;
  for (Index c = 0; c < n && r < m; ++c) {
    Index pivot = r;
    while (pivot < m && w(pivot, c) == 0) ++pivot;
    if (pivot == m) continue;
    if (pivot != r) w.row(r).swap(w.row(pivot));
    const std::int64_t inv = inverse_mod(w(r, c), q);
    for (Index j = c; j < n; ++j) w(r, j) = mul_mod(w(r, j), inv, q);
    for (Index i = r + 1; i < m; ++i) {
      const std::int64_t f = w(i, c);
      if (f == 0) continue;
      for (Index j = c; j < n; ++j) w(i, j) = sub_mod(w(i, j), mul_mod(f, w(r, j), q), q);
    }
    ++r;
  }
  return r;
}

Index kernel_dimension_mod(const BigIntMatrix& m, Prime p, int exponent) {
  const ResidueMatrix reduced = reduce_mod(m, p, exponent);
  const Index rows = m.rows();
  const Index cols = m.cols();

  // Row x of [M^T | I] records the image M e_x next to e_x itself.
  ResidueMatrix augmented;
  augmented.prime = reduced.prime;
  augmented.exponent = reduced.exponent;
  augmented.modulus = reduced.modulus;
  augmented.entries = Matrix<std::int64_t>::Zero(cols, rows + cols);
  augmented.entries.leftCols(rows) = reduced.entries.transpose();
  augmented.entries.rightCols(cols).setIdentity();

  const ResidueMatrix h = howell_form(augmented);

  std::vector<Index> solution_rows;
  for (Index i = 0; i < h.entries.rows(); ++i) {
    if ((h.entries.row(i).head(rows).array() == 0).all()) solution_rows.push_back(i);
  }
  Matrix<std::int64_t> solutions(static_cast<Index>(solution_rows.size()), cols);
  for (std::size_t k = 0; k < solution_rows.size(); ++k)
    solutions.row(Index(k)) = h.entries.row(solution_rows[k]).tail(cols);
  return rank_mod_p(solutions, p);
}

}  // namespace sandpile
