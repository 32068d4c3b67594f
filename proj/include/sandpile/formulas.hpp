#pragma once

// Closed forms for the critical group of the Kneser graph KG(n,2), n >= 5.

#include "sandpile/critical_group.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace sandpile {

/// Laplacian spectrum of KG(n,2): r with multiplicity f, s with
/// multiplicity g, and 0 once.
struct SpectralData {
  long long r = 0;
  long long s = 0;
  long long f = 0;
  long long g = 0;
};

SpectralData spectral_data(int n);

/// n^(f-1) (n-1)^(g-1) (n-3)^f (n-4)^g / 2^(f+g-1).
BigInt critical_group_order(int n);

/// v_p of critical_group_order(n), from the valuations of n, n-1, n-3, n-4.
long long order_valuation(int n, Prime p);

/// Primes dividing critical_group_order(n), ascending.
std::vector<Prime> order_primes(int n);

/// (L - rI)(L - sI) = mu J.
bool laplacian_identity_holds(const Matrix<long long>& laplacian, long long r, long long s, long long mu);
bool verify_laplacian_identity(int n);

enum class Branch {
  case1a, case1b, case1c, case1d,
  case2a, case2b, case2c, case2d, case2e, case2f,
  case3a, case3b, case3c, case3d_i, case3d_ii, case3d_iii,
};

/// "Case 1a" ... "Case 3 d-iii".
std::string_view branch_label(Branch b);

struct BranchSelection {
  Branch branch;
  std::optional<int> a;  // the exponent named by the branch, if it has one
};

/// Picks the unique case-analysis arm for (n, p) from the valuations of
/// n, n-1, n-3, n-4. Throws std::invalid_argument when p does not divide the
/// order (except p = 2, n = 2 mod 4, which is its own arm) and
/// std::logic_error if no arm or more than one arm fires, or if the
/// impossible 2-adic arm is reached.
BranchSelection select_branch(int n, Prime p);

/// Hypotheses of the Grassmann-style counting lemma: indices
/// 0 < a_1 < ... < a_h, bounds b_1 > ... > b_h with dim M_{a_j} >= b_j, and
/// the target d = v_p(order). b_{h+1} is `kernel_dim`.
struct GrassmannHypothesis {
  Prime prime = 2;
  std::vector<int> indices;
  std::vector<Index> bounds;
  long long d = 0;
  Index total_dim = 0;
  Index kernel_dim = 1;
};

/// Branch parameters (a_j, b_j, d) for KG(n,2) at p, as used to prove each
/// arm of the case analysis.
GrassmannHypothesis branch_hypothesis(int n, Prime p);

/// e_{a_j} = b_j - b_{j+1}, e_0 = total_dim - b_1, all else 0. Throws
/// std::invalid_argument if the sequences are malformed or
/// sum (b_j - b_{j+1}) a_j != d.
ElementaryDivisorProfile grassmann_conclusion(const GrassmannHypothesis& hyp);

/// Elementary divisor table of the selected arm, written out per arm.
/// kernel_rank is 1.
ElementaryDivisorProfile predicted_elementary_divisors(int n, Prime p);

/// e_0 = f + g: the profile of a prime not dividing the order.
ElementaryDivisorProfile trivial_profile(int n, Prime p);

enum class Parity { odd, even };

/// Closed form of K(KG(n,2)): cyclic factors with multiplicities in the
/// stated order, before unit factors are dropped.
struct PredictedGroup {
  std::vector<std::pair<BigInt, long long>> factors;
  Parity parity = Parity::odd;

  /// Expanded invariant factor chain with factors equal to 1 removed.
  std::vector<BigInt> normalized() const;
  BigInt order() const;
};

PredictedGroup predicted_critical_group(int n);

}  // namespace sandpile
