#include "sandpile/formulas.hpp"

#include "sandpile/graph.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace sandpile {
namespace {

void require_range(int n, const char* where) {
  if (n < 5) throw std::out_of_range(std::string(where) + ": closed forms require n >= 5, got " + std::to_string(n));
}

// Exact quotient; the closed forms only ever divide when divisibility holds.
BigInt exact_div(const BigInt& num, const BigInt& den) {
  if (num % den != 0) throw std::logic_error("closed form: inexact division");
  return num / den;
}

}  // namespace

SpectralData spectral_data(int n) {
  require_range(n, "spectral_data");
  const long long m = n;
  return {m * (m - 3) / 2, (m - 4) * (m - 1) / 2, m - 1, m * (m - 3) / 2};
}

BigInt critical_group_order(int n) {
  const auto sp = spectral_data(n);
  const BigInt numerator = ipow(BigInt(n), sp.f - 1) * ipow(BigInt(n - 1), sp.g - 1) *
                           ipow(BigInt(n - 3), sp.f) * ipow(BigInt(n - 4), sp.g);
  return exact_div(numerator, ipow(BigInt(2), sp.f + sp.g - 1));
}

long long order_valuation(int n, Prime p) {
  const auto sp = spectral_data(n);
  require_prime(p, "order_valuation");
  long long v = (sp.f - 1) * valuation(n, p) + (sp.g - 1) * valuation(n - 1, p) + sp.f * valuation(n - 3, p) +
                sp.g * valuation(n - 4, p);
  if (p == 2) v -= sp.f + sp.g - 1;
  return v;
}

std::vector<Prime> order_primes(int n) {
  require_range(n, "order_primes");
  std::vector<Prime> candidates;
  for (int m : {n, n - 1, n - 3, n - 4}) {
    for (Prime p : prime_divisors(static_cast<std::uint64_t>(m))) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase_if(candidates, [n](Prime p) { return order_valuation(n, p) == 0; });
  return candidates;
}

bool laplacian_identity_holds(const Matrix<long long>& laplacian, long long r, long long s, long long mu) {
  if (laplacian.rows() != laplacian.cols()) throw ShapeError("laplacian_identity_holds: Laplacian must be square");
  using M = Matrix<long long>;
  const Index v = laplacian.rows();
  const M id = M::Identity(v, v);
  const M lhs = (laplacian - r * id) * (laplacian - s * id);
  return lhs == M::Constant(v, v, mu);
}

bool verify_laplacian_identity(int n) {
  const auto sp = spectral_data(n);
  const auto prm = srg_parameters(n);
  return laplacian_identity_holds(laplacian_matrix<long long>(kneser_graph(n, 2)), sp.r, sp.s, prm.mu);
}

std::string_view branch_label(Branch b) {
  switch (b) {
    case Branch::case1a: return "Case 1a";
    case Branch::case1b: return "Case 1b";
    case Branch::case1c: return "Case 1c";
    case Branch::case1d: return "Case 1d";
    case Branch::case2a: return "Case 2a";
    case Branch::case2b: return "Case 2b";
    case Branch::case2c: return "Case 2c";
    case Branch::case2d: return "Case 2d";
    case Branch::case2e: return "Case 2e";
    case Branch::case2f: return "Case 2f";
    case Branch::case3a: return "Case 3a";
    case Branch::case3b: return "Case 3b";
    case Branch::case3c: return "Case 3c";
    case Branch::case3d_i: return "Case 3 d-i";
    case Branch::case3d_ii: return "Case 3 d-ii";
    case Branch::case3d_iii: return "Case 3 d-iii";
  }
  return "unknown";
}

BranchSelection select_branch(int n, Prime p) {
  require_range(n, "select_branch");
  require_prime(p, "select_branch");

  const int v0 = valuation(n, p);
  const int v1 = valuation(n - 1, p);
  const int v3 = valuation(n - 3, p);
  const int v4 = valuation(n - 4, p);

  struct Arm {
    bool fires;
    Branch branch;
    std::optional<int> a;
  };
  std::vector<Arm> arms;

  if (p > 3) {
    arms = {{v0 > 0, Branch::case1a, v0},
            {v1 > 0, Branch::case1b, v1},
            {v3 > 0, Branch::case1c, v3},
            {v4 > 0, Branch::case1d, v4}};
  } else if (p == 3) {
    arms = {{v1 > 1, Branch::case2a, v1},
            {v4 > 1, Branch::case2b, v4},
            {v1 == 1 && v4 == 1, Branch::case2c, std::nullopt},
            {v0 > 1, Branch::case2d, v0},
            {v3 > 1, Branch::case2e, v3},
            {v0 == 1 && v3 == 1, Branch::case2f, std::nullopt}};
  } else {
    arms = {{n % 4 == 3, Branch::case3a, v3},
            {n % 4 == 2, Branch::case3b, std::nullopt},
            {n % 4 == 1, Branch::case3c, v1},
            {n % 4 == 0 && v0 > 2, Branch::case3d_i, v0},
            {n % 4 == 0 && v4 > 2, Branch::case3d_ii, v4},
            {v0 == 2 && v4 == 2, Branch::case3d_iii, std::nullopt}};
  }

  const auto fired = std::count_if(arms.begin(), arms.end(), [](const Arm& a) { return a.fires; });
  if (fired == 0) {
    throw std::invalid_argument("select_branch: p=" + std::to_string(p) + " does not divide |K(KG(" +
                                std::to_string(n) + ",2))|");
  }
  if (fired > 1) {
    throw std::logic_error("select_branch: overlapping case arms for n=" + std::to_string(n) +
                           ", p=" + std::to_string(p));
  }
  const Arm& arm = *std::find_if(arms.begin(), arms.end(), [](const Arm& a) { return a.fires; });

  // Side conditions each arm relies on.
  bool consistent = true;
  switch (arm.branch) {
    case Branch::case2a: consistent = v4 == 1; break;
    case Branch::case2b: consistent = v1 == 1; break;
    case Branch::case2d: consistent = v3 == 1; break;
    case Branch::case2e: consistent = v0 == 1; break;
    case Branch::case3a: consistent = v3 > 1 && v1 == 1; break;
    case Branch::case3c: consistent = v1 > 1 && v3 == 1; break;
    case Branch::case3d_i: consistent = v4 == 2; break;
    case Branch::case3d_ii: consistent = v0 == 2; break;
    case Branch::case3d_iii:
      throw std::logic_error("select_branch: reached the impossible case v2(n) = v2(n-4) = 2 at n=" +
                             std::to_string(n));
    default: break;
  }
  if (!consistent) {
    throw std::logic_error("select_branch: side condition of " + std::string(branch_label(arm.branch)) +
                           " fails at n=" + std::to_string(n));
  }
  if (arm.branch != Branch::case3b && order_valuation(n, p) == 0) {
    throw std::logic_error("select_branch: arm fired for a prime not dividing the order");
  }
  return {arm.branch, arm.a};
}

GrassmannHypothesis branch_hypothesis(int n, Prime p) {
  const auto sel = select_branch(n, p);
  const auto sp = spectral_data(n);
  const long long f = sp.f, g = sp.g;
  const int a = sel.a.value_or(0);

  GrassmannHypothesis h;
  h.prime = p;
  h.total_dim = f + g + 1;
  h.kernel_dim = 1;
  auto set = [&h](std::vector<int> idx, std::vector<Index> bounds, long long d) {
    h.indices = std::move(idx);
    h.bounds = std::move(bounds);
    h.d = d;
  };

  switch (sel.branch) {
    case Branch::case1a: set({a}, {f}, a * (f - 1)); break;
    case Branch::case1b: set({a}, {g}, a * (g - 1)); break;
    case Branch::case1c: set({a}, {f + 1}, a * f); break;
    case Branch::case1d: set({a}, {g + 1}, a * g); break;
    case Branch::case2a: set({1, a + 1}, {g + 1, g}, a * (g - 1) + g); break;
    case Branch::case2b: set({a, a + 1}, {g + 1, g}, g - 1 + a * g); break;
    case Branch::case2c: set({1, 2}, {g + 1, g}, 2 * g - 1); break;
    case Branch::case2d: set({1, a + 1}, {f + 1, f}, a * f - a + f); break;
    case Branch::case2e: set({a, a + 1}, {f + 1, f}, f - 1 + a * f); break;
    case Branch::case2f: set({1, 2}, {f + 1, f}, 2 * f - 1); break;
    case Branch::case3a: set({a - 1}, {f + 1}, a * f - f); break;
    case Branch::case3b: set({}, {}, 0); break;
    case Branch::case3c: set({a - 1}, {g}, a * g - a - g + 1); break;
    case Branch::case3d_i: set({1, a}, {g + 1, f}, a * f - a + g - f + 1); break;
    case Branch::case3d_ii: set({a - 1, a}, {g + 1, f}, f - 1 + a * g - g); break;
    case Branch::case3d_iii: throw std::logic_error("branch_hypothesis: impossible case");
  }
  return h;
}

ElementaryDivisorProfile grassmann_conclusion(const GrassmannHypothesis& hyp) {
  const auto& a = hyp.indices;
  const auto& b = hyp.bounds;
  if (a.size() != b.size()) throw std::invalid_argument("grassmann_conclusion: index and bound lists differ in length");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] <= 0 || (j > 0 && a[j] <= a[j - 1])) {
      throw std::invalid_argument("grassmann_conclusion: indices must be positive and strictly increasing");
    }
    if (j > 0 && b[j] >= b[j - 1]) throw std::invalid_argument("grassmann_conclusion: bounds must strictly decrease");
    if (b[j] < hyp.kernel_dim) throw std::invalid_argument("grassmann_conclusion: bound below the kernel dimension");
  }
  if (!b.empty() && b.front() > hyp.total_dim) throw std::invalid_argument("grassmann_conclusion: bound exceeds dimension");

  auto next_bound = [&](std::size_t j) { return j + 1 < b.size() ? b[j + 1] : hyp.kernel_dim; };
  long long weighted = 0;
  for (std::size_t j = 0; j < a.size(); ++j) weighted += (b[j] - next_bound(j)) * static_cast<long long>(a[j]);
  if (weighted != hyp.d) {
    throw std::invalid_argument("grassmann_conclusion: inconsistent hypothesis, sum (b_j - b_{j+1}) a_j = " +
                                std::to_string(weighted) + " but d = " + std::to_string(hyp.d));
  }

  ElementaryDivisorProfile out;
  out.prime = hyp.prime;
  out.kernel_rank = hyp.kernel_dim;
  out.set(0, hyp.total_dim - (b.empty() ? hyp.kernel_dim : b.front()));
  for (std::size_t j = 0; j < a.size(); ++j) out.set(a[j], b[j] - next_bound(j));
  return out;
}

ElementaryDivisorProfile predicted_elementary_divisors(int n, Prime p) {
  const auto sel = select_branch(n, p);
  const auto sp = spectral_data(n);
  const long long f = sp.f, g = sp.g;
  const int a = sel.a.value_or(0);

  ElementaryDivisorProfile e;
  e.prime = p;
  e.kernel_rank = 1;
  switch (sel.branch) {
    case Branch::case1a: e.set(a, f - 1); e.set(0, g + 1); break;
    case Branch::case1b: e.set(a, g - 1); e.set(0, f + 1); break;
    case Branch::case1c: e.set(a, f); e.set(0, g); break;
    case Branch::case1d: e.set(a, g); e.set(0, f); break;
    case Branch::case2a: e.set(1, 1); e.set(a + 1, g - 1); e.set(0, f); break;
    case Branch::case2b: e.set(a, 1); e.set(a + 1, g - 1); e.set(0, f); break;
    case Branch::case2c: e.set(1, 1); e.set(2, g - 1); e.set(0, f); break;
    case Branch::case2d: e.set(1, 1); e.set(a + 1, f - 1); e.set(0, g); break;
    case Branch::case2e: e.set(a, 1); e.set(a + 1, f - 1); e.set(0, g); break;
    case Branch::case2f: e.set(1, 1); e.set(2, f - 1); e.set(0, g); break;
    case Branch::case3a: e.set(a - 1, f); e.set(0, g); break;
    case Branch::case3b: e.set(0, f + g); break;
    case Branch::case3c: e.set(a - 1, g - 1); e.set(0, f + 1); break;
    case Branch::case3d_i: e.set(1, g + 1 - f); e.set(a, f - 1); e.set(0, f); break;
    case Branch::case3d_ii: e.set(a - 1, g + 1 - f); e.set(a, f - 1); e.set(0, f); break;
    case Branch::case3d_iii: throw std::logic_error("predicted_elementary_divisors: impossible case");
  }
  return e;
}

ElementaryDivisorProfile trivial_profile(int n, Prime p) {
  const auto sp = spectral_data(n);
  require_prime(p, "trivial_profile");
  ElementaryDivisorProfile e;
  e.prime = p;
  e.kernel_rank = 1;
  e.set(0, sp.f + sp.g);
  return e;
}

std::vector<BigInt> PredictedGroup::normalized() const {
  std::vector<BigInt> out;
  for (const auto& [d, mult] : factors) {
    if (d == 1) continue;
    for (long long i = 0; i < mult; ++i) out.push_back(d);
  }
  return out;
}

BigInt PredictedGroup::order() const {
  BigInt out(1);
  for (const auto& [d, mult] : factors) out *= ipow(d, mult);
  return out;
}

PredictedGroup predicted_critical_group(int n) {
  require_range(n, "predicted_critical_group");
  const BigInt m(n);
  const BigInt a = m - 4;
  const BigInt ab = a * (m - 1);
  const BigInt abc = ab * (m - 3);
  const BigInt abcd = abc * m;
  const long long middle = static_cast<long long>(n) * (n - 5) / 2;

  PredictedGroup out;
  if (n % 2 == 1) {
    out.parity = Parity::odd;
    out.factors = {{a, 1}, {exact_div(ab, 2), middle}, {exact_div(abc, 4), 1}, {exact_div(abcd, 4), n - 2}};
  } else {
    out.parity = Parity::even;
    out.factors = {{exact_div(a, 2), 1}, {exact_div(ab, 2), middle}, {exact_div(abc, 2), 1}, {exact_div(abcd, 4), n - 2}};
  }
  return out;
}

}  // namespace sandpile
