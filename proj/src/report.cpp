#include "sandpile/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

namespace sandpile {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, const char* sep, F&& fmt) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) ss << sep;
    ss << fmt(items[i]);
  }
  return ss.str();
}

std::string join_big(const std::vector<BigInt>& xs, const char* sep) {
  return join(xs, sep, [](const BigInt& x) { return to_decimal(x); });
}

std::string join_idx(const std::vector<Index>& xs, const char* sep) {
  return join(xs, sep, [](Index x) { return x; });
}

PrimeReport prime_report(int n, Prime p, const SmithDecomposition<BigInt>& snf, const BigIntMatrix& laplacian,
                         const SpectralData& sp, const VerifyOptions& options) {
  PrimeReport r;
  r.p = p;
  const auto sel = select_branch(n, p);
  r.branch = std::string(branch_label(sel.branch));
  r.a = sel.a;
  r.computed = p_elementary_divisors(snf, p);
  r.predicted = predicted_elementary_divisors(n, p);
  r.profile_match = r.computed == r.predicted;

  const int deepest = std::max({r.predicted.max_exponent(), valuation(sp.r, p), valuation(sp.s, p)});
  r.filtration = mbar_filtration(laplacian, p, std::max(1, deepest + options.i_max_extra));
  r.mdim_ok = verify_mdim_identity(r.computed, r.filtration);
  r.eigenbound_ok = verify_eigenspace_bound(n, p, sp.r, sp.f, r.filtration) &&
                    verify_eigenspace_bound(n, p, sp.s, sp.g, r.filtration);
  return r;
}

nlohmann::ordered_json to_json(const VerificationReport& r, bool with_timings) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n"] = r.n;
  j["computed_factors"] = ordered_json::array();
  for (const auto& d : r.computed_factors) j["computed_factors"].push_back(to_decimal(d));
  j["predicted_factors"] = ordered_json::array();
  for (const auto& d : r.predicted_factors) j["predicted_factors"].push_back(to_decimal(d));
  j["order"] = to_decimal(r.order);
  j["spanning_trees"] = to_decimal(r.spanning_trees);
  j["free_rank"] = r.free_rank;
  j["per_prime"] = ordered_json::array();
  for (const auto& pr : r.per_prime) {
    ordered_json e;
    e["p"] = pr.p;
    e["branch"] = pr.branch;
    e["a"] = pr.a ? ordered_json(*pr.a) : ordered_json(nullptr);
    e["computed_multiplicities"] = dense_multiplicities(pr.computed);
    e["predicted_multiplicities"] = dense_multiplicities(pr.predicted);
    e["filtration"] = pr.filtration.dims;
    e["kernel_dim"] = pr.filtration.kernel_dim;
    e["profile_match"] = pr.profile_match;
    e["mdim_ok"] = pr.mdim_ok;
    e["eigenbound_ok"] = pr.eigenbound_ok;
    j["per_prime"].push_back(std::move(e));
  }
  j["group_match"] = r.group_match;
  j["order_match"] = r.order_match;
  j["status"] = r.passed ? "pass" : "fail";
  if (with_timings) {
    j["timings"] = {{"build_ms", r.timings.build_ms},
                    {"snf_ms", r.timings.snf_ms},
                    {"spanning_tree_ms", r.timings.spanning_tree_ms},
                    {"profiles_ms", r.timings.profiles_ms}};
  }
  return j;
}

void render_csv(std::ostream& out, std::span<const VerificationReport> reports, bool with_timings) {
  out << "n,p,branch,a,computed_multiplicities,predicted_multiplicities,filtration,kernel_dim,profile_match,"
         "mdim_ok,eigenbound_ok,computed_factors,predicted_factors,order,spanning_trees,group_match,order_match,"
         "status";
  if (with_timings) out << ",build_ms,snf_ms,spanning_tree_ms,profiles_ms";
  out << '\n';
  auto flag = [](bool b) { return b ? "true" : "false"; };
  for (const auto& r : reports) {
    for (const auto& pr : r.per_prime) {
      out << r.n << ',' << pr.p << ',' << pr.branch << ',' << (pr.a ? std::to_string(*pr.a) : "") << ','
          << join_idx(dense_multiplicities(pr.computed), ";") << ','
          << join_idx(dense_multiplicities(pr.predicted), ";") << ',' << join_idx(pr.filtration.dims, ";") << ','
          << pr.filtration.kernel_dim << ',' << flag(pr.profile_match) << ',' << flag(pr.mdim_ok) << ','
          << flag(pr.eigenbound_ok) << ',' << join_big(r.computed_factors, ";") << ','
          << join_big(r.predicted_factors, ";") << ',' << to_decimal(r.order) << ','
          << to_decimal(r.spanning_trees) << ',' << flag(r.group_match) << ',' << flag(r.order_match) << ','
          << (r.passed ? "pass" : "fail");
      if (with_timings) {
        out << ',' << r.timings.build_ms << ',' << r.timings.snf_ms << ',' << r.timings.spanning_tree_ms << ','
            << r.timings.profiles_ms;
      }
      out << '\n';
    }
  }
}

void render_text(std::ostream& out, std::span<const VerificationReport> reports, bool with_timings) {
  for (const auto& r : reports) {
    out << "KG(" << r.n << ",2): " << (r.passed ? "PASS" : "FAIL") << '\n'
        << "  computed  [" << join_big(r.computed_factors, ", ") << "]\n"
        << "  predicted [" << join_big(r.predicted_factors, ", ") << "]\n"
        << "  order " << to_decimal(r.order) << ", spanning trees " << to_decimal(r.spanning_trees) << '\n';
    for (const auto& pr : r.per_prime) {
      out << "  p=" << pr.p << "  " << pr.branch;
      if (pr.a) out << ", a=" << *pr.a;
      out << "  e=[" << join_idx(dense_multiplicities(pr.computed), " ") << "]"
          << " predicted=[" << join_idx(dense_multiplicities(pr.predicted), " ") << "]"
          << " dims=[" << join_idx(pr.filtration.dims, " ") << "]"
          << " mdim " << (pr.mdim_ok ? "ok" : "FAIL") << ", eigenbound " << (pr.eigenbound_ok ? "ok" : "FAIL")
          << '\n';
    }
    if (with_timings) {
      out << "  timings (ms): build " << r.timings.build_ms << ", snf " << r.timings.snf_ms << ", spanning trees "
          << r.timings.spanning_tree_ms << ", profiles " << r.timings.profiles_ms << '\n';
    }
  }
}

}  // namespace

std::string to_decimal(const BigInt& x) { return x.str(); }

std::vector<Index> dense_multiplicities(const ElementaryDivisorProfile& p) {
  std::vector<Index> out(std::size_t(p.max_exponent()) + 1, 0);
  for (const auto& [i, e] : p.multiplicities) out[std::size_t(i)] = e;
  return out;
}

VerificationReport verify_kneser(int n, const VerifyOptions& options) {
  VerificationReport r;
  r.n = n;

  auto t0 = Clock::now();
  const Graph g = kneser_graph(n, 2);
  const BigIntMatrix laplacian = laplacian_matrix(g);
  const auto sp = spectral_data(n);
  const PredictedGroup predicted = predicted_critical_group(n);
  r.predicted_factors = predicted.normalized();
  r.order = critical_group_order(n);
  r.timings.build_ms = elapsed_ms(t0);

  t0 = Clock::now();
  const auto snf = smith_normal_form(laplacian);
  const auto group = cokernel(snf);
  r.computed_factors = group.invariant_factors;
  r.free_rank = group.free_rank;
  r.timings.snf_ms = elapsed_ms(t0);

  t0 = Clock::now();
  r.spanning_trees = spanning_tree_count(laplacian);
  r.timings.spanning_tree_ms = elapsed_ms(t0);

  t0 = Clock::now();
  for (Prime p : order_primes(n)) r.per_prime.push_back(prime_report(n, p, snf, laplacian, sp, options));
  r.timings.profiles_ms = elapsed_ms(t0);

  r.group_match = r.computed_factors == r.predicted_factors && r.free_rank == 1;
  r.order_match = r.spanning_trees == r.order && group.torsion_order() == r.order && predicted.order() == r.order;
  r.passed = r.group_match && r.order_match &&
             std::all_of(r.per_prime.begin(), r.per_prime.end(), [](const PrimeReport& p) { return p.passed(); });
  return r;
}

std::vector<VerificationReport> verify_range(int n_min, int n_max, const VerifyOptions& options, int jobs) {
  if (n_min > n_max) return {};
  const auto count = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<VerificationReport> reports(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        reports[k] = verify_kneser(n_min + static_cast<int>(k), options);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(count)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reports;
}

void render_reports(std::ostream& out, std::span<const VerificationReport> reports, ReportFormat format,
                    bool with_timings) {
  switch (format) {
    case ReportFormat::json: {
      auto doc = nlohmann::ordered_json::array();
      for (const auto& r : reports) doc.push_back(to_json(r, with_timings));
      out << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::csv: render_csv(out, reports, with_timings); break;
    case ReportFormat::text: render_text(out, reports, with_timings); break;
  }
}

}  // namespace sandpile
