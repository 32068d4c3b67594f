#pragma once

#include "sandpile/critical_group.hpp"
#include "sandpile/formulas.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sandpile {

enum class ReportFormat { json, csv, text };

struct PrimeReport {
  Prime p = 2;
  std::string branch;
  std::optional<int> a;
  ElementaryDivisorProfile computed;
  ElementaryDivisorProfile predicted;
  MbarFiltration filtration;
  bool profile_match = false;
  bool mdim_ok = false;
  bool eigenbound_ok = false;

  bool passed() const { return profile_match && mdim_ok && eigenbound_ok; }
};

struct StageTimings {
  double build_ms = 0;
  double snf_ms = 0;
  double spanning_tree_ms = 0;
  double profiles_ms = 0;
};

/// Cross-check of the computed critical group of KG(n,2) against the closed
/// forms. `passed` holds iff every comparison matches exactly.
struct VerificationReport {
  int n = 0;
  std::vector<BigInt> computed_factors;
  std::vector<BigInt> predicted_factors;
  BigInt order;
  BigInt spanning_trees;
  Index free_rank = 0;
  std::vector<PrimeReport> per_prime;
  bool group_match = false;
  bool order_match = false;
  bool passed = false;
  StageTimings timings;
};

struct VerifyOptions {
  int i_max_extra = 1;  // filtration depth beyond the largest predicted exponent
};

VerificationReport verify_kneser(int n, const VerifyOptions& options = {});

/// Reports for n_min..n_max in ascending order, computed on up to `jobs`
/// worker threads.
std::vector<VerificationReport> verify_range(int n_min, int n_max, const VerifyOptions& options = {}, int jobs = 1);

/// Emits reports. Output is byte-identical for identical reports unless
/// `with_timings` is set.
void render_reports(std::ostream& out, std::span<const VerificationReport> reports, ReportFormat format,
                    bool with_timings = false);

/// Dense e_0..e_max list, as used in the json and csv payloads.
std::vector<Index> dense_multiplicities(const ElementaryDivisorProfile& p);

std::string to_decimal(const BigInt& x);

}  // namespace sandpile
