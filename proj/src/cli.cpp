#include "sandpile/cli.hpp"

#include "sandpile/matrix_market.hpp"
#include "sandpile/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <string>

namespace sandpile {
namespace {

using nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, ReportFormat> kFormats{
    {"json", ReportFormat::json}, {"csv", ReportFormat::csv}, {"text", ReportFormat::text}};

void add_format_option(CLI::App* cmd, ReportFormat& format) {
  cmd->add_option("--format", format, "Output format: json, csv or text")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("text");
}

ordered_json decimal_array(const std::vector<BigInt>& xs) {
  auto a = ordered_json::array();
  for (const auto& x : xs) a.push_back(to_decimal(x));
  return a;
}

std::string bracketed(const std::vector<BigInt>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_decimal(xs[i]);
  return s + "]";
}

int cmd_verify(int n_min, int n_max, ReportFormat format, int jobs, int i_max_extra, bool timings, std::ostream& out) {
  if (n_min < 5) throw UsageError("verify: n_min must be at least 5");
  if (n_max < n_min) throw UsageError("verify: n_max must not be smaller than n_min");
  if (jobs < 1) throw UsageError("verify: --jobs must be positive");
  if (i_max_extra < 0) throw UsageError("verify: --i-max-extra must be nonnegative");
  const auto reports = verify_range(n_min, n_max, VerifyOptions{i_max_extra}, jobs);
  render_reports(out, reports, format, timings);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  return ok ? exit_ok : exit_mismatch;
}

struct GroupExports {
  std::string graph;
  std::string adjacency;
  std::string laplacian;
};

int cmd_group(int n, ReportFormat format, const GroupExports& exports, std::ostream& out) {
  if (n < 2) throw UsageError("group: n must be at least 2");
  const Graph g = kneser_graph(n, 2);
  const BigIntMatrix laplacian = laplacian_matrix(g);
  const auto group = critical_group(laplacian);
  const BigInt trees = spanning_tree_count(laplacian);

  if (!exports.graph.empty()) {
    std::ofstream f(exports.graph);
    if (!f) throw std::runtime_error("cannot write '" + exports.graph + "'");
    write_edge_list(f, g);
  }
  if (!exports.adjacency.empty()) write_matrix_market(exports.adjacency, adjacency_matrix(g));
  if (!exports.laplacian.empty()) write_matrix_market(exports.laplacian, laplacian);

  switch (format) {
    case ReportFormat::json: {
      ordered_json j;
      j["n"] = n;
      j["vertices"] = g.vertex_count();
      j["edges"] = g.edge_count();
      j["invariant_factors"] = decimal_array(group.invariant_factors);
      j["free_rank"] = group.free_rank;
      j["order"] = to_decimal(group.torsion_order());
      j["spanning_trees"] = to_decimal(trees);
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::csv: {
      std::string factors;
      for (std::size_t i = 0; i < group.invariant_factors.size(); ++i)
        factors += (i ? ";" : "") + to_decimal(group.invariant_factors[i]);
      out << "n,vertices,edges,invariant_factors,free_rank,order,spanning_trees\n"
          << n << ',' << g.vertex_count() << ',' << g.edge_count() << ',' << factors << ',' << group.free_rank << ','
          << to_decimal(group.torsion_order()) << ',' << to_decimal(trees) << '\n';
      break;
    }
    case ReportFormat::text:
      out << "KG(" << n << ",2): " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n"
          << "invariant factors: " << bracketed(group.invariant_factors)
          << (group.is_trivial_torsion() ? " (trivial)" : "") << '\n'
          << "free rank: " << group.free_rank << '\n'
          << "order: " << to_decimal(group.torsion_order()) << '\n'
          << "spanning trees: " << to_decimal(trees) << '\n';
      break;
  }
  return exit_ok;
}

struct SnfOptions {
  std::string input;
  bool transforms = false;
  std::string u_out;
  std::string v_out;
  ReportFormat format = ReportFormat::text;
};

int cmd_snf(const SnfOptions& opt, std::ostream& out) {
  const BigIntMatrix m = read_matrix_market(std::filesystem::path(opt.input));
  const auto snf = smith_normal_form(m, opt.transforms);
  if (opt.transforms && !certify_smith(m, snf)) {
    throw CertificationError("snf: U * M * V does not reproduce the diagonal form");
  }

  switch (opt.format) {
    case ReportFormat::json: {
      ordered_json j;
      j["rows"] = m.rows();
      j["cols"] = m.cols();
      j["diagonal"] = decimal_array(snf.diagonal);
      j["rank"] = snf.rank;
      if (opt.transforms) j["certified"] = true;
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::csv:
      out << "index,value\n";
      for (std::size_t i = 0; i < snf.diagonal.size(); ++i) out << i + 1 << ',' << to_decimal(snf.diagonal[i]) << '\n';
      break;
    case ReportFormat::text:
      for (std::size_t i = 0; i < snf.diagonal.size(); ++i) out << (i ? " " : "") << to_decimal(snf.diagonal[i]);
      out << '\n';
      break;
  }

  if (opt.transforms) {
    const auto& [u, v] = *snf.transforms;
    if (!opt.u_out.empty()) write_matrix_market(opt.u_out, u, MatrixMarketLayout::array);
    if (!opt.v_out.empty()) write_matrix_market(opt.v_out, v, MatrixMarketLayout::array);
    if (opt.format == ReportFormat::text && opt.u_out.empty()) {
      out << "U:\n";
      write_matrix_market(out, u, MatrixMarketLayout::array);
    }
    if (opt.format == ReportFormat::text && opt.v_out.empty()) {
      out << "V:\n";
      write_matrix_market(out, v, MatrixMarketLayout::array);
    }
  }
  return exit_ok;
}

int cmd_profile(int n, long long p_arg, ReportFormat format, int i_max_extra, std::ostream& out) {
  if (n < 5) throw UsageError("profile: n must be at least 5");
  if (p_arg < 2 || !is_prime(static_cast<std::uint64_t>(p_arg))) {
    throw UsageError("profile: " + std::to_string(p_arg) + " is not prime");
  }
  if (i_max_extra < 0) throw UsageError("profile: --i-max-extra must be nonnegative");
  const auto p = static_cast<Prime>(p_arg);

  const BigIntMatrix laplacian = laplacian_matrix(kneser_graph(n, 2));
  const auto sp = spectral_data(n);
  const bool divides = order_valuation(n, p) > 0;

  std::optional<BranchSelection> sel;
  if (divides || (p == 2 && n % 4 == 2)) sel = select_branch(n, p);
  const ElementaryDivisorProfile predicted = sel ? predicted_elementary_divisors(n, p) : trivial_profile(n, p);
  const ElementaryDivisorProfile computed = p_elementary_divisors(laplacian, p);
  const int deepest = std::max({predicted.max_exponent(), valuation(sp.r, p), valuation(sp.s, p)});
  const MbarFiltration filt = mbar_filtration(laplacian, p, std::max(1, deepest + i_max_extra));
  const bool match = computed == predicted;
  const bool mdim_ok = verify_mdim_identity(computed, filt);
  const bool eigen_ok = verify_eigenspace_bound(n, p, sp.r, sp.f, filt) && verify_eigenspace_bound(n, p, sp.s, sp.g, filt);
  const bool ok = match && mdim_ok && eigen_ok;
  const std::string branch = sel ? std::string(branch_label(sel->branch)) : "none";
  const std::string note = divides ? "" : "p=" + std::to_string(p) + " does not divide the order of K(KG(" +
                                              std::to_string(n) + ",2)); the profile is trivial";

  const auto ce = dense_multiplicities(computed);
  const auto pe = dense_multiplicities(predicted);
  switch (format) {
    case ReportFormat::json: {
      ordered_json j;
      j["n"] = n;
      j["p"] = p;
      j["branch"] = branch;
      j["a"] = sel && sel->a ? ordered_json(*sel->a) : ordered_json(nullptr);
      j["divides_order"] = divides;
      j["computed_multiplicities"] = ce;
      j["predicted_multiplicities"] = pe;
      j["filtration"] = filt.dims;
      j["kernel_dim"] = filt.kernel_dim;
      j["profile_match"] = match;
      j["mdim_ok"] = mdim_ok;
      j["eigenbound_ok"] = eigen_ok;
      j["status"] = ok ? "pass" : "fail";
      if (!note.empty()) j["note"] = note;
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::csv: {
      out << "n,p,branch,i,computed,predicted,dim_mbar\n";
      const std::size_t rows = std::max({ce.size(), pe.size(), filt.dims.size()});
      for (std::size_t i = 0; i < rows; ++i) {
        out << n << ',' << p << ',' << branch << ',' << i << ',' << (i < ce.size() ? ce[i] : 0) << ','
            << (i < pe.size() ? pe[i] : 0) << ',';
        if (i < filt.dims.size()) out << filt.dims[i];
        out << '\n';
      }
      break;
    }
    case ReportFormat::text: {
      out << "KG(" << n << ",2), p=" << p << ": " << branch;
      if (sel && sel->a) out << ", a=" << *sel->a;
      out << '\n';
      if (!note.empty()) out << "note: " << note << '\n';
      out << "  i  computed  predicted  dim_Mbar_i\n";
      const std::size_t rows = std::max({ce.size(), pe.size(), filt.dims.size()});
      for (std::size_t i = 0; i < rows; ++i) {
        out << "  " << i << "  e_" << i << '=' << (i < ce.size() ? ce[i] : 0) << "  e_" << i << '='
            << (i < pe.size() ? pe[i] : 0) << "  ";
        if (i < filt.dims.size()) out << filt.dims[i];
        out << '\n';
      }
      out << "kernel rank " << computed.kernel_rank << ", kernel dim " << filt.kernel_dim << '\n'
          << "match: " << (match ? "yes" : "no") << ", mdim identity: " << (mdim_ok ? "ok" : "FAIL")
          << ", eigenspace bound: " << (eigen_ok ? "ok" : "FAIL") << '\n';
      break;
    }
  }
  return ok ? exit_ok : exit_mismatch;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical groups of graphs and Kneser graph verification"};
  app.name("sandpile");
  app.require_subcommand(1);

  ReportFormat format = ReportFormat::text;

  int n_min = 0, n_max = 0, jobs = 1, i_max_extra = 1;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "Compare computed and predicted critical groups of KG(n,2)");
  verify->add_option("n_min", n_min)->required();
  verify->add_option("n_max", n_max)->required();
  verify->add_option("--jobs", jobs, "Worker threads")->default_val(1);
  verify->add_option("--i-max-extra", i_max_extra, "Filtration depth past the largest exponent")->default_val(1);
  verify->add_flag("--timings", timings, "Include per-stage timings (output is no longer deterministic)");
  add_format_option(verify, format);

  int group_n = 0;
  GroupExports exports;
  auto* group = app.add_subcommand("group", "Critical group of KG(n,2)");
  group->add_option("n", group_n)->required();
  group->add_option("--export-graph", exports.graph, "Write the edge list here");
  group->add_option("--export-adjacency", exports.adjacency, "Write the adjacency matrix (Matrix Market)");
  group->add_option("--export-laplacian", exports.laplacian, "Write the Laplacian (Matrix Market)");
  add_format_option(group, format);

  SnfOptions snf_opt;
  auto* snf = app.add_subcommand("snf", "Smith normal form of a Matrix Market integer matrix");
  snf->add_option("input", snf_opt.input)->required();
  snf->add_flag("--transforms", snf_opt.transforms, "Compute and certify U, V with U*M*V = S");
  snf->add_option("--u-out", snf_opt.u_out, "Write U here instead of stdout");
  snf->add_option("--v-out", snf_opt.v_out, "Write V here instead of stdout");
  add_format_option(snf, format);

  int profile_n = 0;
  long long profile_p = 0;
  int profile_extra = 1;
  auto* profile = app.add_subcommand("profile", "Elementary divisors of KG(n,2) at a prime p");
  profile->add_option("n", profile_n)->required();
  profile->add_option("p", profile_p)->required();
  profile->add_option("--i-max-extra", profile_extra, "Filtration depth past the largest exponent")->default_val(1);
  add_format_option(profile, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*verify) return cmd_verify(n_min, n_max, format, jobs, i_max_extra, timings, out);
    if (*group) return cmd_group(group_n, format, exports, out);
    if (*snf) {
      snf_opt.format = format;
      return cmd_snf(snf_opt, out);
    }
    if (*profile) return cmd_profile(profile_n, profile_p, format, profile_extra, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const CertificationError& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_usage;
}

}  // namespace sandpile
