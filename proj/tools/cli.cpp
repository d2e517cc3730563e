#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sicpovm/analytic.hpp"
#include "sicpovm/enumerate.hpp"
#include "sicpovm/errors.hpp"
#include "sicpovm/frame.hpp"
#include "sicpovm/io.hpp"
#include "sicpovm/search.hpp"
#include "sicpovm/wh_group.hpp"

namespace sicpovm::cli {

namespace {

namespace fs = std::filesystem;

// Raised inside a command for a usage-level problem (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path.string());
  file << text << '\n';
}

double design_tolerance(int t, const VectorSet& set, double sic_tol) {
  const long long n = set.size();
  if (t == 2) return design_tolerance_for_sic(n, set.dimension(), sic_tol);
  return 1e-10 * t_design_threshold(n, set.dimension(), t);
}

struct Certificates {
  std::vector<DesignCertificate> designs;
  DesignCertificate sic;
};

Certificates certify_orbit(const Fiducial& fiducial, const ErrorBasis& basis, double sic_tol,
                           std::optional<int> extra_t) {
  const VectorSet set = orbit(fiducial, basis);
  Certificates certs;
  std::vector<int> orders{1, 2};
  if (extra_t && std::find(orders.begin(), orders.end(), *extra_t) == orders.end()) {
    orders.push_back(*extra_t);
  }
  for (int t : orders) certs.designs.push_back(certify_design(set, t, design_tolerance(t, set, sic_tol)));
  certs.sic = certify_sic(set, sic_tol);
  return certs;
}

void print_certificates(const Certificates& certs, std::ostream& out) {
  for (const auto& cert : certs.designs) out << serialize_certificate(cert) << '\n';
  out << serialize_certificate(certs.sic) << '\n';
}

std::shared_ptr<const ErrorBasis> basis_for(int d, const std::string& basis_file) {
  if (basis_file.empty()) return std::make_shared<const ErrorBasis>(build_wh_basis(d));
  auto basis = std::make_shared<const ErrorBasis>(load_error_basis(fs::path(basis_file)));
  if (basis->dimension() != d) {
    throw UsageError("basis file has dimension " + std::to_string(basis->dimension()) +
                     ", expected " + std::to_string(d));
  }
  return basis;
}

// ---- search ---------------------------------------------------------------

struct SearchOptions {
  int d = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  double tol = kNumericalSicTolerance;
  std::string out;
  std::string basis_file;
  int max_iterations = 5000;
  unsigned threads = 0;
  bool quiet = false;
  bool timestamp = false;
};

int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.d < 2 || opt.d > 64) throw UsageError("search needs 2 <= d <= 64");
  if (opt.runs < 0) throw UsageError("--runs must be positive");
  if (!(opt.tol > 0.0)) throw UsageError("--tol must be positive");

  SearchConfig config = SearchConfig::defaults(opt.d, opt.seed);
  if (opt.runs > 0) config.restarts = opt.runs;
  config.sic_tol = opt.tol;
  config.max_iterations = opt.max_iterations;
  config.threads = opt.threads;
  config.basis = basis_for(opt.d, opt.basis_file);

  const MultiStartResult result = multi_start(config, [&](const SearchResult& r) {
    if (!opt.quiet) out << serialize_search_record(r) << '\n';
  });
  const SearchResult& best = result.best;

  const Certificates certs = certify_orbit(best.fiducial, *config.basis, opt.tol, std::nullopt);
  print_certificates(certs, out);
  err << "search d=" << opt.d << ": " << (best.converged ? "converged" : "not converged")
      << ", best restart " << best.restart_index << ", sic_deviation " << best.sic_deviation
      << ", success fraction " << result.success_fraction() << '\n';

  if (!opt.out.empty()) {
    FiducialFile file;
    file.fiducial = best.fiducial;
    if (!opt.basis_file.empty()) {
      file.basis_file = fs::absolute(opt.basis_file).string();
      file.basis = config.basis;
    }
    file.provenance.method = "search";
    file.provenance.seed = best.seed;
    file.provenance.objective = best.objective;
    file.provenance.sic_deviation = best.sic_deviation;
    if (opt.timestamp) file.provenance.timestamp = utc_timestamp();
    write_text(opt.out, serialize_fiducial_file(file));
  }
  return best.converged ? kExitOk : kExitFailed;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOptions {
  std::string file;
  std::optional<int> t;
  std::optional<double> tol;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  FiducialFile file;
  try {
    file = read_fiducial_file(opt.file);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const RejectedBasisError& e) {
    throw UsageError(e.what());
  }
  for (const auto& warning : file.warnings) err << "warning: " << warning << '\n';
  if (opt.t && *opt.t < 1) throw UsageError("-t must be >= 1");

  const double tol = opt.tol.value_or(file.provenance.method == "analytic" ? kAnalyticSicTolerance
                                                                           : kNumericalSicTolerance);
  const auto basis = file.resolved_basis();
  const Certificates certs = certify_orbit(file.fiducial, *basis, tol, opt.t);
  print_certificates(certs, out);
  if (opt.t) {
    const auto it = std::find_if(certs.designs.begin(), certs.designs.end(),
                                 [&](const DesignCertificate& c) { return c.t == *opt.t; });
    err << "t=" << *opt.t << " design: " << (it->passed ? "pass" : "fail") << '\n';
  }
  err << "SIC certificate: " << (certs.sic.passed ? "pass" : "fail")
      << " (max overlap error " << certs.sic.max_overlap_error.value_or(0.0) << ")\n";
  return certs.sic.passed ? kExitOk : kExitFailed;
}

// ---- analytic -------------------------------------------------------------

struct AnalyticOptions {
  int d = 0;
  bool all = false;
  std::string out_dir;
  std::string out;
  int which = 0;
  double r0 = 0.75;
  std::string theta1 = "pi";
  std::string theta2 = "pi";
  std::string perm = "0,1,2";
  std::string boundary_theta;
  int j = 0, k = 0, m = 0, n = 0, cycle = 0;
  bool swap = false;
  bool timestamp = false;
};

double angle_or_throw(const std::string& text, const char* flag) {
  const auto value = parse_angle(text);
  if (!value) throw UsageError(std::string("cannot parse angle for ") + flag + ": " + text);
  return *value;
}

std::array<int, 3> parse_perm(const std::string& text) {
  std::array<int, 3> perm{};
  std::stringstream s(text);
  std::string item;
  int i = 0;
  while (std::getline(s, item, ',')) {
    if (i >= 3) throw UsageError("--perm needs three comma-separated indices");
    try {
      perm[static_cast<std::size_t>(i++)] = std::stoi(item);
    } catch (const std::exception&) {
      throw UsageError("--perm entries must be integers");
    }
  }
  if (i != 3) throw UsageError("--perm needs three comma-separated indices");
  return perm;
}

int cmd_analytic(const AnalyticOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.d < 2 || opt.d > 4) throw UsageError("analytic fiducials exist for d in {2,3,4}");

  std::vector<Fiducial> fiducials;
  try {
    if (opt.d == 2) {
      fiducials = opt.all ? all_fiducials_d2() : std::vector<Fiducial>{fiducial_d2(opt.which)};
    } else if (opt.d == 3) {
      std::optional<double> boundary;
      if (!opt.boundary_theta.empty()) boundary = angle_or_throw(opt.boundary_theta, "--boundary-theta");
      if (opt.all) {
        fiducials = all_fiducials_d3(opt.r0);
        for (auto& f : all_boundary_fiducials_d3(boundary.value_or(0.0))) fiducials.push_back(f);
      } else {
        D3Params p;
        p.r0 = opt.r0;
        p.theta1 = angle_or_throw(opt.theta1, "--theta1");
        p.theta2 = angle_or_throw(opt.theta2, "--theta2");
        p.perm = parse_perm(opt.perm);
        p.boundary_theta = boundary;
        fiducials.push_back(fiducial_d3(p));
      }
    } else {
      fiducials = opt.all ? all_fiducials_d4()
                          : std::vector<Fiducial>{fiducial_d4(
                                D4Params{opt.j, opt.k, opt.m, opt.n, opt.swap, opt.cycle})};
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const ErrorBasis basis = build_wh_basis(opt.d);
  bool all_pass = true;
  std::vector<std::optional<Fiducial>> certified;
  for (std::size_t i = 0; i < fiducials.size(); ++i) {
    const DesignCertificate cert = certify_sic(orbit(fiducials[i], basis), kAnalyticSicTolerance);
    all_pass = all_pass && cert.passed;
    if (cert.passed) certified.emplace_back(fiducials[i]);

    FiducialFile file;
    file.fiducial = fiducials[i];
    file.provenance.method = "analytic";
    file.provenance.objective = objective(fiducials[i], basis);
    file.provenance.sic_deviation = cert.max_overlap_error;
    if (opt.timestamp) file.provenance.timestamp = utc_timestamp();
    const std::string text = serialize_fiducial_file(file);

    if (opt.all || !opt.out_dir.empty()) {
      std::ostringstream name;
      name << "fiducial_d" << opt.d << '_' << std::setw(3) << std::setfill('0') << i << ".json";
      write_text(fs::path(opt.out_dir.empty() ? "." : opt.out_dir) / name.str(), text);
    } else if (!opt.out.empty()) {
      write_text(opt.out, text);
    } else {
      out << text << '\n';
    }
  }

  const Census classes = tabulate(opt.d, certified, basis);
  err << "analytic d=" << opt.d << ": " << fiducials.size() << " fiducial(s), "
      << (all_pass ? "all certified" : "CERTIFICATION FAILED") << ", " << classes.count
      << " distinct SIC-POVM(s)\n";
  if (opt.all) {
    out << nlohmann::json{{"d", opt.d},
                          {"fiducials", fiducials.size()},
                          {"certified", certified.size()},
                          {"classes", classes.count}}
               .dump()
        << '\n';
  }
  return all_pass ? kExitOk : kExitFailed;
}

// ---- census ---------------------------------------------------------------

struct CensusOptions {
  int d = 0;
  int runs = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  bool json = false;
};

int cmd_census(const CensusOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.d < 2 || opt.d > 64) throw UsageError("census needs 2 <= d <= 64");
  if (opt.runs < 1) throw UsageError("--runs must be positive");
  if (opt.d > 7) err << "warning: census above d=7 grows with the number of distinct solutions\n";

  CensusConfig config;
  config.d = opt.d;
  config.runs = opt.runs;
  config.seed = opt.seed;
  config.threads = opt.threads;
  const Census result = census(config);

  const std::string count = result.continuum_suspected ? "continuum suspected"
                                                       : std::to_string(result.count);
  out << " d | #(SIC-POVMs)\n";
  out << std::setw(2) << result.d << " | " << count << '\n';
  err << "runs " << result.runs << ", converged " << result.converged_runs << ", distinct found "
      << result.count << ", min inter-class distance " << result.min_inter_class_distance
      << (result.low_confidence ? ", LOW CONFIDENCE" : "") << '\n';
  if (opt.json) out << serialize_census(result) << '\n';
  if (!opt.out.empty()) write_text(opt.out, serialize_census(result));
  return kExitOk;
}

// ---- basis ----------------------------------------------------------------

int cmd_basis_validate(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  ErrorBasis basis = [&] {
    try {
      return parse_error_basis(in);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }();
  const BasisValidation report = validate_error_basis(basis, tol);
  out << nlohmann::json{{"d", basis.dimension()},
                        {"operators", basis.size()},
                        {"max_unitarity_deviation", report.max_unitarity_deviation},
                        {"max_orthogonality_deviation", report.max_orthogonality_deviation},
                        {"identity_count", report.identity_count},
                        {"passed", report.passed},
                        {"tol", tol}}
             .dump()
      << '\n';
  err << "basis " << (report.passed ? "valid" : "REJECTED") << '\n';
  return report.passed ? kExitOk : kExitFailed;
}

int cmd_basis_export(const std::vector<int>& factors, const std::string& path, std::ostream& out) {
  if (factors.empty()) throw UsageError("basis-export needs -d");
  for (int d : factors) {
    if (d < 2 || d > 64) throw UsageError("basis factors need 2 <= d <= 64");
  }
  ErrorBasis basis = build_wh_basis(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) basis = tensor_product(basis, build_wh_basis(factors[i]));
  if (basis.dimension() > 64) throw UsageError("product dimension above 64");
  const std::string text = serialize_error_basis(basis);
  if (path.empty()) {
    out << text << '\n';
  } else {
    write_text(path, text);
  }
  return kExitOk;
}

}  // namespace

std::optional<double> parse_angle(const std::string& raw) {
  std::string text;
  std::remove_copy_if(raw.begin(), raw.end(), std::back_inserter(text),
                      [](unsigned char c) { return std::isspace(c); });
  static const std::regex with_pi(R"(^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/(\d+(?:\.\d*)?))?$)");
  std::smatch match;
  if (std::regex_match(text, match, with_pi)) {
    double coefficient = 1.0;
    const std::string c = match[1].str();
    if (c == "-") {
      coefficient = -1.0;
    } else if (!c.empty() && c != "+") {
      coefficient = std::stod(c);
    }
    const double denominator = match[2].matched ? std::stod(match[2].str()) : 1.0;
    if (denominator == 0.0) return std::nullopt;
    return coefficient * std::numbers::pi / denominator;
  }
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and search for SIC-POVMs"};
  app.require_subcommand(1);

  SearchOptions search_opt;
  auto* search = app.add_subcommand("search", "find a fiducial by multi-start minimization");
  search->add_option("-d", search_opt.d, "dimension")->required();
  search->add_option("--runs", search_opt.runs, "number of restarts (default 32 d)");
  search->add_option("--seed", search_opt.seed, "base random seed");
  search->add_option("--tol", search_opt.tol, "SIC overlap tolerance for convergence");
  search->add_option("--out", search_opt.out, "write the best fiducial to this file");
  search->add_option("--basis-file", search_opt.basis_file, "JSON error basis to use instead of Weyl-Heisenberg");
  search->add_option("--max-iterations", search_opt.max_iterations, "per-restart iteration cap");
  search->add_option("--threads", search_opt.threads, "worker threads (capped by SIC_THREADS)");
  search->add_flag("--quiet", search_opt.quiet, "omit per-restart JSON lines");
  search->add_flag("--timestamp", search_opt.timestamp, "record the UTC time in the file");

  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "certify the orbit of a fiducial file");
  verify->add_option("file", verify_opt.file, "fiducial JSON file")->required();
  verify->add_option("-t", verify_opt.t, "additional design order to certify");
  verify->add_option("--tol", verify_opt.tol, "SIC overlap tolerance");

  AnalyticOptions analytic_opt;
  auto* analytic = app.add_subcommand("analytic", "emit closed-form fiducials for d = 2, 3, 4");
  analytic->add_option("-d", analytic_opt.d, "dimension (2, 3 or 4)")->required();
  analytic->add_flag("--all", analytic_opt.all, "emit the whole family as files (default: current directory)");
  analytic->add_option("--out-dir", analytic_opt.out_dir, "directory for emitted files");
  analytic->add_option("--out", analytic_opt.out, "file for a single fiducial");
  analytic->add_option("--which", analytic_opt.which, "d=2: solution 0 or 1");
  analytic->add_option("--r0", analytic_opt.r0, "d=3: first amplitude");
  analytic->add_option("--theta1", analytic_opt.theta1, "d=3: phase of the r+ entry");
  analytic->add_option("--theta2", analytic_opt.theta2, "d=3: phase of the r- entry");
  analytic->add_option("--perm", analytic_opt.perm, "d=3: entry permutation, e.g. 2,0,1");
  analytic->add_option("--boundary-theta", analytic_opt.boundary_theta, "d=3: boundary family phase");
  analytic->add_option("--j", analytic_opt.j, "d=4: Omega index j");
  analytic->add_option("--k", analytic_opt.k, "d=4: Omega index k");
  analytic->add_option("--m", analytic_opt.m, "d=4: Omega index m");
  analytic->add_option("--n", analytic_opt.n, "d=4: Omega index n");
  analytic->add_flag("--swap", analytic_opt.swap, "d=4: exchange the r+ and r- entries");
  analytic->add_option("--cycle", analytic_opt.cycle, "d=4: cyclic shift 0..3");
  analytic->add_flag("--timestamp", analytic_opt.timestamp, "record the UTC time in files");

  CensusOptions census_opt;
  auto* census = app.add_subcommand("census", "count distinct covariant SIC-POVMs");
  census->add_option("-d", census_opt.d, "dimension")->required();
  census->add_option("--runs", census_opt.runs, "number of minimizations");
  census->add_option("--seed", census_opt.seed, "base random seed");
  census->add_option("--threads", census_opt.threads, "worker threads (capped by SIC_THREADS)");
  census->add_option("--out", census_opt.out, "write the census JSON to this file");
  census->add_flag("--json", census_opt.json, "also print the census JSON");

  std::string validate_file;
  double validate_tol = 1e-10;
  auto* basis_validate = app.add_subcommand("basis-validate", "check a JSON error basis");
  basis_validate->add_option("file", validate_file, "basis JSON file")->required();
  basis_validate->add_option("--tol", validate_tol, "unitarity/orthogonality tolerance");

  std::vector<int> export_factors;
  std::string export_out;
  auto* basis_export = app.add_subcommand(
      "basis-export", "write a Weyl-Heisenberg basis (or a tensor product of several) as JSON");
  basis_export->add_option("-d", export_factors, "dimension; repeat for tensor factors")->required();
  basis_export->add_option("--out", export_out, "output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (search->parsed()) return cmd_search(search_opt, out, err);
    if (verify->parsed()) return cmd_verify(verify_opt, out, err);
    if (analytic->parsed()) return cmd_analytic(analytic_opt, out, err);
    if (census->parsed()) return cmd_census(census_opt, out, err);
    if (basis_validate->parsed()) return cmd_basis_validate(validate_file, validate_tol, out, err);
    if (basis_export->parsed()) return cmd_basis_export(export_factors, export_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RejectedBasisError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sicpovm::cli
