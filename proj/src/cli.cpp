#include "antitri/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "antitri/arrowhead.hpp"
#include "antitri/complex_atf.hpp"
#include "antitri/experiment.hpp"
#include "antitri/givens.hpp"
#include "antitri/householder.hpp"
#include "antitri/io.hpp"
#include "antitri/matgen.hpp"

namespace antitri::cli {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kEps = std::numeric_limits<double>::epsilon();

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::uint64_t parse_seed(const std::string& text, const char* what) {
  if (text.empty()) throw UsageError(std::string(what) + " is empty");
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 0);
  if (errno != 0 || end != text.c_str() + text.size() || text.front() == '-')
    throw UsageError(std::string(what) + " is not an unsigned integer: '" + text + "'");
  return v;
}

// --seed, then ANTITRI_SEED, then the built-in default
std::uint64_t resolve_seed(const std::string& flag) {
  if (!flag.empty()) return parse_seed(flag, "--seed");
  if (const char* env = std::getenv("ANTITRI_SEED")) return parse_seed(env, "ANTITRI_SEED");
  return kDefaultSeed;
}

void check_tol(const std::optional<double>& tol) {
  if (tol && !(*tol >= 0 && std::isfinite(*tol)))
    throw UsageError("--tol must be a finite nonnegative number");
}

Json pivots_json(const std::vector<PivotRecord<double>>& pivots) {
  Json out = Json::array();
  for (const auto& p : pivots)
    out.push_back({{"step", p.step}, {"imax", p.imax + 1}, {"swapped", p.swapped}, {"norm", p.norm}});
  return out;
}

void emit_report(const Json& report, const std::string& path, std::ostream& out) {
  io::write_target(path.empty() ? "-" : path, report.dump(2) + "\n", out);
}

struct Input {
  std::string text;
  std::string digest;
};

Input load(const std::string& path, std::istream& in) {
  Input r;
  r.text = io::read_source(path, in);
  r.digest = io::digest(r.text);
  return r;
}

Json header(const char* command, const Input& input, Index n) {
  return Json{{"command", command}, {"input_digest", input.digest}, {"n", n}};
}

// ---------------------------------------------------------------------------

struct AtfArgs {
  std::string input;
  std::string method = "householder";
  std::optional<double> tol;
  bool flip = false;
  bool pivoted_only = false;
  std::string out;
  std::string emit_q;
  std::string report;
};

int cmd_atf(const AtfArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
  check_tol(args.tol);
  if (args.pivoted_only && args.method != "householder")
    throw UsageError("--pivoted-only requires --method householder");
  const Input input = load(args.input, in);
  const DenseMatrix a = io::parse_matrix(input.text);
  const Index n = a.rows();
  Timer timer;
  AtfResult<double> r;
  if (args.method == "givens")
    r = atf_givens(a, {}, args.tol);
  else if (args.pivoted_only)
    r = atf_pivoted(a, args.tol ? *args.tol : default_tol(skew_symmetrize(a)));
  else
    r = atf_rank_revealing(a, {}, args.tol);
  const double elapsed = timer.seconds();

  bool lower = args.method == "givens";
  DenseMatrix m = r.m;
  DenseMatrix q = r.q;
  if (args.flip) {
    const auto f = flip_antitriangular(m);
    m = f.m;
    q = q * f.j;
    lower = !lower;
  }

  const double norm_a = frobenius_norm(a);
  const double recon = reconstruction_error(a, q, m);
  const double orth = orthogonality_error(q);
  const bool valid = recon <= 50 * double(n) * kEps * norm_a && orth <= 50 * double(n) * kEps;

  Json report = header("atf", input, n);
  report["method"] = args.pivoted_only ? "householder-pivoted" : args.method;
  report["rank"] = r.rank;
  report["tol"] = r.tol;
  report["shape"] = lower ? "lower" : "upper";
  report["flipped"] = args.flip;
  report["terminated_step"] = r.terminated_step ? Json(*r.terminated_step) : Json(nullptr);
  report["reconstruction_error"] = recon;
  report["relative_reconstruction_error"] = norm_a > 0 ? recon / norm_a : 0.0;
  report["orthogonality_error"] = orth;
  report["validated"] = valid;
  report["pivots"] = pivots_json(r.pivots);
  report["rotations"] = r.rotations;
  report["timing_seconds"] = elapsed;

  if (!args.out.empty()) io::write_target(args.out, io::format_matrix(m), out);
  if (!args.emit_q.empty()) io::write_target(args.emit_q, io::format_matrix(q), out);
  emit_report(report, args.report, out);
  if (!valid) {
    err << "antitri: error: reconstruction check failed (" << recon << ", " << orth << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct RankArgs {
  std::string input;
  std::string method = "householder";
  std::optional<double> tol;
  std::string report;
};

int cmd_rank(const RankArgs& args, std::istream& in, std::ostream& out) {
  check_tol(args.tol);
  const Input input = load(args.input, in);
  const DenseMatrix a = io::parse_matrix(input.text);
  Timer timer;
  const AtfOptions opts{false};
  const auto r = args.method == "givens" ? atf_givens(a, opts, args.tol)
                                         : atf_rank_revealing(a, opts, args.tol);
  Json report = header("rank", input, a.rows());
  report["method"] = args.method;
  report["rank"] = r.rank;
  report["tol"] = r.tol;
  report["terminated_step"] = r.terminated_step ? Json(*r.terminated_step) : Json(nullptr);
  report["pivots"] = pivots_json(r.pivots);
  report["timing_seconds"] = timer.seconds();
  emit_report(report, args.report, out);
  return kExitOk;
}

struct ArrowheadArgs {
  std::string input;
  bool zero_first_row = false;
  std::string out;
  std::string report;
};

int cmd_arrowhead(const ArrowheadArgs& args, std::istream& in, std::ostream& out,
                  std::ostream& err) {
  const Input input = load(args.input, in);
  const DenseMatrix a = io::parse_matrix(input.text);
  const Index n = a.rows();
  Timer timer;

  // Lower antitriangular skew input is used as is, upper antitriangular input
  // is flipped, anything else is reduced with rotations first.
  DenseMatrix m;
  std::string source;
  const bool skew = skew_check(a, 0.0).ok;
  if (skew && is_lower_antitriangular(a)) {
    m = a;
    source = "input";
  } else if (skew && is_upper_antitriangular(a)) {
    m = flip_antitriangular(a).m;
    source = "flipped";
  } else {
    m = reduce_givens(a, AtfOptions{false}).m;
    source = "reduced";
  }

  const auto arrow = to_multi_arrowhead(m);
  DenseMatrix s = arrow.s;
  Json report = header("arrowhead", input, n);
  report["source"] = source;
  Json perm = Json::array();
  for (Index v : arrow.p.map) perm.push_back(v + 1);
  report["permutation"] = perm;
  report["zero_first_row"] = args.zero_first_row;

  bool valid = true;
  if (args.zero_first_row) {
    const auto cleaned = zero_first_row_odd(arrow.s);
    s = cleaned.s;
    const Vector<double> before = Eigen::JacobiSVD<DenseMatrix>(m).singularValues();
    const Vector<double> after = Eigen::JacobiSVD<DenseMatrix>(s).singularValues();
    const double scale = std::max(before.size() ? before(0) : 0.0, 1e-300);
    const double deviation = (before - after).cwiseAbs().maxCoeff() / scale;
    valid = deviation <= 1e-10;
    report["rotations"] = cleaned.rotations;
    report["first_row_residual"] = cleaned.residual;
    report["singular_value_deviation"] = deviation;
  }
  report["validated"] = valid;
  report["timing_seconds"] = timer.seconds();

  if (!args.out.empty()) io::write_target(args.out, io::format_matrix(s), out);
  emit_report(report, args.report, out);
  if (!valid) {
    err << "antitri: error: singular values changed by the first-row cleanup\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct HermArgs {
  std::string input;
  bool skew = false;
  std::optional<double> tol;
  std::string out;
  std::string emit_q;
  std::string report;
};

int cmd_herm(const HermArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
  check_tol(args.tol);
  const Input input = load(args.input, in);
  const ComplexDenseMatrix a = io::parse_complex_matrix(input.text);
  const Index n = a.rows();
  Timer timer;
  const auto r = args.skew ? block_atf_skew_hermitian(a, args.tol) : block_atf_hermitian(a, args.tol);
  const double elapsed = timer.seconds();

  const double norm_a = frobenius_norm(a);
  const double recon = reconstruction_error(a, r.q, r.m);
  const double orth = orthogonality_error(r.q);
  const bool valid = recon <= 200 * double(n) * kEps * norm_a && orth <= 50 * double(n) * kEps;

  Json report = header("herm", input, n);
  report["skew"] = args.skew;
  report["inertia"] = {{"n_minus", r.inertia.n_minus},
                       {"n_zero", r.inertia.n_zero},
                       {"n_plus", r.inertia.n_plus}};
  report["inertia_notation"] = to_string(r.inertia, args.skew);
  report["blocks"] = {{"n0", r.n0}, {"n1", r.n1}, {"n2", r.n2}};
  report["tol"] = r.tol;
  report["neutral_residual"] = r.neutral_residual;
  report["reconstruction_error"] = recon;
  report["relative_reconstruction_error"] = norm_a > 0 ? recon / norm_a : 0.0;
  report["orthogonality_error"] = orth;
  report["validated"] = valid;
  report["timing_seconds"] = elapsed;

  if (!args.out.empty()) io::write_target(args.out, io::format_complex_matrix(r.m), out);
  if (!args.emit_q.empty()) io::write_target(args.emit_q, io::format_complex_matrix(r.q), out);
  emit_report(report, args.report, out);
  if (!valid) {
    err << "antitri: error: reconstruction check failed (" << recon << ", " << orth << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct GenArgs {
  Index order = 0;
  Index rank = 0;
  std::vector<double> lambdas;
  int sweeps = -1;
  std::string seed;
  std::string out = "-";
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  if (!args.lambdas.empty() && args.rank != 0)
    throw UsageError("--rank and --lambdas are mutually exclusive");
  if (args.rank % 2 != 0 || args.rank < 0) throw UsageError("--rank must be even and nonnegative");
  if (args.order < 1) throw UsageError("--order must be positive");
  MurnaghanSpec spec;
  spec.n = args.order;
  spec.lambdas = args.lambdas.empty() ? halving_ladder(args.rank / 2) : args.lambdas;
  spec.seed = resolve_seed(args.seed);
  const int sweeps = args.sweeps < 0 ? int(args.order) : args.sweeps;
  const DenseMatrix a = random_orthogonal_similarity(murnaghan(spec), sweeps, spec.seed);
  std::ostringstream text;
  text << "# skew-symmetric, rank " << 2 * spec.lambdas.size() << ", seed " << spec.seed
       << ", sweeps " << sweeps << "\n"
       << io::format_matrix(a);
  io::write_target(args.out, text.str(), out);
  return kExitOk;
}

struct ExperimentArgs {
  Index order = 108;
  std::string seed;
  int threads = 1;
  std::string out;
};

int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
  if (args.order < 2 || args.order % 2 != 0) throw UsageError("--order must be even and >= 2");
  if (args.threads < 1) throw UsageError("--threads must be positive");
  const auto result = run_rank_experiment(args.order, resolve_seed(args.seed), args.threads);

  Json report{{"command", "experiment"},
              {"order", result.order},
              {"seed", result.seed},
              {"eigenvalue_ladder", "lambda_j = 2^-(j-1)"},
              {"generation", "random plane-rotation similarity in double precision, "
                             "compensated accumulation"}};
  Json rows = Json::array();
  std::ostringstream table;
  table << "true_rank detected givens accepted result\n";
  for (const auto& row : result.rows) {
    Json accepted = Json::array();
    std::string band;
    for (Index v : accepted_ranks(row.true_rank)) {
      accepted.push_back(v);
      band += (band.empty() ? "" : "|") + std::to_string(v);
    }
    rows.push_back({{"true_rank", row.true_rank},
                    {"detected_rank", row.detected},
                    {"detected_rank_givens", row.detected_givens},
                    {"accepted", accepted},
                    {"tol", row.tol},
                    {"seed", row.seed},
                    {"pass", row.pass}});
    table << row.true_rank << ' ' << row.detected << ' ' << row.detected_givens << ' ' << band
          << ' ' << (row.pass ? "PASS" : "FAIL") << '\n';
  }
  report["rows"] = rows;
  report["pass"] = result.pass;
  report["timing_seconds"] = result.seconds;
  table << (result.pass ? "PASS" : "FAIL") << ": rank detection over " << result.rows.size()
        << " matrices of order " << result.order << '\n';

  if (args.out.empty()) {
    out << report.dump(2) << '\n';
    err << table.str();
  } else {
    io::write_target(args.out, report.dump(2) + "\n", out);
    out << table.str();
  }
  return result.pass ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Antitriangular factorizations of skew-symmetric matrices", "antitri"};
  app.require_subcommand(1);

  AtfArgs atf;
  auto* c_atf = app.add_subcommand("atf", "Reduce a skew-symmetric matrix to antitriangular form");
  c_atf->add_option("input", atf.input, "Matrix file, '-' for stdin")->required();
  c_atf->add_option("--method", atf.method, "givens or householder")
      ->check(CLI::IsMember({"givens", "householder"}));
  c_atf->add_option("--tol", atf.tol, "Rank tolerance (default n*eps*max column norm)");
  c_atf->add_flag("--flip", atf.flip, "Flip the result over the main antidiagonal");
  c_atf->add_flag("--pivoted-only", atf.pivoted_only, "Pivoted reduction without rank deflation");
  c_atf->add_option("--out", atf.out, "Write M here");
  c_atf->add_option("--emit-q", atf.emit_q, "Write Q here");
  c_atf->add_option("--report", atf.report, "Write the JSON report here instead of stdout");

  RankArgs rank;
  auto* c_rank = app.add_subcommand("rank", "Numerical rank via the antitriangular form");
  c_rank->add_option("input", rank.input, "Matrix file, '-' for stdin")->required();
  c_rank->add_option("--method", rank.method, "givens or householder")
      ->check(CLI::IsMember({"givens", "householder"}));
  c_rank->add_option("--tol", rank.tol, "Rank tolerance");
  c_rank->add_option("--report", rank.report, "Write the JSON report here instead of stdout");

  ArrowheadArgs arrow;
  auto* c_arrow = app.add_subcommand("arrowhead", "Permute an antitriangular form to multi-arrowhead form");
  c_arrow->add_option("input", arrow.input, "Matrix file, '-' for stdin")->required();
  c_arrow->add_flag("--zero-first-row", arrow.zero_first_row,
                    "Odd order: rotate the first row and column to zero");
  c_arrow->add_option("--out", arrow.out, "Write the permuted matrix here");
  c_arrow->add_option("--report", arrow.report, "Write the JSON report here instead of stdout");

  HermArgs herm;
  auto* c_herm = app.add_subcommand("herm", "Block antitriangular form of a Hermitian matrix");
  c_herm->add_option("input", herm.input, "Complex matrix file, '-' for stdin")->required();
  c_herm->add_flag("--skew", herm.skew, "Input is skew-Hermitian");
  c_herm->add_option("--tol", herm.tol, "Zero-eigenvalue tolerance (default n*eps*||A||_F)");
  c_herm->add_option("--out", herm.out, "Write M here");
  c_herm->add_option("--emit-q", herm.emit_q, "Write Q here");
  c_herm->add_option("--report", herm.report, "Write the JSON report here instead of stdout");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a skew-symmetric matrix of given rank");
  c_gen->add_option("--order", gen.order, "Matrix order")->required();
  c_gen->add_option("--rank", gen.rank, "Even rank; eigenvalue moduli 1, 1/2, 1/4, ...");
  c_gen->add_option("--lambdas", gen.lambdas, "Explicit eigenvalue moduli")->delimiter(',');
  c_gen->add_option("--sweeps", gen.sweeps, "Rotation sweeps (default: the order)");
  c_gen->add_option("--seed", gen.seed, "RNG seed (default: ANTITRI_SEED or built-in)");
  c_gen->add_option("--out", gen.out, "Output file, '-' for stdout");

  ExperimentArgs exp;
  auto* c_exp = app.add_subcommand("experiment", "Rank-detection experiment over the rank suite");
  c_exp->add_option("--order", exp.order, "Even matrix order");
  c_exp->add_option("--seed", exp.seed, "Base RNG seed (default: ANTITRI_SEED or built-in)");
  c_exp->add_option("--threads", exp.threads, "Worker threads");
  c_exp->add_option("--out", exp.out, "Write the JSON report here; the table goes to stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (c_atf->parsed()) return cmd_atf(atf, in, out, err);
    if (c_rank->parsed()) return cmd_rank(rank, in, out);
    if (c_arrow->parsed()) return cmd_arrowhead(arrow, in, out, err);
    if (c_herm->parsed()) return cmd_herm(herm, in, out, err);
    if (c_gen->parsed()) return cmd_gen(gen, out);
    if (c_exp->parsed()) return cmd_experiment(exp, out, err);
  } catch (const UsageError& e) {
    err << "antitri: error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ParseError& e) {
    err << "antitri: parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NotSkewError& e) {
    err << "antitri: error: " << e.what() << '\n';
    return kExitStructure;
  } catch (const StructureError& e) {
    err << "antitri: error: " << e.what() << '\n';
    return kExitStructure;
  } catch (const NumericalError& e) {
    err << "antitri: error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DefiniteMatrixError& e) {
    err << "antitri: error: " << e.what() << '\n';
    return kExitDefinite;
  } catch (const std::exception& e) {
    err << "antitri: error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace antitri::cli
