// copylp: build, solve and certify entropy-inequality LPs.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "copylp/certificate.hpp"
#include "copylp/lp.hpp"
#include "copylp/problem.hpp"

namespace {

using namespace copylp;

enum Exit { kOk = 0, kInput = 1, kSolver = 2, kUncertified = 3 };

struct RunConfig {
  std::string problem = "ingleton";
  std::string path = "exact";
  std::string symmetry;  // empty: default for the problem
  bool merged = false;
  bool no_copy = false;
  std::vector<int> drop;
  double tolerance = 1e-9;
  bool row_scaling = false;
  bool cold = false;
  std::string certificate_out, solution_out, lp_out;
  bool verbose = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write '" + path + "'");
}

// A builtin name, or a path to a problem file.
Problem load_problem(const std::string& source) {
  if (source == "ingleton" || source == "vamos-v0" || source == "vamos-v0-swap") return builtin_problem(source);
  if (!std::filesystem::exists(source)) throw Error("unknown problem '" + source + "' (not a builtin or a file)");
  Problem p = parse_problem(read_file(source));
  validate(p);
  return p;
}

BuildOptions build_options(const RunConfig& cfg, const Problem& problem) {
  BuildOptions o;
  o.symmetry = cfg.symmetry.empty() ? default_symmetry(problem) : parse_symmetry_mode(cfg.symmetry);
  if (o.symmetry == SymmetryMode::kQuotient && problem.symmetry.empty())
    throw Error("quotient symmetry needs a declared symmetry group");
  o.merged_independence = cfg.merged;
  o.copy_steps = !cfg.no_copy;
  o.drop_copy_steps = cfg.drop;
  return o;
}

std::string show(const Rational& v) { return to_string(v) + " (" + to_decimal(v) + ")"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Scalar>
std::string render_solution(const Solution<Scalar>& sol, const LP& lp, const std::string& value) {
  std::ostringstream out;
  out << "status " << to_string(sol.status) << "\n";
  out << "value " << value << "\n";
  out << "primal " << lp.column_count() << "\n";
  for (int j = 0; j < lp.column_count(); ++j) {
    std::ostringstream v;
    if constexpr (std::is_same_v<Scalar, Rational>)
      v << to_string(sol.primal(j));
    else
      v.precision(12), v << sol.primal(j);
    out << column_name(lp.columns[static_cast<std::size_t>(j)], lp.variables) << " " << v.str() << "\n";
  }
  int nonzero = 0;
  for (int i = 0; i < lp.row_count(); ++i) nonzero += sol.dual(i) != 0;
  out << "dual " << nonzero << "\n";
  for (int i = 0; i < lp.row_count(); ++i) {
    if (sol.dual(i) == 0) continue;
    std::ostringstream v;
    if constexpr (std::is_same_v<Scalar, Rational>)
      v << to_string(sol.dual(i));
    else
      v.precision(12), v << sol.dual(i);
    out << v.str() << " : " << lp.rows[static_cast<std::size_t>(i)].label << "\n";
  }
  return out.str();
}

int cmd_solve(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem problem = load_problem(cfg.problem);
  const BuildOptions options = build_options(cfg, problem);
  const LP lp = build_lp(problem, options);
  std::cout << "problem " << problem.name << "\n";
  std::cout << "options " << describe(options) << "\n";
  std::cout << "lp " << lp.column_count() << " columns, " << lp.row_count() << " rows\n";
  if (!cfg.lp_out.empty()) write_file(cfg.lp_out, emit_lp(lp));

  FloatOptions fopt;
  fopt.tolerance = cfg.tolerance;
  fopt.row_scaling = cfg.row_scaling;
  fopt.verbose = cfg.verbose;

  Certificate cert;
  bool have_cert = false;
  int code = kOk;
  if (cfg.path == "exact") {
    ExactOptions eopt;
    eopt.warm_start = !cfg.cold;
    eopt.float_options = fopt;
    eopt.verbose = cfg.verbose;
    const Solution<Rational> sol = solve_exact(lp, eopt);
    std::cout << "status " << to_string(sol.status) << "\n";
    if (sol.status != SolveStatus::kOptimal) {
      if (!sol.message.empty()) std::cout << "message " << sol.message << "\n";
      std::cerr << "time " << seconds_since(t0) << " s\n";
      return kSolver;
    }
    std::cout << "value " << show(sol.value) << "\n";
    cert = from_dual(sol, lp, describe(options));
    have_cert = true;
    std::cout << "certificate " << cert.entries.size() << " entries\n";
    if (!cfg.solution_out.empty()) write_file(cfg.solution_out, render_solution(sol, lp, to_string(sol.value)));
  } else {
    const Solution<double> sol = solve_float(lp, fopt);
    std::cout << "status " << to_string(sol.status) << "\n";
    if (sol.status != SolveStatus::kOptimal) {
      if (!sol.message.empty()) std::cout << "message " << sol.message << "\n";
      std::cerr << "time " << seconds_since(t0) << " s\n";
      return kSolver;
    }
    std::ostringstream approx;
    approx.precision(9);
    approx << sol.value;
    have_cert = certify_float(sol, lp, describe(options), cert);
    if (have_cert) {
      std::cout << "value " << show(cert.bound) << "\n";
      std::cout << "certificate " << cert.entries.size() << " entries\n";
    } else {
      std::cout << "value " << approx.str() << "\n";
      std::cout << "certificate none (rationalized dual does not verify)\n";
      code = kUncertified;
    }
    if (!cfg.solution_out.empty()) write_file(cfg.solution_out, render_solution(sol, lp, approx.str()));
  }
  if (!cfg.certificate_out.empty()) {
    if (!have_cert) throw Error("no certificate to write");
    write_file(cfg.certificate_out, emit_certificate(cert));
  }
  std::cerr << "time " << seconds_since(t0) << " s\n";
  return code;
}

int cmd_verify(const std::string& cert_path, const std::string& problem_source) {
  const auto t0 = std::chrono::steady_clock::now();
  const Certificate cert = parse_certificate(read_file(cert_path));
  const Problem problem = load_problem(problem_source.empty() ? cert.problem : problem_source);
  const LP lp = build_lp(problem, parse_options(cert.options));
  const VerifyReport report = verify(cert, lp);
  std::cout << "problem " << problem.name << "\n";
  std::cout << "options " << cert.options << "\n";
  std::cout << "bound " << show(cert.bound) << "\n";
  std::cout << format_report(report);
  std::cerr << "time " << seconds_since(t0) << " s\n";
  return report.pass ? kOk : kSolver;
}

int cmd_export(const RunConfig& cfg) {
  const Problem problem = load_problem(cfg.problem);
  const LP lp = build_lp(problem, build_options(cfg, problem));
  const std::string text = emit_lp(lp);
  if (cfg.lp_out.empty())
    std::cout << text;
  else
    write_file(cfg.lp_out, text);
  return kOk;
}

void add_build_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--problem,-p", cfg.problem, "builtin name (ingleton, vamos-v0, vamos-v0-swap) or problem file")
      ->capture_default_str();
  app->add_option("--symmetry", cfg.symmetry, "off | invariance-eqs | quotient")
      ->check(CLI::IsMember({"off", "none", "invariance-eqs", "quotient"}));
  app->add_flag("--merged-independence", cfg.merged, "merge paired independence rows");
  app->add_flag("--no-copy-steps", cfg.no_copy, "leave out every copy step");
  app->add_option("--drop-copy-step", cfg.drop, "leave out copy step k (1-based); repeatable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-inequality LP bounds with exact dual certificates"};
  app.set_config("--config", "", "TOML/INI file with the same keys");
  app.require_subcommand(1);
  RunConfig cfg;
  std::string cert_path, verify_problem;

  CLI::App* solve = app.add_subcommand("solve", "build and solve an LP");
  add_build_flags(solve, cfg);
  solve->add_option("--path", cfg.path, "exact | float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
  solve->add_option("--tolerance", cfg.tolerance, "float path tolerance")->capture_default_str();
  solve->add_flag("--row-scaling", cfg.row_scaling, "equilibrate rows (float path)");
  solve->add_flag("--cold-start", cfg.cold, "exact path without a float warm start");
  solve->add_option("--certificate", cfg.certificate_out, "write the certificate here");
  solve->add_option("--solution", cfg.solution_out, "write primal and dual values here");
  solve->add_option("--export-lp", cfg.lp_out, "also write the LP here");
  solve->add_flag("--verbose,-v", cfg.verbose, "solver progress on stderr");

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a certificate against its LP");
  verify_cmd->add_option("certificate", cert_path, "certificate file")->required();
  verify_cmd->add_option("--problem,-p", verify_problem, "problem source (default: from the certificate)");

  CLI::App* export_cmd = app.add_subcommand("export-lp", "write the LP interchange file");
  add_build_flags(export_cmd, cfg);
  export_cmd->add_option("--output,-o", cfg.lp_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*verify_cmd) return cmd_verify(cert_path, verify_problem);
    return cmd_export(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
}
