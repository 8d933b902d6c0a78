// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes except those listed in
// kKnownFailures, which must fail for the documented reason; any other
// failure, or an unexpected pass of a known failure, is reported.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "copylp/certificate.hpp"
#include "copylp/oracle.hpp"
#include "copylp/problem.hpp"
#include "support.hpp"

using namespace copylp;
using testing::cli;
using testing::run;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Symmetry-indifference on Ingleton is not attainable: see README.
const std::set<int> kKnownFailures = {5};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << s << " s";
  return out.str();
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("copylp-acceptance-" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The `value` line of a solve run, without the decimal part.
std::string value_of(const std::string& out) {
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("value ", 0) == 0) return line.substr(6, line.find(' ', 6) - 6);
  return "(none)";
}

Outcome exact_value(const std::string& args, const std::string& expect, double budget) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run(cli() + " solve " + args + " 2>/dev/null");
  const double s = seconds_since(t0);
  const std::string got = value_of(r.out);
  return {r.code == 0 && got == expect && s <= budget, "value " + got + " in " + fmt_seconds(s)};
}

Outcome criterion1() { return exact_value("--problem ingleton --path exact", "-3/19", 600); }

Outcome criterion2() { return exact_value("--problem ingleton --no-copy-steps --path exact", "-1/4", 60); }

Outcome criterion3() {
  const std::string path = tmp("ingleton.cert");
  const auto r = run(cli() + " solve --problem ingleton --path exact --certificate " + path + " >/dev/null 2>&1");
  if (r.code != 0) return {false, "solve failed"};
  const Certificate cert = parse_certificate(slurp(path));
  const LP lp = build_lp(builtin_problem(cert.problem), parse_options(cert.options));
  const auto t0 = std::chrono::steady_clock::now();
  const VerifyReport report = verify(cert, lp);
  const double s = seconds_since(t0);
  const VarSet a = VarSet::single(0), b = VarSet::single(1), c = VarSet::single(2), d = VarSet::single(3);
  const Rational ci = cert.target.coefficient(a | b);
  const Rational dh = cert.target.coefficient(VarSet::prefix(4));
  const bool shape = ci > 0 && cert.target_t == 0 && cert.target == ci * ingleton_form(a, b, c, d) + dh * coord(VarSet::prefix(4));
  const bool ratio = shape && dh / ci == Rational(3, 19);
  return {report.pass && shape && ratio && s <= 1.0,
          "verify " + std::string(report.pass ? "PASS" : "FAIL") + ", sum = " + to_string(ci) + "*Ing + " +
              to_string(dh) + "*H(A,B,C,D), " + std::to_string(cert.entries.size()) + " rows, " + fmt_seconds(s)};
}

Outcome criterion4() {
  return exact_value("--problem vamos-v0 --path exact --symmetry quotient", "561/491", 7200);
}

Outcome criterion5() {
  const Problem p = builtin_ingleton();
  std::string detail;
  std::vector<Rational> values;
  bool all = true;
  for (SymmetryMode mode : {SymmetryMode::kOff, SymmetryMode::kInvarianceEqs, SymmetryMode::kQuotient}) {
    BuildOptions o;
    o.symmetry = mode;
    detail += (detail.empty() ? "" : ", ") + to_string(mode) + " ";
    try {
      const auto sol = solve_exact(build_lp(p, o));
      if (sol.status != SolveStatus::kOptimal) {
        detail += to_string(sol.status);
        all = false;
        continue;
      }
      detail += to_string(sol.value);
      values.push_back(sol.value);
    } catch (const Error& e) {
      detail += "rejected (" + std::string(e.what()) + ")";
      all = false;
    }
  }
  for (const Rational& v : values) all = all && v == Rational(-3, 19);
  return {all, detail};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  const std::vector<CopyStep> steps = {
      {{VarSet::single(2)}, VarSet::single(0), VarSet::single(1), {"Zp"}},
      {{VarSet::single(1), VarSet::single(2)}, VarSet::single(0), {}, {"Yp", "Zp"}},
      {{VarSet::single(1)}, VarSet{}, VarSet::of({0, 2}), {"Yp"}},
      {{VarSet::of({1, 2})}, VarSet::single(0), VarSet{}, {"YZp"}},
  };
  double worst_copy = 0, worst_shannon = 0;
  int feasible = 0, profiles = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const JointDist d = random_dist({"X", "Y", "Z"}, 3, rng);
    const CopyStep& step = steps[static_cast<std::size_t>(trial) % steps.size()];
    const JointDist e = copy_extend(d, step);
    const Profile<double> p = entropy_profile(e);
    for (const auto& c : apply_copy_step(step, d.variables, "copy").constraints)
      worst_copy = std::max(worst_copy, std::abs(c.lhs.evaluate(p)));
    for (const JointDist* x : {&d, &e}) {
      ++profiles;
      feasible += is_shannon_feasible(entropy_profile(*x), x->size(), 1e-9);
    }
    for (const auto& c : elemental_inequalities(e.size()))
      worst_shannon = std::max(worst_shannon, -c.lhs.evaluate(p));
  }
  std::ostringstream detail;
  detail << "max copy residual " << worst_copy << ", " << feasible << "/" << profiles
         << " profiles Shannon-feasible";
  return {worst_copy <= 1e-9 && feasible == profiles, detail.str()};
}

Outcome criterion7() {
  int generated = 0, total = 0, irredundant = 0, elementals = 0;
  for (int n : {3, 4}) {
    const auto elem = elemental_inequalities(n);
    const VarSet::Mask full = VarSet::prefix(n).mask();
    for (VarSet::Mask u = 0; u <= full; ++u)
      for (VarSet::Mask v = 1; v <= full; ++v)
        for (VarSet::Mask w = v; w <= full; ++w) {
          if ((u & v) || (u & w) || (v != w && (v & w))) continue;
          ++total;
          const auto sol = solve_exact(testing::cone_lp(n, elem, cond_mutual_info(VarSet(v), VarSet(w), VarSet(u))));
          generated += sol.status == SolveStatus::kOptimal && sol.value == 0;
        }
    for (std::size_t k = 0; k < elem.size(); ++k) {
      std::vector<Constraint> rest = elem;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      ++elementals;
      irredundant += solve_exact(testing::cone_lp(n, rest, elem[k].lhs)).status == SolveStatus::kUnbounded;
    }
  }
  return {generated == total && irredundant == elementals,
          std::to_string(generated) + "/" + std::to_string(total) + " basic inequalities generated, " +
              std::to_string(irredundant) + "/" + std::to_string(elementals) + " elementals irredundant"};
}

Outcome criterion8() {
  const std::vector<std::string> commands = {
      "solve --problem ingleton --path exact --certificate {out}",
      "solve --problem ingleton --path float --solution {out}",
      "solve --problem ingleton --no-copy-steps --path exact --certificate {out}",
      "export-lp --problem ingleton --output {out}",
      "export-lp --problem vamos-v0 --output {out}",
  };
  int same = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outs[2], files[2];
    for (int k = 0; k < 2; ++k) {
      const std::string path = tmp("det" + std::to_string(i) + "-" + std::to_string(k));
      std::string cmd = commands[i];
      cmd.replace(cmd.find("{out}"), 5, path);
      outs[k] = run(cli() + " " + cmd + " 2>/dev/null").out;
      files[k] = slurp(path);
    }
    same += outs[0] == outs[1] && files[0] == files[1] && !files[0].empty();
  }
  return {same == static_cast<int>(commands.size()),
          std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Ingleton exact bound -3/19", criterion1},
      {"Shannon-only baseline -1/4", criterion2},
      {"Ingleton certificate round trip, d/c = 3/19", criterion3},
      {"Vamos exact bound 561/491", criterion4},
      {"symmetry indifference on Ingleton", criterion5},
      {"copy lemma constructive soundness", criterion6},
      {"elemental family at n = 3, 4", criterion7},
      {"determinism", criterion8},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const bool known = kKnownFailures.count(id) > 0;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << ": "
              << o.detail << (known && !o.pass ? " [known failure, see README]" : "") << std::endl;
    if (o.pass == known) ++unexpected;
  }
  std::cout << (unexpected == 0 ? "acceptance: as expected" : "acceptance: unexpected results") << std::endl;
  return unexpected == 0 ? 0 : 1;
}
