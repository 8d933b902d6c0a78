#include "copylp/certificate.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "form_reader.hpp"
#include "text_cursor.hpp"

namespace copylp {

namespace {

// Dense combination over LP columns plus a constant.
struct ColumnSum {
  std::vector<Rational> coef;
  Rational constant = 0;
};

ColumnSum target_columns(const Certificate& cert, const LP& lp, std::vector<std::string>& missing) {
  ColumnSum out{std::vector<Rational>(static_cast<std::size_t>(lp.column_count())), cert.target.constant()};
  const auto index = lp.column_index();
  for (const auto& [v, c] : cert.target.terms()) {
    auto it = index.find(v);
    if (it == index.end()) {
      missing.push_back(column_name(v, lp.variables) + ": " + to_string(c));
      continue;
    }
    out.coef[static_cast<std::size_t>(it->second)] += c;
  }
  if (cert.target_t != 0) {
    auto it = index.find(VarSet{});
    if (it == index.end())
      missing.push_back("t: " + to_string(cert.target_t));
    else
      out.coef[static_cast<std::size_t>(it->second)] += cert.target_t;
  }
  return out;
}

// target - scale * objective must be a multiple of the normalization row's
// form; the implied bound must equal the claim.
bool check_claim(const Certificate& cert, const LP& lp, const ColumnSum& target) {
  if (cert.scale <= 0) return false;
  const std::size_t n = static_cast<std::size_t>(lp.column_count());
  std::vector<Rational> rest(n);
  for (std::size_t j = 0; j < n; ++j) rest[j] = target.coef[j] - cert.scale * lp.objective[j];
  Rational mu = 0;
  Rational norm_rhs = 0;
  if (lp.normalization_row >= 0) {
    const LpRow& norm = lp.rows[static_cast<std::size_t>(lp.normalization_row)];
    norm_rhs = norm.rhs;
    if (!norm.coeffs.empty()) {
      const auto& [j0, a0] = norm.coeffs.front();
      mu = rest[static_cast<std::size_t>(j0)] / a0;
    }
    for (const auto& [j, a] : norm.coeffs) rest[static_cast<std::size_t>(j)] -= mu * a;
  }
  for (const Rational& r : rest)
    if (r != 0) return false;
  // target = scale*c'x + mu*a'x + k >= 0 and a'x = b give c'x >= -(mu*b + k)/scale.
  const Rational implied = -(mu * norm_rhs + target.constant) / cert.scale + lp.objective_constant;
  return implied == cert.bound;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

VerifyReport verify(const Certificate& cert, const LP& lp) {
  VerifyReport report;
  report.entries = cert.entries.size();
  if (!cert.lp_hash.empty()) report.hash_matches = cert.lp_hash == fnv1a_hex(emit_lp(lp));
  const auto rows = lp.row_index();
  ColumnSum sum{std::vector<Rational>(static_cast<std::size_t>(lp.column_count())), 0};
  for (const auto& e : cert.entries) {
    auto it = rows.find(e.label);
    if (it == rows.end()) {
      report.unknown_labels.push_back(e.label);
      continue;
    }
    const LpRow& row = lp.rows[static_cast<std::size_t>(it->second)];
    if (row.relation == Relation::kGreaterEqual && e.multiplier < 0)
      report.sign_violations.push_back(e.label + ": " + to_string(e.multiplier));
    for (const auto& [j, a] : row.coeffs) sum.coef[static_cast<std::size_t>(j)] += e.multiplier * a;
    sum.constant -= e.multiplier * row.rhs;
  }
  std::vector<std::string> missing;
  const ColumnSum target = target_columns(cert, lp, missing);
  for (const auto& m : missing) report.residuals.push_back(m);
  for (std::size_t j = 0; j < sum.coef.size(); ++j) {
    const Rational r = sum.coef[j] - target.coef[j];
    if (r != 0)
      report.residuals.push_back(column_name(lp.columns[j], lp.variables) + ": " + to_string(r));
  }
  if (sum.constant != target.constant)
    report.residuals.push_back("constant: " + to_string(Rational(sum.constant - target.constant)));
  report.claim_ok = missing.empty() && check_claim(cert, lp, target);
  report.pass = report.unknown_labels.empty() && report.sign_violations.empty() &&
                report.residuals.empty() && report.claim_ok;
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  out << (report.pass ? "PASS" : "FAIL") << " (" << report.entries << " entries)\n";
  for (const auto& l : report.unknown_labels) out << "  unknown label: " << l << "\n";
  for (const auto& s : report.sign_violations) out << "  negative multiplier on inequality: " << s << "\n";
  for (const auto& r : report.residuals) out << "  residual " << r << "\n";
  if (!report.claim_ok) out << "  target does not imply the claimed bound\n";
  if (!report.hash_matches) out << "  note: LP hash differs from the certificate header\n";
  return out.str();
}

Certificate from_dual(const Solution<Rational>& solution, const LP& lp, const std::string& options) {
  if (solution.status != SolveStatus::kOptimal)
    throw Error("certificate needs an optimal solution, got " + to_string(solution.status));
  if (solution.dual.size() != lp.row_count()) throw Error("dual vector does not match the LP rows");
  Certificate cert;
  cert.problem = lp.name;
  cert.options = options;
  cert.lp_hash = fnv1a_hex(emit_lp(lp));
  cert.variables = lp.variables;
  cert.bound = solution.value;

  ColumnSum sum{std::vector<Rational>(static_cast<std::size_t>(lp.column_count())), 0};
  Integer den = 1;
  for (int i = 0; i < lp.row_count(); ++i) {
    const Rational& y = solution.dual(i);
    if (y == 0 || i == lp.normalization_row) continue;
    const LpRow& row = lp.rows[static_cast<std::size_t>(i)];
    cert.entries.push_back({row.label, y});
    for (const auto& [j, a] : row.coeffs) sum.coef[static_cast<std::size_t>(j)] += y * a;
    sum.constant -= y * row.rhs;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), y.get_den_mpz_t());
  }
  for (const Rational& c : sum.coef) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), sum.constant.get_den_mpz_t());

  const Rational scale(den);
  cert.scale = scale;
  for (auto& e : cert.entries) e.multiplier *= scale;
  cert.target = LinearForm(sum.constant * scale);
  for (int j = 0; j < lp.column_count(); ++j) {
    const Rational& c = sum.coef[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    const VarSet v = lp.columns[static_cast<std::size_t>(j)];
    if (v.empty())
      cert.target_t = c * scale;
    else
      cert.target.add_term(v, c * scale);
  }
  return cert;
}

bool certify_float(const Solution<double>& solution, const LP& lp, const std::string& options,
                   Certificate& out) {
  if (solution.status != SolveStatus::kOptimal || solution.dual.size() != lp.row_count()) return false;
  for (long cap : {10'000L, 1'000'000L, 100'000'000L}) {
    Solution<Rational> exact;
    exact.status = SolveStatus::kOptimal;
    exact.dual.resize(lp.row_count());
    Rational value = lp.objective_constant;
    for (int i = 0; i < lp.row_count(); ++i) {
      Rational y = rationalize(solution.dual(i), Integer(cap));
      if (lp.rows[static_cast<std::size_t>(i)].relation == Relation::kGreaterEqual && y < 0) y = 0;
      value += y * lp.rows[static_cast<std::size_t>(i)].rhs;
      exact.dual(i) = y;
    }
    exact.value = value;
    Certificate cert = from_dual(exact, lp, options);
    if (verify(cert, lp).pass) {
      out = std::move(cert);
      return true;
    }
  }
  return false;
}

std::string emit_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "certificate\n";
  out << "problem " << cert.problem << "\n";
  out << "options " << cert.options << "\n";
  out << "lp-hash " << cert.lp_hash << "\n";
  out << "variables";
  for (const auto& v : cert.variables) out << " " << v;
  out << "\n";
  out << "target " << detail::format_form_with_aux(cert.target, cert.target_t, "t", cert.variables)
      << " >= 0\n";
  out << "bound " << to_string(cert.bound) << "\n";
  out << "scale " << to_string(cert.scale) << "\n";
  std::size_t kept = 0;
  for (const auto& e : cert.entries) kept += e.multiplier != 0;
  out << "entries " << kept << "\n";
  for (const auto& e : cert.entries)
    if (e.multiplier != 0) out << "factor " << to_string(e.multiplier) << " : " << e.label << "\n";
  out << "end\n";
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  Certificate cert;
  std::map<std::string, bool> seen;
  std::size_t declared = 0;
  bool have_entries = false, ended = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string raw(text.substr(start, nl - start));
    start = nl + 1;
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    if (ended) throw ParseError("text after 'end'", line_no, indent);
    const auto sp = line.find_first_of(" \t");
    const std::string key = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? std::string() : trim(line.substr(sp));
    const int rest_col = indent + static_cast<int>(line.size() - rest.size());
    auto once = [&] {
      if (seen[key]) throw ParseError("duplicate '" + key + "'", line_no, indent);
      seen[key] = true;
    };
    auto rational = [&](const std::string& s, int col) {
      try {
        return parse_rational(s);
      } catch (const std::exception& e) {
        throw ParseError(e.what(), line_no, col);
      }
    };
    if (key == "certificate") {
      once();
    } else if (key == "problem") {
      once();
      cert.problem = rest;
    } else if (key == "options") {
      once();
      cert.options = rest;
    } else if (key == "lp-hash") {
      once();
      cert.lp_hash = rest;
    } else if (key == "variables") {
      once();
      std::istringstream in(rest);
      for (std::string v; in >> v;) cert.variables.push_back(v);
    } else if (key == "target") {
      once();
      if (!seen["variables"]) throw ParseError("'target' before 'variables'", line_no, indent);
      detail::TextCursor in(rest, line_no, rest_col);
      cert.target = detail::read_form(in, cert.variables, "t", &cert.target_t);
      in.expect(">=");
      if (in.number() != 0) in.fail("expected '0'");
      if (!in.at_end()) in.fail("unexpected trailing input");
    } else if (key == "bound") {
      once();
      cert.bound = rational(rest, rest_col);
    } else if (key == "scale") {
      once();
      cert.scale = rational(rest, rest_col);
    } else if (key == "entries") {
      once();
      have_entries = true;
      declared = static_cast<std::size_t>(rational(rest, rest_col).get_d());
    } else if (key == "factor") {
      if (!have_entries) throw ParseError("'factor' before 'entries'", line_no, indent);
      const auto colon = rest.find(" : ");
      if (colon == std::string::npos) throw ParseError("expected ' : ' before the row label", line_no, rest_col);
      const Rational m = rational(trim(rest.substr(0, colon)), rest_col);
      const std::string label = trim(rest.substr(colon + 3));
      if (label.empty()) throw ParseError("empty row label", line_no, rest_col + static_cast<int>(colon) + 3);
      cert.entries.push_back({label, m});
    } else if (key == "end") {
      ended = true;
    } else {
      throw ParseError("unknown keyword '" + key + "'", line_no, indent);
    }
    if (nl == text.size()) break;
  }
  if (!have_entries) throw ParseError("missing 'entries'", line_no, 1);
  if (cert.entries.size() != declared)
    throw ParseError("entries declares " + std::to_string(declared) + " lines, found " +
                         std::to_string(cert.entries.size()),
                     line_no, 1);
  return cert;
}

}  // namespace copylp
