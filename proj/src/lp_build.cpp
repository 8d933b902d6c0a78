#include <algorithm>
#include <map>
#include <sstream>

#include "copylp/lp.hpp"
#include "copylp/shannon.hpp"

namespace copylp {

std::string to_string(SymmetryMode mode) {
  switch (mode) {
    case SymmetryMode::kOff: return "off";
    case SymmetryMode::kInvarianceEqs: return "invariance-eqs";
    case SymmetryMode::kQuotient: return "quotient";
  }
  return "off";
}

SymmetryMode parse_symmetry_mode(const std::string& text) {
  if (text == "off" || text == "none") return SymmetryMode::kOff;
  if (text == "invariance-eqs") return SymmetryMode::kInvarianceEqs;
  if (text == "quotient") return SymmetryMode::kQuotient;
  throw Error("unknown symmetry mode '" + text + "'");
}

SymmetryMode default_symmetry(const Problem& problem) {
  if (problem.symmetry.empty()) return SymmetryMode::kOff;
  return problem.variables.size() >= 10 ? SymmetryMode::kQuotient : SymmetryMode::kInvarianceEqs;
}

std::string describe(const BuildOptions& options) {
  std::string out = "symmetry=" + to_string(options.symmetry);
  out += options.merged_independence ? " merged-independence=on" : " merged-independence=off";
  out += options.copy_steps ? " copy-steps=on" : " copy-steps=off";
  if (!options.drop_copy_steps.empty()) {
    std::vector<int> dropped = options.drop_copy_steps;
    std::sort(dropped.begin(), dropped.end());
    dropped.erase(std::unique(dropped.begin(), dropped.end()), dropped.end());
    out += " drop=";
    for (std::size_t i = 0; i < dropped.size(); ++i) out += (i ? "," : "") + std::to_string(dropped[i]);
  }
  return out;
}

BuildOptions parse_options(const std::string& text) {
  BuildOptions out;
  std::istringstream in(text);
  std::string item;
  auto on_off = [](const std::string& key, const std::string& v) {
    if (v == "on") return true;
    if (v == "off") return false;
    throw Error("bad value for " + key + ": '" + v + "'");
  };
  while (in >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("bad option '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "symmetry") {
      out.symmetry = parse_symmetry_mode(value);
    } else if (key == "merged-independence") {
      out.merged_independence = on_off(key, value);
    } else if (key == "copy-steps") {
      out.copy_steps = on_off(key, value);
    } else if (key == "drop") {
      std::istringstream list(value);
      std::string k;
      while (std::getline(list, k, ',')) {
        try {
          out.drop_copy_steps.push_back(std::stoi(k));
        } catch (const std::exception&) {
          throw Error("bad copy step index '" + k + "'");
        }
      }
    } else {
      throw Error("unknown option '" + key + "'");
    }
  }
  return out;
}

LpRow to_row(const Constraint& c, const std::unordered_map<VarSet, int>& columns) {
  LpRow row{c.label, c.relation, {}, -c.lhs.constant()};
  for (const auto& [v, coef] : c.lhs.terms()) {
    auto it = columns.find(v);
    if (it == columns.end()) throw Error("row '" + c.label + "' uses a coordinate with no column");
    row.coeffs.emplace_back(it->second, coef);
  }
  std::sort(row.coeffs.begin(), row.coeffs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

std::string column_name(VarSet column, const std::vector<std::string>& names) {
  if (column.empty()) return "t";
  std::string out = "H(";
  bool first = true;
  for (int i : column.indices()) {
    if (!first) out += ",";
    first = false;
    out += i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)] : std::to_string(i);
  }
  return out + ")";
}

namespace {

// Index translation after dropping copy steps.
struct Remap {
  std::vector<int> to_new;  // -1 for dropped variables

  VarSet strict(VarSet v, const std::string& what) const {
    VarSet out;
    for (int i : v.indices()) {
      if (i >= static_cast<int>(to_new.size()) || to_new[static_cast<std::size_t>(i)] < 0)
        throw Error(what + " uses a variable of a dropped copy step");
      out |= VarSet::single(to_new[static_cast<std::size_t>(i)]);
    }
    return out;
  }
  VarSet loose(VarSet v) const {
    VarSet out;
    for (int i : v.indices())
      if (to_new[static_cast<std::size_t>(i)] >= 0) out |= VarSet::single(to_new[static_cast<std::size_t>(i)]);
    return out;
  }
  LinearForm form(const LinearForm& f, const std::string& what) const {
    return f.map_sets([&](VarSet v) { return strict(v, what); });
  }
};

}  // namespace

LP build_lp(const Problem& problem, const BuildOptions& options) {
  validate(problem);
  const std::size_t step_count = problem.copy_steps.size();
  std::vector<bool> keep(step_count, options.copy_steps);
  for (int k : options.drop_copy_steps) {
    if (k < 1 || k > static_cast<int>(step_count))
      throw Error("no copy step " + std::to_string(k) + " to drop");
    keep[static_cast<std::size_t>(k - 1)] = false;
  }

  Remap remap;
  remap.to_new.assign(problem.variables.size(), -1);
  std::vector<std::string> names(problem.variables.begin(), problem.variables.begin() + problem.ground_count);
  for (int i = 0; i < problem.ground_count; ++i) remap.to_new[static_cast<std::size_t>(i)] = i;

  // Kept steps over the new numbering, with their original 1-based index.
  std::vector<std::pair<int, CopyStep>> steps;
  int old_next = problem.ground_count;
  for (std::size_t k = 0; k < step_count; ++k) {
    const CopyStep& s = problem.copy_steps[k];
    const int len = static_cast<int>(s.new_names.size());
    if (keep[k]) {
      const std::string what = "copy step " + std::to_string(k + 1);
      CopyStep t;
      for (VarSet z : s.copied) t.copied.push_back(remap.strict(z, what));
      t.over = remap.strict(s.over, what);
      t.context = remap.loose(s.context);
      t.new_names = s.new_names;
      for (int i = 0; i < len; ++i) {
        remap.to_new[static_cast<std::size_t>(old_next + i)] = static_cast<int>(names.size());
        names.push_back(s.new_names[static_cast<std::size_t>(i)]);
      }
      steps.emplace_back(static_cast<int>(k + 1), std::move(t));
    }
    old_next += len;
  }
  const int n = static_cast<int>(names.size());

  LP lp;
  lp.name = problem.name;
  lp.variables = names;
  const bool minmax = problem.objective.kind == Objective::Kind::kMinMax;
  for (VarSet::Mask m = 1; m <= VarSet::prefix(n).mask(); ++m) {
    lp.columns.push_back(VarSet(m));
    if (m == VarSet::prefix(n).mask()) break;
  }
  if (minmax) lp.columns.push_back(VarSet{});
  const auto colmap = lp.column_index();

  std::vector<Constraint> rows;
  for (const auto& c : problem.constraints)
    rows.push_back({remap.form(c.lhs, "constraint '" + c.label + "'"), c.relation, c.label});

  PermGroup group;
  int scope = 0;
  if (options.symmetry != SymmetryMode::kOff) {
    if (problem.symmetry.empty()) throw Error("symmetry mode '" + to_string(options.symmetry) +
                                              "' needs a declared symmetry group");
    std::vector<Perm> gens;
    for (const Perm& g : problem.symmetry) {
      Perm h = Perm::identity(n);
      for (int i = 0; i < g.size(); ++i) {
        const int a = remap.to_new[static_cast<std::size_t>(i)], b = remap.to_new[static_cast<std::size_t>(g(i))];
        if ((a < 0) != (b < 0) || (a < 0 && i != g(i)))
          throw Error("symmetry moves a variable of a dropped copy step");
        if (a >= 0) h.image[static_cast<std::size_t>(a)] = b;
      }
      gens.push_back(std::move(h));
    }
    group = closure(gens);
    for (int i = 0; i < problem.symmetry_scope; ++i)
      if (remap.to_new[static_cast<std::size_t>(i)] >= 0) ++scope;
    if (options.symmetry == SymmetryMode::kInvarianceEqs)
      for (auto& c : invariance_equalities(group, scope, names)) rows.push_back(std::move(c));
  }

  // Copy steps, replayed over the growing variable list.
  std::vector<std::string> current(names.begin(), names.begin() + problem.ground_count);
  std::vector<VarSet> copies_of;
  std::vector<std::size_t> indep_row;
  for (const auto& [k, step] : steps) {
    CopyResult r = apply_copy_step(step, current, "copy" + std::to_string(k));
    current = std::move(r.variables);
    copies_of.push_back(r.copies);
    for (auto& c : r.constraints) rows.push_back(std::move(c));
    indep_row.push_back(rows.size() - 1);
  }
  if (options.merged_independence) {
    std::vector<Constraint> merged;
    std::vector<bool> drop(rows.size(), false);
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      const CopyStep& a = steps[i].second;
      const CopyStep& b = steps[i + 1].second;
      if (drop[indep_row[i]] || a.over != b.over || !copies_of[i].subset_of(b.context)) continue;
      merged.push_back(merged_independence(a, copies_of[i], b, copies_of[i + 1],
                                           "merged:copy" + std::to_string(steps[i].first) + ",copy" +
                                               std::to_string(steps[i + 1].first)));
      drop[indep_row[i]] = drop[indep_row[i + 1]] = true;
    }
    std::vector<Constraint> kept;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!drop[i]) kept.push_back(std::move(rows[i]));
    rows = std::move(kept);
    for (auto& c : merged) rows.push_back(std::move(c));
  }

  if (problem.normalization) {
    lp.normalization_row = static_cast<int>(rows.size());
    rows.push_back({remap.form(problem.normalization->lhs, "normalization"), Relation::kEqual,
                    problem.normalization->label});
  }
  for (auto& c : elemental_inequalities(n)) rows.push_back(std::move(c));

  lp.objective.assign(lp.columns.size(), Rational(0));
  if (minmax) {
    const VarSet t;
    lp.objective.back() = 1;
    for (std::size_t k = 0; k < problem.objective.forms.size(); ++k) {
      LinearForm f = -remap.form(problem.objective.forms[k], "objective");
      LpRow row = to_row({f, Relation::kGreaterEqual, ""}, colmap);
      row.label = "epi:" + std::to_string(k + 1);
      row.coeffs.emplace_back(colmap.at(t), Rational(1));
      std::sort(row.coeffs.begin(), row.coeffs.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      lp.rows.push_back(std::move(row));
    }
  } else {
    const LinearForm f = remap.form(problem.objective.forms.front(), "objective");
    for (const auto& [v, c] : f.terms()) lp.objective[static_cast<std::size_t>(colmap.at(v))] = c;
    lp.objective_constant = f.constant();
  }
  // Epigraph rows were staged in lp.rows; put them after everything else.
  std::vector<LpRow> epigraph = std::move(lp.rows);
  lp.rows.clear();
  lp.rows.reserve(rows.size() + epigraph.size());
  for (const auto& c : rows) lp.rows.push_back(to_row(c, colmap));
  for (auto& r : epigraph) lp.rows.push_back(std::move(r));

  std::unordered_map<std::string, int> labels;
  for (int i = 0; i < lp.row_count(); ++i)
    if (!labels.emplace(lp.rows[static_cast<std::size_t>(i)].label, i).second)
      throw Error("duplicate row label '" + lp.rows[static_cast<std::size_t>(i)].label + "'");

  if (options.symmetry == SymmetryMode::kQuotient) lp = quotient_reduce(lp, group);
  return lp;
}

std::string emit_lp(const LP& lp) {
  std::ostringstream out;
  auto terms = [&](const std::vector<std::pair<int, Rational>>& coeffs) {
    std::string s;
    for (const auto& [j, c] : coeffs) {
      s += c < 0 ? " " : " +";
      s += to_string(c);
      s += " x" + std::to_string(j);
    }
    return s.empty() ? std::string(" 0") : s;
  };
  out << "lp " << (lp.name.empty() ? "unnamed" : lp.name) << "\n";
  out << "variables " << lp.variables.size();
  for (const auto& v : lp.variables) out << " " << v;
  out << "\ncolumns " << lp.column_count() << "\n";
  for (int j = 0; j < lp.column_count(); ++j)
    out << "x" << j << " " << column_name(lp.columns[static_cast<std::size_t>(j)], lp.variables) << "\n";
  std::vector<std::pair<int, Rational>> obj;
  for (int j = 0; j < lp.column_count(); ++j)
    if (lp.objective[static_cast<std::size_t>(j)] != 0) obj.emplace_back(j, lp.objective[static_cast<std::size_t>(j)]);
  out << "minimize" << terms(obj) << " constant " << to_string(lp.objective_constant) << "\n";
  out << "rows " << lp.row_count() << "\n";
  for (const auto& row : lp.rows)
    out << "[" << row.label << "]" << terms(row.coeffs) << " " << relation_symbol(row.relation) << " "
        << to_string(row.rhs) << "\n";
  out << "end\n";
  return out.str();
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kFailed: return "failed";
  }
  return "failed";
}

}  // namespace copylp
