#pragma once

#include <cstdio>
#include <memory>
#include <string>

#include "copylp/lp.hpp"
#include "copylp/shannon.hpp"

namespace testing {

using namespace copylp;

inline std::vector<std::string> letters(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

/// min objective over all 2^n - 1 coordinates subject to the given rows.
inline LP cone_lp(int n, const std::vector<Constraint>& rows, const LinearForm& objective) {
  LP lp;
  lp.name = "test";
  lp.variables = letters(n);
  for (VarSet::Mask m = 1; m < (VarSet::Mask{1} << n); ++m) lp.columns.push_back(VarSet(m));
  const auto index = lp.column_index();
  for (const auto& c : rows) lp.rows.push_back(to_row(c, index));
  lp.objective.assign(lp.columns.size(), 0);
  for (const auto& [v, c] : objective.terms()) lp.objective[static_cast<std::size_t>(index.at(v))] = c;
  lp.objective_constant = objective.constant();
  return lp;
}

struct RunResult {
  int code = -1;
  std::string out;
};

/// Runs a shell command, capturing stdout.
inline RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string cli() { return COPYLP_CLI; }
inline std::string data(const std::string& name) { return std::string(COPYLP_DATA_DIR) + "/" + name; }

}  // namespace testing
