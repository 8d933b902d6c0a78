#include "copylp/shannon.hpp"

#include <algorithm>
#include <string>

namespace copylp {

long long elemental_count(int n) {
  if (n < 1) return 0;
  long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  return n + (n >= 2 ? pairs * (1LL << (n - 2)) : 0);
}

std::vector<Constraint> elemental_inequalities(int n) {
  if (n < 1 || n > 24) throw Error("elemental_inequalities: variable count out of range");
  std::vector<Constraint> out;
  out.reserve(static_cast<std::size_t>(elemental_count(n)));
  const VarSet full = VarSet::prefix(n);
  for (int i = 0; i < n; ++i) {
    out.push_back({cond_entropy(VarSet::single(i), full - VarSet::single(i)),
                   Relation::kGreaterEqual, "elem:H(" + std::to_string(i + 1) + "|rest)"});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const VarSet others = full - VarSet::of({i, j});
      for (VarSet::Mask k = others.mask();; k = (k - 1) & others.mask()) {
        VarSet cond(k);
        std::string label = "elem:I(" + std::to_string(i + 1) + ";" + std::to_string(j + 1) + "|{";
        bool first = true;
        for (int idx : cond.indices()) {
          if (!first) label += ",";
          first = false;
          label += std::to_string(idx + 1);
        }
        label += "})";
        out.push_back({cond_mutual_info(VarSet::single(i), VarSet::single(j), cond),
                       Relation::kGreaterEqual, std::move(label)});
        if (k == 0) break;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Constraint& a, const Constraint& b) { return a.label < b.label; });
  return out;
}

}  // namespace copylp
