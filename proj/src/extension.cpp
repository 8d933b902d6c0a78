#include "copylp/extension.hpp"

#include <algorithm>
#include <set>

#include "form_reader.hpp"

namespace copylp {

void validate_copy_step(const CopyStep& step, const std::vector<std::string>& variables) {
  const int n = static_cast<int>(variables.size());
  if (step.copied.empty()) throw Error("copy step copies nothing");
  if (step.copied.size() != step.new_names.size())
    throw Error("copy step: " + std::to_string(step.new_names.size()) + " new names for " +
                std::to_string(step.copied.size()) + " copied tuples");
  if (n + static_cast<int>(step.new_names.size()) > VarSet::kCapacity - 1)
    throw Error("copy step exceeds the variable capacity");
  const VarSet scope = VarSet::prefix(n);
  VarSet seen;
  for (VarSet z : step.copied) {
    if (z.empty()) throw Error("copy step: empty copied tuple");
    if (!z.subset_of(scope)) throw Error("copy step references an unknown variable");
    if (!z.disjoint(seen)) throw Error("copy step: copied tuples overlap");
    seen |= z;
  }
  if (!step.over.subset_of(scope) || !step.context.subset_of(scope))
    throw Error("copy step references an unknown variable");
  if (!step.over.disjoint(seen))
    throw Error("copy step: copied variables overlap the conditioning tuple");
  if (!step.over.disjoint(step.context))
    throw Error("copy step: context overlaps the conditioning tuple");
  std::set<std::string> fresh;
  for (const auto& name : step.new_names) {
    if (name.empty()) throw Error("copy step: empty variable name");
    if (std::find(variables.begin(), variables.end(), name) != variables.end() ||
        !fresh.insert(name).second)
      throw Error("duplicate variable name '" + name + "'");
  }
}

CopyResult apply_copy_step(const CopyStep& step, const std::vector<std::string>& variables,
                           const std::string& label_prefix) {
  validate_copy_step(step, variables);
  CopyResult out;
  out.variables = variables;
  const int base = static_cast<int>(variables.size());
  const int k = static_cast<int>(step.copied.size());
  for (int i = 0; i < k; ++i) {
    out.variables.push_back(step.new_names[static_cast<std::size_t>(i)]);
    out.copies |= VarSet::single(base + i);
  }

  // Enumerate T over the symbol set X u {copies} in ascending mask order.
  const VarSet universe = step.over | out.copies;
  const VarSet::Mask u = universe.mask();
  std::vector<VarSet::Mask> subsets;
  for (VarSet::Mask t = u; t != 0; t = (t - 1) & u) subsets.push_back(t);
  std::sort(subsets.begin(), subsets.end());
  for (VarSet::Mask t : subsets) {
    const VarSet set(t);
    if (set.disjoint(out.copies)) continue;
    VarSet image = set & step.over;
    for (int i = 0; i < k; ++i)
      if (set.contains(base + i)) image |= step.copied[static_cast<std::size_t>(i)];
    LinearForm f = coord(set);
    f.add_term(image, -1);
    out.constraints.push_back({std::move(f), Relation::kEqual,
                               label_prefix + ":" + format_set(set, out.variables) + "~" +
                                   format_set(image, out.variables)});
  }
  out.constraints.push_back({cond_mutual_info(out.copies, step.context | step.originals(), step.over),
                             Relation::kEqual, label_prefix + ":indep"});
  return out;
}

Constraint merged_independence(const CopyStep& first, VarSet first_copies, const CopyStep& second,
                               VarSet second_copies, const std::string& label) {
  if (first.over != second.over)
    throw Error("merged_independence: the steps condition on different tuples");
  if (first_copies.empty() || second_copies.empty())
    throw Error("merged_independence: a step introduces no copies");
  if (!first_copies.subset_of(second.context))
    throw Error("merged_independence: the second context must contain the first copies");
  if (!first_copies.disjoint(second_copies))
    throw Error("merged_independence: the steps share copy variables");
  const VarSet x = first.over;
  const VarSet originals =
      first.context | first.originals() | ((second.context | second.originals()) - first_copies);
  LinearForm f = cond_entropy(originals | first_copies | second_copies, x);
  f -= cond_entropy(originals, x);
  f -= cond_entropy(first_copies, x);
  f -= cond_entropy(second_copies, x);
  return {std::move(f), Relation::kEqual, label};
}

}  // namespace copylp
