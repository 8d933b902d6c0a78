#include "copylp/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace copylp {

Perm Perm::identity(int n) {
  Perm p;
  p.image.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p.image[static_cast<std::size_t>(i)] = i;
  return p;
}

Perm Perm::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Perm result = identity(n);
  // Cycles compose right to left: the rightmost acts first.
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& cyc = *it;
    Perm c = identity(n);
    std::set<int> seen;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (from < 0 || from >= n) throw Error("cycle entry out of range");
      if (!seen.insert(from).second) throw Error("cycle repeats an entry");
      c.image[static_cast<std::size_t>(from)] = to;
    }
    result = compose(c, result);
  }
  return result;
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (image[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

void Perm::validate() const {
  std::vector<bool> hit(image.size(), false);
  for (int v : image) {
    if (v < 0 || v >= size() || hit[static_cast<std::size_t>(v)])
      throw Error("permutation is not a bijection");
    hit[static_cast<std::size_t>(v)] = true;
  }
}

std::string Perm::format(const std::vector<std::string>& names) const {
  std::string out;
  std::vector<bool> done(image.size(), false);
  for (int i = 0; i < size(); ++i) {
    if (done[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
    out += "(";
    int j = i;
    bool first = true;
    while (!done[static_cast<std::size_t>(j)]) {
      done[static_cast<std::size_t>(j)] = true;
      if (!first) out += " ";
      first = false;
      out += j < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(j)] : std::to_string(j);
      j = (*this)(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

bool operator==(const Perm& a, const Perm& b) {
  const int n = std::max(a.size(), b.size());
  for (int i = 0; i < n; ++i)
    if (a(i) != b(i)) return false;
  return true;
}

Perm compose(const Perm& g, const Perm& h) {
  const int n = std::max(g.size(), h.size());
  Perm out;
  out.image.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.image[static_cast<std::size_t>(i)] = g(h(i));
  return out;
}

Perm inverse(const Perm& g) {
  Perm out = Perm::identity(g.size());
  for (int i = 0; i < g.size(); ++i) out.image[static_cast<std::size_t>(g(i))] = i;
  return out;
}

VarSet act(const Perm& g, VarSet v) {
  VarSet out;
  for (VarSet::Mask m = v.mask(); m != 0; m &= m - 1) out |= VarSet::single(g(std::countr_zero(m)));
  return out;
}

PermGroup closure(const std::vector<Perm>& generators) {
  PermGroup group;
  int n = 0;
  for (const auto& g : generators) {
    g.validate();
    n = std::max(n, g.size());
  }
  group.degree_ = n;
  auto widen = [n](const Perm& p) { return compose(p, Perm::identity(n)); };
  for (const auto& g : generators) group.generators_.push_back(widen(g));

  std::set<std::vector<int>> seen;
  std::deque<Perm> queue;
  Perm id = Perm::identity(n);
  seen.insert(id.image);
  group.elements_.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm e = queue.front();
    queue.pop_front();
    for (const auto& g : group.generators_) {
      Perm p = compose(g, e);
      if (seen.insert(p.image).second) {
        group.elements_.push_back(p);
        queue.push_back(p);
      }
    }
  }
  return group;
}

std::vector<VarSet> orbit(const PermGroup& group, VarSet v) {
  std::set<VarSet> out;
  if (group.elements().empty()) return {v};
  for (const auto& g : group.elements()) out.insert(act(g, v));
  return {out.begin(), out.end()};
}

VarSet representative(const PermGroup& group, VarSet v) {
  VarSet best = v;
  for (const auto& g : group.elements()) best = std::min(best, act(g, v));
  return best;
}

std::vector<Constraint> invariance_equalities(const PermGroup& group, int n,
                                              const std::vector<std::string>& names) {
  std::vector<Constraint> out;
  if (group.trivial()) return out;
  for (const auto& g : group.generators())
    for (int i = 0; i < n; ++i)
      if (g(i) >= n) throw Error("symmetry moves a variable outside its scope");
  const VarSet::Mask last = VarSet::prefix(n).mask();
  for (VarSet::Mask m = 1; m <= last && m != 0; ++m) {
    VarSet v(m), rep = representative(group, v);
    if (rep == v) continue;
    LinearForm f = coord(v);
    f.add_term(rep, -1);
    out.push_back({std::move(f), Relation::kEqual,
                   "sym:" + format_set(v, names) + "~" + format_set(rep, names)});
    if (m == last) break;
  }
  return out;
}

namespace {

// Canonical text key of a row written over column VarSets.
std::string row_key(Relation rel, const Rational& rhs,
                    std::vector<std::pair<VarSet, Rational>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string key = rel == Relation::kEqual ? "=" : ">";
  key += rhs.get_str();
  for (const auto& [v, c] : terms) {
    key += ';';
    key += std::to_string(v.mask());
    key += ':';
    key += c.get_str();
  }
  return key;
}

}  // namespace

LP quotient_reduce(const LP& lp, const PermGroup& group) {
  if (group.trivial()) return lp;
  for (VarSet col : lp.columns)
    if (col.highest() >= static_cast<int>(lp.variables.size()))
      throw Error("quotient: column outside the variable list");
  if (group.degree() > static_cast<int>(lp.variables.size()))
    throw Error("quotient: group acts on more variables than the LP has");

  auto image_terms = [&](const Perm& g, const LpRow& row) {
    std::vector<std::pair<VarSet, Rational>> terms;
    terms.reserve(row.coeffs.size());
    for (const auto& [j, c] : row.coeffs)
      terms.emplace_back(act(g, lp.columns[static_cast<std::size_t>(j)]), c);
    return terms;
  };

  // Invariance: each generator permutes the rows and fixes the objective.
  std::unordered_set<std::string> keys;
  keys.reserve(lp.rows.size() * 2);
  const Perm id = Perm::identity(group.degree());
  for (const auto& row : lp.rows) keys.insert(row_key(row.relation, row.rhs, image_terms(id, row)));
  const auto index = lp.column_index();
  for (const auto& g : group.generators()) {
    for (const auto& row : lp.rows) {
      if (!keys.count(row_key(row.relation, row.rhs, image_terms(g, row))))
        throw Error("quotient: symmetry " + g.format(lp.variables) + " does not preserve row '" +
                    row.label + "'");
    }
    for (int j = 0; j < lp.column_count(); ++j) {
      VarSet img = act(g, lp.columns[static_cast<std::size_t>(j)]);
      auto it = index.find(img);
      if (it == index.end() ||
          lp.objective[static_cast<std::size_t>(it->second)] != lp.objective[static_cast<std::size_t>(j)])
        throw Error("quotient: symmetry " + g.format(lp.variables) + " does not fix the objective");
    }
  }

  LP out;
  out.name = lp.name;
  out.variables = lp.variables;
  out.objective_constant = lp.objective_constant;
  // Representative columns, in the order of the original columns.
  std::vector<int> rep_of(lp.columns.size());
  std::unordered_map<VarSet, int> rep_index;
  for (std::size_t j = 0; j < lp.columns.size(); ++j) {
    VarSet rep = lp.columns[j].empty() ? lp.columns[j] : representative(group, lp.columns[j]);
    auto [it, inserted] = rep_index.try_emplace(rep, static_cast<int>(out.columns.size()));
    if (inserted) out.columns.push_back(rep);
    rep_of[j] = it->second;
  }
  out.objective.assign(out.columns.size(), Rational(0));
  for (std::size_t j = 0; j < lp.columns.size(); ++j)
    out.objective[static_cast<std::size_t>(rep_of[j])] += lp.objective[j];

  std::unordered_map<std::string, int> seen;
  for (int i = 0; i < lp.row_count(); ++i) {
    const LpRow& row = lp.rows[static_cast<std::size_t>(i)];
    std::map<int, Rational> acc;
    for (const auto& [j, c] : row.coeffs) acc[rep_of[static_cast<std::size_t>(j)]] += c;
    LpRow reduced{row.label, row.relation, {}, row.rhs};
    std::vector<std::pair<VarSet, Rational>> terms;
    for (auto& [j, c] : acc) {
      if (c == 0) continue;
      reduced.coeffs.emplace_back(j, c);
      terms.emplace_back(out.columns[static_cast<std::size_t>(j)], c);
    }
    if (reduced.coeffs.empty()) {
      bool trivially_true = row.relation == Relation::kEqual ? row.rhs == 0 : row.rhs <= 0;
      if (trivially_true) continue;
    }
    auto [it, fresh] = seen.try_emplace(row_key(row.relation, row.rhs, std::move(terms)), out.row_count());
    if (i == lp.normalization_row) out.normalization_row = it->second;
    if (!fresh) continue;
    out.rows.push_back(std::move(reduced));
  }
  return out;
}

}  // namespace copylp
