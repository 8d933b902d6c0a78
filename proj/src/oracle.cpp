#include "copylp/oracle.hpp"

#include <cmath>

namespace copylp {

namespace {

std::vector<int> restrict_to(const std::vector<int>& outcome, VarSet v) {
  std::vector<int> out;
  for (int i : v.indices()) out.push_back(outcome[static_cast<std::size_t>(i)]);
  return out;
}

std::map<std::vector<int>, Rational> marginal(const JointDist& d, VarSet v) {
  std::map<std::vector<int>, Rational> out;
  for (const auto& [o, p] : d.prob) out[restrict_to(o, v)] += p;
  return out;
}

}  // namespace

void JointDist::validate() const {
  if (support.size() != variables.size()) throw Error("distribution: support list does not match the variables");
  for (int s : support)
    if (s < 1) throw Error("distribution: empty support");
  Rational total = 0;
  for (const auto& [o, p] : prob) {
    if (o.size() != variables.size()) throw Error("distribution: outcome of wrong length");
    for (std::size_t i = 0; i < o.size(); ++i)
      if (o[i] < 0 || o[i] >= support[i]) throw Error("distribution: value out of range");
    if (p < 0) throw Error("distribution: negative probability");
    total += p;
  }
  if (total != 1) throw Error("distribution: probabilities sum to " + to_string(total));
}

JointDist random_dist(const std::vector<std::string>& variables, int max_support, std::mt19937_64& rng) {
  JointDist d;
  d.variables = variables;
  std::uniform_int_distribution<int> size(1, std::max(1, max_support));
  for (std::size_t i = 0; i < variables.size(); ++i) d.support.push_back(size(rng));
  std::uniform_int_distribution<int> weight(0, 9);
  std::vector<std::pair<std::vector<int>, int>> weights;
  std::vector<int> o(variables.size(), 0);
  int total = 0;
  for (;;) {
    const int w = weight(rng);
    if (w > 0) weights.emplace_back(o, w);
    total += w;
    std::size_t i = 0;
    while (i < o.size() && ++o[i] == d.support[i]) o[i++] = 0;
    if (i == o.size()) break;
  }
  if (total == 0) {
    weights.emplace_back(std::vector<int>(variables.size(), 0), 1);
    total = 1;
  }
  for (const auto& [out, w] : weights) d.prob[out] = Rational(w, total);
  for (auto& [out, p] : d.prob) p.canonicalize();
  return d;
}

JointDist uniform_on(const std::vector<std::string>& variables, const std::vector<int>& support,
                     const std::vector<std::vector<int>>& outcomes) {
  JointDist d{variables, support, {}};
  for (const auto& o : outcomes) d.prob[o] += Rational(1, static_cast<long>(outcomes.size()));
  d.validate();
  return d;
}

Profile<double> entropy_profile(const JointDist& d) {
  const int n = d.size();
  Profile<double> h(coordinate_count(n));
  for (VarSet::Mask m = 1; m < (VarSet::Mask{1} << n); ++m) {
    long double sum = 0;
    for (const auto& [o, p] : marginal(d, VarSet(m))) {
      if (p == 0) continue;
      const long double q =
          static_cast<long double>(p.get_num().get_d()) / static_cast<long double>(p.get_den().get_d());
      sum -= q * std::log2(q);
    }
    h(m - 1) = static_cast<double>(sum);
  }
  return h;
}

JointDist copy_extend(const JointDist& d, const CopyStep& step) {
  validate_copy_step(step, d.variables);
  JointDist out;
  out.variables = d.variables;
  out.support = d.support;
  for (std::size_t c = 0; c < step.copied.size(); ++c) {
    out.variables.push_back(step.new_names[c]);
    long s = 1;
    for (int i : step.copied[c].indices()) s *= d.support[static_cast<std::size_t>(i)];
    out.support.push_back(static_cast<int>(s));
  }
  const VarSet x = step.over;
  const auto px = marginal(d, x);
  // Joint law of (X, encoded copied tuples).
  std::map<std::vector<int>, std::map<std::vector<int>, Rational>> law;
  for (const auto& [o, p] : d.prob) {
    std::vector<int> code;
    for (VarSet z : step.copied) {
      int value = 0, radix = 1;
      for (int i : z.indices()) {
        value += o[static_cast<std::size_t>(i)] * radix;
        radix *= d.support[static_cast<std::size_t>(i)];
      }
      code.push_back(value);
    }
    law[restrict_to(o, x)][code] += p;
  }
  for (const auto& [o, p] : d.prob) {
    const std::vector<int> xo = restrict_to(o, x);
    const Rational& base = px.at(xo);
    for (const auto& [code, q] : law[xo]) {
      std::vector<int> ext = o;
      ext.insert(ext.end(), code.begin(), code.end());
      out.prob[ext] += p * q / base;
    }
  }
  return out;
}

JointDist product(const JointDist& a, const JointDist& b) {
  JointDist out;
  out.variables = a.variables;
  out.variables.insert(out.variables.end(), b.variables.begin(), b.variables.end());
  out.support = a.support;
  out.support.insert(out.support.end(), b.support.begin(), b.support.end());
  for (const auto& [oa, pa] : a.prob)
    for (const auto& [ob, pb] : b.prob) {
      std::vector<int> o = oa;
      o.insert(o.end(), ob.begin(), ob.end());
      out.prob[o] = pa * pb;
    }
  return out;
}

}  // namespace copylp
