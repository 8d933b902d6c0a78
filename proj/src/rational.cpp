#include "copylp/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace copylp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(Integer(std::string(num), 10), d);
    out.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    out = Rational(num, den);
    out.canonicalize();
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    out = Rational(Integer(std::string(s), 10));
  }
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_decimal(const Rational& value, int significant) {
  if (value == 0) return "0";
  Rational a = abs(value);
  // exponent e with 10^e <= a < 10^(e+1)
  long e = static_cast<long>(std::floor(std::log10(a.get_d())));
  auto pow10 = [](long k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(1, p) : Rational(p);
  };
  // Correct an off-by-one from floating log10.
  while (a >= pow10(e + 1)) ++e;
  while (a < pow10(e)) --e;
  long shift = significant - 1 - e;
  Rational scaled = a * pow10(shift);
  // Round half up.
  Integer digits = Integer(scaled.get_num() * 2 + scaled.get_den()) / (2 * scaled.get_den());
  std::string ds = digits.get_str();
  if (static_cast<int>(ds.size()) > significant) {  // rounding carried, e.g. 9.99 -> 10.0
    ++e;
    --shift;
    ds.pop_back();
  }
  std::string out;
  if (shift <= 0) {
    out = ds + std::string(static_cast<std::size_t>(-shift), '0');
  } else if (static_cast<long>(ds.size()) > shift) {
    out = ds.substr(0, ds.size() - shift) + "." + ds.substr(ds.size() - shift);
  } else {
    out = "0." + std::string(static_cast<std::size_t>(shift - ds.size()), '0') + ds;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return value < 0 ? "-" + out : out;
}

Rational rationalize(double x, const Integer& max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  Rational target(x);  // exact binary value of x
  // Convergents h/k of the continued fraction of target.
  Integer h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
  Rational rem = target;
  while (true) {
    Integer a = rem.get_num() / rem.get_den();
    if (rem < 0 && a * rem.get_den() != rem.get_num()) a -= 1;  // floor for negatives
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    if (k > max_den) {
      // Largest semiconvergent within the cap, compared against the last convergent.
      Integer t = (max_den - k_prev2) / k_prev;
      Rational semi(t * h_prev + h_prev2, t * k_prev + k_prev2);
      semi.canonicalize();
      Rational conv(h_prev, k_prev);
      conv.canonicalize();
      return abs(semi - target) < abs(conv - target) ? semi : conv;
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    Rational frac = rem - Rational(a);
    if (frac == 0) {
      Rational out(h, k);
      out.canonicalize();
      return out;
    }
    rem = 1 / frac;
  }
}

}  // namespace copylp
