#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace copylp {

/// Exact rational scalar. GMP keeps it canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Parses `7`, `-3/19`, `+2/4` or a finite decimal such as `0.125`.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// `p/q`, or `p` when the denominator is one.
std::string to_string(const Rational& value);

/// Decimal rendering rounded to `significant` significant digits, e.g.
/// `-0.157894737` for -3/19.
std::string to_decimal(const Rational& value, int significant = 9);

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued-fraction convergents and semiconvergents.
Rational rationalize(double x, const Integer& max_den);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace copylp

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
