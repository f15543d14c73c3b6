#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/rational.hpp>

namespace ces {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);
std::string to_string(const Rational& r);
// Parses "p", "p/q" or a plain decimal such as "-0.1875".
Rational parse_rational(const std::string& text);

/// Exact quadratic surd (p + q*sqrt(s)) / t.
///
/// Kept in canonical form: t > 0, s square-free, q == 0 <=> s == 0, and
/// gcd(p, q, t) == 1. Arithmetic is closed only for operands sharing the same
/// radicand (or where one side is rational); mixing radicands throws.
/// Intermediate products are computed in 128 bits and overflow of the
/// normalized result raises ErrorKind::Overflow.
class SurdValue {
 public:
  SurdValue() = default;
  SurdValue(std::int64_t integer);  // NOLINT: implicit from integers is convenient
  SurdValue(std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t t);

  static SurdValue rational(std::int64_t num, std::int64_t den);
  static SurdValue from(const Rational& r) {
    return rational(r.numerator(), r.denominator());
  }
  static SurdValue sqrt_of(std::int64_t s) { return SurdValue(0, 1, s, 1); }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  std::int64_t s() const { return s_; }
  std::int64_t t() const { return t_; }

  bool is_rational() const { return q_ == 0; }
  std::optional<Rational> as_rational() const;
  double value() const;
  int sign() const;

  SurdValue operator-() const;
  SurdValue square() const { return *this * *this; }
  SurdValue reciprocal() const;
  SurdValue conjugate() const;

  friend SurdValue operator+(const SurdValue& a, const SurdValue& b);
  friend SurdValue operator-(const SurdValue& a, const SurdValue& b);
  friend SurdValue operator*(const SurdValue& a, const SurdValue& b);
  friend SurdValue operator/(const SurdValue& a, const SurdValue& b);

  friend bool operator==(const SurdValue& a, const SurdValue& b) = default;
  friend bool operator<(const SurdValue& a, const SurdValue& b) {
    return (a - b).sign() < 0;
  }

  // Human-readable form, e.g. "(3+sqrt(6))/2", "-16/81", "sqrt(2)/2".
  std::string str() const;

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 0;
  std::int64_t s_ = 0;
  std::int64_t t_ = 1;
};

/// sign * sqrt(square): the nested radicals of the Hermite zero table
/// (e.g. -sqrt((3+sqrt(6))/2)). The square is always an exact SurdValue.
struct QuadraticRoot {
  int sign = 1;
  SurdValue square;

  double value() const;
  std::string str() const;
  friend bool operator==(const QuadraticRoot&, const QuadraticRoot&) = default;
};

}  // namespace ces
