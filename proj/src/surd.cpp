#include "ces/surd.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "ces/error.hpp"

namespace ces {

namespace {

using Wide = __int128;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::Overflow, "surd arithmetic overflowed 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

struct Parts {
  Wide p, q, s, t;
};

Parts canonical(Wide p, Wide q, Wide s, Wide t) {
  if (t == 0) throw Error(ErrorKind::InvalidArgument, "surd with zero denominator");
  if (s < 0) throw Error(ErrorKind::InvalidArgument, "surd radicand must be nonnegative");
  if (t < 0) {
    p = -p;
    q = -q;
    t = -t;
  }
  // pull square factors out of the radicand
  for (Wide d = 2; d * d <= s; ++d) {
    while (s % (d * d) == 0) {
      s /= d * d;
      q *= d;
    }
  }
  if (s == 0) q = 0;
  if (s == 1) {
    p += q;
    q = 0;
  }
  if (q == 0) s = 0;
  Wide g = wide_gcd(wide_gcd(p, q), t);
  if (g > 1) {
    p /= g;
    q /= g;
    t /= g;
  }
  return {p, q, s, t};
}

std::int64_t common_radicand(const SurdValue& a, const SurdValue& b) {
  if (a.q() == 0) return b.s();
  if (b.q() == 0) return a.s();
  if (a.s() != b.s()) {
    throw Error(ErrorKind::InvalidArgument,
                "surds with different radicands cannot be combined");
  }
  return a.s();
}

}  // namespace

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] {
    return Error(ErrorKind::InvalidArgument, "cannot parse rational '" + text + "'");
  };
  if (text.empty()) throw bad();
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      std::size_t used_num = 0, used_den = 0;
      auto num = std::stoll(text.substr(0, slash), &used_num);
      auto den = std::stoll(text.substr(slash + 1), &used_den);
      if (used_num != slash || used_den != text.size() - slash - 1 || den == 0) throw bad();
      return Rational(num, den);
    }
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '-' || text[pos] == '+') negative = text[pos++] == '-';
    std::int64_t mantissa = 0, scale = 1;
    bool seen_point = false, seen_digit = false;
    for (; pos < text.size(); ++pos) {
      char ch = text[pos];
      if (ch == '.' && !seen_point) {
        seen_point = true;
        continue;
      }
      if (ch < '0' || ch > '9') throw bad();
      seen_digit = true;
      mantissa = narrow(Wide(mantissa) * 10 + (ch - '0'));
      if (seen_point) scale = narrow(Wide(scale) * 10);
    }
    if (!seen_digit) throw bad();
    return Rational(negative ? -mantissa : mantissa, scale);
  } catch (const std::logic_error&) {
    throw bad();
  }
}

SurdValue::SurdValue(std::int64_t integer) : p_(integer) {}

SurdValue::SurdValue(std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t t) {
  auto c = canonical(p, q, s, t);
  p_ = narrow(c.p);
  q_ = narrow(c.q);
  s_ = narrow(c.s);
  t_ = narrow(c.t);
}

SurdValue SurdValue::rational(std::int64_t num, std::int64_t den) {
  return SurdValue(num, 0, 0, den);
}

std::optional<Rational> SurdValue::as_rational() const {
  if (q_ != 0) return std::nullopt;
  return Rational(p_, t_);
}

double SurdValue::value() const {
  if (q_ == 0) return static_cast<double>(p_) / static_cast<double>(t_);
  const double root = std::sqrt(static_cast<double>(s_));
  const double a = static_cast<double>(p_);
  const double b = static_cast<double>(q_) * root;
  if ((p_ > 0) != (q_ > 0) && p_ != 0) {
    // p + q sqrt(s) = (p^2 - q^2 s) / (p - q sqrt(s)) avoids cancellation
    Wide norm = Wide(p_) * p_ - Wide(q_) * q_ * s_;
    return static_cast<double>(norm) / ((a - b) * static_cast<double>(t_));
  }
  return (a + b) / static_cast<double>(t_);
}

int SurdValue::sign() const {
  auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
  if (q_ == 0) return sgn(p_);
  if (p_ == 0) return sgn(q_);
  if (sgn(p_) == sgn(q_)) return sgn(p_);
  Wide lhs = Wide(p_) * p_;
  Wide rhs = Wide(q_) * q_ * s_;
  if (lhs == rhs) return 0;  // unreachable for square-free s > 1
  return lhs > rhs ? sgn(p_) : sgn(q_);
}

SurdValue SurdValue::operator-() const {
  SurdValue out = *this;
  out.p_ = -p_;
  out.q_ = -q_;
  return out;
}

SurdValue SurdValue::conjugate() const {
  SurdValue out = *this;
  out.q_ = -q_;
  return out;
}

SurdValue SurdValue::reciprocal() const {
  if (p_ == 0 && q_ == 0) throw Error(ErrorKind::InvalidArgument, "reciprocal of zero surd");
  // t / (p + q sqrt(s)) = t (p - q sqrt(s)) / (p^2 - q^2 s)
  Wide norm = Wide(p_) * p_ - Wide(q_) * q_ * s_;
  auto c = canonical(Wide(t_) * p_, -Wide(t_) * q_, s_, norm);
  SurdValue out;
  out.p_ = narrow(c.p);
  out.q_ = narrow(c.q);
  out.s_ = narrow(c.s);
  out.t_ = narrow(c.t);
  return out;
}

SurdValue operator+(const SurdValue& a, const SurdValue& b) {
  const std::int64_t s = common_radicand(a, b);
  auto c = canonical(Wide(a.p_) * b.t_ + Wide(b.p_) * a.t_,
                     Wide(a.q_) * b.t_ + Wide(b.q_) * a.t_, s, Wide(a.t_) * b.t_);
  SurdValue out;
  out.p_ = narrow(c.p);
  out.q_ = narrow(c.q);
  out.s_ = narrow(c.s);
  out.t_ = narrow(c.t);
  return out;
}

SurdValue operator-(const SurdValue& a, const SurdValue& b) { return a + (-b); }

SurdValue operator*(const SurdValue& a, const SurdValue& b) {
  const std::int64_t s = common_radicand(a, b);
  auto c = canonical(Wide(a.p_) * b.p_ + Wide(a.q_) * b.q_ * s,
                     Wide(a.p_) * b.q_ + Wide(a.q_) * b.p_, s, Wide(a.t_) * b.t_);
  SurdValue out;
  out.p_ = narrow(c.p);
  out.q_ = narrow(c.q);
  out.s_ = narrow(c.s);
  out.t_ = narrow(c.t);
  return out;
}

SurdValue operator/(const SurdValue& a, const SurdValue& b) { return a * b.reciprocal(); }

std::string SurdValue::str() const {
  if (q_ == 0) {
    if (t_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "/" + std::to_string(t_);
  }
  std::string radical = "sqrt(" + std::to_string(s_) + ")";
  std::string irrational;
  const std::int64_t mag = std::llabs(q_);
  if (mag != 1) irrational = std::to_string(mag) + "*";
  irrational += radical;
  std::string numerator;
  if (p_ == 0) {
    numerator = (q_ < 0 ? "-" : "") + irrational;
    if (t_ == 1) return numerator;
    return numerator + "/" + std::to_string(t_);
  }
  numerator = std::to_string(p_) + (q_ < 0 ? "-" : "+") + irrational;
  if (t_ == 1) return numerator;
  return "(" + numerator + ")/" + std::to_string(t_);
}

double QuadraticRoot::value() const {
  return sign * std::sqrt(square.value());
}

std::string QuadraticRoot::str() const {
  std::string inner = square.str();
  return (sign < 0 ? "-" : "") + ("sqrt(" + inner + ")");
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::CollapseDomain: return "collapse-domain";
    case ErrorKind::UnsupportedForm: return "unsupported-form";
    case ErrorKind::NonCanonicalForm: return "non-canonical-form";
    case ErrorKind::NoBoundState: return "no-bound-state";
    case ErrorKind::NoNonvanishingZeros: return "no-nonvanishing-zeros";
    case ErrorKind::NotBoundState: return "not-a-bound-state";
    case ErrorKind::NoDecayingBranch: return "no-decaying-branch";
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::Overflow: return "overflow";
  }
  return "unknown";
}

}  // namespace ces
