#include "ces/liouville.hpp"

#include <cmath>
#include <numeric>

#include "ces/error.hpp"

namespace ces::liouville {

namespace {

// Integer square root of a nonnegative 64-bit value if it is a perfect square.
std::optional<std::int64_t> exact_isqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  for (std::int64_t r = std::max<std::int64_t>(0, root - 1); r <= root + 1; ++r) {
    if (r * r == v) return r;
  }
  return std::nullopt;
}

}  // namespace

CanonicalOscillator transform(const PotentialSpec& spec, const Rational& c, double E) {
  if (c <= Rational(0)) throw Error(ErrorKind::InvalidArgument, "Liouville exponent c must be positive");

  CanonicalOscillator osc;
  osc.c = c;
  const Rational c2 = c * c;
  const double c2f = to_double(c2);
  osc.residual_centrifugal = (c2 - 1) / 4;
  double constant = 0.0;

  auto collect = [&](double coefficient, const std::optional<Rational>& exact,
                     const Rational& exponent) {
    // c^2 x^(2c-2) * coefficient * (x^c)^exponent
    const Rational power = c * exponent + 2 * c - 2;
    if (power == Rational(-2)) {
      if (!exact) {
        throw Error(ErrorKind::NonCanonicalForm,
                    "inverse-square term in x must carry an exact rational coefficient");
      }
      osc.residual_centrifugal += c2 * *exact;
    } else if (power == Rational(0)) {
      constant += c2f * coefficient;
    } else if (power == Rational(1)) {
      osc.q += c2f * coefficient;
    } else if (power == Rational(2)) {
      osc.p += c2f * coefficient;
    } else if (coefficient != 0.0) {
      throw Error(ErrorKind::NonCanonicalForm,
                  "term maps to x^" + to_string(power) + ", outside the canonical form");
    }
  };

  for (const auto& term : spec.terms()) collect(term.coefficient, term.exact, term.exponent);
  collect(-E, std::nullopt, Rational(0));
  osc.lambda = -constant;
  return osc;
}

ThresholdExponents threshold_exponents(const CanonicalOscillator& osc) {
  if (osc.residual_centrifugal != Rational(0)) {
    throw Error(ErrorKind::NonCanonicalForm,
                "x^-2 term survives the transform; use singularity::classify_regime for "
                "general exponents");
  }
  const Rational& c = osc.c;
  return {(c + 1) / (2 * c), (c - 1) / (2 * c)};
}

CancellationExponent cancellation_exponent(const Rational& G) {
  // c^2 (1 + 4G) = 1
  const Rational denom = 1 + 4 * G;
  if (denom <= Rational(0)) {
    throw Error(ErrorKind::CollapseDomain,
                "no real Liouville exponent removes the x^-2 term for G <= -1/4");
  }
  const Rational c2 = 1 / denom;
  CancellationExponent out{std::sqrt(to_double(c2)), std::nullopt};
  auto num = exact_isqrt(c2.numerator());
  auto den = exact_isqrt(c2.denominator());
  if (num && den) out.exact = Rational(*num, *den);
  return out;
}

CancellationExponent cancellation_exponent(const PotentialSpec& spec) {
  return cancellation_exponent(spec.effective_G());
}

Rational exact_cancellation_exponent(const PotentialSpec& spec) {
  auto c = cancellation_exponent(spec);
  if (!c.exact) {
    throw Error(ErrorKind::NonCanonicalForm,
                "G_eff admits only an irrational Liouville exponent c = " +
                    std::to_string(c.value));
  }
  return *c.exact;
}

}  // namespace ces::liouville
