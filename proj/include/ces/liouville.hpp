#pragma once

#include <optional>

#include "ces/potential.hpp"
#include "ces/surd.hpp"

namespace ces::liouville {

/// Canonical half-line problem
///   -chi'' + (residual_centrifugal / x^2 + p x^2 + q x) chi = lambda chi
/// obtained from the radial equation by r = x^c, psi = x^((c-1)/2) chi.
struct CanonicalOscillator {
  Rational c{1};
  double p = 0.0;
  double q = 0.0;
  double lambda = 0.0;
  Rational residual_centrifugal{0};

  double potential(double x) const { return (p * x + q) * x; }
};

/// Applies -chi'' + [((c^2-1)/4) x^-2 + c^2 x^(2c-2) (V(x^c) - E)] chi = 0 and
/// collects coefficients by power of x. Throws NonCanonicalForm when a term
/// lands outside the powers {-2, 0, 1, 2}.
CanonicalOscillator transform(const PotentialSpec& spec, const Rational& c, double E);

struct ThresholdExponents {
  Rational regular;    // (c+1)/(2c)
  Rational irregular;  // (c-1)/(2c)
};

// chi ~ x and chi ~ 1 near the origin, mapped back to powers of r.
ThresholdExponents threshold_exponents(const CanonicalOscillator& osc);

struct CancellationExponent {
  double value;
  std::optional<Rational> exact;  // present when c is rational
};

/// Solves (c^2-1)/4 + c^2 G_eff = 0, i.e. c = 1/sqrt(1 + 4 G_eff).
CancellationExponent cancellation_exponent(const PotentialSpec& spec);
CancellationExponent cancellation_exponent(const Rational& G);

// Exact c for the spec, throwing NonCanonicalForm when it is irrational.
Rational exact_cancellation_exponent(const PotentialSpec& spec);

// psi(r) from chi(x) with x = r^(1/c).
inline double wavefunction_prefactor_power(const Rational& c) {
  return to_double((c - 1) / 2);
}

}  // namespace ces::liouville
