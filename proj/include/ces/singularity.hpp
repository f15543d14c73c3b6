#pragma once

#include <optional>
#include <span>
#include <string>

#include "ces/surd.hpp"

namespace ces::singularity {

// Regime ladder for the strength G of a G/r^2 singularity (s-wave, with
// angular momentum folded into G_eff = G + ell(ell+1)).
enum class Regime { StrongRepulsion, WeakRepulsion, Analytic, WeakAttraction, Collapse };

enum class BoundaryCondition {
  NormalizabilityOnly,  // psi in L2(0, inf) alone removes r^-L
  VanishAtOrigin,       // psi(r) -> 0
  VanishOverSqrtR,      // psi(r) / sqrt(r) -> 0
  None,                 // fall to the center, no regularization
};

const char* to_string(Regime regime);
const char* to_string(BoundaryCondition bc);

struct RegimeReport {
  Rational G;
  int ell = 0;
  Rational G_eff;
  // L with L(L+1) = G_eff; absent in the collapse domain.
  std::optional<double> L;
  std::optional<double> exp_regular;    // L + 1
  std::optional<double> exp_irregular;  // -L
  Regime regime = Regime::Collapse;
  BoundaryCondition boundary_condition = BoundaryCondition::None;
  // true only where the condition follows from normalizability of an
  // analytic potential; elsewhere it is a chosen regularization.
  bool equivalence_proven = false;
};

/// L = sqrt((ell + 1/2)^2 + G) - 1/2. Throws CollapseDomain when the
/// discriminant is negative.
double effective_L(const Rational& G, int ell);

RegimeReport classify_regime(const Rational& G, int ell = 0);

struct Sample {
  double r;
  double psi;
};

struct BcFit {
  double exponent = 0.0;     // fitted leading power of |psi| ~ r^exponent
  double rms_log_residual = 0.0;
  bool satisfied = false;
  bool indeterminate = false;
};

/// Fits log|psi| against log r on near-origin samples and tests the fitted
/// exponent against the regime's boundary condition (> 1/2 for
/// VanishOverSqrtR, > 0 for VanishAtOrigin, > -1/2 for NormalizabilityOnly).
/// Samples must lie below r = 1e-4 and span at least two decades.
BcFit bc_satisfied(std::span<const Sample> samples, const RegimeReport& report);

}  // namespace ces::singularity
