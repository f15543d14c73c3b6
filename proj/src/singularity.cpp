#include "ces/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ces/error.hpp"

namespace ces::singularity {

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::StrongRepulsion: return "strong-repulsion";
    case Regime::WeakRepulsion: return "weak-repulsion";
    case Regime::Analytic: return "analytic";
    case Regime::WeakAttraction: return "weak-attraction";
    case Regime::Collapse: return "collapse";
  }
  return "unknown";
}

const char* to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::NormalizabilityOnly: return "normalizability-only";
    case BoundaryCondition::VanishAtOrigin: return "psi(0)=0";
    case BoundaryCondition::VanishOverSqrtR: return "psi/sqrt(r)->0";
    case BoundaryCondition::None: return "none";
  }
  return "unknown";
}

double effective_L(const Rational& G, int ell) {
  if (ell < 0) throw Error(ErrorKind::InvalidArgument, "angular momentum must be nonnegative");
  const Rational half_ell = Rational(2 * ell + 1, 2);
  const Rational discriminant = half_ell * half_ell + G;
  if (discriminant < Rational(0)) {
    throw Error(ErrorKind::CollapseDomain,
                "(ell+1/2)^2 + G < 0: singularity strength lies in the collapse domain");
  }
  return std::sqrt(to_double(discriminant)) - 0.5;
}

RegimeReport classify_regime(const Rational& G, int ell) {
  if (ell < 0) throw Error(ErrorKind::InvalidArgument, "angular momentum must be nonnegative");
  RegimeReport report;
  report.G = G;
  report.ell = ell;
  report.G_eff = G + Rational(ell * (ell + 1));
  const Rational& g = report.G_eff;

  if (g <= Rational(-1, 4)) {
    report.regime = Regime::Collapse;
    report.boundary_condition = BoundaryCondition::None;
    return report;
  }

  const double L = effective_L(g, 0);
  report.L = L;
  report.exp_regular = L + 1.0;
  report.exp_irregular = -L;

  if (g >= Rational(3, 4)) {
    report.regime = Regime::StrongRepulsion;
    report.boundary_condition = BoundaryCondition::NormalizabilityOnly;
    report.equivalence_proven = true;
  } else if (g > Rational(0)) {
    report.regime = Regime::WeakRepulsion;
    report.boundary_condition = BoundaryCondition::VanishAtOrigin;
  } else if (g == Rational(0)) {
    report.regime = Regime::Analytic;
    report.boundary_condition = BoundaryCondition::VanishAtOrigin;
    report.equivalence_proven = true;
  } else {
    report.regime = Regime::WeakAttraction;
    report.boundary_condition = BoundaryCondition::VanishOverSqrtR;
  }
  return report;
}

BcFit bc_satisfied(std::span<const Sample> samples, const RegimeReport& report) {
  if (samples.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "boundary-condition fit needs at least 3 samples");
  }
  double r_min = samples.front().r, r_max = samples.front().r;
  for (const auto& s : samples) {
    if (!(s.r > 0.0) || s.r >= 1e-4) {
      throw Error(ErrorKind::InvalidArgument,
                  "boundary-condition samples must lie in 0 < r < 1e-4");
    }
    r_min = std::min(r_min, s.r);
    r_max = std::max(r_max, s.r);
  }
  if (std::log10(r_max / r_min) < 2.0) {
    throw Error(ErrorKind::InvalidArgument, "boundary-condition samples must span two decades");
  }

  BcFit fit;
  // a sign change or exact zero means psi is not a single power law here
  const bool positive = samples.front().psi > 0.0;
  std::vector<double> lx, ly;
  for (const auto& s : samples) {
    if (s.psi == 0.0 || (s.psi > 0.0) != positive || !std::isfinite(s.psi)) {
      fit.indeterminate = true;
      return fit;
    }
    lx.push_back(std::log(s.r));
    ly.push_back(std::log(std::abs(s.psi)));
  }

  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double d = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += d * d;
  }
  fit.rms_log_residual = std::sqrt(ss / n);
  // a clean power law leaves residuals far below this
  if (fit.rms_log_residual > 0.05) {
    fit.indeterminate = true;
    return fit;
  }

  switch (report.boundary_condition) {
    case BoundaryCondition::VanishOverSqrtR: fit.satisfied = fit.exponent > 0.5; break;
    case BoundaryCondition::VanishAtOrigin: fit.satisfied = fit.exponent > 0.0; break;
    case BoundaryCondition::NormalizabilityOnly: fit.satisfied = fit.exponent > -0.5; break;
    case BoundaryCondition::None: fit.satisfied = false; break;
  }
  return fit;
}

}  // namespace ces::singularity
