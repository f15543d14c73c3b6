#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ces/surd.hpp"

namespace ces {

enum class Family { V1, V2, Kratzer };

const char* to_string(Family family);
Family parse_family(const std::string& text);

/// One term coefficient * r^exponent of a power-law potential. The exact
/// coefficient is carried when the coupling is rational (the r^-2 strength).
struct PowerTerm {
  double coefficient;
  std::optional<Rational> exact;
  Rational exponent;
};

/// Radial potential in units hbar = 2 mu = 1:
///   V1:      A/r + B/r^(1/2) + G/r^2,        G = -3/16
///   V2:      A r^(2/3) + B/r^(2/3) + G/r^2,   G = -5/36
///   Kratzer: A/r + B/r^(1/2) + G/r^2 with free G and angular momentum ell.
/// The centrifugal term ell(ell+1)/r^2 is folded into effective_G().
struct PotentialSpec {
  Family family = Family::V1;
  double A = 0.0;
  double B = 0.0;
  Rational G{-3, 16};
  int ell = 0;

  static PotentialSpec v1(double A, double B);
  static PotentialSpec v2(double A, double B);
  static PotentialSpec kratzer(double A, double B, Rational G, int ell = 0);

  Rational effective_G() const { return G + Rational(ell * (ell + 1)); }
  std::vector<PowerTerm> terms() const;
  double operator()(double r) const;
};

}  // namespace ces
