#include "ces/potential.hpp"

#include <cmath>

#include "ces/error.hpp"

namespace ces {

const char* to_string(Family family) {
  switch (family) {
    case Family::V1: return "v1";
    case Family::V2: return "v2";
    case Family::Kratzer: return "kratzer";
  }
  return "unknown";
}

Family parse_family(const std::string& text) {
  if (text == "v1") return Family::V1;
  if (text == "v2") return Family::V2;
  if (text == "kratzer") return Family::Kratzer;
  throw Error(ErrorKind::InvalidArgument, "unknown potential family '" + text + "'");
}

PotentialSpec PotentialSpec::v1(double A, double B) {
  return {Family::V1, A, B, Rational(-3, 16), 0};
}

PotentialSpec PotentialSpec::v2(double A, double B) {
  return {Family::V2, A, B, Rational(-5, 36), 0};
}

PotentialSpec PotentialSpec::kratzer(double A, double B, Rational G, int ell) {
  if (ell < 0) throw Error(ErrorKind::InvalidArgument, "angular momentum must be nonnegative");
  return {Family::Kratzer, A, B, G, ell};
}

std::vector<PowerTerm> PotentialSpec::terms() const {
  const Rational g = effective_G();
  const PowerTerm singular{to_double(g), g, Rational(-2)};
  switch (family) {
    case Family::V1:
    case Family::Kratzer:
      return {{A, std::nullopt, Rational(-1)}, {B, std::nullopt, Rational(-1, 2)}, singular};
    case Family::V2:
      return {{A, std::nullopt, Rational(2, 3)}, {B, std::nullopt, Rational(-2, 3)}, singular};
  }
  throw Error(ErrorKind::UnsupportedForm, "unknown potential family");
}

double PotentialSpec::operator()(double r) const {
  double sum = 0.0;
  for (const auto& term : terms()) {
    sum += term.coefficient * std::pow(r, to_double(term.exponent));
  }
  return sum;
}

}  // namespace ces
