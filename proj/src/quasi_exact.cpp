#include "ces/quasi_exact.hpp"

#include <algorithm>
#include <cmath>

#include "ces/error.hpp"
#include "ces/hermite.hpp"

namespace ces::quasi_exact {

namespace {

const hermite::Zero& zero_at(const hermite::ZeroSet& set, int k) {
  if (set.zeros.empty()) {
    throw Error(ErrorKind::NoNonvanishingZeros,
                "H_" + std::to_string(set.n) + " has no nonvanishing zeros");
  }
  if (k < 1 || k > static_cast<int>(set.zeros.size())) {
    throw Error(ErrorKind::InvalidArgument,
                "zero index k=" + std::to_string(k) + " out of range 1.." +
                    std::to_string(set.zeros.size()) + " for n=" + std::to_string(set.n));
  }
  return set.zeros[k - 1];
}

hermite::ZeroSet zero_set(int n) {
  if (n < 2) {
    throw Error(ErrorKind::NoNonvanishingZeros,
                "n=" + std::to_string(n) + " has no nonvanishing Hermite zeros");
  }
  return hermite::zeros(n);
}

}  // namespace

double beta_of(int n, int k, double A) {
  if (!(A < 0.0)) throw Error(ErrorKind::NoBoundState, "quasi-exact states need A < 0");
  const auto set = zero_set(n);
  const double X = zero_at(set, k).x;
  const double denom = 2.0 * n + 1.0 - X * X;
  return 2.0 * std::sqrt(-A / denom);
}

int node_count(int n, int k) {
  const auto set = zero_set(n);
  const double X = zero_at(set, k).x;
  const auto all = set.all_zeros();
  return static_cast<int>(std::count_if(all.begin(), all.end(), [&](double z) { return z > X; }));
}

CesState make_state(int n, int k, double A) {
  const double beta = beta_of(n, k, A);
  const auto set = zero_set(n);
  const auto& zero = zero_at(set, k);

  CesState s;
  s.n = n;
  s.k = k;
  s.X = zero.x;
  s.X_exact = zero.exact;
  s.A = A;
  s.beta = beta;
  const double b2 = beta * beta;
  s.E = -0.25 * b2 * b2;
  s.B = 0.5 * zero.x * b2 * beta;
  s.Bprime = s.B / 8.0;
  s.M = node_count(n, k);
  return s;
}

double dutra_psi1(int n, double B, double E, double C, double r) {
  if (!(E < 0.0)) throw Error(ErrorKind::NotBoundState, "dutra_psi1 needs E < 0");
  if (r < 0.0) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  const double beta = std::pow(-4.0 * E, 0.25);
  const double z = beta * (std::sqrt(r) - B / (2.0 * E));
  return C * std::pow(r, 0.25) * std::exp(-0.5 * z * z) * hermite::eval(n, z).value;
}

double dutra_psi1(const CesState& state, double C, double r) {
  return dutra_psi1(state.n, state.B, state.E, C, r);
}

const char* to_string(Verdict v) { return v == Verdict::Accept ? "ACCEPT" : "REJECT"; }

BoundaryAudit boundary_audit(int n, double B, double E, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "nodal tolerance must be positive");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "Hermite order must be nonnegative");
  if (!(E < 0.0)) {
    throw Error(ErrorKind::NotBoundState, "boundary audit needs a bound-state energy E < 0");
  }
  BoundaryAudit audit;
  audit.n = n;
  audit.B = B;
  audit.E = E;
  audit.beta = std::pow(-4.0 * E, 0.25);
  audit.z0 = -audit.beta * B / (2.0 * E);
  const auto h = hermite::eval(n, audit.z0);
  audit.hermite_at_z0 = h.value;
  audit.hermite_slope_at_z0 = h.derivative;
  audit.nodal_zero = std::abs(h.value) <
                     tol * std::abs(h.derivative) * std::max(1.0, std::abs(audit.z0));
  audit.coupling_vanishes = (B == 0.0);
  audit.leading_exponent = audit.nodal_zero ? 0.75 : 0.25;
  audit.vanishes_at_origin = true;
  audit.vanishes_over_sqrt_r = audit.nodal_zero;
  audit.verdict =
      (audit.nodal_zero && !audit.coupling_vanishes) ? Verdict::Accept : Verdict::Reject;
  return audit;
}

double selfconsistency_residual(const CesState& s) {
  return 2.0 * (2.0 * s.n + 1.0) * std::sqrt(-s.E) + s.B * s.B / s.E + 4.0 * s.A;
}

std::vector<CesState> table2(double A, int n_max) {
  if (!(A < 0.0)) throw Error(ErrorKind::NoBoundState, "quasi-exact states need A < 0");
  if (n_max < 2) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 2");
  std::vector<CesState> states;
  for (int n = 2; n <= n_max; ++n) {
    const int count = static_cast<int>(hermite::zeros(n).zeros.size());
    for (int k = 1; k <= count; ++k) states.push_back(make_state(n, k, A));
  }
  std::stable_sort(states.begin(), states.end(), [](const CesState& a, const CesState& b) {
    return a.M != b.M ? a.M < b.M : a.n < b.n;
  });
  return states;
}

std::string ExactForms::bprime_str() const {
  return (bprime_sign < 0 ? "-" : "") + ("sqrt(" + bprime_square.str() + ")");
}

std::optional<ExactForms> exact_forms(const CesState& state) {
  if (!state.X_exact) return std::nullopt;
  if (state.A != std::trunc(state.A) || std::abs(state.A) > 1e6) return std::nullopt;
  const auto A = static_cast<std::int64_t>(state.A);
  const SurdValue x2 = state.X_exact->square;
  const SurdValue D = SurdValue(2 * state.n + 1) - x2;
  const SurdValue a(A);
  ExactForms out;
  out.energy = -(SurdValue(4) * a * a) / (D * D);
  out.bprime_square = -(a * a * a * x2) / (SurdValue(4) * D * D * D);
  out.bprime_sign = state.X_exact->sign;
  return out;
}

}  // namespace ces::quasi_exact
