#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ces/surd.hpp"

namespace ces::quasi_exact {

/// One quasi-exact bound state of V1 = A/r + B/sqrt(r) - 3/(16 r^2): the
/// Hermite-type wavefunction whose polynomial factor has a node exactly at
/// the origin, which fixes B and E for given (n, k, A).
struct CesState {
  int n = 0;
  int k = 0;
  double X = 0.0;                         // k-th nonvanishing zero of H_n
  std::optional<QuadraticRoot> X_exact;   // n <= 5
  double A = 0.0;
  double beta = 0.0;
  double E = 0.0;       // -beta^4 / 4
  double B = 0.0;       // X beta^3 / 2
  double Bprime = 0.0;  // B / 8, the tabulated coupling
  int M = 0;            // nodes of psi on (0, inf)
};

double beta_of(int n, int k, double A);
CesState make_state(int n, int k, double A);

/// Zeros of H_n (origin zero of odd n included) lying strictly above X(n, k).
int node_count(int n, int k);

/// psi(r) = C r^(1/4) exp(-beta^2 (sqrt(r) - B/(2E))^2 / 2) H_n(beta (sqrt(r) - B/(2E)))
/// with beta = (-4E)^(1/4).
double dutra_psi1(int n, double B, double E, double C, double r);
double dutra_psi1(const CesState& state, double C, double r);

enum class Verdict { Accept, Reject };
const char* to_string(Verdict v);

struct BoundaryAudit {
  int n = 0;
  double B = 0.0;
  double E = 0.0;
  double beta = 0.0;
  double z0 = 0.0;          // Hermite argument at r = 0
  double hermite_at_z0 = 0.0;
  double hermite_slope_at_z0 = 0.0;
  bool nodal_zero = false;
  double leading_exponent = 0.0;  // 3/4 with a nodal zero, 1/4 otherwise
  bool vanishes_at_origin = true;     // psi -> 0
  bool vanishes_over_sqrt_r = false;  // psi / sqrt(r) -> 0
  bool coupling_vanishes = false;     // B == 0
  Verdict verdict = Verdict::Reject;
};

/// Checks whether a Hermite-type V1 wavefunction with energy E < 0 and
/// coupling B obeys the threshold condition psi/sqrt(r) -> 0. A nodal zero
/// means |H_n(z0)| < tol |H_n'(z0)| max(1, |z0|). The default suits inputs
/// carried at full double precision; rounded inputs need a looser tol.
inline constexpr double kNodalTolerance = 1e-9;
BoundaryAudit boundary_audit(int n, double B, double E, double tol = kNodalTolerance);

/// 2(2n+1) sqrt(-E) + B^2/E + 4A, zero for every consistent state.
double selfconsistency_residual(const CesState& state);

/// All states with 2 <= n <= n_max at coupling A, sorted by (M, n).
std::vector<CesState> table2(double A, int n_max);

/// Exact E and B' for integer A and n <= 5:
///   E = -4 A^2 / D^2,  B'^2 = -A^3 X^2 / (4 D^3),  D = 2n + 1 - X^2.
struct ExactForms {
  SurdValue energy;
  SurdValue bprime_square;
  int bprime_sign = 1;

  std::string bprime_str() const;
};
std::optional<ExactForms> exact_forms(const CesState& state);

}  // namespace ces::quasi_exact
