#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ces/liouville.hpp"
#include "ces/potential.hpp"

namespace ces::oracle {

/// Uniform grid x_i = i h, i = 0..steps, on the canonical half line.
struct GridSpec {
  double x_max = 20.0;
  double h = 1e-4;

  // Rounds x_max up to a whole number of steps.
  static GridSpec make(double x_max, double h);

  std::size_t steps() const;
  // Throws InvalidGrid unless h > 0, x_max/h is an integer >= 1e4 and
  // x_max >= 10 * turning_point (pass 0 to skip the last check).
  void validate(double turning_point = 0.0) const;
};

inline constexpr double kDefaultStep = 1e-4;
inline constexpr std::size_t kMinSteps = 10000;
inline constexpr std::size_t kFitWindow = 50;  // c_irr/c_reg fit uses x in [h, 50h]

enum class Direction { Outward, Inward };

/// Numerov solution sampled at x_i = i h. Values share one scale; the
/// discarded magnitude is log_scale (true = values * exp(log_scale)). Far
/// tails that fell below the double range after renormalization read 0.
struct Solution {
  double h = 0.0;
  std::vector<double> values;
  double log_scale = 0.0;
  std::size_t renormalizations = 0;

  double x(std::size_t i) const { return static_cast<double>(i) * h; }
};

/// Outer classical turning point: positive root of p x^2 + q x = lambda.
/// Returns nullopt when there is no classically allowed region reaching out.
std::optional<double> turning_point(const liouville::CanonicalOscillator& osc);

/// O(h^4) Numerov march of chi'' = (p x^2 + q x - lambda) chi.
/// Outward: chi(0) = 0, chi(h) = h. Inward: from x_max with the decaying
/// envelope exp(-(sqrt(p)/2) x^2 - q/(2 sqrt(p)) x). Outward marches stop at
/// stop_index when given.
Solution integrate_canonical(const liouville::CanonicalOscillator& osc, const GridSpec& grid,
                             Direction direction,
                             std::optional<std::size_t> stop_index = std::nullopt);

struct ShootingOutcome {
  double parameter = 0.0;  // scanned quantity (E for V1, B for V2); NaN if unset
  double residual = 0.0;   // normalized Wronskian at the match point
  double c_irr = 0.0;      // chi ~ c_irr + c_reg x near the origin (inward branch)
  double c_reg = 0.0;
  int nodes = 0;
  bool norm_finite = false;
  double x_match = 0.0;
};

ShootingOutcome shooting_residual(const liouville::CanonicalOscillator& osc,
                                  const GridSpec& grid);

/// Tolerance below which |c_irr| counts as zero: 1e-5 |c_reg| (50 h).
double c_irr_tolerance(double c_reg, double h);

struct Eigenvalue {
  double value = 0.0;  // E (spectrum_scan) or B (coupling_scan)
  int nodes = 0;
  double residual = 0.0;
};

/// Default grid for an energy scan over [e_min, e_max]:
/// h = 1e-4, x_max = max(20, 12/sqrt(beta_scale), 10 x_t) with
/// beta_scale = p^(1/4) and x_t the largest turning point on the range.
GridSpec default_grid(const PotentialSpec& spec, double e_min, double e_max);

/// Brackets zeros of the shooting residual on an even E grid of n_points
/// and bisects each to |dE| < 1e-9. Eigenvalues ascend; empty if none.
std::vector<Eigenvalue> spectrum_scan(const PotentialSpec& spec, double e_min, double e_max,
                                      int n_points,
                                      const std::optional<GridSpec>& grid = std::nullopt);

// Same scan over the coupling B at fixed energy; the natural axis for V2,
// whose canonical eigenvalue is lambda = -(9/4) B.
GridSpec default_coupling_grid(const PotentialSpec& spec, double E, double b_min,
                               double b_max);
std::vector<Eigenvalue> coupling_scan(const PotentialSpec& spec, double E, double b_min,
                                      double b_max, int n_points,
                                      const std::optional<GridSpec>& grid = std::nullopt);

struct PathologyRow {
  double E = 0.0;
  double c_irr = 0.0;
  double c_reg = 0.0;
  double c_tolerance = 0.0;
  double fitted_exponent = 0.0;  // log|psi| vs log r near the origin
  double near_origin_norm = 0.0;
  bool norm_finite = false;
  bool vanishes_at_origin = false;    // psi -> 0
  bool vanishes_over_sqrt_r = false;  // |c_irr| within tolerance
};

/// Integrates only the decaying (inward) branch at each energy and reports
/// both threshold verdicts for the reconstructed psi(r).
std::vector<PathologyRow> weak_bc_pathology_demo(const PotentialSpec& spec,
                                                 std::span<const double> energies,
                                                 const std::optional<GridSpec>& grid = std::nullopt);

}  // namespace ces::oracle
