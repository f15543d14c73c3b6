#include "ces/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "ces/error.hpp"
#include "ces/singularity.hpp"

namespace ces::oracle {

using liouville::CanonicalOscillator;

namespace {

constexpr double kRenormThreshold = 1e100;
constexpr std::size_t kRenormInterval = 1000;

struct RenormEvent {
  std::size_t boundary;  // first index already at the new scale
  double log_factor;
};

// Brings every stored value onto the scale of the last-written values.
// `old_below` tells which side of a boundary still holds the previous scale.
void unify_scale(std::vector<double>& values, const std::vector<RenormEvent>& events,
                 bool old_below) {
  if (events.empty()) return;
  const std::size_t n = values.size();
  if (old_below) {
    // outward: indices < boundary are stale
    double cum = 0.0;
    std::size_t e = events.size();
    for (std::size_t j = n; j-- > 0;) {
      while (e > 0 && j < events[e - 1].boundary) cum += events[--e].log_factor;
      if (cum != 0.0) values[j] *= std::exp(-cum);
    }
  } else {
    // inward: indices > boundary are stale
    double cum = 0.0;
    std::size_t e = events.size();
    for (std::size_t j = 0; j < n; ++j) {
      while (e > 0 && j > events[e - 1].boundary) cum += events[--e].log_factor;
      if (cum != 0.0) values[j] *= std::exp(-cum);
    }
  }
}

void require_canonical(const CanonicalOscillator& osc) {
  if (osc.residual_centrifugal != Rational(0)) {
    throw Error(ErrorKind::NonCanonicalForm,
                "canonical oscillator keeps an x^-2 term; the Numerov start assumes none");
  }
}

int sign_of(double v) { return (v > 0) - (v < 0); }

int count_sign_changes(const std::vector<double>& v, std::size_t from, std::size_t to,
                       int& last_sign) {
  int changes = 0;
  for (std::size_t i = from; i <= to && i < v.size(); ++i) {
    int s = sign_of(v[i]);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

struct LineFit {
  double intercept;
  double slope;
};

LineFit least_squares_line(const Solution& sol, std::size_t first, std::size_t last) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (std::size_t i = first; i <= last; ++i) {
    const double x = sol.x(i), y = sol.values[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  const double det = n * sxx - sx * sx;
  return {(sxx * sy - sx * sxy) / det, (n * sxy - sx * sy) / det};
}

// c * integral_0^x_end x^(2c-2) chi^2 dx, i.e. the norm of psi on (0, x_end^c).
double near_origin_norm(const Solution& sol, const Rational& c, std::size_t last) {
  const double cf = to_double(c);
  const double power = 2.0 * cf - 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    const double x = sol.x(i);
    const double w = (i == 0 || i == last) ? 0.5 : 1.0;
    const double weight = (x == 0.0 && power <= 0.0) ? (power == 0.0 ? 1.0 : 0.0)
                                                     : std::pow(x, power);
    sum += w * weight * sol.values[i] * sol.values[i];
  }
  return cf * sum * sol.h;
}

void normalize_peak(Solution& sol) {
  double peak = 0.0;
  for (double v : sol.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0 || !std::isfinite(peak)) return;
  for (double& v : sol.values) v /= peak;
  sol.log_scale += std::log(peak);
}

template <class F>
std::vector<ShootingOutcome> evaluate_all(const std::vector<double>& params, F&& shoot) {
  std::vector<ShootingOutcome> out(params.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     params.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < params.size(); ++i) out[i] = shoot(params[i]);
    return out;
  }
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < params.size(); i += workers) out[i] = shoot(params[i]);
    }));
  }
  for (auto& t : tasks) t.get();
  return out;
}

// Sign-change bracketing plus bisection, shared by the E and B scans.
template <class F>
std::vector<Eigenvalue> scan(double lo, double hi, int n_points, F&& shoot) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "scan range must satisfy min < max");
  if (n_points < 2) throw Error(ErrorKind::InvalidArgument, "scan needs at least 2 points");
  std::vector<double> params(n_points);
  for (int i = 0; i < n_points; ++i) {
    params[i] = (i == n_points - 1) ? hi : lo + (hi - lo) * i / (n_points - 1);
  }
  const auto samples = evaluate_all(params, shoot);

  std::vector<Eigenvalue> found;
  for (int i = 0; i + 1 < n_points; ++i) {
    int s_lo = sign_of(samples[i].residual);
    int s_hi = sign_of(samples[i + 1].residual);
    if (s_lo == 0) {
      found.push_back({params[i], samples[i].nodes, samples[i].residual});
      continue;
    }
    if (s_hi == 0 || s_lo == s_hi) continue;
    double a = params[i], b = params[i + 1];
    while (b - a >= 1e-9) {
      const double mid = 0.5 * (a + b);
      const int s_mid = sign_of(shoot(mid).residual);
      if (s_mid == 0) {
        a = b = mid;
        break;
      }
      if (s_mid == s_lo) {
        a = mid;
      } else {
        b = mid;
      }
    }
    const double root = 0.5 * (a + b);
    const auto at_root = shoot(root);
    found.push_back({root, at_root.nodes, at_root.residual});
  }
  if (sign_of(samples.back().residual) == 0) {
    found.push_back({params.back(), samples.back().nodes, 0.0});
  }
  std::sort(found.begin(), found.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return a.value < b.value; });
  return found;
}

double max_turning_point(std::initializer_list<CanonicalOscillator> oscs) {
  double x_t = 0.0;
  for (const auto& osc : oscs) {
    if (auto t = turning_point(osc)) x_t = std::max(x_t, *t);
  }
  return x_t;
}

GridSpec grid_for(double p_min, double x_t) {
  if (!(p_min > 0.0)) {
    throw Error(ErrorKind::NoDecayingBranch,
                "canonical x^2 coefficient p must be positive on the whole scan range");
  }
  const double beta_scale = std::pow(p_min, 0.25);
  const double x_max = std::max({20.0, 12.0 / std::sqrt(beta_scale), 10.0 * x_t});
  return GridSpec::make(x_max, kDefaultStep);
}

}  // namespace

GridSpec GridSpec::make(double x_max, double h) {
  if (!(h > 0.0) || !(x_max > 0.0)) {
    throw Error(ErrorKind::InvalidGrid, "grid needs h > 0 and x_max > 0");
  }
  const double steps = std::ceil(x_max / h - 1e-9);
  return {steps * h, h};
}

std::size_t GridSpec::steps() const {
  return static_cast<std::size_t>(std::llround(x_max / h));
}

void GridSpec::validate(double turning_point) const {
  if (!(h > 0.0) || !std::isfinite(h) || !(x_max > 0.0) || !std::isfinite(x_max)) {
    throw Error(ErrorKind::InvalidGrid, "grid needs finite h > 0 and x_max > 0");
  }
  const double ratio = x_max / h;
  if (std::abs(ratio - std::round(ratio)) > 1e-6 * std::max(1.0, ratio)) {
    throw Error(ErrorKind::InvalidGrid, "x_max / h must be an integer");
  }
  if (steps() < kMinSteps) {
    throw Error(ErrorKind::InvalidGrid, "grid needs at least 1e4 steps");
  }
  if (x_max < 10.0 * turning_point) {
    throw Error(ErrorKind::InvalidGrid, "x_max must be at least 10x the turning point (" +
                                            std::to_string(turning_point) + ")");
  }
}

std::optional<double> turning_point(const CanonicalOscillator& osc) {
  const double p = osc.p, q = osc.q, lambda = osc.lambda;
  if (p > 0.0) {
    const double disc = q * q + 4.0 * p * lambda;
    if (disc < 0.0) return std::nullopt;
    const double root = (-q + std::sqrt(disc)) / (2.0 * p);
    if (root > 0.0) return root;
    return std::nullopt;
  }
  if (p == 0.0 && q > 0.0 && lambda > 0.0) return lambda / q;
  return std::nullopt;
}

Solution integrate_canonical(const CanonicalOscillator& osc, const GridSpec& grid,
                             Direction direction, std::optional<std::size_t> stop_index) {
  require_canonical(osc);
  grid.validate();
  const std::size_t n = grid.steps();
  const double h = grid.h;
  const double k = h * h / 12.0;
  auto g = [&](std::size_t i) {
    const double x = static_cast<double>(i) * h;
    return osc.potential(x) - osc.lambda;
  };

  Solution sol;
  sol.h = h;
  std::vector<RenormEvent> events;

  if (direction == Direction::Outward) {
    const std::size_t last = std::min(n, stop_index.value_or(n));
    sol.values.assign(last + 1, 0.0);
    if (last >= 1) sol.values[1] = h;
    double a_prev = 1.0 - k * g(0);
    double g_curr = g(1);
    for (std::size_t i = 1; i < last; ++i) {
      const double g_next = g(i + 1);
      const double a_next = 1.0 - k * g_next;
      sol.values[i + 1] =
          ((2.0 + 10.0 * k * g_curr) * sol.values[i] - a_prev * sol.values[i - 1]) / a_next;
      a_prev = 1.0 - k * g_curr;
      g_curr = g_next;
      if ((i + 1) % kRenormInterval == 0 && std::abs(sol.values[i + 1]) > kRenormThreshold) {
        const double s = std::abs(sol.values[i + 1]);
        sol.values[i] /= s;
        sol.values[i + 1] /= s;
        events.push_back({i, std::log(s)});
      }
    }
    unify_scale(sol.values, events, /*old_below=*/true);
  } else {
    if (!(osc.p > 0.0)) {
      throw Error(ErrorKind::NoDecayingBranch,
                  "inward integration needs p > 0 for a decaying branch");
    }
    const double sp = std::sqrt(osc.p);
    auto envelope = [&](double x) { return -0.5 * sp * x * x - osc.q / (2.0 * sp) * x; };
    sol.values.assign(n + 1, 0.0);
    sol.values[n] = 1.0;
    sol.values[n - 1] = std::exp(envelope(grid.x_max - h) - envelope(grid.x_max));
    double a_prev = 1.0 - k * g(n);
    double g_curr = g(n - 1);
    for (std::size_t i = n - 1; i >= 1; --i) {
      const double g_next = g(i - 1);
      const double a_next = 1.0 - k * g_next;
      sol.values[i - 1] =
          ((2.0 + 10.0 * k * g_curr) * sol.values[i] - a_prev * sol.values[i + 1]) / a_next;
      a_prev = 1.0 - k * g_curr;
      g_curr = g_next;
      if ((n - i + 1) % kRenormInterval == 0 &&
          std::abs(sol.values[i - 1]) > kRenormThreshold) {
        const double s = std::abs(sol.values[i - 1]);
        sol.values[i] /= s;
        sol.values[i - 1] /= s;
        events.push_back({i, std::log(s)});
      }
    }
    unify_scale(sol.values, events, /*old_below=*/false);
  }

  sol.renormalizations = events.size();
  for (const auto& e : events) sol.log_scale += e.log_factor;
  return sol;
}

double c_irr_tolerance(double c_reg, double h) {
  return 1e-5 * std::abs(c_reg) * (static_cast<double>(kFitWindow) * h);
}

ShootingOutcome shooting_residual(const CanonicalOscillator& osc, const GridSpec& grid) {
  require_canonical(osc);
  grid.validate();
  const std::size_t n = grid.steps();
  const double h = grid.h;

  double x_t = turning_point(osc).value_or(grid.x_max / 2.0);
  x_t = std::min(x_t, grid.x_max / 2.0);
  std::size_t i_match = static_cast<std::size_t>(std::llround(0.5 * x_t / h));
  i_match = std::clamp<std::size_t>(i_match, kFitWindow, n - 2);

  auto outward = integrate_canonical(osc, grid, Direction::Outward, i_match + 1);
  auto inward = integrate_canonical(osc, grid, Direction::Inward);
  normalize_peak(inward);

  ShootingOutcome out;
  out.parameter = std::numeric_limits<double>::quiet_NaN();
  out.x_match = static_cast<double>(i_match) * h;

  // Numerov's conserved Casoratian in w = (1 - h^2 g / 12) y
  const double k = h * h / 12.0;
  auto w = [&](const Solution& s, std::size_t i) {
    const double x = static_cast<double>(i) * h;
    return (1.0 - k * (osc.potential(x) - osc.lambda)) * s.values[i];
  };
  const double wo0 = w(outward, i_match), wo1 = w(outward, i_match + 1);
  const double wi0 = w(inward, i_match), wi1 = w(inward, i_match + 1);
  const double wronskian = (wo0 * wi1 - wo1 * wi0) / h;
  const double norm_out = std::hypot(wo0, (wo1 - wo0) / h);
  const double norm_in = std::hypot(wi0, (wi1 - wi0) / h);
  out.residual = (norm_out > 0 && norm_in > 0) ? wronskian / (norm_out * norm_in) : 0.0;

  const auto line = least_squares_line(inward, 1, kFitWindow);
  out.c_irr = line.intercept;
  out.c_reg = line.slope;

  // outward branch up to the match point, inward branch beyond it
  int last_sign = 0;
  out.nodes = count_sign_changes(outward.values, 1, i_match, last_sign);
  const int join = sign_of(outward.values[i_match]) * sign_of(inward.values[i_match]);
  if (join != 0) {
    last_sign *= join;  // express in the inward branch's sign convention
    out.nodes += count_sign_changes(inward.values, i_match + 1, n, last_sign);
  }

  const double norm = near_origin_norm(inward, osc.c, i_match);
  out.norm_finite = std::isfinite(norm) && norm > 0.0;
  return out;
}

GridSpec default_grid(const PotentialSpec& spec, double e_min, double e_max) {
  const Rational c = liouville::exact_cancellation_exponent(spec);
  const auto lo = liouville::transform(spec, c, e_min);
  const auto hi = liouville::transform(spec, c, e_max);
  return grid_for(std::min(lo.p, hi.p), max_turning_point({lo, hi}));
}

std::vector<Eigenvalue> spectrum_scan(const PotentialSpec& spec, double e_min, double e_max,
                                      int n_points, const std::optional<GridSpec>& grid) {
  const Rational c = liouville::exact_cancellation_exponent(spec);
  const auto lo = liouville::transform(spec, c, e_min);
  const auto hi = liouville::transform(spec, c, e_max);
  if (!(std::min(lo.p, hi.p) > 0.0)) {
    throw Error(ErrorKind::NoDecayingBranch,
                "energy scan needs p > 0 across the range (E < 0 for V1)");
  }
  const GridSpec g = grid.value_or(default_grid(spec, e_min, e_max));
  g.validate(max_turning_point({lo, hi}));
  return scan(e_min, e_max, n_points, [&](double E) {
    auto out = shooting_residual(liouville::transform(spec, c, E), g);
    out.parameter = E;
    return out;
  });
}

GridSpec default_coupling_grid(const PotentialSpec& spec, double E, double b_min,
                               double b_max) {
  const Rational c = liouville::exact_cancellation_exponent(spec);
  PotentialSpec at_lo = spec, at_hi = spec;
  at_lo.B = b_min;
  at_hi.B = b_max;
  const auto lo = liouville::transform(at_lo, c, E);
  const auto hi = liouville::transform(at_hi, c, E);
  return grid_for(std::min(lo.p, hi.p), max_turning_point({lo, hi}));
}

std::vector<Eigenvalue> coupling_scan(const PotentialSpec& spec, double E, double b_min,
                                      double b_max, int n_points,
                                      const std::optional<GridSpec>& grid) {
  const Rational c = liouville::exact_cancellation_exponent(spec);
  PotentialSpec at_lo = spec, at_hi = spec;
  at_lo.B = b_min;
  at_hi.B = b_max;
  const auto lo = liouville::transform(at_lo, c, E);
  const auto hi = liouville::transform(at_hi, c, E);
  if (!(std::min(lo.p, hi.p) > 0.0)) {
    throw Error(ErrorKind::NoDecayingBranch, "coupling scan needs p > 0 (A > 0 for V2)");
  }
  const GridSpec g = grid.value_or(default_coupling_grid(spec, E, b_min, b_max));
  g.validate(max_turning_point({lo, hi}));
  return scan(b_min, b_max, n_points, [&](double B) {
    PotentialSpec s = spec;
    s.B = B;
    auto out = shooting_residual(liouville::transform(s, c, E), g);
    out.parameter = B;
    return out;
  });
}

std::vector<PathologyRow> weak_bc_pathology_demo(const PotentialSpec& spec,
                                                 std::span<const double> energies,
                                                 const std::optional<GridSpec>& grid) {
  if (energies.empty()) return {};
  const Rational c = liouville::exact_cancellation_exponent(spec);
  const double cf = to_double(c);
  const double e_min = *std::min_element(energies.begin(), energies.end());
  const double e_max = *std::max_element(energies.begin(), energies.end());
  const GridSpec g = grid.value_or(default_grid(spec, e_min, e_max));
  const auto regime = singularity::classify_regime(spec.G, spec.ell);

  std::vector<PathologyRow> rows;
  for (double E : energies) {
    const auto osc = liouville::transform(spec, c, E);
    g.validate(turning_point(osc).value_or(0.0));
    auto inward = integrate_canonical(osc, g, Direction::Inward);
    normalize_peak(inward);

    PathologyRow row;
    row.E = E;
    const auto line = least_squares_line(inward, 1, kFitWindow);
    row.c_irr = line.intercept;
    row.c_reg = line.slope;
    row.c_tolerance = c_irr_tolerance(row.c_reg, g.h);
    row.vanishes_over_sqrt_r = std::abs(row.c_irr) <= row.c_tolerance;

    // psi(r) = x^((c-1)/2) chi(x) at r = x^c < 1e-4
    std::vector<singularity::Sample> samples;
    const double half_power = 0.5 * (cf - 1.0);
    for (std::size_t i = 1; i < inward.values.size(); ++i) {
      const double x = inward.x(i);
      const double r = std::pow(x, cf);
      if (r >= 1e-4) break;
      samples.push_back({r, std::pow(x, half_power) * inward.values[i]});
    }
    try {
      const auto fit = singularity::bc_satisfied(samples, regime);
      row.fitted_exponent = fit.exponent;
      row.vanishes_at_origin = !fit.indeterminate && fit.exponent > 0.0;
    } catch (const Error&) {
      row.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
      row.vanishes_at_origin = false;
    }

    const std::size_t window = std::min<std::size_t>(inward.values.size() - 1,
                                                     static_cast<std::size_t>(1.0 / g.h));
    row.near_origin_norm = near_origin_norm(inward, c, window);
    row.norm_finite = std::isfinite(row.near_origin_norm);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ces::oracle
