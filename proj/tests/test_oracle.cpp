#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ces/error.hpp"
#include "ces/liouville.hpp"
#include "ces/oracle.hpp"
#include "ces/quasi_exact.hpp"

using ces::PotentialSpec;
using ces::Rational;
namespace oracle = ces::oracle;
namespace liouville = ces::liouville;
namespace qe = ces::quasi_exact;

namespace {

liouville::CanonicalOscillator oscillator(double p, double q, double lambda) {
  liouville::CanonicalOscillator osc;
  osc.c = Rational(2);
  osc.p = p;
  osc.q = q;
  osc.lambda = lambda;
  return osc;
}

const oracle::Eigenvalue* nearest(const std::vector<oracle::Eigenvalue>& found, double target) {
  const oracle::Eigenvalue* best = nullptr;
  for (const auto& ev : found) {
    if (!best || std::abs(ev.value - target) < std::abs(best->value - target)) best = &ev;
  }
  return best;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(oracle::GridSpec::make(20.0, 1e-4).validate());
  CHECK(oracle::GridSpec::make(20.0, 1e-4).steps() == 200000);
  CHECK(oracle::GridSpec::make(20.00003, 1e-4).steps() == 200001);
  CHECK_THROWS_AS((oracle::GridSpec{20.0, 0.01}.validate()), ces::Error);
  CHECK_THROWS_AS((oracle::GridSpec{20.00005, 1e-4}.validate()), ces::Error);
  CHECK_THROWS_AS((oracle::GridSpec{20.0, 0.0}.validate()), ces::Error);
  CHECK_THROWS_AS((oracle::GridSpec{20.0, -1e-4}.validate()), ces::Error);
  CHECK_THROWS_AS(oracle::GridSpec::make(20.0, 1e-4).validate(5.0), ces::Error);
  CHECK_NOTHROW(oracle::GridSpec::make(50.0, 1e-4).validate(5.0));
  try {
    oracle::GridSpec{20.0, 0.01}.validate();
  } catch (const ces::Error& e) {
    CHECK(e.kind() == ces::ErrorKind::InvalidGrid);
  }
}

TEST_CASE("turning point") {
  CHECK(*oracle::turning_point(oscillator(1.0, 0.0, 4.0)) == doctest::Approx(2.0));
  CHECK(*oracle::turning_point(oscillator(1.0, 3.0, 4.0)) == doctest::Approx(1.0));
  CHECK_FALSE(oracle::turning_point(oscillator(1.0, 3.0, -4.0)).has_value());
}

TEST_CASE("outward march reproduces the odd oscillator state") {
  const auto grid = oracle::GridSpec::make(20.0, 1e-4);
  const auto sol = oracle::integrate_canonical(oscillator(1.0, 0.0, 3.0), grid,
                                               oracle::Direction::Outward, 40001);
  REQUIRE(sol.values.size() >= 40001);
  CHECK(sol.values[0] == 0.0);
  auto exact = [](double x) { return x * std::exp(-x * x / 2); };
  const double norm = sol.values[10000] / exact(1.0);
  const double peak = exact(1.0);
  for (std::size_t i = 100; i <= 40000; i += 100) {
    const double x = sol.x(i);
    CAPTURE(x);
    CHECK(std::abs(sol.values[i] / norm - exact(x)) < 1e-8 * peak);
  }
}

TEST_CASE("Numerov error is fourth order") {
  const auto osc = oscillator(1.0, 0.0, 3.0);
  auto max_error = [&](double h) {
    const auto grid = oracle::GridSpec::make(100.0, h);
    const auto stop = static_cast<std::size_t>(std::llround(5.0 / h));
    const auto sol = oracle::integrate_canonical(osc, grid, oracle::Direction::Outward, stop);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i <= stop; ++i) {
      const double x = sol.x(i);
      const double f = x * std::exp(-x * x / 2);
      num += sol.values[i] * f;
      den += sol.values[i] * sol.values[i];
    }
    const double scale = num / den;
    double err = 0.0;
    for (std::size_t i = 1; i <= stop; ++i) {
      const double x = sol.x(i);
      err = std::max(err, std::abs(scale * sol.values[i] - x * std::exp(-x * x / 2)));
    }
    return err;
  };
  CHECK(max_error(0.01) / max_error(0.005) >= 12.0);
}

TEST_CASE("inward march renormalizes without overflow") {
  const auto sol = oracle::integrate_canonical(oscillator(1.0, 0.0, 1.0),
                                               oracle::GridSpec::make(60.0, 1e-4),
                                               oracle::Direction::Inward);
  CHECK(sol.renormalizations > 0);
  CHECK(sol.log_scale > 700.0);
  CHECK(std::all_of(sol.values.begin(), sol.values.end(), [](double v) { return std::isfinite(v); }));
  // even ground state exp(-x^2/2): chi(1)/chi(0) is exact
  CHECK(sol.values[10000] / sol.values[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
}

TEST_CASE("canonical solution matches the closed-form state") {
  const auto s = qe::make_state(2, 1, -1.0);
  const auto osc = liouville::transform(PotentialSpec::v1(s.A, s.B), Rational(2), s.E);
  const auto grid = oracle::GridSpec::make(20.0, 1e-4);
  const auto sol = oracle::integrate_canonical(osc, grid, oracle::Direction::Outward, 30001);
  // psi(r) = x^(1/2) chi(x) with r = x^2
  auto psi = [&](std::size_t i) { return std::sqrt(sol.x(i)) * sol.values[i]; };
  const double norm = psi(10000) / qe::dutra_psi1(s, 1.0, 1.0);
  for (std::size_t i = 500; i <= 30000; i += 250) {
    const double x = sol.x(i);
    const double ref = qe::dutra_psi1(s, 1.0, x * x);
    CAPTURE(x);
    CHECK(std::abs(psi(i) / norm - ref) < 1e-6 * std::abs(ref));
  }
}

TEST_CASE("shooting residual") {
  const auto s = qe::make_state(2, 1, -1.0);
  const auto spec = PotentialSpec::v1(s.A, s.B);
  const auto grid = oracle::GridSpec::make(20.0, 1e-4);

  auto at = oracle::shooting_residual(liouville::transform(spec, Rational(2), s.E), grid);
  CHECK(std::abs(at.residual) < 1e-6);
  CHECK(at.nodes == 0);
  CHECK(at.norm_finite);
  CHECK(std::abs(at.c_irr) < oracle::c_irr_tolerance(at.c_reg, grid.h));

  const auto off = oracle::shooting_residual(liouville::transform(spec, Rational(2), s.E + 0.01), grid);
  CHECK(std::abs(off.residual) > 1e-3);
  CHECK(std::abs(off.residual) <= 1.0);

  // the weak condition alone: psi -> 0 but the r^(1/4) branch survives
  const auto weak = oracle::shooting_residual(liouville::transform(spec, Rational(2), -0.1), grid);
  CHECK(std::abs(weak.c_irr) > 1e3 * oracle::c_irr_tolerance(weak.c_reg, grid.h));
  CHECK(weak.norm_finite);

  // rescaling the inward branch (longer tail) leaves the residual alone
  const auto longer = oracle::shooting_residual(liouville::transform(spec, Rational(2), -0.1),
                                                oracle::GridSpec::make(30.0, 1e-4));
  CHECK(longer.residual == doctest::Approx(weak.residual).epsilon(1e-8));
  CHECK(longer.x_match == doctest::Approx(weak.x_match));

  // an even state has a pure constant term at the origin
  const auto even = oracle::shooting_residual(oscillator(1.0, 0.0, 1.0), grid);
  CHECK(std::abs(even.c_reg) < 5e-3 * std::abs(even.c_irr));
}

TEST_CASE("energy scans recover the quasi-exact levels") {
  auto found = oracle::spectrum_scan(PotentialSpec::v1(-1.0, 8.0 / 27.0), -0.5, -0.01, 100);
  auto* ev = nearest(found, -16.0 / 81.0);
  REQUIRE(ev != nullptr);
  CHECK(ev->value == doctest::Approx(-16.0 / 81.0).epsilon(1e-6));
  CHECK(ev->nodes == 0);
  CHECK(std::is_sorted(found.begin(), found.end(),
                       [](const auto& a, const auto& b) { return a.value < b.value; }));

  found = oracle::spectrum_scan(PotentialSpec::v1(-1.0, -8.0 / 27.0), -0.5, -0.05, 100);
  ev = nearest(found, -16.0 / 81.0);
  REQUIRE(ev != nullptr);
  CHECK(std::abs(ev->value + 16.0 / 81.0) < 1e-6);
  CHECK(ev->nodes == 1);

  const auto s = qe::make_state(3, 1, -1.0);
  found = oracle::spectrum_scan(PotentialSpec::v1(-1.0, s.B), -0.3, -0.05, 60);
  ev = nearest(found, s.E);
  REQUIRE(ev != nullptr);
  CHECK(std::abs(ev->value - (-0.132231404959)) < 1e-6);
  CHECK(ev->nodes == 0);
}

TEST_CASE("eigenvalues are stable under grid refinement") {
  const auto spec = PotentialSpec::v1(-1.0, 8.0 / 27.0);
  const auto base = oracle::default_grid(spec, -0.21, -0.18);
  const auto a = oracle::spectrum_scan(spec, -0.21, -0.18, 8, base);
  const auto b = oracle::spectrum_scan(spec, -0.21, -0.18, 8,
                                       oracle::GridSpec::make(base.x_max, base.h / 2));
  const auto c = oracle::spectrum_scan(spec, -0.21, -0.18, 8,
                                       oracle::GridSpec::make(1.5 * base.x_max, base.h));
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(a[0].value - b[0].value) < 1e-8);
  CHECK(std::abs(a[0].value - c[0].value) < 1e-8);
}

TEST_CASE("V2 coupling scan against the half-line oscillator") {
  // E = 0, A = 1: chi'' = (9/4) x^2 chi - lambda chi with lambda = 3/2 (4j + 3)
  const auto found = oracle::coupling_scan(PotentialSpec::v2(1.0, 0.0), 0.0, -8.0, 0.0, 80);
  REQUIRE(found.size() == 3);
  const double expect[] = {-22.0 / 3.0, -14.0 / 3.0, -2.0};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(found[i].value == doctest::Approx(expect[i]).epsilon(1e-7));
    CHECK(found[i].nodes == static_cast<int>(2 - i));
  }
}

TEST_CASE("scan domain errors") {
  try {
    oracle::spectrum_scan(PotentialSpec::v1(-1.0, 0.3), -0.2, 0.1, 10);
    FAIL("expected an error");
  } catch (const ces::Error& e) {
    CHECK(e.kind() == ces::ErrorKind::NoDecayingBranch);
  }
  CHECK_THROWS_AS(oracle::spectrum_scan(PotentialSpec::v1(-1.0, 0.3), -0.1, -0.2, 10), ces::Error);
  CHECK_THROWS_AS(oracle::spectrum_scan(PotentialSpec::v1(-1.0, 0.3), -0.2, -0.1, 1), ces::Error);
  CHECK_THROWS_AS(oracle::coupling_scan(PotentialSpec::v2(-1.0, 0.0), 0.0, -2.0, 0.0, 10), ces::Error);
  CHECK_THROWS_AS(oracle::spectrum_scan(PotentialSpec::v1(-1.0, 0.3), -0.3, -0.1, 10,
                                        oracle::GridSpec{20.0, 0.01}),
                  ces::Error);
  liouville::CanonicalOscillator flat = oscillator(0.0, 1.0, 1.0);
  CHECK_THROWS_AS(oracle::integrate_canonical(flat, oracle::GridSpec::make(20.0, 1e-4),
                                              oracle::Direction::Inward),
                  ces::Error);
}

TEST_CASE("weak boundary condition pathology") {
  const auto spec = PotentialSpec::v1(-1.0, 8.0 / 27.0);
  const std::vector<double> energies{-0.5, -0.3, -0.1, -0.05, -16.0 / 81.0};
  const auto rows = oracle::weak_bc_pathology_demo(spec, energies);
  REQUIRE(rows.size() == energies.size());
  for (std::size_t i = 0; i < 4; ++i) {
    CAPTURE(rows[i].E);
    CHECK(rows[i].vanishes_at_origin);
    CHECK(rows[i].norm_finite);
    CHECK(std::isfinite(rows[i].near_origin_norm));
    CHECK_FALSE(rows[i].vanishes_over_sqrt_r);
    CHECK(rows[i].fitted_exponent == doctest::Approx(0.25).epsilon(0.05));
  }
  CHECK(rows[4].vanishes_at_origin);
  CHECK(rows[4].vanishes_over_sqrt_r);
  CHECK(rows[4].fitted_exponent == doctest::Approx(0.75).epsilon(0.05));
  CHECK(std::abs(rows[4].c_irr) < rows[4].c_tolerance);
}
