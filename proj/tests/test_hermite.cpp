#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ces/error.hpp"
#include "ces/hermite.hpp"

namespace hermite = ces::hermite;

namespace {

// H_n from the explicit sum n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!),
// independent of the recurrence under test.
double explicit_hermite(int n, double x) {
  auto fact = [](int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  double sum = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    const double term = std::pow(2.0 * x, n - 2 * m) / (fact(m) * fact(n - 2 * m));
    sum += (m % 2 == 0) ? term : -term;
  }
  return fact(n) * sum;
}

}  // namespace

TEST_CASE("evaluation examples") {
  auto h = hermite::eval(2, 0.0);
  CHECK(h.value == -2.0);
  CHECK(h.derivative == 0.0);

  h = hermite::eval(2, std::sqrt(0.5));
  CHECK(h.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(h.derivative == doctest::Approx(8.0 * std::sqrt(0.5)));

  h = hermite::eval(5, 1.0);
  CHECK(h.value == -8.0);
  CHECK(h.derivative == -200.0);

  h = hermite::eval(0, 3.0);
  CHECK(h.value == 1.0);
  CHECK(h.derivative == 0.0);

  CHECK_THROWS_AS(hermite::eval(-1, 0.0), ces::Error);
}

TEST_CASE("recurrence agrees with the explicit sum") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = xs(rng);
    for (int n = 0; n <= 12; ++n) {
      const double ref = explicit_hermite(n, x);
      const double scale = std::pow(2.0 * std::abs(x) + 2.0, n);
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::abs(hermite::eval(n, x).value - ref) <= 1e-12 * scale);
      if (n >= 1) {
        const double dref = 2.0 * n * explicit_hermite(n - 1, x);
        CHECK(std::abs(hermite::eval(n, x).derivative - dref) <= 1e-12 * 2.0 * n * scale);
      }
    }
  }
}

TEST_CASE("parity") {
  for (int n = 0; n <= 10; ++n) {
    for (double x : {0.3, 1.1, 2.7}) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(hermite::eval(n, -x).value == doctest::Approx(sign * hermite::eval(n, x).value));
    }
  }
}

TEST_CASE("closed-form zeros") {
  const auto z2 = hermite::zeros_closed_form(2);
  REQUIRE(z2.zeros.size() == 2);
  CHECK_FALSE(z2.origin_zero_present);
  CHECK(z2.zeros[0].k == 1);
  CHECK(z2.zeros[0].exact->str() == "sqrt(1/2)");
  CHECK(z2.zeros[1].exact->str() == "-sqrt(1/2)");

  const auto z4 = hermite::zeros_closed_form(4);
  REQUIRE(z4.zeros.size() == 4);
  CHECK(z4.zeros[0].exact->str() == "sqrt((3+sqrt(6))/2)");
  CHECK(z4.zeros[1].exact->str() == "sqrt((3-sqrt(6))/2)");
  CHECK(z4.zeros[0].x == doctest::Approx(1.65068012389).epsilon(1e-11));
  CHECK(z4.zeros[1].x == doctest::Approx(0.524647623275).epsilon(1e-11));

  const auto z5 = hermite::zeros_closed_form(5);
  REQUIRE(z5.zeros.size() == 4);
  CHECK(z5.origin_zero_present);
  CHECK(z5.zeros[0].exact->str() == "sqrt((5+sqrt(10))/2)");
  CHECK(z5.zeros[0].x == doctest::Approx(2.02018287046).epsilon(1e-11));
  CHECK(z5.zeros[1].x == doctest::Approx(0.958572464614).epsilon(1e-11));
  CHECK(z5.all_zeros().size() == 5);

  const auto z3 = hermite::zeros_closed_form(3);
  CHECK(z3.zeros[0].exact->str() == "sqrt(3/2)");

  CHECK_THROWS_AS(hermite::zeros_closed_form(1), ces::Error);
  CHECK_THROWS_AS(hermite::zeros_closed_form(6), ces::Error);
}

TEST_CASE("closed form and numeric zeros agree") {
  for (int n = 2; n <= 5; ++n) {
    const auto exact = hermite::zeros_closed_form(n);
    const auto numeric = hermite::zeros_numeric(n);
    REQUIRE(exact.zeros.size() == numeric.zeros.size());
    CHECK(exact.origin_zero_present == numeric.origin_zero_present);
    for (std::size_t i = 0; i < exact.zeros.size(); ++i) {
      CHECK(std::abs(exact.zeros[i].x - numeric.zeros[i].x) < 1e-12);
      CHECK(exact.zeros[i].k == numeric.zeros[i].k);
    }
  }
}

TEST_CASE("low orders have no nonvanishing zeros") {
  CHECK(hermite::zeros(0).zeros.empty());
  CHECK_FALSE(hermite::zeros(0).origin_zero_present);
  CHECK(hermite::zeros(1).zeros.empty());
  CHECK(hermite::zeros(1).origin_zero_present);
  CHECK_THROWS_AS(hermite::zeros(-2), ces::Error);
}

TEST_CASE("order six against reference roots") {
  const auto z = hermite::zeros(6);
  REQUIRE(z.zeros.size() == 6);
  const double ref[] = {2.35060497367449, 1.3358490740137, 0.436077411927617};
  for (int i = 0; i < 3; ++i) {
    CHECK(z.zeros[i].x == doctest::Approx(ref[i]).epsilon(1e-13));
    CHECK(z.zeros[5 - i].x == -z.zeros[i].x);
    CHECK_FALSE(z.zeros[i].exact.has_value());
  }
}

TEST_CASE("zero set properties") {
  for (int n = 0; n <= 24; ++n) {
    CAPTURE(n);
    const auto set = hermite::zeros(n);
    const auto all = set.all_zeros();
    CHECK(static_cast<int>(all.size()) == n);
    CHECK(set.origin_zero_present == (n % 2 == 1));
    const double bound = std::sqrt(2.0 * n + 1.0);
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(std::abs(all[i]) < bound);
      if (i + 1 < all.size()) CHECK(all[i] > all[i + 1]);
      const auto h = hermite::eval(n, all[i]);
      CHECK(std::abs(h.value) <= 1e-12 * std::abs(h.derivative) * std::max(1.0, std::abs(all[i])));
    }
    for (std::size_t i = 0; i < set.zeros.size(); ++i) {
      CHECK(set.zeros[i].k == static_cast<int>(i) + 1);
      CHECK(set.zeros[i].x != 0.0);
      CHECK(set.zeros[i].x == -set.zeros[set.zeros.size() - 1 - i].x);
    }
    // zeros of H_{n-1} interlace those of H_n
    if (n >= 2) {
      const auto lower = hermite::zeros(n - 1).all_zeros();
      for (std::size_t i = 0; i < lower.size(); ++i) {
        CHECK(all[i] > lower[i]);
        CHECK(lower[i] > all[i + 1]);
      }
    }
  }
}
