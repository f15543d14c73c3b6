#pragma once

#include <optional>
#include <vector>

#include "ces/surd.hpp"

namespace ces::hermite {

struct HermiteValue {
  double value;
  double derivative;
};

/// Physicists' Hermite polynomial H_n(x) and H_n'(x) = 2n H_{n-1}(x), via the
/// three-term recurrence H_{m+1} = 2x H_m - 2m H_{m-1}.
HermiteValue eval(int n, double x);

struct Zero {
  int k;                                // 1-based, k = 1 is the largest zero
  double x;
  std::optional<QuadraticRoot> exact;   // present for closed-form orders
};

/// Nonvanishing zeros of H_n in strictly descending order. The origin zero of
/// odd n is not indexed but is recorded in origin_zero_present.
struct ZeroSet {
  int n = 0;
  std::vector<Zero> zeros;
  bool origin_zero_present = false;

  // All zeros of H_n including the origin one, descending.
  std::vector<double> all_zeros() const;
};

// Exact surd zeros for 2 <= n <= 5; other orders throw UnsupportedOrder.
ZeroSet zeros_closed_form(int n);

// Bracketed root finding for any n >= 0 (brackets come from the interlacing
// zeros of H_{n-1} plus the bound |x| < sqrt(2n+1)).
ZeroSet zeros_numeric(int n);

// Closed form where available (n <= 5), numeric otherwise.
ZeroSet zeros(int n);

}  // namespace ces::hermite
