#include "ces/hermite.hpp"

#include <algorithm>
#include <cmath>

#include "ces/error.hpp"

namespace ces::hermite {

HermiteValue eval(int n, double x) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "Hermite order must be nonnegative");
  if (n == 0) return {1.0, 0.0};
  double prev = 1.0;       // H_{m-1}
  double curr = 2.0 * x;   // H_m
  for (int m = 1; m < n; ++m) {
    double next = 2.0 * x * curr - 2.0 * m * prev;
    prev = curr;
    curr = next;
  }
  return {curr, 2.0 * n * prev};
}

std::vector<double> ZeroSet::all_zeros() const {
  std::vector<double> out;
  out.reserve(zeros.size() + 1);
  for (const auto& z : zeros) out.push_back(z.x);
  if (origin_zero_present) out.push_back(0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

ZeroSet from_positive_roots(int n, const std::vector<QuadraticRoot>& positive) {
  // positive roots given in descending order; mirror them below the origin
  ZeroSet set;
  set.n = n;
  set.origin_zero_present = (n % 2 == 1);
  int k = 1;
  for (const auto& root : positive) {
    set.zeros.push_back({k++, root.value(), root});
  }
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    QuadraticRoot neg{-1, it->square};
    set.zeros.push_back({k++, neg.value(), neg});
  }
  return set;
}

// Refines the unique zero of H_n inside [lo, hi]: bisection down to a 1e-10
// bracket, then a Newton polish kept inside the bracket.
double refine(int n, double lo, double hi) {
  double f_lo = eval(n, lo).value;
  if (f_lo == 0.0) return lo;
  if (eval(n, hi).value == 0.0) return hi;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    double f_mid = eval(n, mid).value;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 8; ++iter) {
    auto [value, derivative] = eval(n, x);
    if (derivative == 0.0) break;
    double step = value / derivative;
    double next = x - step;
    if (next < lo || next > hi) break;
    x = next;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

// All zeros of H_n in ascending order, origin included.
std::vector<double> all_zeros_ascending(int n) {
  std::vector<double> zeros;
  for (int m = 1; m <= n; ++m) {
    const double bound = std::sqrt(2.0 * m + 1.0);
    std::vector<double> brackets;
    brackets.reserve(zeros.size() + 2);
    brackets.push_back(-bound);
    brackets.insert(brackets.end(), zeros.begin(), zeros.end());
    brackets.push_back(bound);
    std::vector<double> next;
    next.reserve(m);
    for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
      next.push_back(refine(m, brackets[i], brackets[i + 1]));
    }
    // exact mirror symmetry about the origin
    for (int i = 0; i < m / 2; ++i) {
      double magnitude = 0.5 * (next[m - 1 - i] - next[i]);
      next[i] = -magnitude;
      next[m - 1 - i] = magnitude;
    }
    if (m % 2 == 1) next[m / 2] = 0.0;
    zeros = std::move(next);
  }
  return zeros;
}

}  // namespace

ZeroSet zeros_closed_form(int n) {
  switch (n) {
    case 2:
      return from_positive_roots(2, {{1, SurdValue::rational(1, 2)}});
    case 3:
      return from_positive_roots(3, {{1, SurdValue::rational(3, 2)}});
    case 4:
      return from_positive_roots(4, {{1, SurdValue(3, 1, 6, 2)}, {1, SurdValue(3, -1, 6, 2)}});
    case 5:
      return from_positive_roots(5, {{1, SurdValue(5, 1, 10, 2)}, {1, SurdValue(5, -1, 10, 2)}});
    default:
      throw Error(ErrorKind::UnsupportedOrder,
                  "closed-form Hermite zeros are tabulated for 2 <= n <= 5 only");
  }
}

ZeroSet zeros_numeric(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "Hermite order must be nonnegative");
  ZeroSet set;
  set.n = n;
  set.origin_zero_present = (n % 2 == 1);
  auto ascending = all_zeros_ascending(n);
  int k = 1;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
    if (*it == 0.0) continue;
    set.zeros.push_back({k++, *it, std::nullopt});
  }
  return set;
}

ZeroSet zeros(int n) {
  if (n >= 2 && n <= 5) return zeros_closed_form(n);
  return zeros_numeric(n);
}

}  // namespace ces::hermite
