#include "rydmix/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rydmix/error.hpp"
#include "rydmix/golden_section.hpp"

namespace rydmix::bessel {
namespace {

constexpr const char* kModule = "special_functions";

// Sum-rule truncation above the turning point.
constexpr int kTailOrders = 40;

void check_domain(int n, double x) {
  if (n > kMaxOrder || n < -kMaxOrder) {
    throw DomainError(kModule, "Bessel order |n| = " + std::to_string(n < 0 ? -n : n) +
                                   " exceeds supported maximum " + std::to_string(kMaxOrder));
  }
  if (!std::isfinite(x)) {
    throw DomainError(kModule, "Bessel argument is not finite");
  }
}

// J_n(x) for n >= 0, x >= 0.
double series_nonneg(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const long double half = static_cast<long double>(x) / 2.0L;
  long double lead = 1.0L;
  for (int i = 1; i <= n; ++i) lead *= half / i;
  if (lead == 0.0L) return 0.0;

  const long double q = -half * half;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (n + k));
    sum += term;
    if (k > half && std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
  }
  return static_cast<double>(lead * sum);
}

double recurrence_nonneg(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const int top_order = std::max(n, static_cast<int>(std::ceil(x)));
  int start = top_order + kTailOrders + static_cast<int>(std::sqrt(40.0 * top_order));
  if (start % 2 != 0) ++start;

  const long double two_over_x = 2.0L / x;
  long double next = 0.0L;    // J_{k+1}
  long double current = 1e-300L;  // J_k
  long double wanted = 0.0L;
  long double sum_even = 0.0L;    // J_0 + 2 sum J_{2k}
  long double sum_squares = 0.0L; // J_0^2 + 2 sum J_k^2

  for (int k = start; k >= 1; --k) {
    if (k == n) wanted = current;
    sum_squares += 2.0L * current * current;
    if (k % 2 == 0) sum_even += 2.0L * current;

    const long double previous = k * two_over_x * current - next;
    next = current;
    current = previous;

    if (std::fabs(current) > 1e200L) {
      const long double s = 1e-200L;
      current *= s;
      next *= s;
      wanted *= s;
      sum_even *= s;
      sum_squares *= s * s;
    }
  }
  if (n == 0) wanted = current;
  sum_squares += current * current;
  sum_even += current;

  // Squares fix the magnitude without cancellation; the even sum fixes the sign.
  long double scale = 1.0L / std::sqrt(sum_squares);
  if (sum_even < 0.0L) scale = -scale;
  return static_cast<double>(wanted * scale);
}

double reduce_signs(int& n, double& x) {
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  return sign;
}

}  // namespace

double j_series(int n, double x) {
  check_domain(n, x);
  const double sign = reduce_signs(n, x);
  return sign * series_nonneg(n, x);
}

double j_recurrence(int n, double x) {
  check_domain(n, x);
  const double sign = reduce_signs(n, x);
  return sign * recurrence_nonneg(n, x);
}

double j(int n, double x) {
  check_domain(n, x);
  const double sign = reduce_signs(n, x);
  return sign * (x <= kSeriesLimit ? series_nonneg(n, x) : recurrence_nonneg(n, x));
}

double j_prime(int n, double x) {
  return 0.5 * (j(n - 1, x) - j(n + 1, x));
}

Maximum argmax(int n) {
  if (n < 1 || n > 50) {
    throw DomainError(kModule, "argmax supports orders 1..50, got " + std::to_string(n));
  }
  // J_n rises monotonically up to j'_{n,1} ~ n + 0.81 n^{1/3} and falls until
  // j'_{n,2} ~ n + 3.24 n^{1/3}; this bracket sits between the two.
  const double lo = n;
  const double hi = n + 2.0 * std::cbrt(static_cast<double>(n)) + 1.0;
  double x = golden_section_maximize([n](double t) { return j(n, t); }, lo, hi, 1e-9);

  for (int it = 0; it < 20; ++it) {
    const double jn = j(n, x);
    const double d1 = j_prime(n, x);
    const double d2 = -d1 / x - (1.0 - static_cast<double>(n) * n / (x * x)) * jn;
    const double step = d1 / d2;
    x -= step;
    if (std::fabs(step) < 1e-15 * x) break;
  }
  return {x, j(n, x)};
}

}  // namespace rydmix::bessel
