#pragma once

namespace rydmix::bessel {

/// Largest |n| accepted by bessel_j.
inline constexpr int kMaxOrder = 200;

/// Below this |x| the ascending series is used, above it Miller's backward
/// recurrence normalized by the sum rules.
inline constexpr double kSeriesLimit = 12.0;

/// Integer-order Bessel function of the first kind J_n(x).
///
/// Absolute error is below 1e-12 for |x| <= 50. Negative orders and arguments
/// are reduced through J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
/// Throws DomainError if |n| > kMaxOrder or x is not finite.
double j(int n, double x);

/// Ascending power series. Exposed so the seam with the recurrence branch can
/// be tested; prefer j().
double j_series(int n, double x);

/// Miller backward recurrence. Exposed for seam testing; prefer j().
double j_recurrence(int n, double x);

/// First positive maximum of J_n.
struct Maximum {
  double x_star;
  double j_max;
};

/// Locates the first maximum of J_n for 1 <= n <= 50 (golden-section bracket,
/// then Newton on J_n' = 0). Throws DomainError outside that range.
Maximum argmax(int n);

/// dJ_n/dx.
double j_prime(int n, double x);

}  // namespace rydmix::bessel
