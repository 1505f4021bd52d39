#include "eyield/bessel.hpp"

#include <cmath>
#include <numbers>

namespace eyield {

namespace {

constexpr double kSeriesLimit = 12.0;

double j0_series(double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

// J0(x) ~ sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)], with
// |a_k| = prod_{j<=k} (2j-1)^2 / (k! 8^k); P takes even k, Q odd k, with
// signs -, -, +, + repeating from k = 1. The series diverges, so stop at the smallest term.
double j0_asymptotic(double x) {
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double previous = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * x);
    if (term > previous) break;
    previous = term;
    // k = 1 -> -Q, k = 2 -> -P, k = 3 -> +Q, k = 4 -> +P, ...
    switch (k % 4) {
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
      default: p += term; break;
    }
  }
  const double phase = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(phase) - q * std::sin(phase));
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::fabs(x);
  if (ax < kSeriesLimit) return j0_series(ax);
  return j0_asymptotic(ax);
}

}  // namespace eyield
