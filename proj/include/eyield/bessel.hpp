#pragma once

namespace eyield {

/// Bessel function of the first kind, order zero.
///
/// Power series (evaluated in extended precision) for |x| < 12, Hankel
/// asymptotic expansion truncated at its smallest term beyond. Absolute error
/// stays below 1e-10 on the real line.
double bessel_j0(double x);

}  // namespace eyield
