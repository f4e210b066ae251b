#pragma once

#include <cstddef>

namespace tilinglab {

struct SeriesValue {
    double value = 0.0;
    /// Magnitude of the first omitted term; bounds the error once terms decrease.
    double truncation_bound = 0.0;
    std::size_t terms = 0;
};

/// Ascending series for J1, summed until the next term is below 1e-17 relative to the sum.
SeriesValue bessel_j1_series(double x);

/// J1 by the ascending series for |x| <= 12 and the Hankel expansion beyond.
double bessel_j1(double x);

/// First positive zero of J1, by bisection on [3.5, 4.2] to 1e-12.
double bessel_j1_first_zero();
/// Bisection on [lo, hi]; DomainError unless J1 changes sign on the bracket.
double bessel_j1_first_zero(double lo, double hi);

/// Radius of the first zero circle of the Fourier transform of the unit-area disk.
double disk_first_zero_radius();

} // namespace tilinglab
