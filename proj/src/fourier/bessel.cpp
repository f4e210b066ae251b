#include "tilinglab/fourier/bessel.hpp"

#include "tilinglab/core/errors.hpp"

#include <cmath>
#include <numbers>

namespace tilinglab {

SeriesValue bessel_j1_series(double x)
{
    // sum_m (-1)^m (x/2)^{2m+1} / (m! (m+1)!)
    const long double h = static_cast<long double>(x) / 2.0L;
    const long double h2 = h * h;
    long double term = h;
    long double sum = 0.0L;
    std::size_t m = 0;
    for (; m < 200; ++m) {
        sum += term;
        long double next = -term * h2 / (static_cast<long double>(m + 1) * static_cast<long double>(m + 2));
        term = next;
        if (m >= 24 && std::fabs(term) <= 1e-17L * std::fmax(std::fabs(sum), 1e-300L)) break;
    }
    return {static_cast<double>(sum), static_cast<double>(std::fabs(term)), m + 1};
}

double bessel_j1(double x)
{
    if (std::abs(x) <= 12.0) return bessel_j1_series(x).value;
    const double ax = std::abs(x);
    const double mu = 4.0;
    const double z = 8.0 * ax;
    // Hankel asymptotic expansion
    double p = 1.0, q = 0.0;
    double tp = 1.0;
    for (int k = 1; k <= 12; ++k) {
        double odd = 2.0 * k - 1.0;
        tp *= (mu - odd * odd) / (k * z);
        if (k % 2 == 1)
            q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * tp;
        else
            p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * tp;
    }
    const double chi = ax - 0.75 * std::numbers::pi;
    double v = std::sqrt(2.0 / (std::numbers::pi * ax)) * (p * std::cos(chi) - q * std::sin(chi));
    return x < 0 ? -v : v;
}

double bessel_j1_first_zero() { return bessel_j1_first_zero(3.5, 4.2); }

double bessel_j1_first_zero(double lo, double hi)
{
    if (!(lo < hi) || (bessel_j1(lo) > 0) == (bessel_j1(hi) > 0)) throw DomainError("bracket does not enclose a sign change");
    double flo = bessel_j1(lo);
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        double fm = bessel_j1(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double disk_first_zero_radius() { return bessel_j1_first_zero() / (2.0 * std::sqrt(std::numbers::pi)); }

} // namespace tilinglab
