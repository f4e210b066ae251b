#pragma once

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

// adaptive Simpson on [a, b]
inline double simpson(const std::function<double(double)>& f, double a, double b, double eps, int depth = 40)
{
    auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole, double tol,
                   int d) -> double {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        double flm = f(lm), frm = f(rm);
        double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
        double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
        return self(self, lo, mid, flo, flm, fmid, left, tol / 2, d - 1) +
               self(self, mid, hi, fmid, frm, fhi, right, tol / 2, d - 1);
    };
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return rec(rec, a, b, fa, fm, fb, whole, eps, depth);
}

// integral over [a, b] of exp(-2 pi i x xi)
inline std::complex<double> interval_integral(double a, double b, double xi, double eps = 1e-13)
{
    const double tp = 2 * M_PI * xi;
    double re = simpson([&](double x) { return std::cos(tp * x); }, a, b, eps);
    double im = simpson([&](double x) { return -std::sin(tp * x); }, a, b, eps);
    return {re, im};
}

} // namespace oracle
