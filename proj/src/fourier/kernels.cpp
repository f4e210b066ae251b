#include "tilinglab/fourier/kernels.hpp"

#include "tilinglab/core/errors.hpp"

#include <cmath>
#include <numbers>

namespace tilinglab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTaylorCutoff = 1e-6;

// sin(pi w xi) / (pi xi), with the removable singularity at xi = 0
double width_sinc(double w, double xi)
{
    double t = kPi * w * xi;
    if (std::abs(kPi * xi) < kTaylorCutoff) {
        double t2 = t * t;
        return w * (1.0 - t2 / 6.0 + t2 * t2 / 120.0);
    }
    return std::sin(t) / (kPi * xi);
}

double width_sinc(const Rational& w, const Rational& xi)
{
    if (xi == 0) return to_double(w);
    double xd = to_double(xi);
    if (std::abs(kPi * xd) < kTaylorCutoff) return width_sinc(to_double(w), xd);
    return sin_pi(w * xi) / (kPi * xd);
}

// integral of exp(-2 pi i x xi) over [a, a + w)
ComplexValue interval_ft(const Rational& a, const Rational& w, const Rational& xi)
{
    if (xi == 0) return {to_double(w), 0.0};
    Rational phase = -(2 * a + w) * xi;
    return ComplexValue(cos_pi(phase), sin_pi(phase)) * width_sinc(w, xi);
}

ComplexValue interval_ft(double a, double w, double xi)
{
    double phase = -kPi * (2 * a + w) * xi;
    return std::polar(1.0, phase) * width_sinc(w, xi);
}

void check_delta(const Vec& delta)
{
    if (delta.empty()) throw DomainError("delta must be non-empty");
    Rational prod = 1;
    for (const auto& d : delta) {
        if (d == 0) throw DomainError("delta entries must be nonzero");
        prod *= d;
    }
    if (prod == 1) throw DomainError("product of delta must differ from 1");
}

template <typename XiT>
ComplexValue cube_pair_impl(const Vec& delta, const XiT& xi)
{
    check_delta(delta);
    if (xi.size() != delta.size()) throw DomainError("frequency has the wrong dimension");
    ComplexValue q = 1.0;
    ComplexValue psi = 1.0;
    int sign = 1;
    for (std::size_t j = 0; j < delta.size(); ++j) {
        Rational w = abs_of(delta[j]);
        Rational a = (1 - delta[j]) / 2 - w / 2;
        if (delta[j] < 0) sign = -sign;
        if constexpr (std::is_same_v<XiT, Vec>) {
            q *= interval_ft(Rational(-1, 2), Rational(1), xi[j]);
            psi *= interval_ft(a, w, xi[j]);
        } else {
            q *= interval_ft(-0.5, 1.0, xi[j]);
            psi *= interval_ft(to_double(a), to_double(w), xi[j]);
        }
    }
    return q - static_cast<double>(sign) * psi;
}

} // namespace

double sinc_pi(double t) { return width_sinc(1.0, t); }

double sin_pi(const Rational& q)
{
    Rational r = q - 2 * Rational(floor_of(q / 2));
    bool negate = false;
    if (r >= 1) {
        r -= 1;
        negate = true;
    }
    if (r > Rational(1, 2)) r = 1 - r;
    double v;
    if (r == 0)
        v = 0.0;
    else if (r == Rational(1, 2))
        v = 1.0;
    else
        v = std::sin(kPi * to_double(r));
    return negate ? -v : v;
}

double cos_pi(const Rational& q) { return sin_pi(q + Rational(1, 2)); }

ComplexValue ft_box_union(const BoxUnionTile& tile, const Vec& xi)
{
    if (xi.size() != tile.dim()) throw DomainError("frequency has the wrong dimension");
    if (max_abs(xi) == 0) return to_double(tile.measure());
    ComplexValue total = 0.0;
    for (const auto& b : tile.boxes()) {
        ComplexValue v = to_double(b.weight);
        for (std::size_t j = 0; j < tile.dim() && v != 0.0; ++j) v *= interval_ft(b.corner[j], b.widths[j], xi[j]);
        total += v;
    }
    return total;
}

ComplexValue ft_box_union(const BoxUnionTile& tile, const std::vector<double>& xi)
{
    if (xi.size() != tile.dim()) throw DomainError("frequency has the wrong dimension");
    ComplexValue total = 0.0;
    for (const auto& b : tile.boxes()) {
        ComplexValue v = to_double(b.weight);
        for (std::size_t j = 0; j < tile.dim(); ++j)
            v *= interval_ft(to_double(b.corner[j]), to_double(b.widths[j]), xi[j]);
        total += v;
    }
    return total;
}

ComplexValue ft_cube_pair(const Vec& delta, const Vec& xi) { return cube_pair_impl(delta, xi); }

ComplexValue ft_cube_pair(const Vec& delta, const std::vector<double>& xi) { return cube_pair_impl(delta, xi); }

ComplexValue ft_notched(const Vec& delta, const Vec& xi)
{
    for (const auto& d : delta)
        if (d <= 0 || d > 1) throw DomainError("notch sides must lie in (0, 1]");
    return ft_cube_pair(delta, xi);
}

ComplexValue ft_step1d(const BoxUnionTile& tile, double xi)
{
    if (tile.dim() != 1) throw DomainError("step tiles are one-dimensional");
    if (std::abs(kPi * xi) < kTaylorCutoff) return ft_box_union(tile, std::vector<double>{xi});
    ComplexValue total = 0.0;
    const ComplexValue denom(0.0, 2 * kPi * xi);
    for (const auto& b : tile.boxes()) {
        double a = to_double(b.corner[0]);
        double c = to_double(b.corner[0] + b.widths[0]);
        total += to_double(b.weight) * (std::polar(1.0, -2 * kPi * a * xi) - std::polar(1.0, -2 * kPi * c * xi));
    }
    return total / denom;
}

} // namespace tilinglab
