#include "tilinglab/fourier/edge_measure.hpp"

#include "tilinglab/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tilinglab {

namespace {

constexpr double kPi = std::numbers::pi;

double dot2(const Real2& a, const Real2& b) { return a[0] * b[0] + a[1] * b[1]; }

Real2 to_real2(const Vec& v) { return {to_double(v[0]), to_double(v[1])}; }

void require_nonzero(const Real2& v, const char* what)
{
    if (v[0] == 0.0 && v[1] == 0.0) throw DomainError(std::string(what) + " must be nonzero");
}

LineFamily family_from(const EdgeMeasure& mu, int which, bool exclude)
{
    LineFamily f;
    f.normal = which == 0 ? mu.tau : mu.e;
    f.exclude_through_origin = exclude;
    if (mu.exact) f.exact_normal = (*mu.exact)[which == 0 ? 1 : 0];
    return f;
}

bool parallel(const LineFamily& a, const LineFamily& b)
{
    if (a.is_exact() && b.is_exact()) {
        const Vec& n = *a.exact_normal;
        const Vec& m = *b.exact_normal;
        return n[0] * m[1] - n[1] * m[0] == 0;
    }
    double cross = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
    return std::abs(cross) <= 1e-12 * std::hypot(a.normal[0], a.normal[1]) * std::hypot(b.normal[0], b.normal[1]);
}

template <typename T>
std::pair<T, T> level_range(const std::array<T, 2>& n, const std::array<T, 2>& lo, const std::array<T, 2>& hi)
{
    T vals[4] = {n[0] * lo[0] + n[1] * lo[1], n[0] * lo[0] + n[1] * hi[1], n[0] * hi[0] + n[1] * lo[1],
                 n[0] * hi[0] + n[1] * hi[1]};
    return {*std::min_element(vals, vals + 4), *std::max_element(vals, vals + 4)};
}

} // namespace

EdgeMeasure EdgeMeasure::real(Real2 e, Real2 tau, Real2 center)
{
    require_nonzero(e, "edge vector");
    require_nonzero(tau, "separation vector");
    return EdgeMeasure{e, tau, center, std::nullopt};
}

EdgeMeasure EdgeMeasure::rational(const Vec& e, const Vec& tau, const Vec& center)
{
    Vec c = center.empty() ? zero_vec(2) : center;
    if (e.size() != 2 || tau.size() != 2 || c.size() != 2) throw DomainError("edge measures are planar");
    EdgeMeasure mu = real(to_real2(e), to_real2(tau), to_real2(c));
    mu.exact = std::array<Vec, 3>{e, tau, c};
    return mu;
}

double LineFamily::spacing() const { return step / std::hypot(normal[0], normal[1]); }

ComplexValue ft_edge_measure(const EdgeMeasure& mu, const Real2& xi)
{
    const double len = std::hypot(mu.e[0], mu.e[1]);
    const double along = sinc_pi(dot2(mu.e, xi));
    const double diff = -2.0 * std::sin(kPi * dot2(mu.tau, xi));
    return std::polar(1.0, -2.0 * kPi * dot2(mu.center, xi)) * ComplexValue(0.0, len * along * diff);
}

Real2 geometric_inverse(const Real2& u)
{
    require_nonzero(u, "vector");
    double n2 = dot2(u, u);
    return {u[0] / n2, u[1] / n2};
}

Vec geometric_inverse(const Vec& u)
{
    Rational n2 = dot(u, u);
    if (n2 == 0) throw DomainError("vector must be nonzero");
    return scale(u, 1 / n2);
}

ZeroSetGrid zero_grid_of_edge(const EdgeMeasure& mu)
{
    require_nonzero(mu.e, "edge vector");
    require_nonzero(mu.tau, "separation vector");
    return ZeroSetGrid{{family_from(mu, 0, false), family_from(mu, 1, true)}};
}

bool on_family(const LineFamily& f, const Real2& x, double tol)
{
    double level = (dot2(f.normal, x) - f.offset) / f.step;
    double k = std::round(level);
    if (std::abs(level - k) * f.spacing() > tol) return false;
    return !(f.exclude_through_origin && k == 0.0);
}

bool on_family(const LineFamily& f, const Vec& x)
{
    if (!f.is_exact()) return on_family(f, to_real2(x), 1e-12);
    Rational level = (dot(*f.exact_normal, x) - f.exact_offset) / f.exact_step;
    if (!is_integer(level)) return false;
    return !(f.exclude_through_origin && level == 0);
}

bool on_grid(const ZeroSetGrid& g, const Real2& x, double tol)
{
    for (const auto& f : g.families)
        if (on_family(f, x, tol)) return true;
    return false;
}

PointPatch intersect_grids(const std::vector<ZeroSetGrid>& grids, const Vec& lo, const Vec& hi, std::size_t cap)
{
    if (grids.size() < 2) throw DomainError("intersection needs at least two grids");
    if (lo.size() != 2 || hi.size() != 2) throw DomainError("window must be planar");
    std::vector<const LineFamily*> fams;
    bool exact = true;
    for (const auto& g : grids)
        for (const auto& f : g.families) {
            fams.push_back(&f);
            exact = exact && f.is_exact();
        }
    bool any_cross = false;
    for (std::size_t i = 0; i < fams.size() && !any_cross; ++i)
        for (std::size_t j = i + 1; j < fams.size(); ++j)
            if (!parallel(*fams[i], *fams[j])) {
                any_cross = true;
                break;
            }
    if (!any_cross) throw DomainError("all line directions are parallel; the intersection is not discrete");

    PointPatch patch;
    patch.dim = 2;
    patch.lo = lo;
    patch.hi = hi;
    patch.exact = exact;

    if (exact) {
        const std::array<Rational, 2> wl{lo[0], lo[1]}, wh{hi[0], hi[1]};
        std::vector<Vec> cand;
        for (std::size_t i = 0; i < fams.size(); ++i)
            for (std::size_t j = i + 1; j < fams.size(); ++j) {
                const LineFamily& f = *fams[i];
                const LineFamily& g = *fams[j];
                if (parallel(f, g)) continue;
                const Vec& n = *f.exact_normal;
                const Vec& m = *g.exact_normal;
                auto [fl, fh] = level_range(std::array<Rational, 2>{n[0], n[1]}, wl, wh);
                auto [gl, gh] = level_range(std::array<Rational, 2>{m[0], m[1]}, wl, wh);
                Integer a0 = ceil_of((fl - f.exact_offset) / f.exact_step), a1 = floor_of((fh - f.exact_offset) / f.exact_step);
                Integer b0 = ceil_of((gl - g.exact_offset) / g.exact_step), b1 = floor_of((gh - g.exact_offset) / g.exact_step);
                Rational det = n[0] * m[1] - n[1] * m[0];
                for (Integer a = a0; a <= a1; ++a)
                    for (Integer b = b0; b <= b1; ++b) {
                        Rational u = f.exact_offset + f.exact_step * Rational(a);
                        Rational v = g.exact_offset + g.exact_step * Rational(b);
                        Vec x{(u * m[1] - v * n[1]) / det, (n[0] * v - m[0] * u) / det};
                        if (x[0] < lo[0] || x[0] > hi[0] || x[1] < lo[1] || x[1] > hi[1]) continue;
                        if (cand.size() >= cap) throw CapacityError("grid intersection exceeded the point cap", cap);
                        cand.push_back(std::move(x));
                    }
            }
        std::sort(cand.begin(), cand.end(), lex_less);
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (auto& x : cand) {
            bool all = true;
            for (const auto& g : grids) {
                bool hit = false;
                for (const auto& f : g.families)
                    if (on_family(f, x)) {
                        hit = true;
                        break;
                    }
                if (!hit) {
                    all = false;
                    break;
                }
            }
            if (all) patch.points.push_back(std::move(x));
        }
        return patch;
    }

    const Real2 wl = to_real2(lo), wh = to_real2(hi);
    const double slack = 1e-9;
    std::vector<Real2> cand;
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = i + 1; j < fams.size(); ++j) {
            const LineFamily& f = *fams[i];
            const LineFamily& g = *fams[j];
            if (parallel(f, g)) continue;
            auto [fl, fh] = level_range(f.normal, wl, wh);
            auto [gl, gh] = level_range(g.normal, wl, wh);
            long a0 = static_cast<long>(std::ceil((fl - f.offset) / f.step - slack));
            long a1 = static_cast<long>(std::floor((fh - f.offset) / f.step + slack));
            long b0 = static_cast<long>(std::ceil((gl - g.offset) / g.step - slack));
            long b1 = static_cast<long>(std::floor((gh - g.offset) / g.step + slack));
            double det = f.normal[0] * g.normal[1] - f.normal[1] * g.normal[0];
            for (long a = a0; a <= a1; ++a)
                for (long b = b0; b <= b1; ++b) {
                    double u = f.offset + f.step * a;
                    double v = g.offset + g.step * b;
                    Real2 x{(u * g.normal[1] - v * f.normal[1]) / det, (f.normal[0] * v - g.normal[0] * u) / det};
                    if (x[0] < wl[0] - slack || x[0] > wh[0] + slack || x[1] < wl[1] - slack || x[1] > wh[1] + slack)
                        continue;
                    if (cand.size() >= cap) throw CapacityError("grid intersection exceeded the point cap", cap);
                    cand.push_back(x);
                }
        }
    std::sort(cand.begin(), cand.end());
    std::vector<Real2> uniq;
    for (const auto& x : cand) {
        bool dup = false;
        for (auto it = uniq.rbegin(); it != uniq.rend() && x[0] - (*it)[0] <= slack; ++it)
            if (std::abs(x[1] - (*it)[1]) <= slack) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(x);
    }
    for (const auto& x : uniq) {
        bool all = true;
        for (const auto& g : grids)
            if (!on_grid(g, x, slack)) {
                all = false;
                break;
            }
        if (all) patch.real_points.push_back({x[0], x[1]});
    }
    return patch;
}

std::vector<Real2> sample_grid_points(const ZeroSetGrid& grid, double radius, std::size_t per_line)
{
    std::vector<Real2> out;
    if (per_line == 0) return out;
    for (const auto& f : grid.families) {
        const double nn = std::hypot(f.normal[0], f.normal[1]);
        const Real2 u{-f.normal[1] / nn, f.normal[0] / nn};
        const double reach = radius * std::sqrt(2.0) * nn;
        long m0 = static_cast<long>(std::ceil((-reach - f.offset) / f.step));
        long m1 = static_cast<long>(std::floor((reach - f.offset) / f.step));
        for (long m = m0; m <= m1; ++m) {
            if (f.exclude_through_origin && m == 0) continue;
            double level = f.offset + f.step * m;
            Real2 base{f.normal[0] * level / (nn * nn), f.normal[1] * level / (nn * nn)};
            for (std::size_t k = 0; k < per_line; ++k) {
                double t = -radius * std::sqrt(2.0) + (2.0 * radius * std::sqrt(2.0)) * (k + 0.5) / per_line;
                Real2 x{base[0] + t * u[0], base[1] + t * u[1]};
                if (std::abs(x[0]) <= radius && std::abs(x[1]) <= radius) out.push_back(x);
            }
        }
    }
    return out;
}

} // namespace tilinglab
