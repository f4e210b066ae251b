#include "tilinglab/spectra/spectra.hpp"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/parallel.hpp"
#include "tilinglab/core/sequence.hpp"
#include "tilinglab/fourier/bessel.hpp"
#include "tilinglab/fourier/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace tilinglab {

namespace {

constexpr double kPi = std::numbers::pi;

bool has_nonzero_integer_coordinate(const Vec& diff)
{
    return std::any_of(diff.begin(), diff.end(), [](const Rational& q) { return q != 0 && is_integer(q); });
}

double sinc2(double t)
{
    const double s = sinc_pi(t);
    return s * s;
}

// Full and truncated values of a structured sum at one point.
struct SumPair {
    double sum = 0.0;
    double truncated = 0.0;
};

SumPair progression(double y, const Rational& step, double tail)
{
    const ProgressionSum s = sinc2_progression_sum(y, step, tail);
    return {s.sum, s.truncated};
}

SumPair lattice_sum_at(const Lattice& l, const std::vector<double>& x, double tail)
{
    const std::size_t d = l.dim();
    const Matrix h = column_hermite_form(l.basis());
    const Vec& offset = l.offset();
    auto off = [&](std::size_t i) { return offset.empty() ? 0.0 : to_double(offset[i]); };

    bool diagonal = true;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (h(i, j) != 0) diagonal = false;

    if (diagonal) {
        SumPair r{1.0, 1.0};
        for (std::size_t i = 0; i < d; ++i) {
            const SumPair s = progression(x[i] - off(i), h(i, i), tail);
            r.sum *= s.sum;
            r.truncated *= s.truncated;
        }
        return r;
    }
    if (d != 2) throw DomainError("completeness sums need a diagonal Hermite form in dimension > 2");

    const Rational h11 = h(0, 0), h21 = h(1, 0), h22 = h(1, 1);
    const Rational ratio = h21 / h22;
    const Integer period = ratio.get_den();
    if (period > 1'000'000) throw DomainError("Hermite form period too large for completeness sums");
    const long q = period.get_si();
    const Rational outer_step = h11 * Rational(period);

    SumPair r;
    for (long c = 0; c < q; ++c) {
        const SumPair g = progression(x[1] - off(1) - to_double(h21 * c), h22, tail);
        const SumPair s = progression(x[0] - off(0) - to_double(h11 * c), outer_step, tail);
        r.sum += g.sum * s.sum;
        r.truncated += g.truncated * s.truncated;
    }
    return r;
}

SumPair columns_sum_at(const ShiftedColumns& t, const std::vector<double>& x, double tail)
{
    const Rational one(1);
    const SumPair row = progression(x[0], one, tail);
    const SumPair base = progression(x[1], one, tail);
    SumPair r{base.sum * row.sum, base.truncated * row.truncated};
    for (const auto& [m, shift] : t.shifts) {
        if (is_integer(shift)) continue;
        const double dx = x[0] - static_cast<double>(m);
        const double w = sinc2(dx);
        const SumPair col = progression(x[1] - to_double(shift), one, tail);
        r.sum += w * (col.sum - base.sum);
        if (std::abs(dx) <= tail) r.truncated += w * (col.truncated - base.truncated);
    }
    return r;
}

SumPair structured_sum_at(const TranslationSet& t, const std::vector<double>& x, double tail)
{
    return std::visit(
        [&](const auto& s) -> SumPair {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Lattice>) {
                return lattice_sum_at(s, x, tail);
            } else if constexpr (std::is_same_v<T, LatticeUnion>) {
                SumPair r;
                for (const Lattice& m : s.members) {
                    const SumPair p = lattice_sum_at(m, x, tail);
                    r.sum += p.sum;
                    r.truncated += p.truncated;
                }
                return r;
            } else if constexpr (std::is_same_v<T, ApUnion>) {
                SumPair r;
                for (const ArithmeticProgression& ap : s.progressions) {
                    const SumPair p = progression(x[0] - to_double(ap.beta), abs_of(ap.alpha), tail);
                    r.sum += p.sum;
                    r.truncated += p.truncated;
                }
                return r;
            } else if constexpr (std::is_same_v<T, ShiftedColumns>) {
                return columns_sum_at(s, x, tail);
            } else {
                throw DomainError("point patches are summed directly");
            }
        },
        t);
}

std::vector<std::vector<double>> patch_points(const PointPatch& p)
{
    if (!p.exact) return p.real_points;
    std::vector<std::vector<double>> out;
    out.reserve(p.points.size());
    for (const Vec& v : p.points) out.push_back(to_doubles(v));
    return out;
}

// Largest number of points in a half-open unit cube, bounded by 2^d times the grid-cell maximum.
double unit_cube_multiplicity(const std::vector<std::vector<double>>& points, std::size_t dim)
{
    std::map<std::vector<long>, std::size_t> counts;
    std::size_t best = 0;
    for (const auto& p : points) {
        std::vector<long> cell(dim);
        for (std::size_t i = 0; i < dim; ++i) cell[i] = static_cast<long>(std::floor(p[i]));
        best = std::max(best, ++counts[cell]);
    }
    return std::ldexp(static_cast<double>(best), static_cast<int>(dim));
}

CompletenessReport patch_completeness(const PointPatch& patch, const std::vector<std::vector<double>>& samples,
                                      double tol)
{
    const std::size_t d = patch.dim;
    const auto points = patch_points(patch);
    const double mu = unit_cube_multiplicity(points, d);
    const std::vector<double> lo = to_doubles(patch.lo), hi = to_doubles(patch.hi);

    std::vector<double> sums(samples.size(), 0.0), bars(samples.size(), 0.0);
    parallel_for_chunks(samples.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const auto& x = samples[s];
            double total = 0.0;
            for (const auto& p : points) {
                double term = 1.0;
                for (std::size_t i = 0; i < d; ++i) term *= sinc2(x[i] - p[i]);
                total += term;
            }
            sums[s] = total;
            double bar = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double dist = std::min(x[j] - lo[j], hi[j] - x[j]);
                if (dist <= 1.0) {
                    bar = std::numeric_limits<double>::infinity();
                    break;
                }
                bar += 2.0 / (kPi * kPi * (dist - 1.0));
            }
            bars[s] = bar * mu * std::pow(7.0 / 3.0, static_cast<double>(d) - 1.0);
        }
    });

    CompletenessReport r;
    r.samples = samples.size();
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const double res = std::abs(sums[s] - 1.0);
        if (s == 0 || res > r.residual) {
            r.residual = res;
            r.worst_sample = samples[s];
        }
        r.error_bar = std::max(r.error_bar, bars[s]);
    }
    r.truncated_residual = r.residual;
    r.tail_estimate = r.error_bar;
    r.complete = r.residual <= tol && r.error_bar <= tol;
    r.inconclusive = !r.complete && r.residual <= r.error_bar + tol;
    return r;
}

bool tiles_at_level_one(const TilingReport& r) { return r.passed && r.level == 1; }

} // namespace

OrthogonalityReport cube_orthogonality(const std::vector<Vec>& patch)
{
    OrthogonalityReport r;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        for (std::size_t j = i + 1; j < patch.size(); ++j) {
            ++r.pairs_checked;
            if (!has_nonzero_integer_coordinate(sub(patch[j], patch[i]))) {
                r.orthogonal = false;
                r.failing_pair = std::make_pair(patch[i], patch[j]);
                return r;
            }
        }
    }
    return r;
}

OrthogonalityReport cube_orthogonality(const TranslationSet& t, const Vec& lo, const Vec& hi)
{
    return cube_orthogonality(normalized_patch(translations_in_box(t, lo, hi)));
}

std::vector<Vec> normalized_patch(const std::vector<Vec>& patch)
{
    if (patch.empty()) return {};
    const Vec first = *std::min_element(patch.begin(), patch.end(), lex_less);
    std::vector<Vec> out;
    out.reserve(patch.size());
    for (const Vec& p : patch) out.push_back(sub(p, first));
    return out;
}

double trigamma(double z)
{
    if (!(z > 0.0)) throw DomainError("trigamma needs a positive argument");
    double acc = 0.0;
    while (z < 10.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    const double w = 1.0 / z;
    const double w2 = w * w;
    const double series =
        w + w2 / 2.0 + w * w2 * (1.0 / 6.0 + w2 * (-1.0 / 30.0 + w2 * (1.0 / 42.0 + w2 * (-1.0 / 30.0 + w2 * 5.0 / 66.0))));
    return acc + series;
}

ProgressionSum sinc2_progression_sum(double y, const Rational& step, double tail)
{
    if (step <= 0) throw DomainError("progression step must be positive");
    if (!(tail > 0.0)) throw DomainError("tail radius must be positive");
    const Integer den = step.get_den();
    if (den > 1'000'000) throw DomainError("progression step denominator too large");
    const long q = den.get_si();
    const double p = to_double(Rational(step.get_num()));

    ProgressionSum r;
    for (long c = 0; c < q; ++c) {
        const double base = y - to_double(step * c);
        const double k_lo = std::ceil((base - tail) / p);
        const double k_hi = std::floor((base + tail) / p);
        double part = 0.0;
        for (double k = k_lo; k <= k_hi; k += 1.0) part += sinc2(base - p * k);
        const double s = std::sin(kPi * (base - p * std::round(base / p)));
        const double tail_part =
            s * s / (kPi * kPi * p * p) * (trigamma(k_hi + 1.0 - base / p) + trigamma(base / p - k_lo + 1.0));
        r.truncated += part;
        r.sum += part + tail_part;
    }
    return r;
}

std::vector<std::vector<double>> unit_cube_samples(std::size_t dim, std::size_t count, std::uint64_t seed)
{
    std::vector<std::vector<double>> out;
    for (const Vec& v : halton_points(zero_vec(dim), Vec(dim, Rational(1)), count, seed)) out.push_back(to_doubles(v));
    return out;
}

CompletenessReport cube_completeness_residual(const TranslationSet& t, const std::vector<std::vector<double>>& samples,
                                              double tail, double tol)
{
    if (const auto* patch = std::get_if<PointPatch>(&t)) return patch_completeness(*patch, samples, tol);

    std::vector<SumPair> values(samples.size());
    parallel_for_chunks(samples.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) values[s] = structured_sum_at(t, samples[s], tail);
    });

    CompletenessReport r;
    r.exact_tail = true;
    r.samples = samples.size();
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const double res = std::abs(values[s].sum - 1.0);
        if (s == 0 || res > r.residual) {
            r.residual = res;
            r.worst_sample = samples[s];
        }
        r.truncated_residual = std::max(r.truncated_residual, std::abs(values[s].truncated - 1.0));
        r.tail_estimate = std::max(r.tail_estimate, std::abs(values[s].sum - values[s].truncated));
    }
    r.complete = r.residual <= tol;
    return r;
}

CubeSpectrumReport cube_spectrum_iff_tiling(const TranslationSet& t, std::size_t dim, const CubeSpectrumOptions& options)
{
    if (dimension_of(t) != dim) throw DomainError("candidate dimension mismatch");
    CubeSpectrumReport r;

    const Vec lo(dim, Rational(-options.orthogonality_radius));
    const Vec hi(dim, Rational(options.orthogonality_radius));
    r.orthogonality = cube_orthogonality(t, lo, hi);
    r.completeness = cube_completeness_residual(t, unit_cube_samples(dim, options.completeness_samples, options.seed),
                                                options.tail, options.tol);
    r.spectrum = r.orthogonality.orthogonal && r.completeness.complete;

    const BoxUnionTile cube = BoxUnionTile::unit_cube(dim);
    if (is_periodic(t)) {
        r.tiling = verify_tiling_exact(cube, t);
    } else {
        const Vec wlo(dim, Rational(-options.tiling_window));
        const Vec whi(dim, Rational(options.tiling_window));
        r.tiling = verify_tiling_sampled(sampled_tile(cube), t, wlo, whi, options.tiling_samples, options.seed);
    }
    r.agree = r.spectrum == tiles_at_level_one(r.tiling);
    return r;
}

LatticeSpectrumReport lattice_spectrum_check(const BoxUnionTile& domain, const Lattice& l,
                                             const LatticeSpectrumOptions& options)
{
    const std::size_t d = domain.dim();
    if (l.dim() != d) throw DomainError("lattice and domain dimensions differ");
    LatticeSpectrumReport r;
    r.tiling = verify_tiling_exact(domain, l);

    const Lattice dual = dual_lattice(l.group());
    const double measure = to_double(domain.measure());

    const Vec rlo(d, -options.orthogonality_radius), rhi(d, options.orthogonality_radius);
    for (const Vec& xi : enumerate_box(dual, rlo, rhi)) {
        if (max_abs(xi) == 0) continue;
        r.orthogonality_max = std::max(r.orthogonality_max, std::abs(ft_box_union(domain, xi)));
    }
    r.orthogonal = r.orthogonality_max < options.tol * (1.0 + measure);

    double norm2 = 0.0, weight_sum = 0.0;
    std::vector<double> widths(d, 0.0);
    for (const WeightedBox& b : domain.boxes()) {
        norm2 += to_double(b.weight * b.weight * b.volume());
        weight_sum += std::abs(to_double(b.weight));
        for (std::size_t i = 0; i < d; ++i) widths[i] = std::max(widths[i], to_double(b.widths[i]));
    }

    const double tail = options.tail;
    const Rational tail_q(tail);
    const Vec elo(d, -tail_q), ehi(d, tail_q + 1);
    std::vector<std::vector<double>> points;
    for (const Vec& xi : enumerate_box(dual, elo, ehi)) points.push_back(to_doubles(xi));

    const auto samples = unit_cube_samples(d, options.samples);
    std::vector<double> residuals(samples.size(), 0.0);
    parallel_for_chunks(samples.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> diff(d);
        for (std::size_t s = begin; s < end; ++s) {
            double total = 0.0;
            for (const auto& xi : points) {
                bool inside = true;
                for (std::size_t i = 0; i < d; ++i) {
                    diff[i] = samples[s][i] - xi[i];
                    if (std::abs(diff[i]) > tail) inside = false;
                }
                if (!inside) continue;
                total += std::norm(ft_box_union(domain, diff));
            }
            residuals[s] = std::abs(total / (norm2 * norm2) - 1.0);
        }
    });
    for (double v : residuals) r.completeness_residual = std::max(r.completeness_residual, v);

    const Matrix h = column_hermite_form(dual.basis());
    double bound = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double gj = to_double(h(j, j));
        double term = 2.0 / (kPi * kPi * tail * tail) + 2.0 / (kPi * kPi * gj * tail);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == j) continue;
            const double gi = to_double(h(i, i));
            term *= 2.0 * widths[i] * widths[i] + 1.0 / (3.0 * gi * gi);
        }
        bound += term;
    }
    r.tail_bound = bound * weight_sum * weight_sum / (norm2 * norm2);
    r.complete = r.completeness_residual <= r.tail_bound + options.completeness_tol;
    r.spectrum = r.orthogonal && r.complete;
    r.agree = r.spectrum == tiles_at_level_one(r.tiling);
    return r;
}

TransferReport packing_transfer_harness(const BoxUnionTile& f, const GridFunction& g, const TranslationSet& t,
                                        const Vec& lo, const Vec& hi, std::size_t samples, double tol)
{
    if (!is_periodic(t)) throw DomainError("packing transfer needs a periodic translation set");
    const double measure = to_double(f.measure());
    if (std::abs(g.integral - measure) > tol * (1.0 + measure))
        throw PreconditionError("g and f must have the same integral");

    TransferReport r;
    const TilingReport packing = verify_packing_exact(f, t, 1);
    r.f_packing = packing.passed;
    r.f_report = verify_tiling_exact(f, t);
    r.f_tiling = tiles_at_level_one(r.f_report);

    const std::size_t d = lo.size();
    const Rational radius(g.radius);
    Vec plo = lo, phi = hi;
    for (std::size_t i = 0; i < d; ++i) {
        plo[i] -= radius;
        phi[i] += radius;
    }
    std::vector<std::vector<double>> translations;
    for (const Vec& v : translations_in_box(t, plo, phi)) translations.push_back(to_doubles(v));

    std::vector<std::vector<double>> points;
    for (const Vec& v : halton_points(lo, hi, samples, 0)) points.push_back(to_doubles(v));

    std::vector<double> sums(points.size(), 0.0), minima(points.size(), 0.0);
    parallel_for_chunks(points.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> diff(d);
        for (std::size_t s = begin; s < end; ++s) {
            double total = 0.0;
            double low = std::numeric_limits<double>::infinity();
            for (const auto& lambda : translations) {
                bool inside = true;
                for (std::size_t i = 0; i < d; ++i) {
                    diff[i] = points[s][i] - lambda[i];
                    if (std::abs(diff[i]) > g.radius) inside = false;
                }
                if (!inside) continue;
                const double v = g.value(diff);
                low = std::min(low, v);
                total += v;
            }
            sums[s] = total;
            minima[s] = low;
        }
    });

    const double slack = tol + g.tail_bound;
    bool nonnegative = true, packs = true, tiles = true;
    r.g_min = std::numeric_limits<double>::infinity();
    r.g_max = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < points.size(); ++s) {
        r.g_min = std::min(r.g_min, sums[s]);
        r.g_max = std::max(r.g_max, sums[s]);
        if (minima[s] < -tol) nonnegative = false;
        if (sums[s] > 1.0 + slack) packs = false;
        if (std::abs(sums[s] - 1.0) > slack) tiles = false;
    }
    r.g_packing = nonnegative && packs;
    r.g_tiling = r.g_packing && tiles;

    if (!r.f_packing) {
        r.reason = "f + T is not a packing at level 1";
    } else if (!nonnegative) {
        r.reason = "g takes negative values";
    } else if (!packs) {
        r.reason = "g + T exceeds 1 on the window";
    } else {
        r.applicable = true;
        r.agree = r.f_tiling == r.g_tiling;
    }
    return r;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    const std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

bool in_square(std::int64_t x, std::int64_t y, std::int64_t scale)
{
    return 2 * x > -scale && 2 * x < scale && 2 * y > -scale && 2 * y < scale;
}

bool in_parallelogram(std::int64_t x, std::int64_t y, std::int64_t scale)
{
    return 2 * x > -scale && 2 * x < scale && 4 * y > 2 * x - scale && 4 * y < 2 * x + 3 * scale;
}

MotionCoverage motion_coverage(bool square, bool reflect, unsigned exponent, const Rational& half_width)
{
    if (exponent > 20) throw DomainError("grid exponent must be at most 20");
    // Sample i sits at (2i + 1) / 2^{e+1} - half_width; scale = 2^{e+1} keeps it integral.
    const std::int64_t scale = std::int64_t{1} << (exponent + 1);
    const Rational shifted = half_width * scale;
    if (!is_integer(shifted)) throw DomainError("half width must be a multiple of 2^-(exponent+1)");
    // 2 half_width 2^exponent = half_width scale samples per axis.
    if (shifted > 1 << 14) throw CapacityError("rigid-motion sample grid too large", std::size_t{1} << 28);
    const std::int64_t origin = shifted.get_num().get_si();
    const std::size_t n = static_cast<std::size_t>(origin);

    auto coverage_at = [&](std::int64_t x, std::int64_t y) {
        const std::int64_t m0 = floor_div(x, scale);
        const std::int64_t k0 = floor_div(y, scale);
        int count = 0;
        for (std::int64_t m = m0 - 1; m <= m0 + 1; ++m) {
            for (std::int64_t k = k0 - 2; k <= k0 + 2; ++k) {
                const std::int64_t px = x - scale * m;
                std::int64_t py = y - scale * k;
                if (reflect && m == 0 && k < 0) py = -py;
                if (square ? in_square(px, py, scale) : in_parallelogram(px, py, scale)) ++count;
            }
        }
        return count;
    };

    std::vector<int> counts(n * n, 0);
    parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::int64_t x = static_cast<std::int64_t>(2 * i + 1) - origin;
            for (std::size_t j = 0; j < n; ++j)
                counts[i * n + j] = coverage_at(x, static_cast<std::int64_t>(2 * j + 1) - origin);
        }
    });

    MotionCoverage r;
    r.samples = counts.size();
    for (std::size_t idx = 0; idx < counts.size(); ++idx) {
        const int c = counts[idx];
        r.max_coverage = std::max(r.max_coverage, c);
        if (c > 1) ++r.overcovered;
        if (c == 0) {
            if (!r.uncovered_witness) {
                const std::size_t i = idx / n, j = idx % n;
                r.uncovered_witness = Vec{make_rational(static_cast<long>(2 * i + 1) - origin, scale),
                                          make_rational(static_cast<long>(2 * j + 1) - origin, scale)};
            }
            ++r.uncovered;
        }
    }
    r.packing = r.overcovered == 0;
    r.tiling = r.packing && r.uncovered == 0;
    r.uncovered_fraction = static_cast<double>(r.uncovered) / static_cast<double>(r.samples);
    return r;
}

} // namespace

RigidMotionReport rigid_motion_counterexample(unsigned exponent, const Rational& half_width)
{
    if (half_width <= 0) throw DomainError("half width must be positive");
    RigidMotionReport r;
    r.square = motion_coverage(true, true, exponent, half_width);
    r.parallelogram = motion_coverage(false, true, exponent, half_width);
    r.square_translations = motion_coverage(true, false, exponent, half_width);
    r.parallelogram_translations = motion_coverage(false, false, exponent, half_width);
    return r;
}

DiskCertificate disk_certificate() { return disk_certificate(3.5, 4.2); }

DiskCertificate disk_certificate(double bracket_lo, double bracket_hi)
{
    DiskCertificate c;
    c.j11 = bessel_j1_first_zero(bracket_lo, bracket_hi);
    c.r0 = c.j11 / (2.0 * std::sqrt(kPi));
    c.thue_bound = kPi / std::sqrt(12.0);
    c.threshold = 2.0 / std::pow(12.0, 0.25);
    c.verdict = c.r0 > c.threshold;
    return c;
}

} // namespace tilinglab
