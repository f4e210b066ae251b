#include "tilinglab/tiling/verify.hpp"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/parallel.hpp"
#include "tilinglab/core/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tilinglab {

namespace {

std::size_t index_of(const std::vector<Rational>& cuts, const Rational& x)
{
    return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
}

Vec anchor_offset(const TranslationSet& t)
{
    if (const auto* l = std::get_if<Lattice>(&t)) return l->offset();
    if (const auto* u = std::get_if<LatticeUnion>(&t)) return u->members.front().offset();
    if (const auto* ap = std::get_if<ApUnion>(&t)) return {ap->progressions.front().beta};
    throw DomainError("translation set is not periodic; use sampled verification");
}

// Piecewise-constant coverage of one period box, counted with integer-scaled weights.
struct CellCoverage {
    std::vector<std::vector<Rational>> cuts;
    std::vector<std::size_t> stride;
    std::vector<long long> diff;
    Integer scale = 1;
    std::size_t cells = 0;
};

CellCoverage coverage_cells(const BoxUnionTile& tile, const TranslationSet& t, std::size_t cell_cap)
{
    const std::size_t d = tile.dim();
    if (dimension_of(t) != d) throw DomainError("tile and translation set differ in dimension");
    Lattice period = period_lattice(t);
    Matrix h = column_hermite_form(period.basis());

    Vec lo = add(tile.lower_bound(), anchor_offset(t));
    Vec hi(d);
    for (std::size_t i = 0; i < d; ++i) hi[i] = lo[i] + h(i, i);

    auto translations = translations_in_box(t, sub(lo, tile.upper_bound()), sub(hi, tile.lower_bound()));

    CellCoverage cc;
    for (const auto& b : tile.boxes()) mpz_lcm(cc.scale.get_mpz_t(), cc.scale.get_mpz_t(), b.weight.get_den_mpz_t());

    struct Clipped {
        Vec l, u;
        long long w;
    };
    std::vector<Clipped> pieces;
    cc.cuts.assign(d, {});
    for (std::size_t i = 0; i < d; ++i) cc.cuts[i] = {lo[i], hi[i]};
    for (const auto& tr : translations)
        for (const auto& b : tile.boxes()) {
            Clipped c{Vec(d), Vec(d), 0};
            bool empty = false;
            for (std::size_t i = 0; i < d && !empty; ++i) {
                Rational a = b.corner[i] + tr[i];
                Rational e = a + b.widths[i];
                c.l[i] = a < lo[i] ? lo[i] : a;
                c.u[i] = e > hi[i] ? hi[i] : e;
                empty = c.l[i] >= c.u[i];
            }
            if (empty) continue;
            Rational ws = b.weight * Rational(cc.scale);
            c.w = ws.get_num().get_si();
            for (std::size_t i = 0; i < d; ++i) {
                cc.cuts[i].push_back(c.l[i]);
                cc.cuts[i].push_back(c.u[i]);
            }
            pieces.push_back(std::move(c));
        }
    long double total = 1;
    for (auto& cut : cc.cuts) {
        std::sort(cut.begin(), cut.end());
        cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
        total *= static_cast<long double>(cut.size());
    }
    if (total > static_cast<long double>(cell_cap)) throw CapacityError("cell decomposition exceeded the cell cap", cell_cap);

    cc.stride.assign(d, 1);
    for (std::size_t i = d; i-- > 1;) cc.stride[i - 1] = cc.stride[i] * cc.cuts[i].size();
    cc.diff.assign(cc.stride[0] * cc.cuts[0].size(), 0);
    cc.cells = 1;
    for (const auto& cut : cc.cuts) cc.cells *= cut.size() - 1;

    std::vector<std::size_t> il(d), iu(d);
    for (const auto& p : pieces) {
        for (std::size_t i = 0; i < d; ++i) {
            il[i] = index_of(cc.cuts[i], p.l[i]);
            iu[i] = index_of(cc.cuts[i], p.u[i]);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            std::size_t idx = 0;
            int sign = 1;
            for (std::size_t i = 0; i < d; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    idx += iu[i] * cc.stride[i];
                    sign = -sign;
                } else {
                    idx += il[i] * cc.stride[i];
                }
            }
            cc.diff[idx] += sign * p.w;
        }
    }
    // prefix sums along every axis turn the difference array into counts
    for (std::size_t axis = 0; axis < d; ++axis) {
        const std::size_t n = cc.cuts[axis].size();
        const std::size_t s = cc.stride[axis];
        for (std::size_t idx = 0; idx < cc.diff.size(); ++idx) {
            std::size_t coord = (idx / s) % n;
            if (coord > 0) cc.diff[idx] += cc.diff[idx - s];
        }
    }
    return cc;
}

template <class F>
void for_each_cell(const CellCoverage& cc, F&& f)
{
    const std::size_t d = cc.cuts.size();
    std::vector<std::size_t> k(d, 0);
    while (true) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < d; ++i) idx += k[i] * cc.stride[i];
        f(k, cc.diff[idx]);
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (++k[i] < cc.cuts[i].size() - 1) break;
            k[i] = 0;
            if (i == 0) return;
        }
    }
}

Vec cell_midpoint(const CellCoverage& cc, const std::vector<std::size_t>& k)
{
    Vec m(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) m[i] = (cc.cuts[i][k[i]] + cc.cuts[i][k[i] + 1]) / 2;
    return m;
}

double cell_measure(const CellCoverage& cc, const std::vector<std::size_t>& k)
{
    double v = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) v *= to_double(cc.cuts[i][k[i] + 1] - cc.cuts[i][k[i]]);
    return v;
}

struct CellSummary {
    long long level = 0;
    long long min = 0;
    long long max = 0;
    double deviating_measure = 0.0;
    double total_measure = 0.0;
    std::optional<std::vector<std::size_t>> witness;
    long long witness_count = 0;
    long long max_deviation = 0;
};

CellSummary summarize(const CellCoverage& cc, std::optional<long long> fixed_level, bool witness_above_only)
{
    CellSummary s;
    std::map<long long, double> by_value;
    bool first = true;
    for_each_cell(cc, [&](const std::vector<std::size_t>& k, long long c) {
        by_value[c] += cell_measure(cc, k);
        if (first) {
            s.min = s.max = c;
            first = false;
        }
        s.min = std::min(s.min, c);
        s.max = std::max(s.max, c);
    });
    if (fixed_level) {
        s.level = *fixed_level;
    } else {
        double best = -1;
        for (const auto& [v, m] : by_value)
            if (m > best) {
                best = m;
                s.level = v;
            }
    }
    for (const auto& [v, m] : by_value) {
        s.total_measure += m;
        bool bad = witness_above_only ? v > s.level : v != s.level;
        if (bad) s.deviating_measure += m;
        if (v != s.level) s.max_deviation = std::max(s.max_deviation, std::llabs(v - s.level));
    }
    for_each_cell(cc, [&](const std::vector<std::size_t>& k, long long c) {
        bool bad = witness_above_only ? c > s.level : c != s.level;
        if (bad && !s.witness) {
            s.witness = k;
            s.witness_count = c;
        }
    });
    return s;
}

Rational unscale(long long v, const Integer& scale)
{
    Rational r(Integer(static_cast<long>(v)), scale);
    r.canonicalize();
    return r;
}

TilingReport exact_report(const CellCoverage& cc, const CellSummary& s, bool passed)
{
    TilingReport r;
    r.method = "exact-cells";
    r.exact = true;
    r.passed = passed;
    r.level = unscale(s.level, cc.scale);
    r.min_coverage = unscale(s.min, cc.scale);
    r.max_coverage = unscale(s.max, cc.scale);
    r.max_deviation = to_double(unscale(s.max_deviation, cc.scale));
    r.samples_or_cells = cc.cells;
    r.deviating_fraction = s.total_measure > 0 ? s.deviating_measure / s.total_measure : 0.0;
    if (s.witness) {
        r.witness = cell_midpoint(cc, *s.witness);
        r.witness_value = unscale(s.witness_count, cc.scale);
    }
    return r;
}

std::vector<Rational> sample_coverage(const SampledTile& tile, const TranslationSet& t, const std::vector<Vec>& pts,
                                      const Vec& lo, const Vec& hi)
{
    auto translations = translations_in_box(t, sub(lo, tile.hi), sub(hi, tile.lo));
    if (translations.empty()) throw DomainError("no translations reach the window");
    std::vector<Rational> out(pts.size());
    parallel_for_chunks(pts.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const Vec& x = pts[k];
            Rational c = 0;
            // translations are sorted by first coordinate; only x0 - hi0 <= t0 <= x0 - lo0 can matter
            auto it = std::lower_bound(translations.begin(), translations.end(), Rational(x[0] - tile.hi[0]),
                                       [](const Vec& p, const Rational& v) { return p[0] < v; });
            Rational stop = x[0] - tile.lo[0];
            for (; it != translations.end() && (*it)[0] <= stop; ++it) {
                bool near = true;
                for (std::size_t i = 1; i < x.size() && near; ++i) {
                    Rational y = x[i] - (*it)[i];
                    near = y >= tile.lo[i] && y <= tile.hi[i];
                }
                if (near) c += tile.value(sub(x, *it));
            }
            out[k] = c;
        }
    });
    return out;
}

TilingReport sampled_report(const std::vector<Vec>& pts, const std::vector<Rational>& cov,
                            std::optional<Rational> fixed_level, bool above_only)
{
    TilingReport r;
    r.method = "sampled";
    r.exact = false;
    r.samples_or_cells = pts.size();
    std::map<Rational, std::size_t> freq;
    for (const auto& c : cov) ++freq[c];
    if (fixed_level) {
        r.level = *fixed_level;
    } else {
        std::size_t best = 0;
        for (const auto& [v, n] : freq)
            if (n > best) {
                best = n;
                r.level = v;
            }
    }
    r.min_coverage = freq.begin()->first;
    r.max_coverage = freq.rbegin()->first;
    std::size_t bad = 0;
    Rational worst = 0;
    for (std::size_t k = 0; k < cov.size(); ++k) {
        bool off = above_only ? cov[k] > r.level : cov[k] != r.level;
        if (!off) continue;
        ++bad;
        worst = std::max(worst, abs_of(cov[k] - r.level));
        if (!r.witness) {
            r.witness = pts[k];
            r.witness_value = cov[k];
        }
    }
    r.max_deviation = to_double(worst);
    r.deviating_fraction = pts.empty() ? 0.0 : static_cast<double>(bad) / static_cast<double>(pts.size());
    r.passed = bad == 0;
    return r;
}

} // namespace

SampledTile sampled_tile(const BoxUnionTile& tile)
{
    return SampledTile{[tile](const Vec& x) { return tile.value_at(x); }, tile.lower_bound(), tile.upper_bound()};
}

namespace {

TilingReport fourier_report(const FourierTransform& ft, const Rational& measure, const Lattice& lattice,
                            const std::vector<Vec>& pts, double tol)
{
    std::vector<double> mags(pts.size(), 0.0);
    parallel_for_chunks(pts.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k)
            if (max_abs(pts[k]) != 0) mags[k] = std::abs(ft(pts[k]));
    });
    TilingReport r;
    r.method = "fourier";
    r.exact = false;
    r.tol = tol;
    r.level = measure / abs_of(lattice_determinant(lattice));
    r.min_coverage = r.max_coverage = r.level;
    r.samples_or_cells = pts.size() > 0 ? pts.size() - 1 : 0;
    const double bound = tol * (1.0 + to_double(measure));
    std::size_t bad = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        r.max_deviation = std::max(r.max_deviation, mags[k]);
        if (mags[k] >= bound) {
            ++bad;
            if (!r.witness) r.witness = pts[k];
        }
    }
    r.deviating_fraction = r.samples_or_cells ? static_cast<double>(bad) / static_cast<double>(r.samples_or_cells) : 0.0;
    r.passed = bad == 0;
    return r;
}

} // namespace

TilingReport verify_lattice_tiling_fourier(const FourierTransform& ft, const Rational& measure, const Lattice& lattice,
                                           const Rational& radius, double tol, std::size_t cap)
{
    if (radius <= 0) throw DomainError("radius must be positive");
    Lattice dual = dual_lattice(lattice);
    auto pts = enumerate_points(dual, zero_vec(lattice.dim()), radius, cap).points;
    return fourier_report(ft, measure, lattice, pts, tol);
}

TilingReport verify_lattice_tiling_fourier_coefficients(const BoxUnionTile& tile, const Lattice& lattice,
                                                        long coefficient_bound, double tol, std::size_t cap)
{
    if (coefficient_bound <= 0) throw DomainError("coefficient bound must be positive");
    const Matrix dual = dual_lattice(lattice).basis();
    auto pts = enumerate_points(Lattice::integer(lattice.dim()), zero_vec(lattice.dim()), Rational(coefficient_bound), cap)
                   .points;
    for (Vec& z : pts) z = dual.apply(z);
    return fourier_report([&tile](const Vec& xi) { return ft_box_union(tile, xi); }, tile.measure(), lattice, pts, tol);
}

TilingReport verify_lattice_tiling_fourier(const BoxUnionTile& tile, const Lattice& lattice, const Rational& radius,
                                           double tol, std::size_t cap)
{
    return verify_lattice_tiling_fourier([&tile](const Vec& xi) { return ft_box_union(tile, xi); }, tile.measure(),
                                         lattice, radius, tol, cap);
}

TilingReport verify_tiling_exact(const BoxUnionTile& tile, const TranslationSet& t, const ExactOptions& options)
{
    auto cc = coverage_cells(tile, t, options.cell_cap);
    auto s = summarize(cc, std::nullopt, false);
    return exact_report(cc, s, !s.witness && s.level != 0);
}

TilingReport verify_packing_exact(const BoxUnionTile& tile, const TranslationSet& t, const Rational& level,
                                  const ExactOptions& options)
{
    auto cc = coverage_cells(tile, t, options.cell_cap);
    Rational scaled = level * Rational(cc.scale);
    if (!is_integer(scaled)) throw DomainError("packing level is not a multiple of the weight resolution");
    auto s = summarize(cc, scaled.get_num().get_si(), true);
    auto r = exact_report(cc, s, !s.witness);
    r.max_deviation = r.max_coverage > level ? to_double(r.max_coverage - level) : 0.0;
    return r;
}

TilingReport verify_tiling_sampled(const SampledTile& tile, const TranslationSet& t, const Vec& lo, const Vec& hi,
                                   std::size_t samples, std::uint64_t seed)
{
    if (samples == 0) throw DomainError("at least one sample is required");
    auto pts = halton_points(lo, hi, samples, seed);
    auto cov = sample_coverage(tile, t, pts, lo, hi);
    auto r = sampled_report(pts, cov, std::nullopt, false);
    r.passed = r.passed && r.level != 0;
    return r;
}

TilingReport verify_packing_sampled(const SampledTile& tile, const TranslationSet& t, const Vec& lo, const Vec& hi,
                                    std::size_t samples, std::uint64_t seed, const Rational& level)
{
    if (samples == 0) throw DomainError("at least one sample is required");
    auto pts = halton_points(lo, hi, samples, seed);
    auto cov = sample_coverage(tile, t, pts, lo, hi);
    auto r = sampled_report(pts, cov, level, true);
    r.max_deviation = r.max_coverage > level ? to_double(r.max_coverage - level) : 0.0;
    return r;
}

double separation_of(const PointPatch& patch)
{
    if (patch.exact) {
        std::vector<Vec> pts = patch.points;
        if (pts.size() < 2) return std::numeric_limits<double>::infinity();
        std::sort(pts.begin(), pts.end(), lex_less);
        std::optional<Rational> best;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                Rational dx = pts[j][0] - pts[i][0];
                if (best && dx * dx >= *best) break;
                Vec diff = sub(pts[j], pts[i]);
                Rational d2 = dot(diff, diff);
                if (!best || d2 < *best) best = d2;
            }
        return std::sqrt(to_double(*best));
    }
    auto pts = patch.real_points;
    if (pts.size() < 2) return std::numeric_limits<double>::infinity();
    std::sort(pts.begin(), pts.end());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double dx = pts[j][0] - pts[i][0];
            if (dx * dx >= best) break;
            double d2 = 0;
            for (std::size_t c = 0; c < pts[i].size(); ++c) d2 += (pts[j][c] - pts[i][c]) * (pts[j][c] - pts[i][c]);
            best = std::min(best, d2);
        }
    return std::sqrt(best);
}

} // namespace tilinglab
