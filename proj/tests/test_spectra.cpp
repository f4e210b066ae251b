#include "doctest.h"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/fourier/bessel.hpp"
#include "tilinglab/fourier/kernels.hpp"
#include "tilinglab/spectra/spectra.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace tilinglab;

namespace {

constexpr double kPi = std::numbers::pi;

Rational q(long p, long r = 1) { return make_rational(p, r); }

double tri(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

// Poisson summation: sum_n sinc^2(y - h n) = (1/h) sum_k tri(k/h) e^{2 pi i k y / h}.
double poisson_progression(double y, double h)
{
    double total = 1.0;
    for (long k = 1; static_cast<double>(k) < h; ++k) total += 2.0 * tri(k / h) * std::cos(2.0 * kPi * k * y / h);
    return total / h;
}

// Same identity for a translated planar lattice: (1/det) sum_{xi in L*} tri(xi_1) tri(xi_2) e^{2 pi i xi.(x - o)}.
double poisson_lattice(const Lattice& l, const std::vector<double>& x)
{
    const Lattice dual = dual_lattice(l.group());
    const double det = std::abs(to_double(lattice_determinant(l)));
    std::complex<double> total = 0.0;
    for (const Vec& xi : enumerate_box(dual, {q(-1), q(-1)}, {q(1), q(1)})) {
        const auto v = to_doubles(xi);
        double phase = 0.0;
        for (std::size_t i = 0; i < 2; ++i) phase += v[i] * (x[i] - (l.offset().empty() ? 0.0 : to_double(l.offset()[i])));
        total += tri(v[0]) * tri(v[1]) * std::polar(1.0, 2.0 * kPi * phase);
    }
    return total.real() / det;
}

double sinc2(double t) { return sinc_pi(t) * sinc_pi(t); }

double brute_truncated(const std::vector<Vec>& points, const std::vector<double>& x, double tail)
{
    double total = 0.0;
    for (const Vec& p : points) {
        const auto v = to_doubles(p);
        bool inside = true;
        double term = 1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::abs(x[i] - v[i]) > tail) inside = false;
            term *= sinc2(x[i] - v[i]);
        }
        if (inside) total += term;
    }
    return total;
}

ShiftedColumns four_shift_columns()
{
    return ShiftedColumns{{{-1, q(1, 3)}, {0, q(1, 7)}, {1, q(1, 2)}, {2, q(5, 6)}}};
}

PointPatch punctured_square_patch(long radius)
{
    PointPatch p = enumerate_points(Lattice::integer(2), {q(0), q(0)}, q(radius));
    std::erase_if(p.points, [](const Vec& v) { return max_abs(v) == 0; });
    return p;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

TEST_CASE("cube orthogonality on patches")
{
    CHECK(cube_orthogonality(TranslationSet{Lattice::integer(2)}, {q(-3), q(-3)}, {q(3), q(3)}).orthogonal);

    const auto cols = cube_orthogonality(TranslationSet{four_shift_columns()}, {q(-4), q(-4)}, {q(4), q(4)});
    CHECK(cols.orthogonal);
    CHECK(cols.pairs_checked > 1000);

    const auto bad = cube_orthogonality(std::vector<Vec>{{q(0), q(0)}, {q(1, 2), q(1, 2)}});
    CHECK_FALSE(bad.orthogonal);
    REQUIRE(bad.failing_pair);
    CHECK(bad.failing_pair->second == Vec{q(1, 2), q(1, 2)});

    // A repeated point has zero difference.
    CHECK_FALSE(cube_orthogonality(std::vector<Vec>{{q(1)}, {q(1)}}).orthogonal);
    CHECK(cube_orthogonality(std::vector<Vec>{}).orthogonal);
}

TEST_CASE("orthogonality is invariant under translating the patch")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 6), size(2, 7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vec> patch;
        const long n = size(rng);
        for (long i = 0; i < n; ++i) patch.push_back({q(num(rng), den(rng)), q(num(rng), den(rng))});
        const Vec shift{q(num(rng), den(rng)), q(num(rng), den(rng))};
        std::vector<Vec> moved;
        for (const Vec& p : patch) moved.push_back(add(p, shift));
        const bool base = cube_orthogonality(patch).orthogonal;
        CHECK(cube_orthogonality(moved).orthogonal == base);
        CHECK(cube_orthogonality(normalized_patch(patch)).orthogonal == base);
    }
    const auto norm = normalized_patch({{q(2), q(1)}, {q(1), q(5)}, {q(1), q(3)}});
    CHECK(norm[2] == Vec{q(0), q(0)});
    CHECK(norm[0] == Vec{q(1), q(-2)});
}

TEST_CASE("trigamma values")
{
    CHECK(trigamma(1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
    CHECK(trigamma(0.5) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-14));
    CHECK(trigamma(0.25) == doctest::Approx(kPi * kPi + 8.0 * 0.915965594177219015).epsilon(1e-13));
    for (double z : {0.3, 1.7, 9.5, 42.0}) CHECK(trigamma(z) - trigamma(z + 1.0) == doctest::Approx(1.0 / (z * z)).epsilon(1e-12));
    CHECK_THROWS_AS(trigamma(0.0), DomainError);
}

TEST_CASE("progression sums against Poisson summation")
{
    const std::vector<Rational> steps{q(1), q(1, 2), q(2), q(3), q(2, 3), q(5, 2), q(7, 3)};
    for (const Rational& h : steps) {
        for (double y : {0.0, 0.123, 0.5, 0.77, -3.4}) {
            const ProgressionSum s = sinc2_progression_sum(y, h, 1000.0);
            CHECK(std::abs(s.sum - poisson_progression(y, to_double(h))) < 1e-12);
            CHECK(std::abs(s.sum - s.truncated) < 1e-3);
        }
    }
    // Truncated part against a direct sum.
    const ProgressionSum s = sinc2_progression_sum(0.31, q(2, 3), 40.0);
    double direct = 0.0;
    for (long n = -200; n <= 200; ++n) {
        const double t = 0.31 - 2.0 * n / 3.0;
        if (std::abs(t) <= 40.0) direct += sinc2(t);
    }
    CHECK(s.truncated == doctest::Approx(direct).epsilon(1e-13));
    CHECK_THROWS_AS(sinc2_progression_sum(0.0, q(-1), 10.0), DomainError);
}

TEST_CASE("completeness residual for integer lattices")
{
    const auto s1 = unit_cube_samples(1, 32);
    const auto r1 = cube_completeness_residual(TranslationSet{Lattice::integer(1)}, s1, 1000.0);
    CHECK(r1.residual < 1e-10);
    CHECK(r1.complete);
    CHECK(r1.exact_tail);
    CHECK(r1.tail_estimate > 0.0);

    const auto s2 = unit_cube_samples(2, 32);
    const auto r2 = cube_completeness_residual(TranslationSet{Lattice::integer(2)}, s2, 1000.0);
    CHECK(r2.residual < 1e-8);
    CHECK(r2.complete);

    const auto sparse = cube_completeness_residual(TranslationSet{Lattice::diagonal({q(2)})}, s1, 1000.0);
    CHECK_FALSE(sparse.complete);
    CHECK(sparse.residual > 0.1);
}

TEST_CASE("truncated residual for Z^d decreases as the tail doubles")
{
    for (std::size_t d : {1u, 2u}) {
        const auto samples = unit_cube_samples(d, 16);
        double previous = 1.0;
        for (double tail = 10.0; tail <= 1280.0; tail *= 2.0) {
            const auto r = cube_completeness_residual(TranslationSet{Lattice::integer(d)}, samples, tail);
            CHECK(r.truncated_residual < previous);
            previous = r.truncated_residual;
        }
    }
}

TEST_CASE("structured planar sums match the oracles")
{
    const Lattice skew(Matrix::from_columns({{q(1), q(1, 3)}, {q(0), q(1)}}), {q(1, 5), q(2, 7)});
    const Lattice coarse(Matrix::from_columns({{q(2), q(1, 2)}, {q(1), q(3, 2)}}));
    const auto samples = unit_cube_samples(2, 8);
    for (const Lattice& l : {skew, coarse}) {
        const auto points = enumerate_box(l, {q(-60), q(-60)}, {q(61), q(61)});
        for (const auto& x : samples) {
            const auto one = cube_completeness_residual(TranslationSet{l}, {x}, 20.0);
            const double full = poisson_lattice(l, x);
            CHECK(std::abs(std::abs(full - 1.0) - one.residual) < 1e-10);
            CHECK(std::abs(std::abs(brute_truncated(points, x, 20.0) - 1.0) - one.truncated_residual) < 1e-10);
        }
    }

    const ShiftedColumns cols = four_shift_columns();
    const auto points = translations_in_box(TranslationSet{cols}, {q(-30), q(-30)}, {q(31), q(31)});
    for (const auto& x : samples) {
        const auto r = cube_completeness_residual(TranslationSet{cols}, {x}, 12.0);
        CHECK(r.residual < 1e-10);
        CHECK(std::abs(std::abs(brute_truncated(points, x, 12.0) - 1.0) - r.truncated_residual) < 1e-10);
    }

    // ap union at density 1: 2Z and 2Z + 1.
    const ApUnion ap{{{q(2), q(0)}, {q(2), q(1)}}};
    CHECK(cube_completeness_residual(TranslationSet{ap}, unit_cube_samples(1, 16), 500.0).residual < 1e-10);
}

TEST_CASE("finite patches carry an error bar")
{
    const PointPatch full = enumerate_points(Lattice::integer(2), {q(0), q(0)}, q(100));
    const auto samples = unit_cube_samples(2, 8);
    const auto r = cube_completeness_residual(TranslationSet{full}, samples, 1000.0);
    CHECK_FALSE(r.exact_tail);
    CHECK(r.error_bar > 0.0);
    CHECK(r.error_bar < 0.1);
    CHECK(r.residual <= r.error_bar);
    CHECK(r.inconclusive);
    CHECK_FALSE(r.complete);

    const auto punctured = cube_completeness_residual(TranslationSet{punctured_square_patch(100)}, samples, 1000.0);
    CHECK(punctured.residual > punctured.error_bar + 0.1);
    CHECK_FALSE(punctured.complete);
    CHECK_FALSE(punctured.inconclusive);
}

TEST_CASE("cube spectra agree with cube tilings")
{
    const auto start = std::chrono::steady_clock::now();

    const auto z2 = cube_spectrum_iff_tiling(TranslationSet{Lattice::integer(2)}, 2);
    CHECK(z2.spectrum);
    CHECK(z2.tiling.passed);
    CHECK(z2.agree);

    const auto cols = cube_spectrum_iff_tiling(TranslationSet{four_shift_columns()}, 2);
    CHECK(cols.spectrum);
    CHECK(cols.tiling.passed);
    CHECK(cols.tiling.method == "sampled");
    CHECK(cols.agree);

    const auto dense = cube_spectrum_iff_tiling(TranslationSet{Lattice::diagonal({q(1), q(1, 2)})}, 2);
    CHECK_FALSE(dense.spectrum);
    CHECK_FALSE(dense.orthogonality.orthogonal);
    CHECK(dense.tiling.level == 2);
    CHECK(dense.agree);

    const auto punctured = cube_spectrum_iff_tiling(TranslationSet{punctured_square_patch(100)}, 2);
    CHECK(punctured.orthogonality.orthogonal);
    CHECK_FALSE(punctured.spectrum);
    CHECK_FALSE(punctured.tiling.passed);
    CHECK(punctured.agree);

    const LatticeUnion pair{{Lattice::integer(2), Lattice::integer(2).translated({q(1, 2), q(1, 2)})}};
    const auto shifted = cube_spectrum_iff_tiling(TranslationSet{pair}, 2);
    CHECK_FALSE(shifted.spectrum);
    CHECK(shifted.tiling.level == 2);
    CHECK(shifted.agree);

    const auto line = cube_spectrum_iff_tiling(TranslationSet{ApUnion{{{q(2), q(0)}, {q(2), q(1)}}}}, 1);
    CHECK(line.spectrum);
    CHECK(line.agree);

    CHECK_THROWS_AS(cube_spectrum_iff_tiling(TranslationSet{Lattice::integer(2)}, 3), DomainError);
    MESSAGE("cube spectrum instances: " << seconds_since(start) << " s");
}

TEST_CASE("lattice spectra agree with lattice tilings")
{
    const auto square = lattice_spectrum_check(BoxUnionTile::unit_cube(2), Lattice::integer(2));
    CHECK(square.tiling.passed);
    CHECK(square.orthogonal);
    CHECK(square.complete);
    CHECK(square.completeness_residual <= square.tail_bound);
    CHECK(square.agree);

    const Lattice stretched = Lattice::diagonal({q(1, 2), q(2)});
    const auto slab = lattice_spectrum_check(BoxUnionTile::box({q(0), q(0)}, {q(1, 2), q(2)}), stretched);
    CHECK(slab.spectrum);
    CHECK(slab.tiling.passed);
    CHECK(slab.agree);

    const auto mismatch = lattice_spectrum_check(BoxUnionTile::unit_cube(2), stretched);
    CHECK_FALSE(mismatch.spectrum);
    CHECK_FALSE(mismatch.orthogonal);
    CHECK_FALSE((mismatch.tiling.passed && mismatch.tiling.level == 1));
    CHECK(mismatch.agree);

    // Skewed lattice tiled by a two-box domain.
    const BoxUnionTile ell({WeightedBox{{q(0), q(0)}, {q(1), q(1)}}, WeightedBox{{q(1), q(0)}, {q(1), q(1)}}});
    const Lattice skew(Matrix::from_columns({{q(2), q(0)}, {q(1), q(1)}}));
    const auto two = lattice_spectrum_check(ell, skew);
    CHECK(two.tiling.passed);
    CHECK(two.agree);

    const auto interval = lattice_spectrum_check(BoxUnionTile::intervals({{q(0), q(1, 2)}, {q(1), q(3, 2)}}),
                                                 Lattice::diagonal({q(1)}));
    CHECK_FALSE((interval.tiling.passed && interval.tiling.level == 1));
    CHECK(interval.agree);
}

TEST_CASE("packing transfer harness")
{
    const BoxUnionTile unit = BoxUnionTile::unit_cube(1);
    const double radius = 400.0;
    const GridFunction fejer{[](const std::vector<double>& x) { return sinc2(x[0]); }, 1.0, radius,
                             2.0 / (kPi * kPi * (radius - 1.0))};

    const auto tiles = packing_transfer_harness(unit, fejer, TranslationSet{Lattice::integer(1)}, {q(-3)}, {q(3)}, 128);
    CHECK(tiles.applicable);
    CHECK(tiles.f_tiling);
    CHECK(tiles.g_tiling);
    CHECK(tiles.agree);

    const auto sparse =
        packing_transfer_harness(unit, fejer, TranslationSet{Lattice::diagonal({q(2)})}, {q(-3)}, {q(3)}, 128);
    CHECK(sparse.applicable);
    CHECK_FALSE(sparse.f_tiling);
    CHECK_FALSE(sparse.g_tiling);
    CHECK(sparse.agree);

    const GridFunction spike{[](const std::vector<double>& x) { return 4.0 * tri(4.0 * x[0]); }, 1.0, 2.0, 0.0};
    const auto over = packing_transfer_harness(unit, spike, TranslationSet{Lattice::integer(1)}, {q(-3)}, {q(3)}, 128);
    CHECK_FALSE(over.applicable);
    CHECK(over.reason.find("exceeds") != std::string::npos);

    const auto overlapping = packing_transfer_harness(unit, fejer, TranslationSet{Lattice::diagonal({q(1, 2)})},
                                                      {q(-3)}, {q(3)}, 64);
    CHECK_FALSE(overlapping.applicable);

    const GridFunction heavy{[](const std::vector<double>& x) { return sinc2(x[0]); }, 2.0, 10.0, 0.0};
    CHECK_THROWS_AS(packing_transfer_harness(unit, heavy, TranslationSet{Lattice::integer(1)}, {q(0)}, {q(1)}, 8),
                    PreconditionError);
}

TEST_CASE("rigid motions: square tiles, parallelogram only packs")
{
    const auto start = std::chrono::steady_clock::now();
    const RigidMotionReport r = rigid_motion_counterexample();
    CHECK(r.square.samples == 1792u * 1792u);
    CHECK(r.square.samples >= (1u << 16));
    CHECK(r.square.tiling);
    CHECK(r.square.uncovered == 0);
    CHECK(r.square.overcovered == 0);

    CHECK(r.parallelogram.packing);
    CHECK_FALSE(r.parallelogram.tiling);
    // The gap is the triangle (-1/2,-1/2), (1/2,-1), (1/2,0) of area 1/2 in a window of area 49.
    CHECK(r.parallelogram.uncovered_fraction >= 0.01);
    CHECK(r.parallelogram.uncovered_fraction == doctest::Approx(0.5 / 49.0).epsilon(1e-2));
    REQUIRE(r.parallelogram.uncovered_witness);
    const Vec& w = *r.parallelogram.uncovered_witness;
    CHECK(abs_of(w[0]) < q(1, 2));
    CHECK(w[1] < 0);
    CHECK(w[1] > q(-1));

    CHECK(r.square_translations.tiling);
    CHECK(r.parallelogram_translations.tiling);
    MESSAGE("rigid motion sampling: " << seconds_since(start) << " s");

    CHECK_THROWS_AS(rigid_motion_counterexample(8, q(1, 3)), DomainError);
}

TEST_CASE("rigid motions: coarse grids against a direct point oracle")
{
    const RigidMotionReport r = rigid_motion_counterexample(3, q(3, 2));
    // Direct oracle: the sample lies in the gap triangle iff x in (-1/2, 1/2) and -x/2 - 3/4 <= y <= x/2 - 1/4.
    std::size_t gap = 0;
    for (long i = 0; i < 24; ++i) {
        for (long j = 0; j < 24; ++j) {
            const Rational x = q(2 * i + 1, 16) - q(3, 2), y = q(2 * j + 1, 16) - q(3, 2);
            if (abs_of(x) < q(1, 2) && y >= -x / 2 - q(3, 4) && y <= x / 2 - q(1, 4)) ++gap;
        }
    }
    CHECK(r.parallelogram.uncovered == gap);
    CHECK(r.parallelogram.samples == 576u);
}

TEST_CASE("disk certificate")
{
    const auto start = std::chrono::steady_clock::now();
    const DiskCertificate c = disk_certificate();
    CHECK(c.r0 >= 1.0809);
    CHECK(c.r0 <= 1.0810);
    CHECK(std::abs(c.r0 - 1.08098) < 1e-4);
    CHECK(std::abs(c.threshold - 1.0745699) < 1e-6);
    CHECK(std::abs(c.thue_bound - 0.906899) < 1e-6);
    CHECK(c.j11 >= 3.8316);
    CHECK(c.j11 <= 3.8318);
    CHECK(c.verdict);
    CHECK(c.r0 == doctest::Approx(disk_first_zero_radius()).epsilon(1e-12));
    CHECK(seconds_since(start) < 1.0);

    for (double dl : {-1e-6, 1e-6})
        for (double dh : {-1e-6, 1e-6}) {
            const DiskCertificate p = disk_certificate(3.5 + dl, 4.2 + dh);
            CHECK(p.verdict);
            CHECK(std::abs(p.r0 - c.r0) < 1e-9);
        }
    CHECK_THROWS_AS(disk_certificate(1.0, 2.0), DomainError);
}
