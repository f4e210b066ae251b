#include "doctest.h"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/multilattice/multilattice.hpp"

#include <cmath>
#include <limits>

using namespace tilinglab;

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

RealLattice integer2() { return RealLattice(RealMatrix::Identity(2, 2)); }

RealVector vec(std::initializer_list<double> xs)
{
    RealVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

// Number of accepted rectangles that meet x + lattice, for every cell centre of the member grid.
std::vector<int> projected_counts(const RealLattice& lattice, std::size_t g, const std::vector<Rectangle>& rects)
{
    const long n = 1L << g;
    std::vector<int> counts(static_cast<std::size_t>(n * n), 0);
    for (const auto& r : rects) {
        RealVector mid = r.corner + r.widths / 2.0;
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                RealVector x = lattice.basis() * vec({(i + 0.5) / n, (j + 0.5) / n});
                RealVector m = lattice.inverse_basis() * (mid - x);
                int hits = 0;
                for (long a = -1; a <= 1; ++a)
                    for (long b = -1; b <= 1; ++b) {
                        RealVector y = x + lattice.point({std::lround(m[0]) + a, std::lround(m[1]) + b});
                        if (r.contains(y)) ++hits;
                    }
                counts[static_cast<std::size_t>(i * n + j)] += hits;
            }
    }
    return counts;
}

} // namespace

TEST_CASE("lattice family validation")
{
    CHECK_NOTHROW(LatticeFamily({integer2(), RealLattice::rotated_integer(1.0)}));
    RealMatrix twice = 2.0 * RealMatrix::Identity(2, 2);
    CHECK_THROWS_AS(LatticeFamily({integer2(), RealLattice(twice)}), DomainError);
    CHECK_THROWS_AS(LatticeFamily(std::vector<RealLattice>{}), DomainError);
    RealLattice r = RealLattice::rotated_integer(0.3);
    CHECK(std::abs(r.volume() - 1.0) < 1e-15);
    CHECK((r.dual().basis() - r.basis()).norm() < 1e-15);
}

TEST_CASE("nearest lattice point agrees with a wide search")
{
    RealMatrix skew(2, 2);
    skew << 1.0, 0.9, 0.0, 0.3;
    RealLattice l(skew);
    for (int t = 0; t < 200; ++t) {
        RealVector x = vec({std::sin(t * 1.7) * 5, std::cos(t * 0.9) * 5});
        double best = std::numeric_limits<double>::infinity();
        for (long a = -40; a <= 40; ++a)
            for (long b = -40; b <= 40; ++b) best = std::min(best, (l.point({a, b}) - x).norm());
        // rounding in a skewed basis may miss the optimum, but never by more than the basis diameter
        CHECK((l.nearest_point(x) - x).norm() <= best + skew.norm());
        RealVector y = vec({std::sin(t * 1.7) * 5, std::cos(t * 0.9) * 5});
        RealLattice rot = RealLattice::rotated_integer(0.4);
        double best_rot = std::numeric_limits<double>::infinity();
        for (long a = -10; a <= 10; ++a)
            for (long b = -10; b <= 10; ++b) best_rot = std::min(best_rot, (rot.point({a, b}) - y).norm());
        CHECK(std::abs((rot.nearest_point(y) - y).norm() - best_rot) < 1e-12);
    }
}

TEST_CASE("direct sum search")
{
    LatticeFamily generic({integer2(), RealLattice::rotated_integer(1.0)});
    auto r = check_direct_sum(generic, 50, 1e-9);
    CHECK(r.direct);
    CHECK_FALSE(r.relation.has_value());
    CHECK(r.closest_approach > 1e-9);
    CHECK(r.combinations == 101u * 101u);

    LatticeFamily pythagorean({integer2(), RealLattice::rotated_integer(std::atan2(3.0, 4.0))});
    auto p = check_direct_sum(pythagorean, 50, 1e-9);
    CHECK_FALSE(p.direct);
    REQUIRE(p.relation.has_value());
    std::vector<RealLattice> duals{integer2().dual(), pythagorean.members[1].dual()};
    RealVector sum = duals[0].point((*p.relation)[0]) + duals[1].point((*p.relation)[1]);
    CHECK(sum.norm() < 1e-9);
    bool nontrivial = false;
    for (const auto& part : *p.relation)
        for (long c : part) nontrivial = nontrivial || c != 0;
    CHECK(nontrivial);
    // the rotation sends (5,0) to (4,3)
    RealVector image = pythagorean.members[1].point({5, 0});
    CHECK((image - vec({4, 3})).norm() < 1e-12);

    CHECK(check_direct_sum(LatticeFamily({integer2()}), 50, 1e-9).direct);
    LatticeFamily three({integer2(), RealLattice::rotated_integer(1.0), RealLattice::rotated_integer(2.0)});
    CHECK_THROWS_AS(check_direct_sum(three, 50, 1e-9, 1'000'000), CapacityError);
}

TEST_CASE("direct sum search agrees with full product enumeration")
{
    for (double angle : {0.5, std::atan2(3.0, 4.0), std::atan2(5.0, 12.0), 1.1}) {
        LatticeFamily fam({integer2(), RealLattice::rotated_integer(angle)});
        const long bound = 13;
        bool brute_relation = false;
        RealLattice d1 = fam.members[1].dual();
        for (long a0 = -bound; a0 <= bound && !brute_relation; ++a0)
            for (long a1 = -bound; a1 <= bound && !brute_relation; ++a1)
                for (long b0 = -bound; b0 <= bound && !brute_relation; ++b0)
                    for (long b1 = -bound; b1 <= bound; ++b1) {
                        if (a0 == 0 && a1 == 0 && b0 == 0 && b1 == 0) continue;
                        if ((vec({double(a0), double(a1)}) + d1.point({b0, b1})).norm() < 1e-9) {
                            brute_relation = true;
                            break;
                        }
                    }
        CHECK(check_direct_sum(fam, bound, 1e-9).direct == !brute_relation);
    }
}

TEST_CASE("property A alignment")
{
    LatticeFamily same({integer2(), integer2()});
    auto s = property_a_align(same, {vec({0.3, 0.2}), vec({5.3, -1.8})}, 1e-12, 3);
    REQUIRE(s.has_value());
    CHECK(s->misalignment < 1e-12);
    RealVector diff = s->lambdas[1] - s->lambdas[0];
    CHECK((diff - vec({5, -2})).norm() < 1e-12);

    std::vector<RealLattice> line{RealLattice(RealMatrix::Identity(1, 1)), RealLattice(RealMatrix::Constant(1, 1, std::sqrt(2.0)))};
    std::vector<RealVector> targets{vec({0.0}), vec({0.5})};
    auto a = property_a_align(line, targets, 0.05, 50);
    REQUIRE(a.has_value());
    CHECK(a->misalignment <= 0.05);
    CHECK(std::abs(misalignment_of(targets, a->lambdas) - a->misalignment) < 1e-15);
    // full product oracle over the same lambda_0 range
    double best = std::numeric_limits<double>::infinity();
    for (long m = -50; m <= 50; ++m)
        for (long k = -200; k <= 200; ++k)
            best = std::min(best, std::abs((0.5 - k * std::sqrt(2.0)) - (0.0 - static_cast<double>(m))));
    CHECK(std::abs(best - a->misalignment) < 1e-12);

    CHECK_FALSE(property_a_align(line, targets, 0.0, 50).has_value());
    LatticeFamily generic({integer2(), RealLattice::rotated_integer(1.0)});
    CHECK_FALSE(property_a_align(generic, {vec({0.1, 0.2}), vec({0.6, 0.3})}, 0.0, 20).has_value());
    auto far = property_a_align(generic, {vec({0.1, 0.2}), vec({0.6, 0.3})}, 0.05, 20, 10.0);
    REQUIRE(far.has_value());
    CHECK(far->lambdas[0].norm() >= 10.0);
    CHECK(misalignment_of({vec({0.1, 0.2}), vec({0.6, 0.3})}, far->lambdas) <= 0.05);
}

TEST_CASE("common tile for a single lattice")
{
    BuildOptions opt;
    opt.iterations = 1;
    auto r = build_common_tile(LatticeFamily({integer2()}), opt);
    CHECK_FALSE(r.refused);
    CHECK(r.coverage.at(0) == 1.0);
    CHECK(r.builder.packing_violations == 0);
}

TEST_CASE("common tile for Z^2 and its rotation by one radian")
{
    LatticeFamily fam({integer2(), RealLattice::rotated_integer(1.0)});
    BuildOptions opt;
    opt.grid_exponent = 8;
    opt.iterations = 6;
    auto r = build_common_tile(fam, opt);
    REQUIRE_FALSE(r.refused);
    for (double c : r.coverage) CHECK(c >= 0.9);
    CHECK(r.builder.packing_violations == 0);
    CHECK(r.monotone_leftovers);
    REQUIRE(r.builder.log.size() == 6);
    for (std::size_t k = 1; k < r.builder.log.size(); ++k)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(r.builder.log[k].leftover_measures[j] <= r.builder.log[k - 1].leftover_measures[j]);

    // accepted rectangles are pairwise disjoint
    const auto& rects = r.builder.accepted;
    for (std::size_t i = 0; i < rects.size(); ++i)
        for (std::size_t j = i + 1; j < rects.size(); ++j) {
            bool apart = false;
            for (Eigen::Index a = 0; a < 2; ++a)
                apart = apart || rects[i].corner[a] + rects[i].widths[a] <= rects[j].corner[a] ||
                        rects[j].corner[a] + rects[j].widths[a] <= rects[i].corner[a];
            CHECK(apart);
        }

    // every cell centre is hit at most once, and the hit count reproduces the coverage
    for (std::size_t j = 0; j < 2; ++j) {
        auto counts = projected_counts(fam.members[j], 8, rects);
        std::size_t hit = 0, over = 0;
        for (int c : counts) {
            if (c > 0) ++hit;
            if (c > 1) ++over;
        }
        CHECK(over == 0);
        CHECK(static_cast<double>(hit) / static_cast<double>(counts.size()) == doctest::Approx(r.coverage[j]).epsilon(1e-12));
        std::size_t owned = 0;
        for (std::size_t c = 0; c < counts.size(); ++c) {
            bool own = r.builder.owners[j][c] >= 0;
            CHECK(own == (counts[c] == 1));
            owned += own;
        }
        CHECK(owned == hit);
    }
}

TEST_CASE("three-lattice obstruction")
{
    auto cert = three_lattice_obstruction();
    CHECK(cert.applicable);
    CHECK(cert.certified);
    CHECK(cert.points_checked == 21u * 21u);
    CHECK_FALSE(cert.uncovered.has_value());
    CHECK(cert.coset_witnesses.size() == 3);
    for (const auto& idx : cert.indices) CHECK(idx == 2);
    auto family = three_lattice_family();
    for (const auto& [p, m] : cert.coset_witnesses) CHECK(family[m].contains(p));
    // parity oracle: (k,l) lies in one of the three members iff k even, l even, or k = l mod 2
    for (long k = -10; k <= 10; ++k)
        for (long l = -10; l <= 10; ++l) {
            Vec z{q(k), q(l)};
            CHECK(family[0].contains(z) == (k % 2 == 0));
            CHECK(family[1].contains(z) == (l % 2 == 0));
            CHECK(family[2].contains(z) == ((k - l) % 2 == 0));
        }

    auto pair = three_lattice_obstruction({family[0], family[1]}, 10);
    CHECK_FALSE(pair.applicable);
    CHECK_FALSE(pair.certified);
    REQUIRE(pair.uncovered.has_value());
    CHECK(*pair.uncovered == Vec{q(-9), q(-9)});

    Lattice shifted = Lattice::diagonal({q(2), q(1)}).translated({q(1), q(0)});
    auto offset = three_lattice_obstruction({family[0], shifted, family[1]}, 10);
    CHECK_FALSE(offset.certified);
    CHECK(offset.reason.find("translated") != std::string::npos);

    auto refused = build_common_tile(family);
    CHECK(refused.refused);
    CHECK(refused.diagnostic.find("no common tile") != std::string::npos);

    LatticeFamily real_family({RealLattice::from_exact(family[0]), RealLattice::from_exact(family[1]),
                               RealLattice::from_exact(family[2])});
    BuildOptions opt;
    opt.direct_sum_bound = 3;
    auto by_relation = build_common_tile(real_family, opt);
    CHECK(by_relation.refused);
}

TEST_CASE("Gabor frame sums")
{
    auto bump = [](double c, double w) {
        return [c, w](const std::vector<double>& x) {
            double t = (x[0] - c) / w;
            return std::abs(t) < 1 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
        };
    };
    std::vector<TestFunction> tests{bump(0.5, 0.4), bump(1.3, 1.1), bump(-0.7, 2.5)};

    auto classic = gabor_frame_check(Lattice::integer(1), Lattice::integer(1), BoxUnionTile::intervals({{q(0), q(1)}}),
                                     tests, {q(-4)}, {q(4)}, 64);
    CHECK(classic.density_product == 1);
    CHECK(classic.max_residual < 1e-6);
    for (const auto& r : classic.residuals) {
        CHECK(r.norm_squared > 0);
        CHECK(r.tail <= r.frame_sum);
    }

    auto stretched = gabor_frame_check(Lattice::diagonal({q(2)}), Lattice::diagonal({q(1, 2)}),
                                       BoxUnionTile::intervals({{q(0), q(2)}}), tests, {q(-4)}, {q(4)}, 32);
    CHECK(stretched.max_residual < 1e-6);

    auto e2 = BoxUnionTile::box({q(0), q(0)}, {q(2), q(1)});
    auto plane = [](const std::vector<double>& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return r2 < 1 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
    };
    auto two = gabor_frame_check(Lattice::diagonal({q(2), q(1)}), Lattice::diagonal({q(1, 2), q(1)}), e2, {plane},
                                 {q(-2), q(-2)}, {q(2), q(2)}, 8);
    CHECK(two.max_residual < 1e-6);

    CHECK_THROWS_AS(gabor_frame_check(Lattice::diagonal({q(2)}), Lattice::integer(1), BoxUnionTile::intervals({{q(0), q(2)}}),
                                      tests, {q(-4)}, {q(4)}, 32),
                    PreconditionError);
    CHECK_THROWS_AS(gabor_frame_check(Lattice::integer(1), Lattice::integer(1), BoxUnionTile::intervals({{q(0), q(2)}}),
                                      tests, {q(-4)}, {q(4)}, 32),
                    PreconditionError);
}
