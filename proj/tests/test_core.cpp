#include "doctest.h"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/integer_predicates.hpp"
#include "tilinglab/core/lattice.hpp"
#include "tilinglab/core/parallel.hpp"
#include "tilinglab/core/rational.hpp"

#include <atomic>
#include <cstdlib>
#include <random>
#include <set>

using namespace tilinglab;

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

Matrix mat(std::initializer_list<std::initializer_list<Rational>> rows)
{
    std::vector<Vec> r;
    for (const auto& row : rows) r.emplace_back(row);
    return Matrix::from_rows(r);
}

Rational random_rational(std::mt19937_64& rng, long span, long den)
{
    std::uniform_int_distribution<long> num(-span * den, span * den);
    std::uniform_int_distribution<long> dd(1, den);
    return make_rational(num(rng), dd(rng));
}

Matrix notched_basis(const Vec& delta)
{
    // rows: e_i - delta_{i+1} e_{i+1} (cyclic); the lattice is generated by the columns of A^T
    const std::size_t d = delta.size();
    Matrix a = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) a(i, (i + 1) % d) = -delta[(i + 1) % d];
    return a.transpose();
}

} // namespace

TEST_CASE("rational parsing and formatting")
{
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational("-0.25") == q(-1, 4));
    CHECK(parse_rational("7") == q(7));
    CHECK(to_string(q(-4, 6)) == "-2/3");
    CHECK(to_string(q(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), DomainError);
    CHECK(floor_of(q(-3, 2)) == -2);
    CHECK(ceil_of(q(-3, 2)) == -1);
    CHECK(frac_of(q(-3, 2)) == q(1, 2));
}

TEST_CASE("rational canonical form")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational x = random_rational(rng, 5, 30);
        Integer g;
        mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        CHECK(g == 1);
        CHECK(x.get_den() > 0);
        CHECK(parse_rational(to_string(x)) == x);
    }
}

TEST_CASE("matrix determinant and inverse")
{
    Matrix a = mat({{q(2), q(1), q(0)}, {q(1, 3), q(1), q(4)}, {q(0), q(-1, 2), q(1)}});
    Rational det = a.determinant();
    // cofactor expansion along the first row
    Rational cof = q(2) * (q(1) * q(1) - q(4) * q(-1, 2)) - q(1) * (q(1, 3) * q(1) - q(4) * q(0));
    CHECK(det == cof);
    CHECK(a * a.inverse() == Matrix::identity(3));
    CHECK_THROWS_AS(mat({{q(1), q(2)}, {q(2), q(4)}}).inverse(), SingularLatticeError);
}

TEST_CASE("hermite form generates the same group")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec> cols;
        for (int j = 0; j < 4; ++j) cols.push_back({random_rational(rng, 3, 4), random_rational(rng, 3, 4)});
        Matrix g = Matrix::from_columns(cols);
        Matrix h;
        try {
            h = column_hermite_form(g);
        } catch (const SingularLatticeError&) {
            continue;
        }
        CHECK(h(0, 1) == 0);
        CHECK(h(0, 0) > 0);
        CHECK(h(1, 1) > 0);
        CHECK(h(1, 0) >= 0);
        CHECK(h(1, 0) < h(1, 1));
        Lattice lh(h);
        for (const auto& c : cols) CHECK(lh.contains(c));
        Lattice sum = lattice_sum(std::vector<Lattice>{lh});
        CHECK(sum.basis() == h);
    }
}

TEST_CASE("dual lattice")
{
    CHECK(dual_lattice(Lattice::integer(2)).basis() == Matrix::identity(2));
    CHECK(dual_lattice(Lattice::diagonal({q(2), q(1, 2)})).basis() == Matrix::diagonal({q(1, 2), q(2)}));
    Matrix at = notched_basis({q(1, 2), q(1, 3)});
    CHECK(dual_lattice(Lattice(at)).basis() == at.transpose().inverse());
    CHECK_THROWS_AS(dual_lattice(Lattice(Matrix::identity(2), {q(1, 2), q(0)})), DomainError);
    CHECK_THROWS_AS(Lattice(mat({{q(1), q(1)}, {q(1), q(1)}})), SingularLatticeError);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        Matrix b = mat({{random_rational(rng, 3, 5), random_rational(rng, 3, 5)},
                        {random_rational(rng, 3, 5), random_rational(rng, 3, 5)}});
        if (b.determinant() == 0) continue;
        Lattice l(b);
        CHECK(dual_lattice(dual_lattice(l)).basis() == b);
        CHECK(lattice_determinant(dual_lattice(l)) == 1 / lattice_determinant(l));
    }
}

TEST_CASE("lattice determinant")
{
    CHECK(lattice_determinant(Lattice::integer(4)) == 1);
    CHECK(lattice_determinant(Lattice(notched_basis({q(1, 2), q(1, 3)}))) == q(5, 6));
    CHECK(lattice_determinant(Lattice::diagonal({q(2), q(1, 2)})) == 1);
}

TEST_CASE("enumerate points")
{
    auto p = enumerate_points(Lattice::integer(2), {q(0), q(0)}, q(1));
    CHECK(p.points.size() == 9);
    CHECK(p.points.front() == Vec{q(-1), q(-1)});
    CHECK(p.points.back() == Vec{q(1), q(1)});

    std::size_t expected = 0;
    for (long m = -1; m <= 1; ++m)
        for (long n = -2; n <= 2; ++n) expected += (std::labs(2 * m) <= 2 && std::labs(n) <= 2);
    CHECK(enumerate_points(Lattice::diagonal({q(2), q(1)}), {q(0), q(0)}, q(2)).points.size() == expected);
    CHECK(expected == 15);

    CHECK(enumerate_points(Lattice::integer(2), {q(1, 2), q(1, 2)}, q(1, 4)).points.empty());
    CHECK_THROWS_AS(enumerate_points(Lattice::integer(2), {q(0), q(0)}, q(100), 1000), CapacityError);
    try {
        enumerate_points(Lattice::integer(2), {q(0), q(0)}, q(100), 1000);
    } catch (const CapacityError& e) {
        CHECK(e.cap() == 1000);
    }
}

TEST_CASE("enumeration matches brute force over coefficients")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix b = mat({{random_rational(rng, 2, 3), random_rational(rng, 2, 3)},
                        {random_rational(rng, 2, 3), random_rational(rng, 2, 3)}});
        if (b.determinant() == 0 || abs_of(b.determinant()) < q(1, 4)) continue;
        Vec off{random_rational(rng, 1, 4), random_rational(rng, 1, 4)};
        Lattice l(b, off);
        Vec c{random_rational(rng, 1, 3), random_rational(rng, 1, 3)};
        Rational r = q(2);
        auto got = enumerate_points(l, c, r).points;
        // coefficients needed: |z| <= ||B^{-1}||_1-bound * (|c| + r + |off|), generous box
        std::set<std::vector<std::string>> want;
        for (long z0 = -60; z0 <= 60; ++z0)
            for (long z1 = -60; z1 <= 60; ++z1) {
                Vec p = add(b.apply({q(z0), q(z1)}), off);
                if (max_abs(sub(p, c)) <= r) want.insert({to_string(p[0]), to_string(p[1])});
            }
        std::set<std::vector<std::string>> have;
        for (const auto& p : got) have.insert({to_string(p[0]), to_string(p[1])});
        CHECK(have == want);
        CHECK(have.size() == got.size());
        for (std::size_t i = 1; i < got.size(); ++i) CHECK(lex_less(got[i - 1], got[i]));
    }
}

TEST_CASE("enumeration is symmetric about a half-lattice center")
{
    Lattice l(notched_basis({q(1, 2), q(1, 3)}));
    Vec center = scale(l.basis().column(0), q(1, 2));
    auto pts = enumerate_points(l, center, q(3)).points;
    std::set<std::string> s;
    for (const auto& p : pts) s.insert(to_string(p));
    for (const auto& p : pts) CHECK(s.count(to_string(sub(scale(center, q(2)), p))) == 1);
}

TEST_CASE("project to fundamental domain")
{
    CHECK(project_to_fundamental(Lattice::integer(2), {q(3, 2), q(-1, 4)}) == Vec{q(1, 2), q(3, 4)});
    Lattice n(notched_basis({q(1, 2), q(1, 3)}));
    CHECK(project_to_fundamental(n, n.basis().apply({q(3), q(-2)})) == zero_vec(2));
    Vec x{q(1), q(1)};
    Vec y = project_to_fundamental(n, x);
    for (const auto& c : n.inverse_basis().apply(sub(x, y))) CHECK(is_integer(c));

    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        Matrix b = mat({{random_rational(rng, 2, 4), random_rational(rng, 2, 4)},
                        {random_rational(rng, 2, 4), random_rational(rng, 2, 4)}});
        if (b.determinant() == 0) continue;
        Lattice l(b);
        Vec x2{random_rational(rng, 10, 17), random_rational(rng, 10, 17)};
        Vec p = project_to_fundamental(l, x2);
        CHECK(project_to_fundamental(l, p) == p);
        CHECK(l.contains(sub(x2, p)));
        for (const auto& c : l.inverse_basis().apply(p)) {
            CHECK(c >= 0);
            CHECK(c < 1);
        }
    }
}

TEST_CASE("lattice sum and intersection")
{
    std::vector<Lattice> ls{Lattice::diagonal({q(2), q(1)}), Lattice::diagonal({q(1), q(2)})};
    CHECK(lattice_sum(ls) == Lattice::integer(2));
    CHECK(lattice_intersection(ls) == Lattice::diagonal({q(2), q(2)}));
    std::vector<Lattice> ks{Lattice::diagonal({q(1, 2), q(1)}), Lattice::diagonal({q(1, 3), q(1)})};
    CHECK(lattice_sum(ks) == Lattice::diagonal({q(1, 6), q(1)}));
    CHECK(lattice_intersection(ks) == Lattice::integer(2));
}

TEST_CASE("integral row index")
{
    CHECK(integral_row_index(Matrix::identity(3)) == std::optional<std::size_t>(1));
    CHECK(integral_row_index(mat({{q(1), q(0)}, {q(1, 2), q(1)}})) == std::optional<std::size_t>(1));
    CHECK(integral_row_index(mat({{q(1, 2), q(1)}, {q(1), q(3)}})) == std::optional<std::size_t>(2));
    CHECK_FALSE(integral_row_index(mat({{q(1, 2), q(1, 2)}, {q(1, 3), q(2, 3)}})).has_value());
}

TEST_CASE("integer shells")
{
    for (std::size_t d = 1; d <= 3; ++d)
        for (long r = 1; r <= 3; ++r) {
            auto s = integer_shell(d, r);
            long full = 1, inner = 1;
            for (std::size_t i = 0; i < d; ++i) {
                full *= 2 * r + 1;
                inner *= 2 * r - 1;
            }
            CHECK(static_cast<long>(s.size()) == (full - inner) / 2);
        }
    auto s = integer_shell(2, 1);
    CHECK(s.front() == IntVec{1, 0});
    CHECK(s[1] == IntVec{0, 1});
}

TEST_CASE("minkowski vector")
{
    CHECK(minkowski_vector(Matrix::identity(3), 1) == std::optional<IntVec>(IntVec{1, 0, 0}));
    CHECK(minkowski_vector(mat({{q(2), q(0)}, {q(0), q(1, 2)}}), 2) == std::optional<IntVec>(IntVec{0, 1}));
    auto v = minkowski_vector(mat({{q(1), q(0)}, {q(1, 2), q(1)}}), 2);
    REQUIRE(v.has_value());
    CHECK(*v == IntVec{1, 0});
    CHECK_THROWS_AS(minkowski_vector(mat({{q(2), q(0)}, {q(0), q(1)}}), 3), PreconditionError);

    // exhaustive oracle: the returned vector is the first admissible one in (inf-norm, norm2, -lex) order
    Matrix a = mat({{q(3, 2), q(1, 3)}, {q(1, 4), q(13, 18)}});
    REQUIRE(a.determinant() == 1);
    auto got = minkowski_vector(a, 5);
    std::optional<std::tuple<long, long, long, long>> best;
    for (long x = -5; x <= 5; ++x)
        for (long y = -5; y <= 5; ++y) {
            if ((x == 0 && y == 0) || x < 0 || (x == 0 && y < 0)) continue;
            Vec ax = a.apply({q(x), q(y)});
            if (max_abs(ax) > 1) continue;
            auto key = std::make_tuple(std::max(std::labs(x), std::labs(y)), x * x + y * y, -x, -y);
            if (!best || key < *best) best = key;
        }
    REQUIRE(best.has_value());
    REQUIRE(got.has_value());
    CHECK((*got)[0] == -std::get<2>(*best));
    CHECK((*got)[1] == -std::get<3>(*best));
}

TEST_CASE("hajos predicate")
{
    auto id = hajos_predicate(Matrix::identity(2), 5);
    CHECK(id.holds_up_to_bound);
    CHECK(id.integral_row == std::optional<std::size_t>(1));
    auto lt = hajos_predicate(mat({{q(1), q(0)}, {q(1, 2), q(1)}}), 10);
    CHECK(lt.holds_up_to_bound);
    CHECK(lt.integral_row == std::optional<std::size_t>(1));

    Matrix b = mat({{q(1, 2), q(-1, 2)}, {q(1), q(1)}});
    REQUIRE(b.determinant() == 1);
    auto r = hajos_predicate(b, 3);
    // oracle: exhaustive search over the same range
    bool oracle_holds = true;
    for (long x = -3; x <= 3 && oracle_holds; ++x)
        for (long y = -3; y <= 3; ++y) {
            if (x == 0 && y == 0) continue;
            Vec bx = b.apply({q(x), q(y)});
            bool ok = (bx[0] != 0 && is_integer(bx[0])) || (bx[1] != 0 && is_integer(bx[1]));
            if (!ok) {
                oracle_holds = false;
                break;
            }
        }
    CHECK(r.holds_up_to_bound == oracle_holds);
    if (!r.holds_up_to_bound) {
        REQUIRE(r.witness.has_value());
        Vec bx = b.apply(to_rational(*r.witness));
        CHECK_FALSE((bx[0] != 0 && is_integer(bx[0])));
        CHECK_FALSE((bx[1] != 0 && is_integer(bx[1])));
    }
    CHECK_THROWS_AS(hajos_predicate(Matrix::diagonal({q(2), q(1)}), 2), PreconditionError);
}

TEST_CASE("parallel chunks cover the range once")
{
    set_worker_count_override(3);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for_chunks(hits.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS(parallel_for_chunks(10, [](std::size_t, std::size_t) { throw std::runtime_error("x"); }));
    set_worker_count_override(0);
}
