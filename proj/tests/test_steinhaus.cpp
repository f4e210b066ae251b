#include "doctest.h"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/steinhaus/forms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>

using namespace tilinglab;

namespace {

Rational q(long p, long r = 1) { return make_rational(p, r); }

Matrix random_unimodular(std::mt19937_64& rng, std::size_t d)
{
    Matrix u = Matrix::identity(d);
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    std::uniform_int_distribution<long> mult(-2, 2);
    for (int step = 0; step < 8; ++step) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Matrix e = Matrix::identity(d);
        e(i, j) = Rational(mult(rng));
        u = u * e;
    }
    return u;
}

} // namespace

TEST_CASE("three-squares characterization against a sieve and the witness search")
{
    const std::uint64_t n_max = 100'000;
    std::vector<char> sieve(n_max + 1, 0);
    for (std::uint64_t a = 0; a * a <= n_max; ++a)
        for (std::uint64_t b = a; a * a + b * b <= n_max; ++b)
            for (std::uint64_t c = b; a * a + b * b + c * c <= n_max; ++c) sieve[a * a + b * b + c * c] = 1;
    auto start = std::chrono::steady_clock::now();
    std::uint64_t disagreements = 0;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        bool predicate = is_sum_of_three_squares(n);
        auto w = sum_of_squares_witness(n, 3);
        if (predicate != w.has_value() || predicate != static_cast<bool>(sieve[n])) ++disagreements;
        if (w) {
            CHECK(std::is_sorted(w->begin(), w->end()));
            if ((*w)[0] * (*w)[0] + (*w)[1] * (*w)[1] + (*w)[2] * (*w)[2] != n) ++disagreements;
        }
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(disagreements == 0);
    CHECK(seconds < 5.0);
    CHECK_FALSE(is_sum_of_three_squares(7));
    CHECK_FALSE(is_sum_of_three_squares(28));
    CHECK(is_sum_of_three_squares(3));
    auto table = sums_of_squares_table(n_max, 3);
    for (std::uint64_t n = 0; n <= n_max; ++n) CHECK(static_cast<bool>(table[n]) == static_cast<bool>(sieve[n]));
}

TEST_CASE("sum of squares witnesses")
{
    CHECK(sum_of_squares_witness(25, 2) == std::vector<std::uint64_t>{0, 5});
    CHECK_FALSE(sum_of_squares_witness(7, 3).has_value());
    CHECK(sum_of_squares_witness(7, 4) == std::vector<std::uint64_t>{1, 1, 1, 2});
    CHECK(sum_of_squares_witness(0, 3) == std::vector<std::uint64_t>{0, 0, 0});
    CHECK_FALSE(sum_of_squares_witness(3, 2).has_value());
    // lexicographically least among all nondecreasing tuples, by exhaustive listing
    for (std::uint64_t n = 0; n <= 300; ++n) {
        std::optional<std::vector<std::uint64_t>> least;
        for (std::uint64_t a = 0; a * a <= n; ++a)
            for (std::uint64_t b = a; a * a + b * b <= n; ++b)
                for (std::uint64_t c = b; a * a + b * b + c * c <= n; ++c)
                    for (std::uint64_t e = c; a * a + b * b + c * c + e * e <= n; ++e)
                        if (a * a + b * b + c * c + e * e == n) {
                            std::vector<std::uint64_t> t{a, b, c, e};
                            if (!least || t < *least) least = t;
                        }
        CHECK(sum_of_squares_witness(n, 4) == least);
    }
}

TEST_CASE("form values and validation")
{
    auto f3 = steinhaus_form_3d();
    auto f4 = steinhaus_form_4d();
    CHECK(form_value(f3, {1, 0, 0}) == 2);
    CHECK(form_value(f3, {0, 1, 0}) == 11);
    CHECK(form_value(f3, {0, 0, 0}) == 0);
    CHECK(form_value(f4, {1, 1, 0, 0}) == 3);
    CHECK(form_value(f4, {0, 0, 0, 0}) == 0);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> u(-9, 9);
    for (int t = 0; t < 200; ++t) {
        std::vector<long> x{u(rng), u(rng), u(rng), u(rng)};
        long direct = 0;
        for (long v : x) direct += v * v;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < i; ++j) direct += x[i] * x[j];
        CHECK(form_value(f4, x) == direct);
        CHECK(form_value(f3, {x[0], x[1], x[2]}) == 2 * x[0] * x[0] + 11 * x[1] * x[1] + 6 * x[2] * x[2]);
    }
    CHECK(f3.is_integer_valued());
    CHECK(f4.is_integer_valued());
    CHECK_FALSE(QuadraticForm(Matrix::from_rows({{q(1), q(1, 3)}, {q(1, 3), q(1)}})).is_integer_valued());
    CHECK_FALSE(QuadraticForm(Matrix::diagonal({q(1, 2), q(1)})).is_integer_valued());
    CHECK_THROWS_AS(QuadraticForm(Matrix::from_rows({{q(1), q(2)}, {q(2), q(1)}})), DomainError);
    CHECK_THROWS_AS(QuadraticForm(Matrix::from_rows({{q(1), q(1)}, {q(0), q(1)}})), DomainError);
    CHECK_THROWS_AS(verify_representability(QuadraticForm(Matrix::diagonal({q(1, 2), q(1)})), 2, 3), PreconditionError);
}

TEST_CASE("determinants of the two forms")
{
    auto f3 = steinhaus_form_3d();
    CHECK(f3.determinant() == 2 * 11 * 6);
    CHECK(f3.determinant() == 132);
    CHECK_FALSE(det_is_integer_square(f3));
    auto f4 = steinhaus_form_4d();
    CHECK(f4.determinant() == q(5, 16));
    CHECK_FALSE(det_is_integer_square(f4));
    auto ev = f4.eigenvalues();
    REQUIRE(ev.size() == 4);
    CHECK(ev[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[3] == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(det_is_integer_square(QuadraticForm::diagonal({1, 1, 1})));
    CHECK(det_is_integer_square(QuadraticForm::diagonal({2, 8})));
    CHECK_FALSE(det_is_integer_square(QuadraticForm::diagonal({2, 4})));
}

TEST_CASE("determinant squareness is invariant under unimodular substitution")
{
    std::mt19937_64 rng(17);
    for (const auto& f : {steinhaus_form_3d(), QuadraticForm::diagonal({2, 2, 9}), QuadraticForm::diagonal({1, 3, 5})}) {
        for (int t = 0; t < 25; ++t) {
            Matrix u = random_unimodular(rng, 3);
            CHECK(abs_of(u.determinant()) == 1);
            QuadraticForm g(u.transpose() * f.matrix() * u);
            CHECK(g.determinant() == f.determinant());
            CHECK(det_is_integer_square(g) == det_is_integer_square(f));
        }
    }
    std::mt19937_64 rng4(19);
    for (int t = 0; t < 25; ++t) {
        Matrix u = random_unimodular(rng4, 4);
        QuadraticForm g(u.transpose() * steinhaus_form_4d().matrix() * u);
        CHECK(g.determinant() == q(5, 16));
        CHECK(g.is_integer_valued());
    }
}

TEST_CASE("representability checks")
{
    auto r = verify_representability(steinhaus_form_3d(), 3, 50);
    CHECK(r.all_representable);
    CHECK_FALSE(r.counterexample.has_value());
    CHECK(r.checked_count == 101u * 101u * 101u);
    CHECK(r.characterization_mismatches == 0);

    auto bad = verify_representability(QuadraticForm::diagonal({1, 1, 7}), 3, 3);
    CHECK_FALSE(bad.all_representable);
    REQUIRE(bad.counterexample.has_value());
    // first failure in lexicographic order over [-3,3]^3, found independently
    std::optional<std::vector<long>> first;
    for (long x = -3; x <= 3 && !first; ++x)
        for (long y = -3; y <= 3 && !first; ++y)
            for (long z = -3; z <= 3 && !first; ++z)
                if (!sum_of_squares_witness(static_cast<std::uint64_t>(x * x + y * y + 7 * z * z), 3)) first = std::vector<long>{x, y, z};
    CHECK(bad.counterexample == first);
    CHECK(!sum_of_squares_witness(static_cast<std::uint64_t>(bad.counterexample_value->get_num().get_ui()), 3));
    CHECK_FALSE(verify_representability(QuadraticForm::diagonal({1, 1, 7}), 3, 1).all_representable);

    auto four = verify_representability(steinhaus_form_4d(), 4, 20);
    CHECK(four.all_representable);
    CHECK(verify_representability(QuadraticForm::diagonal({3, 5, 7, 11}), 4, 20).all_representable);

    // monotone in the range
    for (long n : {5, 12, 30}) CHECK(verify_representability(steinhaus_form_3d(), 3, n).all_representable);
    auto fail_small = verify_representability(QuadraticForm::diagonal({1, 2, 3}), 3, 10);
    for (long n : {12, 20}) {
        if (!fail_small.all_representable) CHECK_FALSE(verify_representability(QuadraticForm::diagonal({1, 2, 3}), 3, n).all_representable);
    }
}

TEST_CASE("lemma verdicts")
{
    auto v3 = steinhaus_lemma_check(steinhaus_form_3d(), 50);
    CHECK(v3.fires);
    CHECK(v3.determinant == 132);
    CHECK(v3.message.find("dimension 3") != std::string::npos);
    auto v4 = steinhaus_lemma_check(steinhaus_form_4d(), 20);
    CHECK(v4.fires);
    CHECK(v4.determinant == q(5, 16));
    auto id = steinhaus_lemma_check(QuadraticForm::diagonal({1, 1, 1}), 10);
    CHECK_FALSE(id.fires);
    CHECK(id.determinant_square);
}

TEST_CASE("diagonal form search")
{
    auto found = search_forms_3d(12, 30);
    bool has = false;
    for (const auto& f : found) {
        CHECK(std::is_sorted(f.coefficients.begin(), f.coefficients.end()));
        CHECK_FALSE(f.determinant_square);
        has = has || f.coefficients == std::vector<long>{2, 6, 11};
        CHECK(steinhaus_lemma_check(QuadraticForm::diagonal(f.coefficients), 50).fires);
    }
    CHECK(has);
    MESSAGE("diagonal forms found with bound 12: " << found.size());
    CHECK(search_forms_3d(12, 30) == found);
    CHECK(search_forms_3d(1, 30).empty());
    for (std::size_t i = 1; i < found.size(); ++i) CHECK(found[i - 1].coefficients < found[i].coefficients);
}

TEST_CASE("symmetric form search")
{
    auto found = search_symmetric_forms_3d(2, 12);
    for (const auto& f : found) {
        CHECK(f.is_integer_valued());
        CHECK_FALSE(det_is_integer_square(f));
        CHECK(steinhaus_lemma_check(f, 20).fires);
    }
    MESSAGE("symmetric forms found with bound 2: " << found.size());
}

TEST_CASE("two-dimensional diagonal forms have square determinant")
{
    auto forms = search_forms_2d(20, 40);
    CHECK_FALSE(forms.empty());
    for (const auto& f : forms) {
        CHECK(f.determinant_square);
        long a = f.coefficients[0], b = f.coefficients[1];
        long r = std::lround(std::sqrt(static_cast<double>(a * b)));
        CHECK(r * r == a * b);
    }
    bool has_identity = std::any_of(forms.begin(), forms.end(), [](const DiagonalForm& f) {
        return f.coefficients == std::vector<long>{1, 1};
    });
    CHECK(has_identity);
}

TEST_CASE("Steinhaus radii")
{
    auto r2 = steinhaus_radii(2, 2.0);
    REQUIRE(r2.size() == 3);
    CHECK(r2[0].squared == 1);
    CHECK(r2[1].squared == 2);
    CHECK(r2[2].squared == 4);
    CHECK(r2[1].value == doctest::Approx(std::sqrt(2.0)));
    std::set<std::uint64_t> brute;
    for (std::uint64_t m = 0; m <= 10; ++m)
        for (std::uint64_t n = 0; n <= 10; ++n)
            if (m * m + n * n > 0 && m * m + n * n <= 100) brute.insert(m * m + n * n);
    auto r10 = steinhaus_radii(2, 10.0);
    REQUIRE(r10.size() == brute.size());
    std::size_t i = 0;
    for (auto s : brute) CHECK(r10[i++].squared == s);
    auto r3 = steinhaus_radii(3, 3.0);
    CHECK(r3.front().value == 1.0);
    CHECK(std::any_of(r3.begin(), r3.end(), [](const Radius& r) { return r.squared == 3; }));
    CHECK_FALSE(std::any_of(r3.begin(), r3.end(), [](const Radius& r) { return r.squared == 7; }));
    CHECK_THROWS_AS(steinhaus_radii(4, 2.0), DomainError);
}
