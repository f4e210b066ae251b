#include "tilinglab/steinhaus/forms.hpp"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace tilinglab {

namespace {

// 2B as machine integers; valid for integer-valued forms.
std::vector<std::int64_t> doubled_entries(const QuadraticForm& q)
{
    const std::size_t d = q.dim();
    std::vector<std::int64_t> m(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Rational v = 2 * q.matrix()(i, j);
            m[i * d + j] = v.get_num().get_si();
        }
    return m;
}

std::uint64_t value_bound(const std::vector<std::int64_t>& doubled, long range)
{
    std::uint64_t total = 0;
    for (auto v : doubled) total += static_cast<std::uint64_t>(std::llabs(v));
    return total * static_cast<std::uint64_t>(range) * static_cast<std::uint64_t>(range) / 2 + 1;
}

struct ScanResult {
    std::uint64_t checked = 0;
    std::optional<std::vector<long>> counterexample;
    std::uint64_t value = 0;
};

// Lexicographic scan of [-range, range]^d; chunks over the first coordinate keep the first failure.
ScanResult scan(const std::vector<std::int64_t>& doubled, std::size_t d, long range, const std::vector<char>& table,
                bool parallel)
{
    const std::size_t width = static_cast<std::size_t>(2 * range + 1);
    std::vector<ScanResult> per_first(width);
    auto body = [&](std::size_t begin, std::size_t end) {
        std::vector<long> x(d);
        for (std::size_t f = begin; f < end; ++f) {
            ScanResult& r = per_first[f];
            x.assign(d, -range);
            x[0] = static_cast<long>(f) - range;
            while (true) {
                std::int64_t twice = 0;
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) twice += doubled[i * d + j] * x[i] * x[j];
                auto v = static_cast<std::uint64_t>(twice / 2);
                ++r.checked;
                if (!table[v]) {
                    r.counterexample = x;
                    r.value = v;
                    break;
                }
                std::size_t axis = d;
                bool advanced = false;
                while (axis > 1) {
                    --axis;
                    if (x[axis] < range) {
                        ++x[axis];
                        advanced = true;
                        break;
                    }
                    x[axis] = -range;
                }
                if (!advanced) break;
            }
        }
    };
    if (parallel)
        parallel_for_chunks(width, body);
    else
        body(0, width);
    ScanResult out;
    for (const auto& r : per_first) {
        out.checked += r.checked;
        if (r.counterexample) {
            out.counterexample = r.counterexample;
            out.value = r.value;
            break;
        }
    }
    return out;
}

bool fires_on(const QuadraticForm& q, long range, const std::vector<char>& table)
{
    if (det_is_integer_square(q)) return false;
    return !scan(doubled_entries(q), q.dim(), range, table, false).counterexample;
}

} // namespace

bool is_positive_definite(const Matrix& b)
{
    for (std::size_t k = 1; k <= b.rows(); ++k) {
        Matrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = b(i, j);
        if (minor.determinant() <= 0) return false;
    }
    return true;
}

QuadraticForm::QuadraticForm(Matrix b) : b_(std::move(b))
{
    if (!b_.is_square() || b_.rows() == 0) throw DomainError("form matrix must be square");
    if (b_.transpose() != b_) throw DomainError("form matrix must be symmetric");
    if (!is_positive_definite(b_)) throw DomainError("form must be positive definite");
}

QuadraticForm QuadraticForm::diagonal(const std::vector<long>& coefficients)
{
    Vec diag;
    for (long c : coefficients) diag.push_back(Rational(c));
    return QuadraticForm(Matrix::diagonal(diag));
}

bool QuadraticForm::is_integer_valued() const
{
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            if (i == j && !is_integer(b_(i, j))) return false;
            if (!is_integer(2 * b_(i, j))) return false;
        }
    return true;
}

std::vector<double> QuadraticForm::eigenvalues() const
{
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            m(i, j) = to_double(b_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

QuadraticForm steinhaus_form_3d() { return QuadraticForm::diagonal({2, 11, 6}); }

QuadraticForm steinhaus_form_4d()
{
    Matrix b(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b(i, j) = i == j ? Rational(1) : Rational(1, 2);
    return QuadraticForm(b);
}

bool is_sum_of_three_squares(std::uint64_t n)
{
    if (n == 0) return true;
    while (n % 4 == 0) n /= 4;
    return n % 8 != 7;
}

std::optional<std::vector<std::uint64_t>> sum_of_squares_witness(std::uint64_t n, std::size_t d)
{
    std::vector<std::uint64_t> parts(d);
    auto isqrt = [](std::uint64_t v) {
        auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        return r;
    };
    auto rec = [&](auto&& self, std::uint64_t rest, std::uint64_t least, std::size_t slot) -> bool {
        const std::size_t left = d - slot;
        if (left == 0) return rest == 0;
        if (left == 1) {
            std::uint64_t r = isqrt(rest);
            if (r * r != rest || r < least) return false;
            parts[slot] = r;
            return true;
        }
        for (std::uint64_t a = least; a * a * left <= rest; ++a) {
            parts[slot] = a;
            if (self(self, rest - a * a, a, slot + 1)) return true;
        }
        return false;
    };
    if (!rec(rec, n, 0, 0)) return std::nullopt;
    return parts;
}

std::vector<char> sums_of_squares_table(std::uint64_t max, std::size_t d)
{
    std::vector<char> table(max + 1, 0);
    table[0] = 1;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<char> next(max + 1, 0);
        for (std::uint64_t v = 0; v <= max; ++v) {
            if (!table[v]) continue;
            for (std::uint64_t s = 0; v + s * s <= max; ++s) next[v + s * s] = 1;
        }
        table.swap(next);
    }
    return table;
}

Rational form_value(const QuadraticForm& q, const std::vector<long>& x)
{
    if (x.size() != q.dim()) throw DomainError("vector dimension differs from the form");
    Vec v;
    for (long c : x) v.push_back(Rational(c));
    return dot(q.matrix().apply(v), v);
}

RepresentabilityReport verify_representability(const QuadraticForm& q, std::size_t squares, long range)
{
    if (!q.is_integer_valued()) throw PreconditionError("form is not integer valued on Z^d");
    if (range < 0) throw DomainError("range must be nonnegative");
    RepresentabilityReport report;
    report.range = range;
    report.squares = squares;
    auto doubled = doubled_entries(q);
    auto table = sums_of_squares_table(value_bound(doubled, range), squares);
    if (squares == 3)
        for (std::uint64_t v = 0; v < table.size(); ++v)
            if (static_cast<bool>(table[v]) != is_sum_of_three_squares(v)) ++report.characterization_mismatches;
    auto r = scan(doubled, q.dim(), range, table, true);
    report.checked_count = r.checked;
    if (r.counterexample) {
        report.all_representable = false;
        report.counterexample = r.counterexample;
        report.counterexample_value = Rational(static_cast<unsigned long>(r.value));
    }
    return report;
}

bool is_integer_square(const Rational& value)
{
    if (!is_integer(value) || value < 0) return false;
    return mpz_perfect_square_p(value.get_num().get_mpz_t()) != 0;
}

bool det_is_integer_square(const QuadraticForm& q) { return is_integer_square(q.determinant()); }

SteinhausVerdict steinhaus_lemma_check(const QuadraticForm& q, long range)
{
    SteinhausVerdict v;
    v.representability = verify_representability(q, q.dim(), range);
    v.determinant = q.determinant();
    v.determinant_square = is_integer_square(v.determinant);
    v.fires = v.representability.all_representable && !v.determinant_square;
    const std::string d = std::to_string(q.dim());
    if (v.fires)
        v.message = "no Steinhaus sets in dimension " + d + " (conditional on range-" + std::to_string(range) +
                    " evidence)";
    else if (v.determinant_square)
        v.message = "determinant " + to_string(v.determinant) + " is an integer square";
    else
        v.message = "value " + to_string(*v.representability.counterexample_value) + " is not a sum of " + d +
                    " squares";
    return v;
}

std::vector<DiagonalForm> search_forms_3d(long bound, long range)
{
    std::vector<std::vector<long>> candidates;
    for (long a = 1; a <= bound; ++a)
        for (long b = a; b <= bound; ++b)
            for (long c = b; c <= bound; ++c) candidates.push_back({a, b, c});
    auto table = sums_of_squares_table(static_cast<std::uint64_t>(3 * bound * range * range) + 1, 3);
    std::vector<char> hit(candidates.size(), 0);
    parallel_for_chunks(candidates.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) hit[i] = fires_on(QuadraticForm::diagonal(candidates[i]), range, table);
    });
    std::vector<DiagonalForm> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (hit[i]) {
            const auto& c = candidates[i];
            Rational det = Rational(c[0]) * c[1] * c[2];
            out.push_back({c, det, false});
        }
    return out;
}

std::vector<QuadraticForm> search_symmetric_forms_3d(long bound, long range)
{
    std::vector<Matrix> candidates;
    for (long a = 1; a <= bound; ++a)
        for (long b = 1; b <= bound; ++b)
            for (long c = 1; c <= bound; ++c)
                for (long x = -bound; x <= bound; ++x)
                    for (long y = -bound; y <= bound; ++y)
                        for (long z = -bound; z <= bound; ++z) {
                            Matrix m = Matrix::from_rows({{Rational(a), Rational(x, 2), Rational(y, 2)},
                                                          {Rational(x, 2), Rational(b), Rational(z, 2)},
                                                          {Rational(y, 2), Rational(z, 2), Rational(c)}});
                            if (is_positive_definite(m)) candidates.push_back(m);
                        }
    auto table = sums_of_squares_table(static_cast<std::uint64_t>(3 * bound + 3 * bound) *
                                           static_cast<std::uint64_t>(range * range) + 1,
                                       3);
    std::vector<char> hit(candidates.size(), 0);
    parallel_for_chunks(candidates.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) hit[i] = fires_on(QuadraticForm(candidates[i]), range, table);
    });
    std::vector<QuadraticForm> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (hit[i]) out.emplace_back(candidates[i]);
    return out;
}

std::vector<DiagonalForm> search_forms_2d(long bound, long range)
{
    auto table = sums_of_squares_table(static_cast<std::uint64_t>(2 * bound * range * range) + 1, 2);
    std::vector<DiagonalForm> out;
    for (long a = 1; a <= bound; ++a)
        for (long b = a; b <= bound; ++b) {
            auto q = QuadraticForm::diagonal({a, b});
            if (scan(doubled_entries(q), 2, range, table, false).counterexample) continue;
            Rational det(a * b);
            out.push_back({{a, b}, det, is_integer_square(det)});
        }
    return out;
}

std::vector<Radius> steinhaus_radii(std::size_t dim, double r_max)
{
    if (dim != 2 && dim != 3) throw DomainError("radii are generated for dimension 2 or 3");
    if (r_max < 0) return {};
    const auto limit = static_cast<std::uint64_t>(std::floor(r_max * r_max + 1e-9));
    auto table = sums_of_squares_table(limit, dim);
    std::vector<Radius> out;
    for (std::uint64_t s = 1; s <= limit; ++s)
        if (table[s]) out.push_back({s, std::sqrt(static_cast<double>(s))});
    return out;
}

} // namespace tilinglab
