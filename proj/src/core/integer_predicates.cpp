#include "tilinglab/core/integer_predicates.hpp"

#include "tilinglab/core/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace tilinglab {

std::optional<std::size_t> integral_row_index(const Matrix& a)
{
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool integral = true;
        for (std::size_t j = 0; j < a.cols() && integral; ++j) integral = is_integer(a(i, j));
        if (integral) return i + 1;
    }
    return std::nullopt;
}

namespace {

long norm2(const IntVec& x)
{
    long s = 0;
    for (long v : x) s += v * v;
    return s;
}

bool sign_normalized(const IntVec& x)
{
    for (long v : x)
        if (v != 0) return v > 0;
    return false;
}

void require_unimodular(const Matrix& a)
{
    if (!a.is_square()) throw DomainError("matrix must be square");
    if (a.determinant() != 1) throw PreconditionError("determinant must equal 1 exactly");
}

Vec apply_int(const Matrix& a, const IntVec& x)
{
    Vec y(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (x[j] != 0) y[i] += a(i, j) * x[j];
    return y;
}

} // namespace

std::vector<IntVec> integer_shell(std::size_t dim, long radius)
{
    std::vector<IntVec> out;
    if (radius <= 0 || dim == 0) return out;
    IntVec x(dim, -radius);
    while (true) {
        long m = 0;
        for (long v : x) m = std::max(m, std::labs(v));
        if (m == radius && sign_normalized(x)) out.push_back(x);
        std::size_t k = dim;
        while (k > 0) {
            --k;
            if (x[k] < radius) {
                ++x[k];
                break;
            }
            x[k] = -radius;
            if (k == 0) {
                k = dim + 1;
                break;
            }
        }
        if (k == dim + 1) break;
    }
    std::stable_sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
        long na = norm2(a), nb = norm2(b);
        if (na != nb) return na < nb;
        return a > b;
    });
    return out;
}

std::optional<IntVec> minkowski_vector(const Matrix& a, long search_bound)
{
    require_unimodular(a);
    if (search_bound < 1) throw DomainError("search bound must be at least 1");
    for (long r = 1; r <= search_bound; ++r)
        for (const auto& x : integer_shell(a.rows(), r))
            if (max_abs(apply_int(a, x)) <= 1) return x;
    return std::nullopt;
}

HajosResult hajos_predicate(const Matrix& b, long range_bound)
{
    require_unimodular(b);
    if (range_bound < 1) throw DomainError("range bound must be at least 1");
    HajosResult result;
    result.integral_row = integral_row_index(b);
    for (long r = 1; r <= range_bound; ++r) {
        for (const auto& x : integer_shell(b.rows(), r)) {
            ++result.checked;
            bool ok = false;
            for (const auto& c : apply_int(b, x))
                if (c != 0 && is_integer(c)) {
                    ok = true;
                    break;
                }
            if (!ok) {
                result.witness = x;
                return result;
            }
        }
    }
    result.holds_up_to_bound = true;
    return result;
}

Vec to_rational(const IntVec& x)
{
    Vec v;
    v.reserve(x.size());
    for (long c : x) v.emplace_back(c);
    return v;
}

} // namespace tilinglab
