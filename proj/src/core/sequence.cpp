#include "tilinglab/core/sequence.hpp"

#include "tilinglab/core/errors.hpp"

namespace tilinglab {

namespace {

constexpr unsigned kPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};

} // namespace

Rational radical_inverse(std::uint64_t index, unsigned base)
{
    Integer num = 0;
    Integer den = 1;
    while (index > 0) {
        num = num * base + static_cast<unsigned long>(index % base);
        den *= base;
        index /= base;
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::vector<Vec> halton_points(const Vec& lo, const Vec& hi, std::size_t count, std::uint64_t seed)
{
    const std::size_t d = lo.size();
    if (hi.size() != d) throw DomainError("window bounds differ in dimension");
    if (d > std::size(kPrimes)) throw DomainError("too many dimensions for the sample sequence");
    std::vector<Vec> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Vec x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * radical_inverse(seed + k + 1, kPrimes[i]);
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace tilinglab
