#pragma once

#include "tilinglab/core/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tilinglab {

/// Radical inverse of index in the given base, as an exact rational in [0, 1).
Rational radical_inverse(std::uint64_t index, unsigned base);

/// Halton points in the half-open box [lo, hi). Coordinate i uses the (i+2)-th prime as its
/// base (3, 5, 7, ...), so no sample falls on a dyadic grid line. Indices start at seed + 1.
std::vector<Vec> halton_points(const Vec& lo, const Vec& hi, std::size_t count, std::uint64_t seed);

} // namespace tilinglab
