#pragma once

#include "tilinglab/core/lattice.hpp"
#include "tilinglab/fourier/box_tile.hpp"
#include "tilinglab/fourier/kernels.hpp"
#include "tilinglab/tiling/translation_set.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace tilinglab {

struct TilingReport {
    bool passed = false;
    /// "fourier", "exact-cells" or "sampled".
    std::string method;
    bool exact = false;
    /// Coverage level: measure times density for the Fourier test, the modal coverage otherwise.
    Rational level = 0;
    /// Largest |coverage - level|, or the largest |ft| at a nonzero dual point.
    double max_deviation = 0.0;
    std::optional<Vec> witness;
    /// Coverage at the witness (direct tests only).
    std::optional<Rational> witness_value;
    std::size_t samples_or_cells = 0;
    Rational min_coverage = 0;
    Rational max_coverage = 0;
    /// Share of the period cell (exact) or of the samples whose coverage differs from the level.
    double deviating_fraction = 0.0;
    double tol = 0.0;
};

/// Tile given by its value on points and a bounding box [lo, hi].
struct SampledTile {
    std::function<Rational(const Vec&)> value;
    Vec lo;
    Vec hi;
};

SampledTile sampled_tile(const BoxUnionTile& tile);

using FourierTransform = std::function<ComplexValue(const Vec&)>;

/// Checks |ft| < tol (1 + measure) at every dual point 0 < ||xi||_inf <= radius.
TilingReport verify_lattice_tiling_fourier(const FourierTransform& ft, const Rational& measure, const Lattice& lattice,
                                           const Rational& radius, double tol = 1e-9,
                                           std::size_t cap = kDefaultEnumerationCap);
TilingReport verify_lattice_tiling_fourier(const BoxUnionTile& tile, const Lattice& lattice, const Rational& radius,
                                           double tol = 1e-9, std::size_t cap = kDefaultEnumerationCap);

/// Same test at the dual points D z with D the dual basis and ||z||_inf <= coefficient_bound.
TilingReport verify_lattice_tiling_fourier_coefficients(const BoxUnionTile& tile, const Lattice& lattice,
                                                        long coefficient_bound, double tol = 1e-9,
                                                        std::size_t cap = kDefaultEnumerationCap);

struct ExactOptions {
    std::size_t cell_cap = 10'000'000;
};

/// Exact coverage over one period box, split into cells by all translated box faces.
TilingReport verify_tiling_exact(const BoxUnionTile& tile, const TranslationSet& t, const ExactOptions& options = {});
/// Passes when coverage never exceeds level.
TilingReport verify_packing_exact(const BoxUnionTile& tile, const TranslationSet& t, const Rational& level = 1,
                                  const ExactOptions& options = {});

/// Coverage at quasi-random points of the window [lo, hi); the level is the most frequent value.
TilingReport verify_tiling_sampled(const SampledTile& tile, const TranslationSet& t, const Vec& lo, const Vec& hi,
                                   std::size_t samples, std::uint64_t seed = 0);
TilingReport verify_packing_sampled(const SampledTile& tile, const TranslationSet& t, const Vec& lo, const Vec& hi,
                                    std::size_t samples, std::uint64_t seed = 0, const Rational& level = 1);

/// Minimal pairwise Euclidean distance; infinity for fewer than two points.
double separation_of(const PointPatch& patch);

} // namespace tilinglab
