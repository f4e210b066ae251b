#pragma once

#include "tilinglab/core/lattice.hpp"
#include "tilinglab/fourier/box_tile.hpp"

#include <cstdint>
#include <vector>

namespace tilinglab {

/// Function on the grid origin + h Z^d stored as integer counts times a common scale.
struct SoftTile {
    std::size_t dim = 0;
    Rational h;
    Vec origin;
    /// Index of the first stored point and extent along each axis.
    std::vector<long> first;
    std::vector<long> extent;
    std::vector<std::int64_t> counts;
    Rational scale;
    std::size_t factors = 0;

    Rational value_at_index(const std::vector<long>& index) const;
    /// Value at a grid point; zero off the stored box. DomainError off the grid.
    Rational value_at(const Vec& x) const;
    /// Integral approximated by the grid sum times h^d.
    Rational total_mass() const;
    /// Sup-norm diameter of the bounding box of the stored nonzero values.
    Rational grid_diameter() const;
};

struct SoftTileResult {
    SoftTile tile;
    /// Sup-norm diameter of the Minkowski sum of the bounding boxes of the factors.
    Rational support_diameter;
    double n_root_d = 0.0;
};

/// Grid convolution chi_{D_1} * ... * chi_{D_N}: each cell of side h contributes its centre,
/// so the values live on h (m + N/2). Every box coordinate must be a multiple of h.
SoftTileResult soft_common_tile(const std::vector<BoxUnionTile>& domains, const Rational& h);

struct SoftTilingCheck {
    bool uniform = false;
    Rational level;
    Rational min_value;
    Rational max_value;
    std::size_t classes = 0;
};

/// Sums the grid values over each class of the grid modulo the lattice. The lattice must be a
/// sublattice of h Z^d.
SoftTilingCheck soft_tiling_check(const SoftTile& tile, const Lattice& lattice, std::size_t class_cap = 10'000'000);

} // namespace tilinglab
