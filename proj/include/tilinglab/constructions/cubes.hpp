#pragma once

#include "tilinglab/core/lattice.hpp"
#include "tilinglab/fourier/box_tile.hpp"
#include "tilinglab/tiling/translation_set.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tilinglab {

/// Unit cube Q = [-1/2,1/2)^d with the corner box R = prod [1/2 - delta_j, 1/2) removed.
struct NotchedCubeSpec {
    Vec delta;

    /// Throws DomainError unless 0 < delta_j <= 1 and not every delta_j equals 1.
    void validate() const;
    Rational measure() const;
};

/// Q together with a box R of sides gamma sharing the vertex (1/2,...,1/2); Q and R meet in
/// codimension k.
struct ExtendedCubeSpec {
    Vec gamma;
    std::size_t k = 1;
};

/// Cyclic permutation of {0,...,d-1} given by its images: sigma[i] is the successor of i.
using CyclicPermutation = std::vector<std::size_t>;

/// Matrix with 1 on the diagonal and -delta_{sigma(i)} at (i, sigma(i)).
Matrix notched_matrix(const Vec& delta, const CyclicPermutation& sigma);
CyclicPermutation standard_cycle(std::size_t d);
bool is_single_cycle(const CyclicPermutation& sigma);
/// All (d-1)! single cycles, in lexicographic order of the visiting sequence 0 -> ... -> 0.
std::vector<CyclicPermutation> all_cycles(std::size_t d);

/// Lambda = A^T Z^d for the standard cycle.
Lattice notched_lattice(const NotchedCubeSpec& spec);
Lattice cyclic_variant(const NotchedCubeSpec& spec, const CyclicPermutation& sigma);

/// Disjoint box decomposition of the notched cube (d boxes at most).
BoxUnionTile notched_cube_tile(const NotchedCubeSpec& spec);

/// Signed parameters: -gamma_j for the first k coordinates, gamma_j afterwards.
Vec extended_delta(const ExtendedCubeSpec& spec);
/// Throws PreconditionError for even k, which is the open case.
std::pair<BoxUnionTile, Lattice> extended_cube(const ExtendedCubeSpec& spec);

/// Unit-square translations {(m, n + s_m)} with every shift reduced into [0, 1).
ShiftedColumns shifted_column_tiling(const std::map<long, Rational>& shifts);

/// Three translations p, q, r in [lo, hi] with p + q - r inside [lo, hi] but not a translation.
/// Present exactly when the translations in the window are not a patch of a translated lattice.
std::optional<std::array<Vec, 3>> non_lattice_witness(const ShiftedColumns& cols, const Vec& lo, const Vec& hi);

} // namespace tilinglab
