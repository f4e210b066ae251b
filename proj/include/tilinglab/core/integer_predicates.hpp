#pragma once

#include "tilinglab/core/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tilinglab {

using IntVec = std::vector<long>;

/// Smallest 1-based row index whose entries are all integers.
std::optional<std::size_t> integral_row_index(const Matrix& a);

/// Nonzero integer vectors with ||x||_inf = radius, one of each +-x pair (first nonzero entry
/// positive), ordered by squared Euclidean norm and then descending lexicographic order.
std::vector<IntVec> integer_shell(std::size_t dim, long radius);

/// Minkowski's linear-forms theorem as a bounded search: the first x in shell order with
/// ||x||_inf <= search_bound and ||A x||_inf <= 1. Requires det A = 1 exactly.
std::optional<IntVec> minkowski_vector(const Matrix& a, long search_bound);

struct HajosResult {
    bool holds_up_to_bound = false;
    std::optional<IntVec> witness;
    std::optional<std::size_t> integral_row;
    std::size_t checked = 0;
};

/// Checks that every nonzero x with ||x||_inf <= range_bound has some coordinate of B x
/// equal to a nonzero integer. Requires det B = 1 exactly.
HajosResult hajos_predicate(const Matrix& b, long range_bound);

Vec to_rational(const IntVec& x);

} // namespace tilinglab
