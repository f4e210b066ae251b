#pragma once

#include "tilinglab/core/rational.hpp"

#include <cstddef>
#include <vector>

namespace tilinglab {

/// Half-open box [corner, corner + widths) carrying a weight.
struct WeightedBox {
    Vec corner;
    Vec widths;
    Rational weight = 1;

    Vec upper() const { return add(corner, widths); }
    Rational volume() const;
    bool contains(const Vec& x) const;
};

bool boxes_overlap(const WeightedBox& a, const WeightedBox& b);

/// Weighted union of pairwise disjoint half-open boxes.
class BoxUnionTile {
public:
    BoxUnionTile() = default;
    /// Throws DomainError on shape errors, overlapping boxes, or non-positive measure.
    explicit BoxUnionTile(std::vector<WeightedBox> boxes);

    static BoxUnionTile box(const Vec& corner, const Vec& widths);
    static BoxUnionTile unit_cube(std::size_t dim, bool centered = false);
    /// 1D union of [a_i, b_i).
    static BoxUnionTile intervals(const std::vector<std::pair<Rational, Rational>>& pieces);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<WeightedBox>& boxes() const noexcept { return boxes_; }
    Rational measure() const;
    bool is_indicator() const;
    /// Sum of weights of the boxes containing x.
    Rational value_at(const Vec& x) const;
    Vec lower_bound() const;
    Vec upper_bound() const;
    BoxUnionTile translated(const Vec& t) const;

private:
    std::size_t dim_ = 0;
    std::vector<WeightedBox> boxes_;
};

} // namespace tilinglab
