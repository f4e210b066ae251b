#include "tilinglab/fourier/box_tile.hpp"

#include "tilinglab/core/errors.hpp"

namespace tilinglab {

Rational WeightedBox::volume() const
{
    Rational v = 1;
    for (const auto& w : widths) v *= w;
    return v;
}

bool WeightedBox::contains(const Vec& x) const
{
    for (std::size_t i = 0; i < corner.size(); ++i)
        if (x[i] < corner[i] || x[i] >= corner[i] + widths[i]) return false;
    return true;
}

bool boxes_overlap(const WeightedBox& a, const WeightedBox& b)
{
    for (std::size_t i = 0; i < a.corner.size(); ++i)
        if (a.corner[i] >= b.corner[i] + b.widths[i] || b.corner[i] >= a.corner[i] + a.widths[i]) return false;
    return true;
}

BoxUnionTile::BoxUnionTile(std::vector<WeightedBox> boxes) : boxes_(std::move(boxes))
{
    if (boxes_.empty()) throw DomainError("tile needs at least one box");
    dim_ = boxes_.front().corner.size();
    if (dim_ == 0) throw DomainError("tile dimension must be positive");
    for (const auto& b : boxes_) {
        if (b.corner.size() != dim_ || b.widths.size() != dim_) throw DomainError("box dimension mismatch");
        for (const auto& w : b.widths)
            if (w <= 0) throw DomainError("box widths must be positive");
        if (b.weight == 0) throw DomainError("box weight must be nonzero");
    }
    for (std::size_t i = 0; i < boxes_.size(); ++i)
        for (std::size_t j = i + 1; j < boxes_.size(); ++j)
            if (boxes_overlap(boxes_[i], boxes_[j]))
                throw DomainError("boxes " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    if (measure() <= 0) throw DomainError("tile measure must be positive");
}

BoxUnionTile BoxUnionTile::box(const Vec& corner, const Vec& widths) { return BoxUnionTile({WeightedBox{corner, widths, 1}}); }

BoxUnionTile BoxUnionTile::unit_cube(std::size_t dim, bool centered)
{
    Vec corner(dim, centered ? Rational(-1, 2) : Rational(0));
    return box(corner, Vec(dim, Rational(1)));
}

BoxUnionTile BoxUnionTile::intervals(const std::vector<std::pair<Rational, Rational>>& pieces)
{
    std::vector<WeightedBox> boxes;
    for (const auto& [a, b] : pieces) boxes.push_back(WeightedBox{{a}, {b - a}, 1});
    return BoxUnionTile(std::move(boxes));
}

Rational BoxUnionTile::measure() const
{
    Rational m = 0;
    for (const auto& b : boxes_) m += b.weight * b.volume();
    return m;
}

bool BoxUnionTile::is_indicator() const
{
    for (const auto& b : boxes_)
        if (b.weight != 1) return false;
    return true;
}

Rational BoxUnionTile::value_at(const Vec& x) const
{
    if (x.size() != dim_) throw DomainError("point has the wrong dimension");
    Rational v = 0;
    for (const auto& b : boxes_)
        if (b.contains(x)) v += b.weight;
    return v;
}

Vec BoxUnionTile::lower_bound() const
{
    Vec lo = boxes_.front().corner;
    for (const auto& b : boxes_)
        for (std::size_t i = 0; i < dim_; ++i)
            if (b.corner[i] < lo[i]) lo[i] = b.corner[i];
    return lo;
}

Vec BoxUnionTile::upper_bound() const
{
    Vec hi = boxes_.front().upper();
    for (const auto& b : boxes_) {
        Vec u = b.upper();
        for (std::size_t i = 0; i < dim_; ++i)
            if (u[i] > hi[i]) hi[i] = u[i];
    }
    return hi;
}

BoxUnionTile BoxUnionTile::translated(const Vec& t) const
{
    std::vector<WeightedBox> moved = boxes_;
    for (auto& b : moved) b.corner = add(b.corner, t);
    return BoxUnionTile(std::move(moved));
}

} // namespace tilinglab
