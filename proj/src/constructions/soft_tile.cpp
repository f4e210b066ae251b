#include "tilinglab/constructions/soft_tile.hpp"

#include "tilinglab/core/errors.hpp"

#include <cmath>
#include <map>

namespace tilinglab {

namespace {

struct IntGrid {
    std::vector<long> first;
    std::vector<long> extent;
    std::vector<std::int64_t> data;

    std::size_t size() const { return data.size(); }
    std::vector<long> index_of(std::size_t flat) const
    {
        std::vector<long> idx(first.size());
        for (std::size_t i = first.size(); i-- > 0;) {
            idx[i] = first[i] + static_cast<long>(flat % static_cast<std::size_t>(extent[i]));
            flat /= static_cast<std::size_t>(extent[i]);
        }
        return idx;
    }
    std::size_t flat_of(const std::vector<long>& idx) const
    {
        std::size_t f = 0;
        for (std::size_t i = 0; i < first.size(); ++i) f = f * static_cast<std::size_t>(extent[i]) + static_cast<std::size_t>(idx[i] - first[i]);
        return f;
    }
};

long grid_index(const Rational& x, const Rational& h)
{
    Rational m = x / h;
    if (!is_integer(m)) throw DomainError("box coordinate " + to_string(x) + " is not a multiple of the resolution");
    return m.get_num().get_si();
}

IntGrid indicator_grid(const BoxUnionTile& tile, const Rational& h)
{
    if (!tile.is_indicator()) throw DomainError("soft tiles convolve indicator functions");
    const std::size_t d = tile.dim();
    IntGrid g;
    Vec lo = tile.lower_bound(), hi = tile.upper_bound();
    for (std::size_t i = 0; i < d; ++i) {
        g.first.push_back(grid_index(lo[i], h));
        g.extent.push_back(grid_index(hi[i], h) - g.first.back());
    }
    for (const auto& b : tile.boxes())
        for (std::size_t i = 0; i < d; ++i) {
            grid_index(b.corner[i], h);
            grid_index(b.widths[i], h);
        }
    std::size_t total = 1;
    for (long e : g.extent) total *= static_cast<std::size_t>(e);
    g.data.assign(total, 0);
    for (std::size_t f = 0; f < total; ++f) {
        auto idx = g.index_of(f);
        Vec centre(d);
        for (std::size_t i = 0; i < d; ++i) centre[i] = h * (Rational(idx[i]) + Rational(1, 2));
        g.data[f] = tile.value_at(centre) != 0 ? 1 : 0;
    }
    return g;
}

IntGrid convolve(const IntGrid& a, const IntGrid& b)
{
    const std::size_t d = a.first.size();
    IntGrid out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        out.first.push_back(a.first[i] + b.first[i]);
        out.extent.push_back(a.extent[i] + b.extent[i] - 1);
        total *= static_cast<std::size_t>(out.extent.back());
    }
    out.data.assign(total, 0);
    std::vector<std::pair<std::vector<long>, std::int64_t>> bn;
    for (std::size_t f = 0; f < b.size(); ++f)
        if (b.data[f] != 0) bn.emplace_back(b.index_of(f), b.data[f]);
    std::vector<long> s(d);
    for (std::size_t f = 0; f < a.size(); ++f) {
        if (a.data[f] == 0) continue;
        auto ia = a.index_of(f);
        for (const auto& [ib, v] : bn) {
            for (std::size_t i = 0; i < d; ++i) s[i] = ia[i] + ib[i];
            out.data[out.flat_of(s)] += a.data[f] * v;
        }
    }
    return out;
}

Rational power(const Rational& x, std::size_t n)
{
    Rational r = 1;
    for (std::size_t i = 0; i < n; ++i) r *= x;
    return r;
}

} // namespace

Rational SoftTile::value_at_index(const std::vector<long>& index) const
{
    std::size_t f = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        long off = index[i] - first[i];
        if (off < 0 || off >= extent[i]) return 0;
        f = f * static_cast<std::size_t>(extent[i]) + static_cast<std::size_t>(off);
    }
    return scale * Rational(static_cast<long>(counts[f]));
}

Rational SoftTile::value_at(const Vec& x) const
{
    std::vector<long> idx(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Rational m = (x[i] - origin[i]) / h;
        if (!is_integer(m)) throw DomainError("point is not on the soft-tile grid");
        idx[i] = m.get_num().get_si();
    }
    return value_at_index(idx);
}

Rational SoftTile::total_mass() const
{
    Integer s = 0;
    for (auto c : counts) s += static_cast<long>(c);
    return Rational(s) * scale * power(h, dim);
}

Rational SoftTile::grid_diameter() const
{
    long widest = 0;
    for (std::size_t axis = 0; axis < dim; ++axis) {
        long lo = extent[axis], hi = -1;
        std::size_t stride = 1;
        for (std::size_t i = axis + 1; i < dim; ++i) stride *= static_cast<std::size_t>(extent[i]);
        for (std::size_t f = 0; f < counts.size(); ++f) {
            if (counts[f] == 0) continue;
            long k = static_cast<long>((f / stride) % static_cast<std::size_t>(extent[axis]));
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        if (hi >= lo) widest = std::max(widest, hi - lo);
    }
    return h * Rational(widest);
}

SoftTileResult soft_common_tile(const std::vector<BoxUnionTile>& domains, const Rational& h)
{
    if (domains.empty()) throw DomainError("at least one domain is required");
    if (h <= 0) throw DomainError("resolution must be positive");
    const std::size_t d = domains.front().dim();
    IntGrid acc;
    Vec span(d, Rational(0));
    for (std::size_t j = 0; j < domains.size(); ++j) {
        if (domains[j].dim() != d) throw DomainError("domains differ in dimension");
        IntGrid g = indicator_grid(domains[j], h);
        acc = j == 0 ? g : convolve(acc, g);
        Vec lo = domains[j].lower_bound(), hi = domains[j].upper_bound();
        for (std::size_t i = 0; i < d; ++i) span[i] += hi[i] - lo[i];
    }
    const std::size_t n = domains.size();
    SoftTileResult res;
    SoftTile& t = res.tile;
    t.dim = d;
    t.h = h;
    t.origin = Vec(d, h * Rational(static_cast<long>(n), 2));
    t.first = acc.first;
    t.extent = acc.extent;
    t.counts = std::move(acc.data);
    t.scale = power(h, d * (n - 1));
    t.factors = n;
    res.support_diameter = 0;
    for (const auto& s : span) res.support_diameter = std::max(res.support_diameter, s);
    res.n_root_d = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d));
    return res;
}

SoftTilingCheck soft_tiling_check(const SoftTile& tile, const Lattice& lattice, std::size_t class_cap)
{
    const std::size_t d = tile.dim;
    if (lattice.dim() != d) throw DomainError("lattice dimension differs from the tile");
    // lattice in units of h must be integral
    Matrix scaled = lattice.basis();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            scaled(i, j) /= tile.h;
            if (!is_integer(scaled(i, j))) throw DomainError("lattice is not contained in the soft-tile grid");
        }
    Matrix hnf = column_hermite_form(scaled);
    std::vector<long> diag(d);
    Rational classes_q = 1;
    for (std::size_t i = 0; i < d; ++i) {
        diag[i] = hnf(i, i).get_num().get_si();
        classes_q *= hnf(i, i);
    }
    if (classes_q > Rational(static_cast<long>(class_cap))) throw CapacityError("too many residue classes", class_cap);
    const std::size_t classes = static_cast<std::size_t>(classes_q.get_num().get_si());

    std::vector<std::int64_t> sums(classes, 0);
    std::vector<long> idx(d);
    for (std::size_t f = 0; f < tile.counts.size(); ++f) {
        if (tile.counts[f] == 0) continue;
        std::size_t rem = f;
        for (std::size_t i = d; i-- > 0;) {
            idx[i] = tile.first[i] + static_cast<long>(rem % static_cast<std::size_t>(tile.extent[i]));
            rem /= static_cast<std::size_t>(tile.extent[i]);
        }
        // reduce along the triangular basis: coordinate i is fixed by column i alone
        std::vector<long> r = idx;
        for (std::size_t i = 0; i < d; ++i) {
            long m = r[i] >= 0 ? r[i] / diag[i] : -((-r[i] + diag[i] - 1) / diag[i]);
            if (m != 0)
                for (std::size_t k = i; k < d; ++k) r[k] -= m * hnf(k, i).get_num().get_si();
        }
        std::size_t key = 0;
        for (std::size_t i = 0; i < d; ++i) key = key * static_cast<std::size_t>(diag[i]) + static_cast<std::size_t>(r[i]);
        sums[key] += tile.counts[f];
    }
    SoftTilingCheck out;
    out.classes = classes;
    auto [mn, mx] = std::minmax_element(sums.begin(), sums.end());
    out.min_value = tile.scale * Rational(static_cast<long>(*mn));
    out.max_value = tile.scale * Rational(static_cast<long>(*mx));
    out.uniform = *mn == *mx;
    out.level = out.min_value;
    return out;
}

} // namespace tilinglab
