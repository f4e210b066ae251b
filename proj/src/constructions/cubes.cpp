#include "tilinglab/constructions/cubes.hpp"

#include "tilinglab/core/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tilinglab {

void NotchedCubeSpec::validate() const
{
    if (delta.empty()) throw DomainError("delta must be non-empty");
    bool all_one = true;
    for (const auto& d : delta) {
        if (d <= 0 || d > 1) throw DomainError("notch sides must lie in (0, 1]");
        all_one = all_one && d == 1;
    }
    if (all_one) throw DomainError("all notch sides equal 1: the notched cube has measure 0");
}

Rational NotchedCubeSpec::measure() const
{
    Rational p = 1;
    for (const auto& d : delta) p *= d;
    return 1 - p;
}

Matrix notched_matrix(const Vec& delta, const CyclicPermutation& sigma)
{
    const std::size_t d = delta.size();
    if (sigma.size() != d || !is_single_cycle(sigma)) throw DomainError("sigma must be a single cycle of length d");
    Matrix a = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) a(i, sigma[i]) -= delta[sigma[i]];
    return a;
}

CyclicPermutation standard_cycle(std::size_t d)
{
    CyclicPermutation s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = (i + 1) % d;
    return s;
}

bool is_single_cycle(const CyclicPermutation& sigma)
{
    const std::size_t d = sigma.size();
    if (d == 0) return false;
    std::vector<bool> seen(d, false);
    std::size_t x = 0;
    for (std::size_t step = 0; step < d; ++step) {
        if (x >= d || seen[x]) return false;
        seen[x] = true;
        x = sigma[x];
    }
    return x == 0;
}

std::vector<CyclicPermutation> all_cycles(std::size_t d)
{
    if (d == 0) throw DomainError("dimension must be positive");
    std::vector<std::size_t> rest(d - 1);
    std::iota(rest.begin(), rest.end(), std::size_t{1});
    std::vector<CyclicPermutation> out;
    do {
        CyclicPermutation s(d);
        std::size_t prev = 0;
        for (std::size_t v : rest) {
            s[prev] = v;
            prev = v;
        }
        s[prev] = 0;
        out.push_back(s);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

Lattice notched_lattice(const NotchedCubeSpec& spec)
{
    spec.validate();
    return Lattice(notched_matrix(spec.delta, standard_cycle(spec.delta.size())).transpose());
}

Lattice cyclic_variant(const NotchedCubeSpec& spec, const CyclicPermutation& sigma)
{
    spec.validate();
    return Lattice(notched_matrix(spec.delta, sigma).transpose());
}

BoxUnionTile notched_cube_tile(const NotchedCubeSpec& spec)
{
    spec.validate();
    const std::size_t d = spec.delta.size();
    const Rational half(1, 2);
    std::vector<WeightedBox> boxes;
    for (std::size_t j = 0; j < d; ++j) {
        if (spec.delta[j] == 1) continue;
        WeightedBox b;
        for (std::size_t i = 0; i < d; ++i) {
            if (i < j) {
                b.corner.push_back(half - spec.delta[i]);
                b.widths.push_back(spec.delta[i]);
            } else if (i == j) {
                b.corner.push_back(-half);
                b.widths.push_back(1 - spec.delta[i]);
            } else {
                b.corner.push_back(-half);
                b.widths.push_back(Rational(1));
            }
        }
        boxes.push_back(std::move(b));
    }
    return BoxUnionTile(std::move(boxes));
}

Vec extended_delta(const ExtendedCubeSpec& spec)
{
    Vec delta;
    for (std::size_t j = 0; j < spec.gamma.size(); ++j) delta.push_back(j < spec.k ? Rational(-spec.gamma[j]) : spec.gamma[j]);
    return delta;
}

std::pair<BoxUnionTile, Lattice> extended_cube(const ExtendedCubeSpec& spec)
{
    const std::size_t d = spec.gamma.size();
    if (d == 0) throw DomainError("gamma must be non-empty");
    for (const auto& g : spec.gamma)
        if (g <= 0) throw DomainError("side lengths of R must be positive");
    if (spec.k < 1 || spec.k > d) throw DomainError("codimension k must lie between 1 and d");
    if (spec.k % 2 == 0)
        throw PreconditionError("even codimension is the open problem: Q u R is conjectured not to tile; refusing");
    const Rational half(1, 2);
    WeightedBox q{Vec(d, -half), Vec(d, Rational(1)), 1};
    WeightedBox r;
    for (std::size_t j = 0; j < d; ++j) {
        r.corner.push_back(j < spec.k ? half : half - spec.gamma[j]);
        r.widths.push_back(spec.gamma[j]);
    }
    BoxUnionTile tile({q, r});
    Lattice lattice(notched_matrix(extended_delta(spec), standard_cycle(d)).transpose());
    return {tile, lattice};
}

ShiftedColumns shifted_column_tiling(const std::map<long, Rational>& shifts)
{
    ShiftedColumns cols;
    for (const auto& [m, s] : shifts) cols.shifts[m] = frac_of(s);
    return cols;
}

std::optional<std::array<Vec, 3>> non_lattice_witness(const ShiftedColumns& cols, const Vec& lo, const Vec& hi)
{
    auto pts = translations_in_box(TranslationSet{cols}, lo, hi);
    std::set<std::vector<std::string>> members;
    for (const auto& p : pts) members.insert({to_string(p[0]), to_string(p[1])});
    for (const auto& p : pts)
        for (const auto& q : pts)
            for (const auto& r : pts) {
                Vec s = sub(add(p, q), r);
                if (s[0] < lo[0] || s[0] > hi[0] || s[1] < lo[1] || s[1] > hi[1]) continue;
                if (!members.count({to_string(s[0]), to_string(s[1])})) return std::array<Vec, 3>{p, q, r};
            }
    return std::nullopt;
}

} // namespace tilinglab
