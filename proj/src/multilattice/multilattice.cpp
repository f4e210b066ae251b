#include "tilinglab/multilattice/multilattice.hpp"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/parallel.hpp"
#include "tilinglab/tiling/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace tilinglab {

namespace {

// Odometer over [lo, hi]^dim in lexicographic order; body returns false to stop.
template <class Body>
bool for_each_index(const std::vector<long>& lo, const std::vector<long>& hi, Body&& body)
{
    const std::size_t d = lo.size();
    for (std::size_t i = 0; i < d; ++i)
        if (lo[i] > hi[i]) return true;
    std::vector<long> idx = lo;
    while (true) {
        if (!body(idx)) return false;
        std::size_t axis = d;
        while (axis > 0) {
            --axis;
            if (idx[axis] < hi[axis]) {
                ++idx[axis];
                break;
            }
            idx[axis] = lo[axis];
            if (axis == 0) return true;
        }
        if (d == 0) return true;
    }
}

long ipow(long base, std::size_t exp)
{
    long r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

long wrap(long i, long n) { return ((i % n) + n) % n; }

// Visits the flat indices of cells whose centres lie in rect modulo the lattice.
template <class Body>
bool for_each_projected_cell(const RealLattice& lattice, std::size_t g, const Rectangle& rect, Body&& body)
{
    const std::size_t d = lattice.dim();
    const long n = ipow(2, g);
    const RealMatrix& inv = lattice.inverse_basis();
    std::vector<double> umin(d, std::numeric_limits<double>::infinity());
    std::vector<double> umax(d, -std::numeric_limits<double>::infinity());
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        RealVector corner = rect.corner;
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (std::size_t{1} << i)) corner[static_cast<Eigen::Index>(i)] += rect.widths[static_cast<Eigen::Index>(i)];
        RealVector u = inv * corner;
        for (std::size_t i = 0; i < d; ++i) {
            umin[i] = std::min(umin[i], u[static_cast<Eigen::Index>(i)]);
            umax[i] = std::max(umax[i], u[static_cast<Eigen::Index>(i)]);
        }
    }
    std::vector<long> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        lo[i] = static_cast<long>(std::floor(umin[i] * static_cast<double>(n))) - 1;
        hi[i] = static_cast<long>(std::ceil(umax[i] * static_cast<double>(n))) + 1;
    }
    RealVector u(static_cast<Eigen::Index>(d));
    return for_each_index(lo, hi, [&](const std::vector<long>& idx) {
        for (std::size_t i = 0; i < d; ++i)
            u[static_cast<Eigen::Index>(i)] = (static_cast<double>(idx[i]) + 0.5) / static_cast<double>(n);
        if (!rect.contains(lattice.basis() * u)) return true;
        std::size_t flat = 0;
        for (std::size_t i = 0; i < d; ++i) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(wrap(idx[i], n));
        return body(flat);
    });
}

double default_epsilon(std::size_t g, std::size_t k)
{
    return std::max(std::ldexp(1.0, 2 - static_cast<int>(g)), 1.0 / (4.0 * static_cast<double>(k)));
}

struct Cube {
    Rectangle rect;
    RealVector center;
};

// Greedy raster placement of side-eps cubes whose projected cells are all free.
std::vector<Cube> select_cubes(const RealLattice& lattice, std::size_t g, const std::vector<std::int32_t>& owner, double eps)
{
    const std::size_t d = lattice.dim();
    std::vector<char> reserved(owner.size(), 0);
    RealVector bmin = RealVector::Constant(static_cast<Eigen::Index>(d), std::numeric_limits<double>::infinity());
    RealVector bmax = -bmin;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        RealVector u = RealVector::Zero(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (std::size_t{1} << i)) u[static_cast<Eigen::Index>(i)] = 1.0;
        RealVector x = lattice.basis() * u;
        bmin = bmin.cwiseMin(x);
        bmax = bmax.cwiseMax(x);
    }
    const double step = eps / 8.0;
    std::vector<long> lo(d, 0), hi(d);
    for (std::size_t i = 0; i < d; ++i)
        hi[i] = static_cast<long>(std::ceil((bmax[static_cast<Eigen::Index>(i)] - bmin[static_cast<Eigen::Index>(i)]) / step));
    std::vector<Cube> cubes;
    std::vector<std::size_t> cells;
    for_each_index(lo, hi, [&](const std::vector<long>& idx) {
        Rectangle r;
        r.corner = bmin;
        for (std::size_t i = 0; i < d; ++i) r.corner[static_cast<Eigen::Index>(i)] += static_cast<double>(idx[i]) * step;
        r.widths = RealVector::Constant(static_cast<Eigen::Index>(d), eps);
        cells.clear();
        bool ok = for_each_projected_cell(lattice, g, r, [&](std::size_t c) {
            if (owner[c] >= 0 || reserved[c]) return false;
            cells.push_back(c);
            return true;
        });
        if (!ok || cells.empty()) return true;
        std::sort(cells.begin(), cells.end());
        if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) return true;
        for (std::size_t c : cells) reserved[c] = 1;
        cubes.push_back({r, r.corner + r.widths / 2.0});
        return true;
    });
    return cubes;
}

} // namespace

RealLattice::RealLattice(RealMatrix basis) : basis_(std::move(basis))
{
    if (basis_.rows() != basis_.cols() || basis_.rows() == 0) throw DomainError("lattice basis must be square");
    if (std::abs(basis_.determinant()) < 1e-300) throw SingularLatticeError("singular lattice basis");
    inverse_ = basis_.inverse();
}

RealLattice RealLattice::from_exact(const Lattice& lattice)
{
    if (lattice.has_offset()) throw DomainError("translated lattices are not supported here");
    const std::size_t d = lattice.dim();
    RealMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(lattice.basis()(i, j));
    return RealLattice(m);
}

RealLattice RealLattice::rotated_integer(double angle)
{
    RealMatrix m(2, 2);
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return RealLattice(m);
}

double RealLattice::volume() const { return std::abs(basis_.determinant()); }

RealLattice RealLattice::dual() const { return RealLattice(inverse_.transpose()); }

RealVector RealLattice::point(const std::vector<long>& coeffs) const
{
    RealVector c(static_cast<Eigen::Index>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[static_cast<Eigen::Index>(i)] = static_cast<double>(coeffs[i]);
    return basis_ * c;
}

std::vector<long> RealLattice::nearest_coefficients(const RealVector& x) const
{
    const std::size_t d = dim();
    RealVector u = inverse_ * x;
    std::vector<long> base(d);
    for (std::size_t i = 0; i < d; ++i) base[i] = std::lround(u[static_cast<Eigen::Index>(i)]);
    std::vector<long> best = base;
    double best_dist = std::numeric_limits<double>::infinity();
    std::vector<long> lo(d, -1), hi(d, 1), trial(d);
    for_each_index(lo, hi, [&](const std::vector<long>& off) {
        for (std::size_t i = 0; i < d; ++i) trial[i] = base[i] + off[i];
        double dist = (point(trial) - x).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = trial;
        }
        return true;
    });
    return best;
}

RealVector RealLattice::nearest_point(const RealVector& x) const { return point(nearest_coefficients(x)); }

LatticeFamily::LatticeFamily(std::vector<RealLattice> m) : members(std::move(m))
{
    if (members.empty()) throw DomainError("lattice family needs a member");
    volume = members.front().volume();
    for (const auto& l : members) {
        if (l.dim() != members.front().dim()) throw DomainError("lattice family members differ in dimension");
        if (std::abs(l.volume() - volume) > 1e-12) throw DomainError("lattice family members differ in volume");
    }
}

DirectSumReport check_direct_sum(const LatticeFamily& family, long bound, double tol, std::uint64_t cap)
{
    DirectSumReport report;
    report.closest_approach = std::numeric_limits<double>::infinity();
    const std::size_t n = family.size();
    if (n < 2) return report;
    const std::size_t d = family.dim();
    double per_axis = static_cast<double>(2 * bound + 1);
    double total = std::pow(per_axis, static_cast<double>((n - 1) * d));
    if (total > static_cast<double>(cap)) throw CapacityError("direct-sum search exceeds the enumeration cap", cap);
    std::vector<RealLattice> duals;
    for (const auto& l : family.members) duals.push_back(l.dual());
    std::vector<long> lo((n - 1) * d, -bound), hi((n - 1) * d, bound);
    for_each_index(lo, hi, [&](const std::vector<long>& coeffs) {
        ++report.combinations;
        if (std::all_of(coeffs.begin(), coeffs.end(), [](long c) { return c == 0; })) return true;
        RealVector s = RealVector::Zero(static_cast<Eigen::Index>(d));
        std::vector<std::vector<long>> parts(n);
        for (std::size_t j = 1; j < n; ++j) {
            parts[j].assign(coeffs.begin() + static_cast<long>((j - 1) * d), coeffs.begin() + static_cast<long>(j * d));
            s += duals[j].point(parts[j]);
        }
        parts[0] = duals[0].nearest_coefficients(-s);
        if (std::any_of(parts[0].begin(), parts[0].end(), [&](long c) { return std::abs(c) > bound; })) return true;
        double norm = (duals[0].point(parts[0]) + s).norm();
        report.closest_approach = std::min(report.closest_approach, norm);
        if (norm < tol) {
            report.direct = false;
            report.relation = parts;
            report.relation_norm = norm;
            return false;
        }
        return true;
    });
    return report;
}

double misalignment_of(const std::vector<RealVector>& targets, const std::vector<RealVector>& lambdas)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            worst = std::max(worst, ((targets[i] - lambdas[i]) - (targets[j] - lambdas[j])).norm());
    return worst;
}

std::optional<AlignmentResult> property_a_align(const std::vector<RealLattice>& members,
                                                const std::vector<RealVector>& targets, double epsilon,
                                                long search_radius, double min_norm)
{
    if (!(epsilon > 0.0) || members.empty()) return std::nullopt;
    const std::size_t n = members.size();
    const std::size_t d = members.front().dim();
    for (const auto& m : members)
        if (m.dim() != d) throw DomainError("members differ in dimension");
    if (targets.size() != n) throw DomainError("one target per member is required");
    std::optional<AlignmentResult> best;
    std::vector<long> lo(d, -search_radius), hi(d, search_radius);
    std::vector<RealVector> lambdas(n);
    std::vector<std::vector<long>> coeffs(n);
    for_each_index(lo, hi, [&](const std::vector<long>& m) {
        lambdas[0] = members[0].point(m);
        if (lambdas[0].norm() < min_norm) return true;
        coeffs[0] = m;
        for (std::size_t j = 1; j < n; ++j) {
            coeffs[j] = members[j].nearest_coefficients(targets[j] - targets[0] + lambdas[0]);
            lambdas[j] = members[j].point(coeffs[j]);
        }
        double mis = misalignment_of(targets, lambdas);
        if (!best || mis < best->misalignment) best = AlignmentResult{coeffs, lambdas, mis};
        return true;
    });
    if (!best || best->misalignment > epsilon) return std::nullopt;
    return best;
}

std::optional<AlignmentResult> property_a_align(const LatticeFamily& family, const std::vector<RealVector>& targets,
                                                double epsilon, long search_radius, double min_norm)
{
    return property_a_align(family.members, targets, epsilon, search_radius, min_norm);
}

double Rectangle::volume() const { return widths.prod(); }

bool Rectangle::contains(const RealVector& x) const
{
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] < corner[i] || x[i] >= corner[i] + widths[i]) return false;
    return true;
}

std::size_t RegionBuilder::cells_per_domain() const { return static_cast<std::size_t>(ipow(2, grid_exponent * dim)); }

std::size_t RegionBuilder::free_cells(std::size_t member) const
{
    return static_cast<std::size_t>(std::count(owners[member].begin(), owners[member].end(), -1));
}

double RegionBuilder::coverage(std::size_t member) const
{
    return 1.0 - static_cast<double>(free_cells(member)) / static_cast<double>(cells_per_domain());
}

bool BuildResult::contains(const RealVector& x) const
{
    return std::any_of(builder.accepted.begin(), builder.accepted.end(), [&](const Rectangle& r) { return r.contains(x); });
}

std::vector<std::size_t> cells_in_projection(const RealLattice& lattice, std::size_t grid_exponent, const Rectangle& rect)
{
    std::vector<std::size_t> cells;
    for_each_projected_cell(lattice, grid_exponent, rect, [&](std::size_t c) {
        cells.push_back(c);
        return true;
    });
    return cells;
}

BuildResult build_common_tile(const LatticeFamily& family, const BuildOptions& options)
{
    BuildResult result;
    const std::size_t d = family.dim();
    const std::size_t n = family.size();
    if (n > 1) {
        auto ds = check_direct_sum(family, options.direct_sum_bound, options.direct_sum_tol);
        if (!ds.direct) {
            result.refused = true;
            result.diagnostic = "dual lattices admit a relation; the sum is not direct";
            return result;
        }
    }
    RegionBuilder& b = result.builder;
    b.dim = d;
    b.grid_exponent = options.grid_exponent;
    b.owners.assign(n, std::vector<std::int32_t>(b.cells_per_domain(), -1));
    std::vector<std::size_t> previous_free(n, b.cells_per_domain());
    const double cell_measure = family.volume / static_cast<double>(b.cells_per_domain());

    for (std::size_t k = 1; k <= options.iterations; ++k) {
        const double eps = options.epsilon ? options.epsilon(k) : default_epsilon(options.grid_exponent, k);
        std::vector<std::vector<Cube>> cubes(n);
        for (std::size_t j = 0; j < n; ++j) cubes[j] = select_cubes(family.members[j], options.grid_exponent, b.owners[j], eps);
        std::size_t s_count = cubes[0].size();
        for (const auto& c : cubes) s_count = std::min(s_count, c.size());

        std::vector<std::optional<AlignmentResult>> aligned(s_count);
        const long radius = options.radius_per_iteration * static_cast<long>(k);
        const double floor = options.floor_per_iteration * static_cast<double>(k);
        parallel_for_chunks(s_count, [&](std::size_t begin, std::size_t end) {
            for (std::size_t s = begin; s < end; ++s) {
                std::vector<RealVector> targets;
                for (std::size_t j = 0; j < n; ++j) targets.push_back(cubes[j][s].center);
                long r = radius;
                for (std::size_t attempt = 0; attempt <= options.retry_budget && !aligned[s]; ++attempt, r *= 2)
                    aligned[s] = property_a_align(family, targets, eps / static_cast<double>(k), r, floor);
            }
        });

        IterationLog entry;
        entry.k = k;
        entry.epsilon = eps;
        for (std::size_t s = 0; s < s_count; ++s) {
            if (!aligned[s]) {
                ++entry.alignment_failures;
                continue;
            }
            Rectangle rect;
            rect.corner = cubes[0][s].rect.corner - aligned[s]->lambdas[0];
            RealVector upper = rect.corner + cubes[0][s].rect.widths;
            for (std::size_t j = 1; j < n; ++j) {
                rect.corner = rect.corner.cwiseMax(cubes[j][s].rect.corner - aligned[s]->lambdas[j]);
                upper = upper.cwiseMin(cubes[j][s].rect.corner + cubes[j][s].rect.widths - aligned[s]->lambdas[j]);
            }
            rect.widths = upper - rect.corner;
            if ((rect.widths.array() <= 0.0).any()) continue;
            const auto id = static_cast<std::int32_t>(b.accepted.size());
            for (std::size_t j = 0; j < n; ++j) {
                auto cells = cells_in_projection(family.members[j], options.grid_exponent, rect);
                std::sort(cells.begin(), cells.end());
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    if (i > 0 && cells[i] == cells[i - 1]) {
                        ++b.packing_violations;
                        continue;
                    }
                    if (b.owners[j][cells[i]] >= 0) {
                        ++b.packing_violations;
                        continue;
                    }
                    b.owners[j][cells[i]] = id;
                }
            }
            b.accepted.push_back(rect);
            ++entry.cubes_placed;
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t free = b.free_cells(j);
            if (free > previous_free[j]) result.monotone_leftovers = false;
            previous_free[j] = free;
            entry.leftover_measures.push_back(static_cast<double>(free) * cell_measure);
        }
        b.log.push_back(entry);
    }
    for (std::size_t j = 0; j < n; ++j) result.coverage.push_back(b.coverage(j));
    return result;
}

std::vector<Lattice> three_lattice_family()
{
    Rational one = 1, two = 2, zero = 0;
    return {Lattice::diagonal({two, one}), Lattice::diagonal({one, two}),
            Lattice(Matrix::from_columns({{one, one}, {zero, two}}))};
}

ObstructionReport three_lattice_obstruction(const std::vector<Lattice>& members, long radius)
{
    ObstructionReport report;
    report.verdict = "no obstruction from this criterion";
    if (members.empty()) {
        report.reason = "empty family";
        return report;
    }
    const std::size_t d = members.front().dim();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Lattice& l = members[i];
        if (l.dim() != d) throw DomainError("family members differ in dimension");
        if (l.has_offset()) {
            report.reason = "member " + std::to_string(i) + " is a translated lattice, not a subgroup";
            return report;
        }
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                if (!is_integer(l.basis()(r, c))) {
                    report.reason = "member " + std::to_string(i) + " is not a sublattice of Z^d";
                    return report;
                }
        Integer index = abs_of(lattice_determinant(l)).get_num();
        report.indices.push_back(index);
        if (index != 2) {
            report.reason = "member " + std::to_string(i) + " does not have index 2";
            return report;
        }
    }
    std::vector<long> lo(d, -radius), hi(d, radius);
    Vec z(d);
    for_each_index(lo, hi, [&](const std::vector<long>& idx) {
        for (std::size_t i = 0; i < d; ++i) z[i] = Rational(idx[i]);
        ++report.points_checked;
        bool covered = std::any_of(members.begin(), members.end(), [&](const Lattice& l) { return l.contains(z); });
        if (!covered && !report.uncovered) report.uncovered = z;
        return true;
    });
    if (report.uncovered) {
        report.reason = "the union of the members misses " + to_string(*report.uncovered);
        return report;
    }
    // Index-2 sublattices contain 2Z^d, so membership depends only on the parity class.
    std::vector<long> plo(d, 0), phi(d, 1);
    for_each_index(plo, phi, [&](const std::vector<long>& idx) {
        if (std::all_of(idx.begin(), idx.end(), [](long v) { return v == 0; })) return true;
        Vec p(d);
        for (std::size_t i = 0; i < d; ++i) p[i] = Rational(idx[i]);
        for (std::size_t m = 0; m < members.size(); ++m)
            if (members[m].contains(p)) {
                report.coset_witnesses.emplace_back(p, m);
                break;
            }
        return true;
    });
    report.applicable = true;
    report.certified = report.coset_witnesses.size() == static_cast<std::size_t>(ipow(2, d) - 1);
    if (report.certified) {
        report.reason = "every member has index 2 and the members cover Z^d";
        report.verdict =
            "no common tile: a tile meets almost every coset x + Z^d in exactly two points z, w, and z - w lies in "
            "some member, putting z and w in one coset of that member";
    }
    return report;
}

ObstructionReport three_lattice_obstruction() { return three_lattice_obstruction(three_lattice_family(), 10); }

BuildResult build_common_tile(const std::vector<Lattice>& members, const BuildOptions& options)
{
    auto obstruction = three_lattice_obstruction(members, 10);
    if (obstruction.certified) {
        BuildResult result;
        result.refused = true;
        result.diagnostic = obstruction.verdict;
        return result;
    }
    std::vector<RealLattice> real;
    for (const auto& l : members) real.push_back(RealLattice::from_exact(l));
    return build_common_tile(LatticeFamily(std::move(real)), options);
}

GaborReport gabor_frame_check(const Lattice& k, const Lattice& l, const BoxUnionTile& e,
                              const std::vector<TestFunction>& tests, const Vec& lo, const Vec& hi, long resolution)
{
    GaborReport report;
    const std::size_t d = k.dim();
    if (l.dim() != d || e.dim() != d) throw DomainError("dimension mismatch");
    if (resolution <= 0) throw DomainError("resolution must be positive");
    report.density_product = 1 / abs_of(lattice_determinant(k) * lattice_determinant(l));
    if (report.density_product != 1) throw PreconditionError("dens K * dens L must equal 1");
    if (!e.is_indicator()) throw PreconditionError("the window function must be an indicator");
    Lattice l_dual = dual_lattice(l);
    auto tk = verify_tiling_exact(e, TranslationSet{k});
    auto tl = verify_tiling_exact(e, TranslationSet{l_dual});
    if (!tk.passed || tk.level != 1 || !tl.passed || tl.level != 1)
        throw PreconditionError("E must tile at level 1 with both K and the dual of L");

    const Rational res(resolution);
    auto on_grid = [&](const Rational& q) { return is_integer(q * res); };
    for (std::size_t i = 0; i < d; ++i) {
        Vec unit = zero_vec(d);
        unit[i] = res;
        if (!l.contains(unit)) throw PreconditionError("resolution Z^d must lie in L");
        for (std::size_t j = 0; j < d; ++j)
            if (!on_grid(l_dual.basis()(i, j)) || !on_grid(k.basis()(i, j)))
                throw PreconditionError("K and the dual of L must lie in (1/resolution) Z^d");
    }
    for (const auto& box : e.boxes())
        for (std::size_t i = 0; i < d; ++i)
            if (!on_grid(box.corner[i]) || !on_grid(box.widths[i]))
                throw PreconditionError("the boxes of E must lie on the sample grid");

    Vec half(d, res / 2);
    std::vector<std::vector<double>> freqs;
    for (const auto& p : enumerate_box(l, scale(half, Rational(-1)), half)) {
        bool inside = true;
        for (std::size_t i = 0; i < d; ++i)
            if (p[i] == half[i]) inside = false;
        if (inside) freqs.push_back(to_doubles(p));
    }

    // Cell centres of E relative to its translate.
    std::vector<std::vector<double>> samples;
    for (const auto& box : e.boxes()) {
        std::vector<long> blo(d, 0), bhi(d);
        for (std::size_t i = 0; i < d; ++i) bhi[i] = floor_of(box.widths[i] * res).get_si() - 1;
        for_each_index(blo, bhi, [&](const std::vector<long>& idx) {
            std::vector<double> x(d);
            for (std::size_t i = 0; i < d; ++i)
                x[i] = to_double(box.corner[i]) + (static_cast<double>(idx[i]) + 0.5) / static_cast<double>(resolution);
            samples.push_back(x);
            return true;
        });
    }
    const auto kappas = enumerate_box(k, sub(lo, e.upper_bound()), sub(hi, e.lower_bound()));
    const double cell = std::pow(1.0 / static_cast<double>(resolution), static_cast<double>(d));
    const double g_scale = 1.0 / std::sqrt(to_double(e.measure()));
    const double quarter = static_cast<double>(resolution) / 4.0;

    report.residuals.resize(tests.size());
    parallel_for_chunks(tests.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            GaborResidual r;
            std::vector<double> values(samples.size());
            std::vector<std::vector<double>> points(samples.size(), std::vector<double>(d));
            for (const auto& kappa_exact : kappas) {
                auto kappa = to_doubles(kappa_exact);
                bool any = false;
                for (std::size_t m = 0; m < samples.size(); ++m) {
                    for (std::size_t i = 0; i < d; ++i) points[m][i] = samples[m][i] + kappa[i];
                    values[m] = tests[t](points[m]);
                    r.norm_squared += values[m] * values[m] * cell;
                    any = any || values[m] != 0.0;
                }
                if (!any) continue;
                for (const auto& lambda : freqs) {
                    std::complex<double> c = 0.0;
                    for (std::size_t m = 0; m < samples.size(); ++m) {
                        double phase = 0.0;
                        for (std::size_t i = 0; i < d; ++i) phase += lambda[i] * points[m][i];
                        c += values[m] * std::polar(1.0, -2.0 * std::numbers::pi * phase);
                    }
                    c *= g_scale * cell;
                    double energy = std::norm(c);
                    r.frame_sum += energy;
                    double sup = 0.0;
                    for (double v : lambda) sup = std::max(sup, std::abs(v));
                    if (sup >= quarter) r.tail += energy;
                }
            }
            r.residual = std::abs(r.frame_sum - r.norm_squared);
            report.residuals[t] = r;
        }
    });
    for (const auto& r : report.residuals) report.max_residual = std::max(report.max_residual, r.residual);
    return report;
}

} // namespace tilinglab
