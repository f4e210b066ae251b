#pragma once

#include "tilinglab/core/lattice.hpp"
#include "tilinglab/fourier/box_tile.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tilinglab {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Lattice A Z^d with a floating-point basis (columns of A).
class RealLattice {
public:
    explicit RealLattice(RealMatrix basis);
    static RealLattice from_exact(const Lattice& lattice);
    static RealLattice rotated_integer(double angle);

    std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }
    const RealMatrix& basis() const { return basis_; }
    const RealMatrix& inverse_basis() const { return inverse_; }
    double volume() const;
    RealLattice dual() const;

    RealVector point(const std::vector<long>& coeffs) const;
    /// Coefficients of the lattice point closest to x among the 3^d neighbours of the rounded
    /// coordinates.
    std::vector<long> nearest_coefficients(const RealVector& x) const;
    RealVector nearest_point(const RealVector& x) const;

private:
    RealMatrix basis_;
    RealMatrix inverse_;
};

struct LatticeFamily {
    std::vector<RealLattice> members;
    double volume = 0.0;

    /// Requires at least one member, a common dimension and |det| equal within 1e-12.
    explicit LatticeFamily(std::vector<RealLattice> members);
    std::size_t dim() const { return members.front().dim(); }
    std::size_t size() const { return members.size(); }
};

struct DirectSumReport {
    bool direct = true;
    /// Integer coefficient vector per member of a relation among the dual lattices.
    std::optional<std::vector<std::vector<long>>> relation;
    double relation_norm = 0.0;
    double closest_approach = 0.0;
    std::uint64_t combinations = 0;
};

/// Searches dual coefficient vectors of sup-norm at most bound for a nontrivial relation
/// lambda_0 + ... + lambda_n with norm below tol. Members 1..n are enumerated and member 0 is
/// rounded. CapacityError when the enumeration exceeds cap.
DirectSumReport check_direct_sum(const LatticeFamily& family, long bound, double tol,
                                 std::uint64_t cap = 200'000'000);

struct AlignmentResult {
    std::vector<std::vector<long>> coefficients;
    std::vector<RealVector> lambdas;
    double misalignment = 0.0;
};

double misalignment_of(const std::vector<RealVector>& targets, const std::vector<RealVector>& lambdas);

/// Enumerates lambda_0 over coefficient vectors with sup-norm at most search_radius (skipping
/// points of norm below min_norm) and rounds x_j - x_0 + lambda_0 to the nearest point of each
/// other member. Returns the best combination if its misalignment is at most epsilon. The members
/// may have different volumes.
std::optional<AlignmentResult> property_a_align(const std::vector<RealLattice>& members,
                                                const std::vector<RealVector>& targets, double epsilon,
                                                long search_radius, double min_norm = 0.0);
std::optional<AlignmentResult> property_a_align(const LatticeFamily& family, const std::vector<RealVector>& targets,
                                                double epsilon, long search_radius, double min_norm = 0.0);

struct Rectangle {
    RealVector corner;
    RealVector widths;
    double volume() const;
    bool contains(const RealVector& x) const;
};

struct IterationLog {
    std::size_t k = 0;
    std::vector<double> leftover_measures;
    double epsilon = 0.0;
    std::size_t cubes_placed = 0;
    std::size_t alignment_failures = 0;
};

struct BuildOptions {
    std::size_t iterations = 6;
    std::size_t grid_exponent = 8;
    /// Schedules indexed by K starting at 1; defaults follow eps_K = max(2^{2-g}, 1/(4K)),
    /// radius_K = radius_per_iteration K and floor_K = floor_per_iteration K.
    std::function<double(std::size_t)> epsilon;
    long radius_per_iteration = 16;
    double floor_per_iteration = 1.0;
    std::size_t retry_budget = 2;
    long direct_sum_bound = 50;
    double direct_sum_tol = 1e-9;
};

/// Accepted rectangles and one ownership bitmap per member over the grid of side 2^-g in lattice
/// coordinates of the fundamental domain A_j [0,1)^d. A cell belongs to a rectangle when its
/// centre, moved by the member lattice, lies in the rectangle.
struct RegionBuilder {
    std::size_t dim = 0;
    std::size_t grid_exponent = 0;
    std::vector<Rectangle> accepted;
    std::vector<std::vector<std::int32_t>> owners;
    std::vector<IterationLog> log;
    std::size_t packing_violations = 0;

    std::size_t cells_per_domain() const;
    std::size_t free_cells(std::size_t member) const;
    double coverage(std::size_t member) const;
};

struct BuildResult {
    bool refused = false;
    std::string diagnostic;
    RegionBuilder builder;
    std::vector<double> coverage;
    bool monotone_leftovers = true;
    /// Value of the constructed indicator at x.
    bool contains(const RealVector& x) const;
};

/// Cells of the member grid whose centres lie in rect modulo the lattice, as flat indices.
std::vector<std::size_t> cells_in_projection(const RealLattice& lattice, std::size_t grid_exponent,
                                             const Rectangle& rect);

BuildResult build_common_tile(const LatticeFamily& family, const BuildOptions& options = {});

struct ObstructionReport {
    bool applicable = false;
    bool certified = false;
    std::string reason;
    /// Window points checked for the cover property and any point missed by every member.
    std::size_t points_checked = 0;
    std::optional<Vec> uncovered;
    std::vector<Integer> indices;
    /// For each nonzero class of Z^d / 2Z^d, a member containing its representative.
    std::vector<std::pair<Vec, std::size_t>> coset_witnesses;
    std::string verdict;
};

/// Index-2 union-cover criterion on the window [-radius, radius]^d.
ObstructionReport three_lattice_obstruction(const std::vector<Lattice>& members, long radius = 10);
/// The family (2Z) x Z, Z x (2Z), {(k,l): k = l mod 2}.
std::vector<Lattice> three_lattice_family();
ObstructionReport three_lattice_obstruction();

/// Exact family refused by the obstruction or by the direct-sum check.
BuildResult build_common_tile(const std::vector<Lattice>& members, const BuildOptions& options = {});

struct GaborResidual {
    double norm_squared = 0.0;
    double frame_sum = 0.0;
    double residual = 0.0;
    double tail = 0.0;
};

struct GaborReport {
    Rational density_product;
    std::vector<GaborResidual> residuals;
    double max_residual = 0.0;
};

using TestFunction = std::function<double(const std::vector<double>&)>;

/// Discretized frame sums for g = |E|^{-1/2} chi_E with midpoint samples at spacing 1/resolution.
/// The frequencies are the points of L in [-resolution/2, resolution/2)^d, a complete set of
/// characters when resolution Z^d lies in L and L* lies in (1/resolution) Z^d. Translations run
/// over K within the window [lo, hi].
GaborReport gabor_frame_check(const Lattice& k, const Lattice& l, const BoxUnionTile& e,
                              const std::vector<TestFunction>& tests, const Vec& lo, const Vec& hi, long resolution);

} // namespace tilinglab
