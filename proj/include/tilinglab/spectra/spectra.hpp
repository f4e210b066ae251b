#pragma once

#include "tilinglab/fourier/box_tile.hpp"
#include "tilinglab/tiling/translation_set.hpp"
#include "tilinglab/tiling/verify.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tilinglab {

struct OrthogonalityReport {
    bool orthogonal = true;
    std::optional<std::pair<Vec, Vec>> failing_pair;
    std::uint64_t pairs_checked = 0;
};

/// Exponentials of a patch are orthogonal on the unit cube iff every difference of two distinct
/// points has a coordinate that is a nonzero integer. The failing pair is the first in index order.
OrthogonalityReport cube_orthogonality(const std::vector<Vec>& patch);
/// Same test on the translations of t in the closed box [lo, hi].
OrthogonalityReport cube_orthogonality(const TranslationSet& t, const Vec& lo, const Vec& hi);

/// Patch translated so that its lexicographically first point is 0.
std::vector<Vec> normalized_patch(const std::vector<Vec>& patch);

/// psi'(z) for z > 0: recurrence up to z >= 10, then the asymptotic series.
double trigamma(double z);

struct ProgressionSum {
    /// Truncated sum plus the closed-form tail.
    double sum = 0.0;
    /// Terms with |y - step n| <= tail only.
    double truncated = 0.0;
};

/// sum over n in Z of sinc^2(y - step n) for a positive rational step. Within each residue class
/// of n modulo the denominator of the step, sin^2 is constant and the omitted terms sum to
/// trigamma values.
ProgressionSum sinc2_progression_sum(double y, const Rational& step, double tail);

struct CompletenessReport {
    /// max over samples of |sum_lambda prod_j sinc^2(x_j - lambda_j) - 1|, tail included.
    double residual = 0.0;
    /// Same with the sum truncated to ||x - lambda||_inf <= tail.
    double truncated_residual = 0.0;
    /// Largest |tail-included - truncated| over the samples.
    double tail_estimate = 0.0;
    /// Bound on the omitted terms for finite patches; zero when the tail is summed exactly.
    double error_bar = 0.0;
    bool exact_tail = false;
    std::size_t samples = 0;
    std::vector<double> worst_sample;
    bool complete = false;
    /// Residual within the error bar but the bar exceeds the tolerance.
    bool inconclusive = false;
};

/// Halton points of [0,1)^dim as doubles.
std::vector<std::vector<double>> unit_cube_samples(std::size_t dim, std::size_t count, std::uint64_t seed = 0);

/// Lattices and lattice unions of dimension 1 or 2 (higher dimensions need a diagonal Hermite
/// form), ap unions and shifted columns are summed with exact tails; point patches are summed
/// directly with an error bar for the points outside their window.
CompletenessReport cube_completeness_residual(const TranslationSet& t, const std::vector<std::vector<double>>& samples,
                                              double tail, double tol = 1e-8);

struct CubeSpectrumOptions {
    long orthogonality_radius = 4;
    double tail = 1000.0;
    std::size_t completeness_samples = 16;
    std::size_t tiling_samples = 4096;
    long tiling_window = 3;
    double tol = 1e-8;
    std::uint64_t seed = 0;
};

struct CubeSpectrumReport {
    OrthogonalityReport orthogonality;
    CompletenessReport completeness;
    bool spectrum = false;
    TilingReport tiling;
    bool agree = false;
};

/// Spectrum side: orthogonality on the window plus completeness. Tiling side: the exact oracle
/// for periodic sets, sampled coverage on [-w, w]^d otherwise.
CubeSpectrumReport cube_spectrum_iff_tiling(const TranslationSet& t, std::size_t dim,
                                            const CubeSpectrumOptions& options = {});

struct LatticeSpectrumOptions {
    Rational orthogonality_radius = 8;
    double tail = 100.0;
    std::size_t samples = 12;
    double tol = 1e-9;
    double completeness_tol = 1e-6;
};

struct LatticeSpectrumReport {
    TilingReport tiling;
    double orthogonality_max = 0.0;
    bool orthogonal = false;
    /// max |sum_{xi in L*} |ft(x - xi)|^2 / |Omega|^2 - 1| over the samples.
    double completeness_residual = 0.0;
    /// Bound on the omitted terms |x - xi|_inf > tail.
    double tail_bound = 0.0;
    bool complete = false;
    bool spectrum = false;
    bool agree = false;
};

/// Tiling of the domain by L against the dual lattice as a spectrum of the domain.
LatticeSpectrumReport lattice_spectrum_check(const BoxUnionTile& domain, const Lattice& l,
                                             const LatticeSpectrumOptions& options = {});

/// Real function with known integral and a bound on sum_{lambda in T, |x - lambda|_inf > radius}
/// g(x - lambda) for x in the window.
struct GridFunction {
    std::function<double(const std::vector<double>&)> value;
    double integral = 0.0;
    double radius = 0.0;
    double tail_bound = 0.0;
};

struct TransferReport {
    bool applicable = false;
    std::string reason;
    bool f_packing = false;
    bool f_tiling = false;
    bool g_packing = false;
    bool g_tiling = false;
    bool agree = false;
    double g_min = 0.0;
    double g_max = 0.0;
    TilingReport f_report;
};

/// Compares tiling verdicts of f + T (exact oracle) and g + T (sampled sums on [lo, hi]) once both
/// are packings at level 1.
TransferReport packing_transfer_harness(const BoxUnionTile& f, const GridFunction& g, const TranslationSet& t,
                                        const Vec& lo, const Vec& hi, std::size_t samples, double tol = 1e-9);

struct MotionCoverage {
    std::size_t samples = 0;
    std::size_t uncovered = 0;
    std::size_t overcovered = 0;
    int max_coverage = 0;
    bool packing = false;
    bool tiling = false;
    double uncovered_fraction = 0.0;
    std::optional<Vec> uncovered_witness;
};

struct RigidMotionReport {
    MotionCoverage square;
    MotionCoverage parallelogram;
    /// Translations by Z^2 only.
    MotionCoverage square_translations;
    MotionCoverage parallelogram_translations;
};

/// Square (-1/2,1/2)^2 and parallelogram with vertices (-1/2,-1/2), (1/2,0), (1/2,1), (-1/2,1/2)
/// under Z^2, where (0,k) with k < 0 first reflects in the x-axis. Samples are the cell centres
/// of the grid of side 2^-exponent on [-half_width, half_width]^2.
RigidMotionReport rigid_motion_counterexample(unsigned exponent = 8, const Rational& half_width = Rational(7, 2));

struct DiskCertificate {
    double r0 = 0.0;
    double j11 = 0.0;
    double thue_bound = 0.0;
    double threshold = 0.0;
    bool verdict = false;
};

/// Unit-area disk: r0 from the first zero of J1 against 2 / 12^{1/4}.
DiskCertificate disk_certificate();
DiskCertificate disk_certificate(double bracket_lo, double bracket_hi);

} // namespace tilinglab
