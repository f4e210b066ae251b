#pragma once

#include "tilinglab/core/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tilinglab {

/// Positive definite form Q(x) = <Bx, x> with a symmetric rational matrix B.
class QuadraticForm {
public:
    /// DomainError unless B is square, symmetric and positive definite (leading principal minors).
    explicit QuadraticForm(Matrix b);
    static QuadraticForm diagonal(const std::vector<long>& coefficients);

    std::size_t dim() const noexcept { return b_.rows(); }
    const Matrix& matrix() const noexcept { return b_; }
    Rational determinant() const { return b_.determinant(); }
    /// Integral diagonal and off-diagonal entries in (1/2)Z.
    bool is_integer_valued() const;
    std::vector<double> eigenvalues() const;

private:
    Matrix b_;
};

/// 2x^2 + 11y^2 + 6z^2.
QuadraticForm steinhaus_form_3d();
/// 1 on the diagonal and 1/2 elsewhere, d = 4.
QuadraticForm steinhaus_form_4d();

bool is_positive_definite(const Matrix& b);

/// False exactly when n = 4^v (8k + 7).
bool is_sum_of_three_squares(std::uint64_t n);

/// Lexicographically least nondecreasing tuple of d nonnegative integers whose squares sum to n.
std::optional<std::vector<std::uint64_t>> sum_of_squares_witness(std::uint64_t n, std::size_t d);

/// Flags for 0..max: whether each value is a sum of d squares, by repeated addition of squares.
std::vector<char> sums_of_squares_table(std::uint64_t max, std::size_t d);

Rational form_value(const QuadraticForm& q, const std::vector<long>& x);

struct RepresentabilityReport {
    long range = 0;
    std::size_t squares = 0;
    bool all_representable = true;
    std::optional<std::vector<long>> counterexample;
    std::optional<Rational> counterexample_value;
    std::uint64_t checked_count = 0;
    /// Values where the three-squares characterization and the table disagree (always 0).
    std::uint64_t characterization_mismatches = 0;
};

/// Exhaustive check over ||x||_inf <= range. The counterexample is the lexicographically first
/// failing x. PreconditionError when the form is not integer valued.
RepresentabilityReport verify_representability(const QuadraticForm& q, std::size_t squares, long range);

bool is_integer_square(const Rational& value);
bool det_is_integer_square(const QuadraticForm& q);

struct SteinhausVerdict {
    RepresentabilityReport representability;
    Rational determinant;
    bool determinant_square = false;
    bool fires = false;
    std::string message;
};

/// Representable by dim squares on the range and a determinant that is not an integer square.
SteinhausVerdict steinhaus_lemma_check(const QuadraticForm& q, long range);

struct DiagonalForm {
    std::vector<long> coefficients;
    Rational determinant;
    bool determinant_square = false;
    bool operator==(const DiagonalForm&) const = default;
};

/// Diagonal forms 1 <= a <= b <= c <= bound on which the lemma check fires, in lexicographic order.
std::vector<DiagonalForm> search_forms_3d(long bound, long range);

/// Symmetric 3D forms with diagonal in [1, bound] and off-diagonal entries in (1/2)Z with
/// |2 b_ij| <= bound, on which the lemma check fires.
std::vector<QuadraticForm> search_symmetric_forms_3d(long bound, long range);

/// Diagonal forms 1 <= a <= b <= bound representable by two squares on the range, with their
/// determinant squareness.
std::vector<DiagonalForm> search_forms_2d(long bound, long range);

struct Radius {
    std::uint64_t squared = 0;
    double value = 0.0;
};

/// Distinct radii sqrt(m_1^2 + ... + m_dim^2) <= r_max with nonnegative integers not all zero.
std::vector<Radius> steinhaus_radii(std::size_t dim, double r_max);

} // namespace tilinglab
