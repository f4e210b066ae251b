#pragma once

#include "tilinglab/core/lattice.hpp"

#include <map>
#include <variant>
#include <vector>

namespace tilinglab {

/// Finite union of translated lattices, counted with multiplicity.
struct LatticeUnion {
    std::vector<Lattice> members;
};

/// alpha Z + beta in dimension one.
struct ArithmeticProgression {
    Rational alpha;
    Rational beta;
};

struct ApUnion {
    std::vector<ArithmeticProgression> progressions;
};

/// Columns of the planar integer lattice: {(m, n + shift(m)) : m, n in Z}. Missing columns
/// have shift 0.
struct ShiftedColumns {
    std::map<long, Rational> shifts;

    Rational shift(long column) const;
};

using TranslationSet = std::variant<Lattice, LatticeUnion, ApUnion, PointPatch, ShiftedColumns>;

std::size_t dimension_of(const TranslationSet& t);
bool is_periodic(const TranslationSet& t);

/// All translations (with multiplicity) in the closed box [lo, hi], lexicographically ordered.
/// A patch contributes only its points that fall inside its own window.
std::vector<Vec> translations_in_box(const TranslationSet& t, const Vec& lo, const Vec& hi,
                                     std::size_t cap = kDefaultEnumerationCap);

/// Asymptotic density. Patches have no density and raise DomainError.
Rational density_of(const TranslationSet& t);

/// A lattice P with T + P = T for periodic sets; DomainError otherwise.
Lattice period_lattice(const TranslationSet& t);

/// ap_union as lattices of dimension one.
LatticeUnion as_lattice_union(const ApUnion& ap);

} // namespace tilinglab
