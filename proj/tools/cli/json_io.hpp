#pragma once

#include "tilinglab/core/lattice.hpp"
#include "tilinglab/fourier/box_tile.hpp"
#include "tilinglab/multilattice/multilattice.hpp"
#include "tilinglab/tiling/translation_set.hpp"
#include "tilinglab/tiling/verify.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace tilinglab::cli {

using Json = nlohmann::ordered_json;

/// Malformed job: unknown keys, missing required fields, wrong types. Exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Typed view of a resolved parameter object; errors name the offending key.
class Params {
public:
    explicit Params(const Json& object, std::string path = "params");

    const Json& raw(const std::string& key) const;
    bool has(const std::string& key) const { return object_.contains(key); }
    /// ValidationError naming the first key outside the allowed set.
    void allow_only(const std::vector<std::string>& keys) const;
    bool is_null(const std::string& key) const;
    Rational rational(const std::string& key) const;
    Vec vec(const std::string& key) const;
    Matrix matrix(const std::string& key) const;
    long integer(const std::string& key) const;
    double real(const std::string& key) const;
    bool boolean(const std::string& key) const;
    std::string string(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::string path(const std::string& key) const { return path_ + "." + key; }

private:
    const Json& object_;
    std::string path_;
};

Rational parse_rational_json(const Json& j, const std::string& path);
Vec parse_vec(const Json& j, const std::string& path);
/// Row-major array of rational rows.
Matrix parse_matrix(const Json& j, const std::string& path);
/// {basis, offset} with optional kind "lattice"; kinds "integer" {dim} and "diagonal" {diagonal}.
Lattice parse_lattice(const Json& j, const std::string& path);
bool is_exact_lattice(const Json& j);
/// Exact lattices plus {kind: "rotated_integer", angle} and {kind: "real", basis}.
RealLattice parse_real_lattice(const Json& j, const std::string& path);
/// Array of {corner, widths, weight}, or {kind: "unit_cube", dim}, {kind: "intervals", pieces},
/// {kind: "box_union", boxes}.
BoxUnionTile parse_box_union(const Json& j, const std::string& path);
/// Lattice kinds above plus lattice_union, ap_union, point_patch, lattice_patch, shifted_columns.
TranslationSet parse_translation_set(const Json& j, const std::string& path);

std::string rat(const Rational& q);
Json vec_json(const Vec& v);
Json reals_json(const std::vector<double>& v);
Json matrix_json(const Matrix& m);
Json lattice_json(const Lattice& l);
Json tiling_report_json(const TilingReport& r);

/// FNV-1a over the bytes of text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

} // namespace tilinglab::cli
