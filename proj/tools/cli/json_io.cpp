#include "cli/json_io.hpp"

#include "tilinglab/core/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>

namespace tilinglab::cli {

namespace {

const Json& require_object(const Json& j, const std::string& path)
{
    if (!j.is_object()) throw ValidationError(path + ": expected an object");
    return j;
}

const Json& require_array(const Json& j, const std::string& path)
{
    if (!j.is_array()) throw ValidationError(path + ": expected an array");
    return j;
}

const Json& member(const Json& j, const std::string& key, const std::string& path)
{
    require_object(j, path);
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(path + ": missing key '" + key + "'");
    return *it;
}

void allow_keys(const Json& j, const std::set<std::string>& keys, const std::string& path)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!keys.contains(it.key())) throw ValidationError(path + ": unknown key '" + it.key() + "'");
}

std::string kind_of(const Json& j, const std::string& fallback)
{
    auto it = j.find("kind");
    if (it == j.end()) return fallback;
    if (!it->is_string()) throw ValidationError("kind must be a string");
    return it->get<std::string>();
}

long json_long(const Json& j, const std::string& path)
{
    if (!j.is_number_integer()) throw ValidationError(path + ": expected an integer");
    return j.get<long>();
}

double json_double(const Json& j, const std::string& path)
{
    if (!j.is_number()) throw ValidationError(path + ": expected a number");
    return j.get<double>();
}

WeightedBox parse_box(const Json& j, const std::string& path)
{
    require_object(j, path);
    allow_keys(j, {"corner", "widths", "weight"}, path);
    WeightedBox b;
    b.corner = parse_vec(member(j, "corner", path), path + ".corner");
    b.widths = parse_vec(member(j, "widths", path), path + ".widths");
    if (j.contains("weight")) b.weight = parse_rational_json(j["weight"], path + ".weight");
    return b;
}

} // namespace

Params::Params(const Json& object, std::string path) : object_(require_object(object, path)), path_(std::move(path)) {}

const Json& Params::raw(const std::string& key) const { return member(object_, key, path_); }

void Params::allow_only(const std::vector<std::string>& keys) const
{
    allow_keys(object_, std::set<std::string>(keys.begin(), keys.end()), path_);
}

bool Params::is_null(const std::string& key) const { return raw(key).is_null(); }

Rational Params::rational(const std::string& key) const { return parse_rational_json(raw(key), path(key)); }

Vec Params::vec(const std::string& key) const { return parse_vec(raw(key), path(key)); }

Matrix Params::matrix(const std::string& key) const { return parse_matrix(raw(key), path(key)); }

long Params::integer(const std::string& key) const { return json_long(raw(key), path(key)); }

double Params::real(const std::string& key) const { return json_double(raw(key), path(key)); }

bool Params::boolean(const std::string& key) const
{
    const Json& j = raw(key);
    if (!j.is_boolean()) throw ValidationError(path(key) + ": expected a boolean");
    return j.get<bool>();
}

std::string Params::string(const std::string& key) const
{
    const Json& j = raw(key);
    if (!j.is_string()) throw ValidationError(path(key) + ": expected a string");
    return j.get<std::string>();
}

std::vector<double> Params::reals(const std::string& key) const
{
    const Json& j = require_array(raw(key), path(key));
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_double(j[i], path(key) + "[" + std::to_string(i) + "]"));
    return out;
}

Rational parse_rational_json(const Json& j, const std::string& path)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ValidationError(path + ": expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

Vec parse_vec(const Json& j, const std::string& path)
{
    require_array(j, path);
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_rational_json(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

Matrix parse_matrix(const Json& j, const std::string& path)
{
    require_array(j, path);
    if (j.empty()) throw ValidationError(path + ": empty matrix");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(parse_vec(j[i], path + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size()) throw ValidationError(path + ": ragged rows");
    }
    return Matrix::from_rows(rows);
}

bool is_exact_lattice(const Json& j)
{
    if (!j.is_object()) return false;
    const std::string kind = kind_of(j, "lattice");
    return kind == "lattice" || kind == "integer" || kind == "diagonal";
}

Lattice parse_lattice(const Json& j, const std::string& path)
{
    require_object(j, path);
    const std::string kind = kind_of(j, "lattice");
    if (kind == "integer") {
        allow_keys(j, {"kind", "dim"}, path);
        const long d = json_long(member(j, "dim", path), path + ".dim");
        if (d < 1) throw ValidationError(path + ".dim: must be positive");
        return Lattice::integer(static_cast<std::size_t>(d));
    }
    if (kind == "diagonal") {
        allow_keys(j, {"kind", "diagonal", "offset"}, path);
        Lattice l = Lattice::diagonal(parse_vec(member(j, "diagonal", path), path + ".diagonal"));
        if (j.contains("offset")) l = l.translated(parse_vec(j["offset"], path + ".offset"));
        return l;
    }
    if (kind != "lattice") throw ValidationError(path + ": unknown lattice kind '" + kind + "'");
    allow_keys(j, {"kind", "basis", "offset"}, path);
    Matrix basis = parse_matrix(member(j, "basis", path), path + ".basis");
    Vec offset;
    if (j.contains("offset")) offset = parse_vec(j["offset"], path + ".offset");
    return Lattice(std::move(basis), std::move(offset));
}

RealLattice parse_real_lattice(const Json& j, const std::string& path)
{
    require_object(j, path);
    if (is_exact_lattice(j)) return RealLattice::from_exact(parse_lattice(j, path));
    const std::string kind = kind_of(j, "");
    if (kind == "rotated_integer") {
        allow_keys(j, {"kind", "angle"}, path);
        return RealLattice::rotated_integer(json_double(member(j, "angle", path), path + ".angle"));
    }
    if (kind == "real") {
        allow_keys(j, {"kind", "basis"}, path);
        const Json& rows = require_array(member(j, "basis", path), path + ".basis");
        const auto n = static_cast<Eigen::Index>(rows.size());
        RealMatrix m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const Json& row = require_array(rows[r], path + ".basis");
            if (static_cast<Eigen::Index>(row.size()) != n) throw ValidationError(path + ".basis: must be square");
            for (Eigen::Index c = 0; c < n; ++c) m(r, c) = json_double(row[c], path + ".basis");
        }
        return RealLattice(m);
    }
    throw ValidationError(path + ": unknown lattice kind '" + kind + "'");
}

BoxUnionTile parse_box_union(const Json& j, const std::string& path)
{
    if (j.is_array()) {
        std::vector<WeightedBox> boxes;
        for (std::size_t i = 0; i < j.size(); ++i) boxes.push_back(parse_box(j[i], path + "[" + std::to_string(i) + "]"));
        return BoxUnionTile(std::move(boxes));
    }
    require_object(j, path);
    const std::string kind = kind_of(j, "box_union");
    if (kind == "unit_cube") {
        allow_keys(j, {"kind", "dim", "centered"}, path);
        const long d = json_long(member(j, "dim", path), path + ".dim");
        if (d < 1) throw ValidationError(path + ".dim: must be positive");
        const bool centered = j.contains("centered") && j["centered"].get<bool>();
        return BoxUnionTile::unit_cube(static_cast<std::size_t>(d), centered);
    }
    if (kind == "intervals") {
        allow_keys(j, {"kind", "pieces"}, path);
        const Json& pieces = require_array(member(j, "pieces", path), path + ".pieces");
        std::vector<std::pair<Rational, Rational>> out;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const Vec ab = parse_vec(pieces[i], path + ".pieces[" + std::to_string(i) + "]");
            if (ab.size() != 2) throw ValidationError(path + ".pieces: each piece is [a, b]");
            out.emplace_back(ab[0], ab[1]);
        }
        return BoxUnionTile::intervals(out);
    }
    if (kind == "box_union") {
        allow_keys(j, {"kind", "boxes"}, path);
        return parse_box_union(require_array(member(j, "boxes", path), path + ".boxes"), path + ".boxes");
    }
    throw ValidationError(path + ": unknown tile kind '" + kind + "'");
}

TranslationSet parse_translation_set(const Json& j, const std::string& path)
{
    require_object(j, path);
    if (is_exact_lattice(j)) return parse_lattice(j, path);
    const std::string kind = kind_of(j, "");
    if (kind == "lattice_union") {
        allow_keys(j, {"kind", "members"}, path);
        const Json& members = require_array(member(j, "members", path), path + ".members");
        LatticeUnion u;
        for (std::size_t i = 0; i < members.size(); ++i)
            u.members.push_back(parse_lattice(members[i], path + ".members[" + std::to_string(i) + "]"));
        if (u.members.empty()) throw ValidationError(path + ".members: empty");
        return u;
    }
    if (kind == "ap_union") {
        allow_keys(j, {"kind", "progressions"}, path);
        const Json& list = require_array(member(j, "progressions", path), path + ".progressions");
        ApUnion ap;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = path + ".progressions[" + std::to_string(i) + "]";
            allow_keys(require_object(list[i], p), {"alpha", "beta"}, p);
            ap.progressions.push_back(
                {parse_rational_json(member(list[i], "alpha", p), p + ".alpha"), parse_rational_json(member(list[i], "beta", p), p + ".beta")});
        }
        if (ap.progressions.empty()) throw ValidationError(path + ".progressions: empty");
        return ap;
    }
    if (kind == "point_patch") {
        allow_keys(j, {"kind", "points", "lo", "hi"}, path);
        PointPatch patch;
        patch.lo = parse_vec(member(j, "lo", path), path + ".lo");
        patch.hi = parse_vec(member(j, "hi", path), path + ".hi");
        patch.dim = patch.lo.size();
        const Json& pts = require_array(member(j, "points", path), path + ".points");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            patch.points.push_back(parse_vec(pts[i], path + ".points[" + std::to_string(i) + "]"));
            if (patch.points.back().size() != patch.dim) throw ValidationError(path + ".points: dimension mismatch");
        }
        if (patch.hi.size() != patch.dim) throw ValidationError(path + ": lo and hi differ in dimension");
        return patch;
    }
    if (kind == "lattice_patch") {
        allow_keys(j, {"kind", "lattice", "center", "radius", "remove"}, path);
        const Lattice l = parse_lattice(member(j, "lattice", path), path + ".lattice");
        const Vec center = j.contains("center") ? parse_vec(j["center"], path + ".center") : zero_vec(l.dim());
        PointPatch patch = enumerate_points(l, center, parse_rational_json(member(j, "radius", path), path + ".radius"));
        if (j.contains("remove")) {
            const Json& rm = require_array(j["remove"], path + ".remove");
            for (std::size_t i = 0; i < rm.size(); ++i) {
                const Vec p = parse_vec(rm[i], path + ".remove[" + std::to_string(i) + "]");
                std::erase(patch.points, p);
            }
        }
        return patch;
    }
    if (kind == "shifted_columns") {
        allow_keys(j, {"kind", "shifts"}, path);
        const Json& shifts = require_object(member(j, "shifts", path), path + ".shifts");
        ShiftedColumns cols;
        for (auto it = shifts.begin(); it != shifts.end(); ++it) {
            long m = 0;
            try {
                std::size_t used = 0;
                m = std::stol(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ValidationError(path + ".shifts: column keys are integers");
            }
            cols.shifts[m] = parse_rational_json(it.value(), path + ".shifts." + it.key());
        }
        return cols;
    }
    throw ValidationError(path + ": unknown translation set kind '" + kind + "'");
}

std::string rat(const Rational& q) { return to_string(q); }

Json vec_json(const Vec& v)
{
    Json a = Json::array();
    for (const Rational& q : v) a.push_back(rat(q));
    return a;
}

Json reals_json(const std::vector<double>& v)
{
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json matrix_json(const Matrix& m)
{
    Json a = Json::array();
    for (const Vec& row : m.to_rows()) a.push_back(vec_json(row));
    return a;
}

Json lattice_json(const Lattice& l)
{
    Json j;
    j["basis"] = matrix_json(l.basis());
    j["offset"] = vec_json(l.offset().empty() ? zero_vec(l.dim()) : l.offset());
    return j;
}

Json tiling_report_json(const TilingReport& r)
{
    Json j;
    j["passed"] = r.passed;
    j["method"] = r.method;
    j["exact"] = r.exact;
    j["level"] = rat(r.level);
    j["max_deviation"] = r.max_deviation;
    j["tol"] = r.tol;
    j["witness"] = r.witness ? vec_json(*r.witness) : Json(nullptr);
    j["witness_value"] = r.witness_value ? Json(rat(*r.witness_value)) : Json(nullptr);
    j["samples_or_cells"] = r.samples_or_cells;
    j["min_coverage"] = rat(r.min_coverage);
    j["max_coverage"] = rat(r.max_coverage);
    j["deviating_fraction"] = r.deviating_fraction;
    return j;
}

std::string fnv1a_hex(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace tilinglab::cli
