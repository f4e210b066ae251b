#include "cli/commands.hpp"

#include "tilinglab/constructions/cubes.hpp"
#include "tilinglab/constructions/soft_tile.hpp"
#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/integer_predicates.hpp"
#include "tilinglab/fourier/edge_measure.hpp"
#include "tilinglab/fourier/kernels.hpp"
#include "tilinglab/multilattice/multilattice.hpp"
#include "tilinglab/spectra/spectra.hpp"
#include "tilinglab/steinhaus/forms.hpp"
#include "tilinglab/tiling/polygon.hpp"
#include "tilinglab/tiling/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace tilinglab::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string verdict_of(bool pass) { return pass ? "pass" : "fail"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

Json box_union_json(const BoxUnionTile& t)
{
    Json a = Json::array();
    for (const WeightedBox& b : t.boxes()) {
        Json j;
        j["corner"] = vec_json(b.corner);
        j["widths"] = vec_json(b.widths);
        j["weight"] = rat(b.weight);
        a.push_back(j);
    }
    return a;
}

Json int_vec_json(const std::vector<long>& v)
{
    Json a = Json::array();
    for (long x : v) a.push_back(x);
    return a;
}

Json fourier_json(const TilingReport& r)
{
    Json j;
    j["passed"] = r.passed;
    j["level"] = rat(r.level);
    j["max_deviation"] = r.max_deviation;
    j["tol"] = r.tol;
    j["dual_points"] = r.samples_or_cells;
    return j;
}

Vec window_lo(const Rational& w, std::size_t d) { return Vec(d, Rational(-w)); }
Vec window_hi(const Rational& w, std::size_t d) { return Vec(d, w); }

bool level_one(const TilingReport& r) { return r.passed && r.level == 1; }

std::vector<std::size_t> parse_cycle(const Json& j, const std::string& path)
{
    if (!j.is_array()) throw ValidationError(path + ": expected an array of indices");
    std::vector<std::size_t> out;
    for (const Json& x : j) {
        if (!x.is_number_integer() || x.get<long>() < 0) throw ValidationError(path + ": indices are nonnegative integers");
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

// ---------------------------------------------------------------- constructions

CommandOutcome run_notched(const Params& p)
{
    NotchedCubeSpec spec{p.vec("delta")};
    spec.validate();
    const Lattice lattice = p.is_null("cycle") ? notched_lattice(spec)
                                               : cyclic_variant(spec, parse_cycle(p.raw("cycle"), p.path("cycle")));
    const BoxUnionTile tile = notched_cube_tile(spec);
    const TilingReport fourier = verify_lattice_tiling_fourier(tile, lattice, p.rational("radius"), p.real("tol"));
    const TilingReport exact = verify_tiling_exact(tile, lattice);

    Rational product = 1;
    for (const Rational& d : spec.delta) product *= d;
    const Rational expected = 1 - product;
    const Rational det = abs_of(lattice_determinant(lattice));

    CommandOutcome out;
    out.result["lattice"] = lattice_json(lattice);
    out.result["determinant"] = rat(det);
    out.result["expected_determinant"] = rat(expected);
    out.result["measure"] = rat(tile.measure());
    out.result["tile"] = box_union_json(tile);
    out.result["fourier"] = fourier_json(fourier);
    out.result["exact"] = tiling_report_json(exact);
    out.result["level"] = rat(exact.level);
    const bool pass = fourier.passed && level_one(exact) && det == expected;
    out.verdict = verdict_of(pass);
    out.summary = {"det " + rat(det) + " (expected " + rat(expected) + ")",
                   "fourier criterion: " + yes_no(fourier.passed) + ", max |ft| " + fmt(fourier.max_deviation),
                   "exact oracle level " + rat(exact.level) + ", constant: " + yes_no(exact.passed)};
    return out;
}

CommandOutcome run_extended_cube(const Params& p)
{
    const long k = p.integer("k");
    if (k < 1) throw ValidationError(p.path("k") + ": must be positive");
    ExtendedCubeSpec spec{p.vec("gamma"), static_cast<std::size_t>(k)};
    const auto [tile, lattice] = extended_cube(spec);
    const TilingReport fourier = verify_lattice_tiling_fourier(tile, lattice, p.rational("radius"), p.real("tol"));
    const TilingReport exact = verify_tiling_exact(tile, lattice);

    CommandOutcome out;
    out.result["delta"] = vec_json(extended_delta(spec));
    out.result["lattice"] = lattice_json(lattice);
    out.result["measure"] = rat(tile.measure());
    out.result["tile"] = box_union_json(tile);
    out.result["fourier"] = fourier_json(fourier);
    out.result["exact"] = tiling_report_json(exact);
    out.verdict = verdict_of(fourier.passed && level_one(exact));
    out.summary = {"measure " + rat(tile.measure()), "fourier criterion: " + yes_no(fourier.passed),
                   "exact oracle level " + rat(exact.level) + ", constant: " + yes_no(exact.passed)};
    return out;
}

CommandOutcome run_cyclic_variants(const Params& p)
{
    NotchedCubeSpec spec{p.vec("delta")};
    spec.validate();
    const BoxUnionTile tile = notched_cube_tile(spec);
    const Rational radius = p.rational("radius");
    const double tol = p.real("tol");

    Json variants = Json::array();
    std::vector<Matrix> bases;
    bool all = true;
    for (const CyclicPermutation& sigma : all_cycles(spec.delta.size())) {
        const Lattice l = cyclic_variant(spec, sigma);
        const TilingReport fourier = verify_lattice_tiling_fourier(tile, l, radius, tol);
        const TilingReport exact = verify_tiling_exact(tile, l);
        all = all && fourier.passed && level_one(exact);
        Json v;
        v["cycle"] = Json(std::vector<std::size_t>(sigma.begin(), sigma.end()));
        v["lattice"] = lattice_json(l);
        v["fourier"] = fourier_json(fourier);
        v["exact_level"] = rat(exact.level);
        v["exact_passed"] = exact.passed;
        variants.push_back(v);
        bases.push_back(l.basis());
    }
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        bool fresh = true;
        for (std::size_t j = 0; j < i; ++j)
            if (bases[i] == bases[j]) fresh = false;
        if (fresh) ++distinct;
    }
    std::set<std::string> values;
    for (const Rational& d : spec.delta) values.insert(rat(d));
    const bool distinct_delta = values.size() == spec.delta.size();

    CommandOutcome out;
    out.result["count"] = variants.size();
    out.result["distinct_bases"] = distinct;
    out.result["distinct_delta"] = distinct_delta;
    out.result["variants"] = variants;
    out.verdict = verdict_of(all && (!distinct_delta || distinct == bases.size()));
    out.summary = {std::to_string(variants.size()) + " cyclic variants, " + std::to_string(distinct) + " distinct bases",
                   "all certified at level 1: " + yes_no(all)};
    return out;
}

CommandOutcome run_soft_tile(const Params& p)
{
    const Json& list = p.raw("domains");
    if (!list.is_array() || list.empty()) throw ValidationError(p.path("domains") + ": expected a nonempty array");
    std::vector<BoxUnionTile> domains;
    for (std::size_t i = 0; i < list.size(); ++i)
        domains.push_back(parse_box_union(list[i], p.path("domains") + "[" + std::to_string(i) + "]"));
    const SoftTileResult r = soft_common_tile(domains, p.rational("h"));

    CommandOutcome out;
    out.result["factors"] = r.tile.factors;
    out.result["support_diameter"] = rat(r.support_diameter);
    out.result["grid_diameter"] = rat(r.tile.grid_diameter());
    out.result["total_mass"] = rat(r.tile.total_mass());
    out.result["n_root_d"] = r.n_root_d;
    out.result["tol"] = 1e-12;
    bool pass = true;
    if (!p.is_null("lattice")) {
        const SoftTilingCheck c = soft_tiling_check(r.tile, parse_lattice(p.raw("lattice"), p.path("lattice")));
        Json check;
        check["uniform"] = c.uniform;
        check["level"] = rat(c.level);
        check["min_value"] = rat(c.min_value);
        check["max_value"] = rat(c.max_value);
        check["classes"] = c.classes;
        out.result["tiling"] = check;
        pass = c.uniform;
        out.summary.push_back("uniform over the lattice: " + yes_no(c.uniform) + " at level " + rat(c.level));
    } else {
        out.result["tiling"] = nullptr;
    }
    out.verdict = verdict_of(pass);
    out.summary.push_back("support diameter " + rat(r.support_diameter) + " for " + std::to_string(r.tile.factors) +
                          " factors");
    return out;
}

// ---------------------------------------------------------------- tiling

Json edge_report_json(const EdgeCancellationReport& r)
{
    Json j;
    j["passed"] = r.passed;
    j["max_residual"] = r.max_residual;
    j["tol"] = r.tol;
    j["expected_level"] = rat(r.expected_level);
    j["samples"] = r.samples;
    j["coverage_mismatches"] = r.coverage_mismatches;
    j["coverage_witness"] = r.coverage_witness ? reals_json({(*r.coverage_witness)[0], (*r.coverage_witness)[1]}) : Json(nullptr);
    j["witness_coverage"] = r.witness_coverage;
    Json dirs = Json::array();
    for (const EdgeDirectionResidual& d : r.directions) {
        Json e;
        e["direction"] = reals_json({d.direction[0], d.direction[1]});
        e["residual"] = d.residual;
        e["lines"] = d.lines;
        e["witness"] = d.witness ? reals_json({(*d.witness)[0], (*d.witness)[1]}) : Json(nullptr);
        e["tol"] = r.tol;
        dirs.push_back(e);
    }
    j["directions"] = dirs;
    return j;
}

CommandOutcome polygon_tiling(const Params& p)
{
    const Json& tile = p.raw("tile");
    const std::string kind = tile.value("kind", "");
    const Rational w = p.rational("window");
    const double tol = p.real("tol");
    const auto samples = static_cast<std::size_t>(p.integer("samples"));
    const auto seed = static_cast<std::uint64_t>(p.integer("seed"));
    const Rational level = p.is_null("level") ? Rational(1) : p.rational("level");

    const Params tp(tile, p.path("tile"));
    EdgeCancellationReport r;
    if (kind == "polygon") {
        tp.allow_only({"kind", "vertices"});
        const Json& vs = tp.raw("vertices");
        if (!vs.is_array()) throw ValidationError(tp.path("vertices") + ": expected an array");
        std::vector<Vec> vertices;
        for (std::size_t i = 0; i < vs.size(); ++i)
            vertices.push_back(parse_vec(vs[i], tp.path("vertices") + "[" + std::to_string(i) + "]"));
        const Polygon2D poly(std::move(vertices));
        const TranslationSet t = parse_translation_set(p.raw("translations"), p.path("translations"));
        r = verify_polygon_edge_cancellation(poly, t, window_lo(w, 2), window_hi(w, 2), samples, tol, level, seed);
    } else {
        tp.allow_only({"kind", "side"});
        const double side = tp.real("side");
        const Params tr(p.raw("translations"), p.path("translations"));
        tr.allow_only({"kind", "side"});
        if (tr.string("kind") != "hexagonal_lattice")
            throw ValidationError(tr.path("kind") + ": regular hexagons take a hexagonal_lattice");
        const double lattice_side = tr.has("side") ? tr.real("side") : side;
        if (!is_integer(level)) throw ValidationError(p.path("level") + ": must be an integer for real polygons");
        const double wd = to_double(w);
        r = verify_polygon_edge_cancellation(regular_hexagon(side), hexagonal_lattice(lattice_side), {-wd, -wd}, {wd, wd},
                                             samples, tol, level.get_num().get_si(), seed);
    }
    CommandOutcome out;
    out.result = edge_report_json(r);
    out.verdict = verdict_of(r.passed);
    out.summary = {"edge residual " + fmt(r.max_residual) + " (tol " + fmt(tol) + ")",
                   "coverage mismatches " + std::to_string(r.coverage_mismatches) + " of " + std::to_string(r.samples)};
    return out;
}

bool is_polygon_tile(const Json& tile)
{
    if (!tile.is_object()) return false;
    const std::string kind = tile.value("kind", "");
    return kind == "polygon" || kind == "regular_hexagon";
}

CommandOutcome run_verify_tiling(const Params& p)
{
    if (is_polygon_tile(p.raw("tile"))) return polygon_tiling(p);
    const BoxUnionTile tile = parse_box_union(p.raw("tile"), p.path("tile"));
    const TranslationSet t = parse_translation_set(p.raw("translations"), p.path("translations"));
    const std::size_t d = tile.dim();
    if (dimension_of(t) != d) throw DomainError("tile and translations differ in dimension");

    std::string method = p.string("method");
    if (method == "auto") method = is_periodic(t) ? "exact" : "sampled";
    TilingReport r;
    if (method == "exact") {
        r = verify_tiling_exact(tile, t);
    } else if (method == "fourier") {
        const Lattice* l = std::get_if<Lattice>(&t);
        if (l == nullptr) throw DomainError("the Fourier criterion needs a single lattice");
        r = verify_lattice_tiling_fourier(tile, *l, p.rational("radius"), p.real("tol"));
    } else if (method == "sampled") {
        const Rational w = p.rational("window");
        r = verify_tiling_sampled(sampled_tile(tile), t, window_lo(w, d), window_hi(w, d),
                                  static_cast<std::size_t>(p.integer("samples")), static_cast<std::uint64_t>(p.integer("seed")));
    } else {
        throw ValidationError(p.path("method") + ": one of auto, exact, fourier, sampled");
    }
    bool pass = r.passed;
    if (!p.is_null("level")) pass = pass && r.level == p.rational("level");

    CommandOutcome out;
    out.result = tiling_report_json(r);
    out.verdict = verdict_of(pass);
    out.summary = {"method " + r.method + ", level " + rat(r.level) + ", constant: " + yes_no(r.passed)};
    if (r.witness) out.summary.push_back("witness " + to_string(*r.witness));
    return out;
}

CommandOutcome run_verify_packing(const Params& p)
{
    const BoxUnionTile tile = parse_box_union(p.raw("tile"), p.path("tile"));
    const TranslationSet t = parse_translation_set(p.raw("translations"), p.path("translations"));
    const std::size_t d = tile.dim();
    if (dimension_of(t) != d) throw DomainError("tile and translations differ in dimension");
    const Rational level = p.rational("level");
    std::string method = p.string("method");
    if (method == "auto") method = is_periodic(t) ? "exact" : "sampled";
    TilingReport r;
    if (method == "exact") {
        r = verify_packing_exact(tile, t, level);
    } else if (method == "sampled") {
        const Rational w = p.rational("window");
        r = verify_packing_sampled(sampled_tile(tile), t, window_lo(w, d), window_hi(w, d),
                                   static_cast<std::size_t>(p.integer("samples")),
                                   static_cast<std::uint64_t>(p.integer("seed")), level);
    } else {
        throw ValidationError(p.path("method") + ": one of auto, exact, sampled");
    }
    CommandOutcome out;
    out.result = tiling_report_json(r);
    out.verdict = verdict_of(r.passed);
    out.summary = {"packing at level " + rat(level) + ": " + yes_no(r.passed) + ", max coverage " + rat(r.max_coverage)};
    return out;
}

CommandOutcome run_zero_grid(const Params& p)
{
    const Vec e = p.vec("e"), tau = p.vec("tau"), center = p.vec("center");
    if (e.size() != 2 || tau.size() != 2 || center.size() != 2) throw ValidationError("zero-grid vectors are planar");
    const EdgeMeasure mu = EdgeMeasure::rational(e, tau, center);
    const ZeroSetGrid grid = zero_grid_of_edge(mu);
    const double tol = p.real("tol");
    const auto points = sample_grid_points(grid, p.real("radius"), static_cast<std::size_t>(p.integer("per_line")));
    double worst = 0.0;
    for (const Real2& x : points) worst = std::max(worst, std::abs(ft_edge_measure(mu, x)));

    Json families = Json::array();
    for (const LineFamily& f : grid.families) {
        Json j;
        j["normal"] = reals_json({f.normal[0], f.normal[1]});
        j["exact_normal"] = f.exact_normal ? vec_json(*f.exact_normal) : Json(nullptr);
        j["step"] = rat(f.exact_step);
        j["offset"] = rat(f.exact_offset);
        j["spacing"] = f.spacing();
        j["exclude_through_origin"] = f.exclude_through_origin;
        j["tol"] = tol;
        families.push_back(j);
    }
    CommandOutcome out;
    out.result["families"] = families;
    out.result["samples"] = points.size();
    out.result["max_abs_ft"] = worst;
    out.result["tol"] = tol;
    out.verdict = verdict_of(worst < tol);
    out.summary = {std::to_string(grid.families.size()) + " line families",
                   "max |ft| on " + std::to_string(points.size()) + " grid samples: " + fmt(worst)};
    return out;
}

CommandOutcome run_hajos(const Params& p)
{
    const Matrix b = p.matrix("matrix");
    const long range = p.integer("range");
    const HajosResult h = hajos_predicate(b, range);
    // Dual points B z over the same coefficient window as the predicate.
    const Lattice lattice(b.inverse().transpose());
    const TilingReport cube =
        verify_lattice_tiling_fourier_coefficients(BoxUnionTile::unit_cube(b.rows()), lattice, range, p.real("tol"));
    CommandOutcome out;
    out.result["holds_up_to_bound"] = h.holds_up_to_bound;
    out.result["witness"] = h.witness ? int_vec_json(*h.witness) : Json(nullptr);
    out.result["integral_row"] = h.integral_row ? Json(*h.integral_row) : Json(nullptr);
    out.result["checked"] = h.checked;
    out.result["cube_fourier"] = fourier_json(cube);
    out.result["agree"] = h.holds_up_to_bound == cube.passed;
    out.verdict = verdict_of(h.holds_up_to_bound && h.integral_row.has_value());
    out.summary = {"predicate holds: " + yes_no(h.holds_up_to_bound),
                   "integral row: " + (h.integral_row ? std::to_string(*h.integral_row) : std::string("none")),
                   "cube Fourier check on B^-T Z^d: " + yes_no(cube.passed)};
    return out;
}

CommandOutcome run_minkowski(const Params& p)
{
    const Matrix a = p.matrix("matrix");
    const auto v = minkowski_vector(a, p.integer("bound"));
    CommandOutcome out;
    out.result["vector"] = v ? int_vec_json(*v) : Json(nullptr);
    if (v) {
        const Vec image = a.apply(to_rational(*v));
        out.result["image"] = vec_json(image);
        out.result["image_sup_norm"] = rat(max_abs(image));
    } else {
        out.result["image"] = nullptr;
        out.result["image_sup_norm"] = nullptr;
    }
    out.verdict = verdict_of(v.has_value());
    out.summary = {v ? "vector " + to_string(to_rational(*v)) : std::string("no vector within the bound")};
    return out;
}

// ---------------------------------------------------------------- multilattice

std::vector<RealLattice> real_lattices(const Params& p, const std::string& key)
{
    const Json& list = p.raw(key);
    if (!list.is_array() || list.empty()) throw ValidationError(p.path(key) + ": expected a nonempty array");
    std::vector<RealLattice> out;
    for (std::size_t i = 0; i < list.size(); ++i)
        out.push_back(parse_real_lattice(list[i], p.path(key) + "[" + std::to_string(i) + "]"));
    return out;
}

bool all_exact(const Json& list)
{
    return std::all_of(list.begin(), list.end(), [](const Json& j) { return is_exact_lattice(j); });
}

Json direct_sum_json(const DirectSumReport& r, double tol)
{
    Json j;
    j["direct"] = r.direct;
    if (r.relation) {
        Json rel = Json::array();
        for (const auto& v : *r.relation) rel.push_back(int_vec_json(v));
        j["relation"] = rel;
    } else {
        j["relation"] = nullptr;
    }
    j["relation_norm"] = r.relation_norm;
    j["closest_approach"] = r.closest_approach;
    j["combinations"] = r.combinations;
    j["tol"] = tol;
    return j;
}

CommandOutcome run_direct_sum(const Params& p)
{
    const LatticeFamily family(real_lattices(p, "lattices"));
    const double tol = p.real("tol");
    const DirectSumReport r = check_direct_sum(family, p.integer("bound"), tol);
    CommandOutcome out;
    out.result = direct_sum_json(r, tol);
    out.verdict = verdict_of(r.direct);
    out.summary = {"direct sum up to bound " + std::to_string(p.integer("bound")) + ": " + yes_no(r.direct),
                   "closest approach " + fmt(r.closest_approach)};
    return out;
}

Json obstruction_json(const ObstructionReport& r)
{
    Json j;
    j["applicable"] = r.applicable;
    j["certified"] = r.certified;
    j["reason"] = r.reason;
    j["points_checked"] = r.points_checked;
    j["uncovered"] = r.uncovered ? vec_json(*r.uncovered) : Json(nullptr);
    Json idx = Json::array();
    for (const Integer& i : r.indices) idx.push_back(i.get_str());
    j["indices"] = idx;
    Json wit = Json::array();
    for (const auto& [rep, member] : r.coset_witnesses) {
        Json w;
        w["representative"] = vec_json(rep);
        w["member"] = member;
        wit.push_back(w);
    }
    j["coset_witnesses"] = wit;
    j["verdict"] = r.verdict;
    return j;
}

CommandOutcome run_three_lattice(const Params& p)
{
    std::vector<Lattice> members;
    if (p.is_null("lattices")) {
        members = three_lattice_family();
    } else {
        const Json& list = p.raw("lattices");
        if (!list.is_array()) throw ValidationError(p.path("lattices") + ": expected an array");
        for (std::size_t i = 0; i < list.size(); ++i)
            members.push_back(parse_lattice(list[i], p.path("lattices") + "[" + std::to_string(i) + "]"));
    }
    const ObstructionReport r = three_lattice_obstruction(members, p.integer("radius"));
    CommandOutcome out;
    out.result = obstruction_json(r);
    out.verdict = verdict_of(r.certified);
    out.summary = {r.verdict.empty() ? r.reason : r.verdict,
                   std::to_string(r.points_checked) + " window points checked"};
    return out;
}

CommandOutcome run_multitile(const Params& p)
{
    BuildOptions options;
    options.iterations = static_cast<std::size_t>(p.integer("iterations"));
    options.grid_exponent = static_cast<std::size_t>(p.integer("grid_exponent"));
    options.radius_per_iteration = p.integer("radius_per_iteration");
    options.floor_per_iteration = p.real("floor_per_iteration");
    options.retry_budget = static_cast<std::size_t>(p.integer("retry_budget"));
    options.direct_sum_bound = p.integer("direct_sum_bound");
    options.direct_sum_tol = p.real("direct_sum_tol");
    const double target = p.real("target_coverage");
    const double resolution = std::ldexp(1.0, -static_cast<int>(options.grid_exponent));

    BuildResult r;
    const Json& list = p.raw("lattices");
    if (list.is_array() && !list.empty() && all_exact(list)) {
        std::vector<Lattice> members;
        for (std::size_t i = 0; i < list.size(); ++i)
            members.push_back(parse_lattice(list[i], p.path("lattices") + "[" + std::to_string(i) + "]"));
        r = build_common_tile(members, options);
    } else {
        r = build_common_tile(LatticeFamily(real_lattices(p, "lattices")), options);
    }

    CommandOutcome out;
    out.result["refused"] = r.refused;
    out.result["diagnostic"] = r.diagnostic;
    out.result["coverage"] = reals_json(r.coverage);
    out.result["resolution"] = resolution;
    out.result["target_coverage"] = target;
    out.result["packing_violations"] = r.builder.packing_violations;
    out.result["monotone_leftovers"] = r.monotone_leftovers;
    out.result["rectangles"] = r.builder.accepted.size();
    Json log = Json::array();
    for (const IterationLog& it : r.builder.log) {
        Json e;
        e["K"] = it.k;
        e["leftover_measures"] = reals_json(it.leftover_measures);
        e["epsilon"] = it.epsilon;
        e["cubes_placed"] = it.cubes_placed;
        e["alignment_failures"] = it.alignment_failures;
        e["resolution"] = resolution;
        log.push_back(e);
    }
    out.result["log"] = log;
    const double worst = r.coverage.empty() ? 0.0 : *std::min_element(r.coverage.begin(), r.coverage.end());
    const bool pass = !r.refused && worst >= target && r.builder.packing_violations == 0 && r.monotone_leftovers;
    out.verdict = verdict_of(pass);
    if (r.refused) {
        out.summary = {"refused: " + r.diagnostic};
    } else {
        out.summary = {"minimum coverage " + fmt(worst) + " after " + std::to_string(r.builder.log.size()) + " iterations",
                       "packing violations " + std::to_string(r.builder.packing_violations) +
                           ", monotone leftovers: " + yes_no(r.monotone_leftovers)};
    }
    return out;
}

double bump(const std::vector<double>& x, const std::vector<double>& c, double radius)
{
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - c[i]) * (x[i] - c[i]);
    r2 /= radius * radius;
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

CommandOutcome run_gabor(const Params& p)
{
    const Lattice k = parse_lattice(p.raw("k"), p.path("k"));
    const Lattice l = parse_lattice(p.raw("l"), p.path("l"));
    const BoxUnionTile e = parse_box_union(p.raw("e"), p.path("e"));
    const std::size_t d = e.dim();
    std::vector<TestFunction> tests;
    const Json& list = p.raw("tests");
    if (list.is_null()) {
        tests.push_back([d](const std::vector<double>& x) { return bump(x, std::vector<double>(d, 0.25), 1.0); });
    } else {
        if (!list.is_array() || list.empty()) throw ValidationError(p.path("tests") + ": expected a nonempty array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Params t(list[i], p.path("tests") + "[" + std::to_string(i) + "]");
            t.allow_only({"kind", "center", "radius"});
            if (t.string("kind") != "bump") throw ValidationError(t.path("kind") + ": only bump test functions");
            const std::vector<double> c = t.reals("center");
            const double radius = t.real("radius");
            if (c.size() != d || !(radius > 0.0)) throw ValidationError(t.path("center") + ": bad bump");
            tests.push_back([c, radius](const std::vector<double>& x) { return bump(x, c, radius); });
        }
    }
    const Rational w = p.rational("window");
    const double tol = p.real("tol");
    const GaborReport r = gabor_frame_check(k, l, e, tests, window_lo(w, d), window_hi(w, d), p.integer("resolution"));

    CommandOutcome out;
    out.result["density_product"] = rat(r.density_product);
    Json res = Json::array();
    for (const GaborResidual& g : r.residuals) {
        Json j;
        j["norm_squared"] = g.norm_squared;
        j["frame_sum"] = g.frame_sum;
        j["residual"] = g.residual;
        j["tail"] = g.tail;
        j["tol"] = tol;
        res.push_back(j);
    }
    out.result["residuals"] = res;
    out.result["max_residual"] = r.max_residual;
    out.result["tol"] = tol;
    out.verdict = verdict_of(r.max_residual < tol);
    out.summary = {"density product " + rat(r.density_product), "max frame residual " + fmt(r.max_residual)};
    return out;
}

// ---------------------------------------------------------------- steinhaus

QuadraticForm parse_form(const Params& p)
{
    const Json& f = p.raw("form");
    if (f.is_string()) {
        const std::string name = f.get<std::string>();
        if (name == "paper3d") return steinhaus_form_3d();
        if (name == "paper4d") return steinhaus_form_4d();
        throw ValidationError(p.path("form") + ": named forms are paper3d and paper4d");
    }
    return QuadraticForm(parse_matrix(f, p.path("form")));
}

Json representability_json(const RepresentabilityReport& r)
{
    Json j;
    j["range"] = r.range;
    j["squares"] = r.squares;
    j["all_representable"] = r.all_representable;
    j["counterexample"] = r.counterexample ? int_vec_json(*r.counterexample) : Json(nullptr);
    j["counterexample_value"] = r.counterexample_value ? Json(rat(*r.counterexample_value)) : Json(nullptr);
    j["checked_count"] = r.checked_count;
    j["characterization_mismatches"] = r.characterization_mismatches;
    return j;
}

CommandOutcome run_steinhaus_certify(const Params& p)
{
    const QuadraticForm q = parse_form(p);
    const SteinhausVerdict v = steinhaus_lemma_check(q, p.integer("range"));
    CommandOutcome out;
    out.result["matrix"] = matrix_json(q.matrix());
    out.result["dimension"] = q.dim();
    out.result["determinant"] = rat(v.determinant);
    out.result["determinant_square"] = v.determinant_square;
    out.result["integer_valued"] = q.is_integer_valued();
    out.result["representability"] = representability_json(v.representability);
    out.result["fires"] = v.fires;
    out.result["message"] = v.message;
    out.verdict = verdict_of(v.fires);
    out.summary = {"det " + rat(v.determinant) + ", integer square: " + yes_no(v.determinant_square),
                   "representable on range " + std::to_string(p.integer("range")) + ": " +
                       yes_no(v.representability.all_representable)};
    if (!v.message.empty()) out.summary.push_back(v.message);
    return out;
}

CommandOutcome run_steinhaus_search(const Params& p)
{
    const long dim = p.integer("dimension");
    const long bound = p.integer("bound"), range = p.integer("range");
    CommandOutcome out;
    Json forms = Json::array();
    if (dim == 3 && p.boolean("symmetric")) {
        for (const QuadraticForm& q : search_symmetric_forms_3d(bound, range)) {
            Json j;
            j["matrix"] = matrix_json(q.matrix());
            j["determinant"] = rat(q.determinant());
            forms.push_back(j);
        }
        out.verdict = verdict_of(!forms.empty());
    } else if (dim == 3 || dim == 2) {
        const auto found = dim == 3 ? search_forms_3d(bound, range) : search_forms_2d(bound, range);
        bool squares = true;
        for (const DiagonalForm& f : found) {
            Json j;
            j["coefficients"] = int_vec_json(f.coefficients);
            j["determinant"] = rat(f.determinant);
            j["determinant_square"] = f.determinant_square;
            forms.push_back(j);
            squares = squares && f.determinant_square;
        }
        // In the plane every representable form should have a square determinant.
        out.verdict = verdict_of(dim == 3 ? !found.empty() : squares);
    } else {
        throw ValidationError(p.path("dimension") + ": 2 or 3");
    }
    out.result["count"] = forms.size();
    out.result["forms"] = forms;
    out.summary = {std::to_string(forms.size()) + " forms found"};
    return out;
}

CommandOutcome run_steinhaus_radii(const Params& p)
{
    const long dim = p.integer("dim");
    if (dim < 1) throw ValidationError(p.path("dim") + ": must be positive");
    const auto radii = steinhaus_radii(static_cast<std::size_t>(dim), to_double(p.rational("r_max")));
    Json list = Json::array();
    for (const Radius& r : radii) {
        Json j;
        j["squared"] = r.squared;
        j["value"] = r.value;
        list.push_back(j);
    }
    CommandOutcome out;
    out.result["radii"] = list;
    out.result["count"] = radii.size();
    out.result["tol"] = 1e-15;
    out.verdict = "pass";
    out.summary = {std::to_string(radii.size()) + " radii"};
    return out;
}

// ---------------------------------------------------------------- spectra

Json orthogonality_json(const OrthogonalityReport& r)
{
    Json j;
    j["orthogonal"] = r.orthogonal;
    if (r.failing_pair) {
        j["failing_pair"] = Json::array({vec_json(r.failing_pair->first), vec_json(r.failing_pair->second)});
    } else {
        j["failing_pair"] = nullptr;
    }
    j["pairs_checked"] = r.pairs_checked;
    return j;
}

Json completeness_json(const CompletenessReport& r, double tol)
{
    Json j;
    j["residual"] = r.residual;
    j["truncated_residual"] = r.truncated_residual;
    j["tail_estimate"] = r.tail_estimate;
    j["error_bar"] = r.error_bar;
    j["exact_tail"] = r.exact_tail;
    j["samples"] = r.samples;
    j["complete"] = r.complete;
    j["inconclusive"] = r.inconclusive;
    j["tol"] = tol;
    return j;
}

CommandOutcome run_cube_spectrum(const Params& p)
{
    const TranslationSet t = parse_translation_set(p.raw("translations"), p.path("translations"));
    CubeSpectrumOptions o;
    o.orthogonality_radius = p.integer("orthogonality_radius");
    o.tail = p.real("tail");
    o.completeness_samples = static_cast<std::size_t>(p.integer("samples"));
    o.tiling_samples = static_cast<std::size_t>(p.integer("tiling_samples"));
    o.tiling_window = p.integer("tiling_window");
    o.tol = p.real("tol");
    o.seed = static_cast<std::uint64_t>(p.integer("seed"));
    const CubeSpectrumReport r = cube_spectrum_iff_tiling(t, dimension_of(t), o);

    CommandOutcome out;
    out.result["orthogonality"] = orthogonality_json(r.orthogonality);
    out.result["completeness"] = completeness_json(r.completeness, o.tol);
    out.result["spectrum"] = r.spectrum;
    out.result["tiling"] = tiling_report_json(r.tiling);
    out.result["tiles_at_level_one"] = level_one(r.tiling);
    out.result["agree"] = r.agree;
    out.verdict = verdict_of(r.agree);
    out.summary = {"spectrum: " + yes_no(r.spectrum) + " (orthogonal " + yes_no(r.orthogonality.orthogonal) +
                       ", residual " + fmt(r.completeness.residual) + ")",
                   "cube tiling at level 1: " + yes_no(level_one(r.tiling)), "agree: " + yes_no(r.agree)};
    return out;
}

CommandOutcome run_lattice_spectrum(const Params& p)
{
    const BoxUnionTile domain = parse_box_union(p.raw("domain"), p.path("domain"));
    const Lattice l = parse_lattice(p.raw("lattice"), p.path("lattice"));
    LatticeSpectrumOptions o;
    o.orthogonality_radius = p.rational("orthogonality_radius");
    o.tail = p.real("tail");
    o.samples = static_cast<std::size_t>(p.integer("samples"));
    o.tol = p.real("tol");
    o.completeness_tol = p.real("completeness_tol");
    const LatticeSpectrumReport r = lattice_spectrum_check(domain, l, o);

    CommandOutcome out;
    out.result["tiling"] = tiling_report_json(r.tiling);
    out.result["orthogonality_max"] = r.orthogonality_max;
    out.result["orthogonal"] = r.orthogonal;
    out.result["completeness_residual"] = r.completeness_residual;
    out.result["tail_bound"] = r.tail_bound;
    out.result["complete"] = r.complete;
    out.result["spectrum"] = r.spectrum;
    out.result["agree"] = r.agree;
    out.result["tol"] = o.tol;
    out.verdict = verdict_of(r.agree);
    out.summary = {"dual lattice spectrum: " + yes_no(r.spectrum) + ", tiling at level 1: " + yes_no(level_one(r.tiling)),
                   "completeness residual " + fmt(r.completeness_residual) + " (tail bound " + fmt(r.tail_bound) + ")"};
    return out;
}

double fejer_value(const std::vector<double>& x)
{
    double v = 1.0;
    for (double t : x) v *= sinc_pi(t) * sinc_pi(t);
    return v;
}

CommandOutcome run_packing_transfer(const Params& p)
{
    const BoxUnionTile f = parse_box_union(p.raw("f"), p.path("f"));
    const TranslationSet t = parse_translation_set(p.raw("translations"), p.path("translations"));
    const std::size_t d = f.dim();
    const Params g(p.raw("g"), p.path("g"));
    const std::string kind = g.string("kind");
    const double radius = p.real("radius");

    GridFunction fn;
    fn.integral = 1.0;
    fn.radius = radius;
    if (kind == "fejer") {
        g.allow_only({"kind"});
        fn.value = fejer_value;
        // At most mu translations per unit cube, mu taken from the cells of [-4, 4]^d.
        std::map<std::vector<long>, std::size_t> cells;
        std::size_t mu = 0;
        for (const Vec& v : translations_in_box(t, Vec(d, Rational(-4)), Vec(d, Rational(4)))) {
            std::vector<long> cell;
            for (const Rational& c : v) cell.push_back(floor_of(c).get_si());
            mu = std::max(mu, ++cells[cell]);
        }
        const double multiplicity = std::ldexp(static_cast<double>(mu), static_cast<int>(d));
        fn.tail_bound = d * multiplicity * std::pow(7.0 / 3.0, static_cast<double>(d) - 1.0) * 2.0 /
                        (kPi * kPi * (radius - 1.0));
    } else if (kind == "tent") {
        g.allow_only({"kind", "scale"});
        const double s = g.has("scale") ? g.real("scale") : 1.0;
        fn.value = [s](const std::vector<double>& x) {
            double v = 1.0;
            for (double c : x) v *= s * std::max(0.0, 1.0 - std::abs(s * c));
            return v;
        };
        if (radius < 1.0 / s) throw ValidationError(p.path("radius") + ": must cover the tent support");
        fn.tail_bound = 0.0;
    } else {
        throw ValidationError(g.path("kind") + ": fejer or tent");
    }
    const Rational w = p.rational("window");
    const double tol = p.real("tol");
    const TransferReport r = packing_transfer_harness(f, fn, t, window_lo(w, d), window_hi(w, d),
                                                      static_cast<std::size_t>(p.integer("samples")), tol);
    CommandOutcome out;
    out.result["applicable"] = r.applicable;
    out.result["reason"] = r.reason;
    out.result["f_packing"] = r.f_packing;
    out.result["f_tiling"] = r.f_tiling;
    out.result["g_packing"] = r.g_packing;
    out.result["g_tiling"] = r.g_tiling;
    out.result["agree"] = r.agree;
    out.result["g_min"] = r.g_min;
    out.result["g_max"] = r.g_max;
    out.result["tail_bound"] = fn.tail_bound;
    out.result["tol"] = tol;
    out.verdict = r.applicable ? verdict_of(r.agree) : "inapplicable";
    out.summary = {r.applicable ? "f tiles: " + yes_no(r.f_tiling) + ", g tiles: " + yes_no(r.g_tiling)
                                : "inapplicable: " + r.reason};
    return out;
}

Json motion_json(const MotionCoverage& m, double resolution)
{
    Json j;
    j["samples"] = m.samples;
    j["uncovered"] = m.uncovered;
    j["overcovered"] = m.overcovered;
    j["max_coverage"] = m.max_coverage;
    j["packing"] = m.packing;
    j["tiling"] = m.tiling;
    j["uncovered_fraction"] = m.uncovered_fraction;
    j["resolution"] = resolution;
    j["uncovered_witness"] = m.uncovered_witness ? vec_json(*m.uncovered_witness) : Json(nullptr);
    return j;
}

CommandOutcome run_rigid_motion(const Params& p)
{
    const long e = p.integer("exponent");
    if (e < 0) throw ValidationError(p.path("exponent") + ": must be nonnegative");
    const RigidMotionReport r = rigid_motion_counterexample(static_cast<unsigned>(e), p.rational("half_width"));
    const double res = std::ldexp(1.0, -static_cast<int>(e));
    CommandOutcome out;
    out.result["square"] = motion_json(r.square, res);
    out.result["parallelogram"] = motion_json(r.parallelogram, res);
    out.result["square_translations"] = motion_json(r.square_translations, res);
    out.result["parallelogram_translations"] = motion_json(r.parallelogram_translations, res);
    const bool pass = r.square.tiling && r.parallelogram.packing && !r.parallelogram.tiling &&
                      r.square_translations.tiling && r.parallelogram_translations.tiling;
    out.verdict = verdict_of(pass);
    out.summary = {"square tiles: " + yes_no(r.square.tiling),
                   "parallelogram packs: " + yes_no(r.parallelogram.packing) + ", tiles: " + yes_no(r.parallelogram.tiling) +
                       ", uncovered fraction " + fmt(r.parallelogram.uncovered_fraction)};
    return out;
}

Json disk_json(const DiskCertificate& c, double tol)
{
    Json j;
    j["r0"] = c.r0;
    j["j11"] = c.j11;
    j["thue_bound"] = c.thue_bound;
    j["threshold"] = c.threshold;
    j["margin"] = c.r0 - c.threshold;
    j["non_spectral"] = c.verdict && c.r0 - c.threshold > tol;
    j["tol"] = tol;
    return j;
}

CommandOutcome run_disk(const Params& p)
{
    const auto bracket = p.reals("bracket");
    if (bracket.size() != 2) throw ValidationError(p.path("bracket") + ": [lo, hi]");
    const double tol = p.real("tol");
    const DiskCertificate c = disk_certificate(bracket[0], bracket[1]);
    const bool certified = c.verdict && c.r0 - c.threshold > tol;
    CommandOutcome out;
    out.result = disk_json(c, tol);
    out.verdict = verdict_of(certified);
    out.summary = {"r0 = " + fmt(c.r0) + ", threshold 2/12^(1/4) = " + fmt(c.threshold),
                   certified ? "the unit-area disk is not spectral" : "no conclusion"};
    return out;
}

// ---------------------------------------------------------------- report

CommandOutcome run_named(const std::string& name, const Json& given)
{
    const Command& c = find_command(name);
    const Json resolved = resolve_params(c, given);
    return c.run(Params(resolved));
}

CommandOutcome run_report(const Params& p)
{
    Json disk_params;
    disk_params["bracket"] = p.raw("bracket");
    disk_params["tol"] = p.raw("tol");
    const CommandOutcome disk = run_named("disk-certificate", disk_params);
    Json st;
    st["form"] = p.raw("steinhaus_form");
    st["range"] = p.raw("steinhaus_range");
    const CommandOutcome stein = run_named("steinhaus-certify", st);
    Json nt;
    nt["delta"] = p.raw("notched_delta");
    const CommandOutcome notched = run_named("notched", nt);

    std::ostringstream md;
    md << "# Tiling and spectral certificates\n\n";
    auto section = [&](const std::string& title, const CommandOutcome& o) {
        md << "## " << title << "\n\n- verdict: " << o.verdict << "\n";
        for (const std::string& line : o.summary) md << "- " << line << "\n";
        md << "\n";
    };
    section("Disk", disk);
    section("Steinhaus quadratic form", stein);
    section("Notched cube", notched);

    CommandOutcome out;
    out.result["disk"] = disk.result;
    out.result["steinhaus"] = stein.result;
    out.result["notched"] = notched.result;
    out.result["markdown"] = md.str();
    const bool pass = disk.verdict == "pass" && stein.verdict == "pass" && notched.verdict == "pass";
    out.verdict = verdict_of(pass);
    out.summary = {"disk: " + disk.verdict, "steinhaus: " + stein.verdict, "notched: " + notched.verdict};
    return out;
}

Json obj(std::initializer_list<std::pair<const char*, Json>> items)
{
    Json j = Json::object();
    for (const auto& [k, v] : items) j[k] = v;
    return j;
}

std::vector<Command> build_commands()
{
    const Json null = nullptr;
    std::vector<Command> c;
    c.push_back({"notched", "notched cube lattice tiling, Fourier and exact certificates",
                 obj({{"delta", null}, {"cycle", null}, {"radius", "20"}, {"tol", 1e-9}}), {"delta"}, run_notched});
    c.push_back({"extended-cube", "cube plus a box meeting it in codimension k",
                 obj({{"gamma", null}, {"k", 1}, {"radius", "20"}, {"tol", 1e-9}}), {"gamma"}, run_extended_cube});
    c.push_back({"cyclic-variants", "all cyclic-permutation variants of the notched cube lattice",
                 obj({{"delta", null}, {"radius", "10"}, {"tol", 1e-9}}), {"delta"}, run_cyclic_variants});
    c.push_back({"verify-tiling", "tiling verdict of a box union or polygon under a translation set",
                 obj({{"tile", null}, {"translations", null}, {"method", "auto"}, {"level", null}, {"radius", "20"},
                      {"tol", 1e-9}, {"window", "3"}, {"samples", 4096}, {"seed", 0}}),
                 {"tile", "translations"}, run_verify_tiling});
    c.push_back({"verify-packing", "packing verdict of a box union under a translation set",
                 obj({{"tile", null}, {"translations", null}, {"level", "1"}, {"method", "auto"}, {"window", "3"},
                      {"samples", 4096}, {"seed", 0}}),
                 {"tile", "translations"}, run_verify_packing});
    c.push_back({"zero-grid", "line grid in the zero set of an edge measure transform",
                 obj({{"e", null}, {"tau", null}, {"center", Json::array({"0", "0"})}, {"radius", 3.0}, {"per_line", 16},
                      {"tol", 1e-9}}),
                 {"e", "tau"}, run_zero_grid});
    c.push_back({"hajos", "bounded check of the cube-tiling predicate for a det-1 matrix",
                 obj({{"matrix", null}, {"range", 10}, {"tol", 1e-9}}), {"matrix"}, run_hajos});
    c.push_back({"minkowski", "bounded search for Minkowski's linear-forms vector",
                 obj({{"matrix", null}, {"bound", 20}}), {"matrix"}, run_minkowski});
    c.push_back({"multitile-build", "common fundamental domain for a family of lattices",
                 obj({{"lattices", null}, {"iterations", 6}, {"grid_exponent", 8}, {"radius_per_iteration", 16},
                      {"floor_per_iteration", 1.0}, {"retry_budget", 2}, {"direct_sum_bound", 50},
                      {"direct_sum_tol", 1e-9}, {"target_coverage", 0.9}}),
                 {"lattices"}, run_multitile});
    c.push_back({"direct-sum-check", "searches for an integer relation among dual lattices",
                 obj({{"lattices", null}, {"bound", 50}, {"tol", 1e-9}}), {"lattices"}, run_direct_sum});
    c.push_back({"three-lattice-obstruction", "index-2 union-cover certificate",
                 obj({{"lattices", null}, {"radius", 10}}), {}, run_three_lattice});
    c.push_back({"soft-tile", "grid convolution of indicator functions",
                 obj({{"domains", null}, {"h", null}, {"lattice", null}}), {"domains", "h"}, run_soft_tile});
    c.push_back({"steinhaus-certify", "quadratic form obstruction to Steinhaus sets",
                 obj({{"form", "paper3d"}, {"range", 50}}), {}, run_steinhaus_certify});
    c.push_back({"steinhaus-search", "searches forms on which the quadratic form obstruction fires",
                 obj({{"dimension", 3}, {"bound", 12}, {"range", 30}, {"symmetric", false}}), {}, run_steinhaus_search});
    c.push_back({"steinhaus-radii", "distinct radii of integer points", obj({{"dim", 2}, {"r_max", "2"}}), {},
                 run_steinhaus_radii});
    c.push_back({"cube-spectrum", "spectrum of the unit cube against tiling by the same set",
                 obj({{"translations", null}, {"orthogonality_radius", 4}, {"tail", 1000.0}, {"samples", 16},
                      {"tiling_samples", 4096}, {"tiling_window", 3}, {"tol", 1e-8}, {"seed", 0}}),
                 {"translations"}, run_cube_spectrum});
    c.push_back({"lattice-spectrum", "lattice tiling of a domain against the dual lattice as spectrum",
                 obj({{"domain", null}, {"lattice", null}, {"orthogonality_radius", "8"}, {"tail", 100.0},
                      {"samples", 12}, {"tol", 1e-9}, {"completeness_tol", 1e-6}}),
                 {"domain", "lattice"}, run_lattice_spectrum});
    c.push_back({"packing-transfer", "tiling verdicts of two packings with equal integrals",
                 obj({{"f", null}, {"g", null}, {"translations", null}, {"window", "3"}, {"samples", 128},
                      {"radius", 400.0}, {"tol", 1e-9}}),
                 {"f", "g", "translations"}, run_packing_transfer});
    c.push_back({"rigid-motion-demo", "square and parallelogram under translations with a reflected half column",
                 obj({{"exponent", 8}, {"half_width", "7/2"}}), {}, run_rigid_motion});
    c.push_back({"gabor-check", "discretized Gabor frame sums for an indicator window",
                 obj({{"k", null}, {"l", null}, {"e", null}, {"tests", null}, {"window", "4"}, {"resolution", 32},
                      {"tol", 1e-6}}),
                 {"k", "l", "e"}, run_gabor});
    c.push_back({"disk-certificate", "non-spectrality of the unit-area disk",
                 obj({{"bracket", Json::array({3.5, 4.2})}, {"tol", 1e-12}}), {}, run_disk});
    c.push_back({"report", "markdown bundle of the disk, Steinhaus and notched certificates",
                 obj({{"bracket", Json::array({3.5, 4.2})}, {"tol", 1e-12}, {"steinhaus_form", "paper3d"}, {"steinhaus_range", 50},
                      {"notched_delta", Json::array({"1/2", "1/3"})}}),
                 {}, run_report});
    return c;
}

} // namespace

const std::vector<Command>& commands()
{
    static const std::vector<Command> list = build_commands();
    return list;
}

const Command& find_command(const std::string& name)
{
    for (const Command& c : commands())
        if (c.name == name) return c;
    throw ValidationError("unknown command '" + name + "'");
}

Json resolve_params(const Command& command, const Json& given)
{
    if (!given.is_null() && !given.is_object()) throw ValidationError("params: expected an object");
    if (given.is_object()) {
        for (auto it = given.begin(); it != given.end(); ++it)
            if (!command.defaults.contains(it.key()))
                throw ValidationError("params: unknown key '" + it.key() + "' for " + command.name);
    }
    Json out = Json::object();
    for (auto it = command.defaults.begin(); it != command.defaults.end(); ++it) {
        if (given.is_object() && given.contains(it.key())) {
            out[it.key()] = given[it.key()];
        } else if (std::find(command.required.begin(), command.required.end(), it.key()) != command.required.end()) {
            throw ValidationError("params: missing required key '" + it.key() + "' for " + command.name);
        } else {
            out[it.key()] = it.value();
        }
    }
    return out;
}

} // namespace tilinglab::cli
