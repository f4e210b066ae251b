#include "tilinglab/tiling/polygon.hpp"

#include "tilinglab/core/errors.hpp"
#include "tilinglab/core/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace tilinglab {

namespace {

template <class S>
struct P2 {
    S x;
    S y;
};

template <class S>
S dot2(const P2<S>& a, const P2<S>& b)
{
    return a.x * b.x + a.y * b.y;
}

template <class S>
S cross2(const P2<S>& a, const P2<S>& b)
{
    return a.x * b.y - a.y * b.x;
}

template <class S>
P2<S> minus(const P2<S>& a, const P2<S>& b)
{
    return {a.x - b.x, a.y - b.y};
}

template <class S>
bool point_in(const std::vector<P2<S>>& v, const P2<S>& p)
{
    bool inside = false;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = v[i];
        const auto& b = v[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            S xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

inline double as_double(double v) { return v; }
inline double as_double(const Rational& v) { return to_double(v); }

inline bool near_equal(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * std::max(1.0, scale); }
inline bool near_equal(const Rational& a, const Rational& b, const Rational&) { return a == b; }

template <class S>
P2<S> point_on_line(const P2<S>& u, const P2<S>& nrm, const S& k, const S& s)
{
    S uu = dot2(u, u);
    return {(k * nrm.x + s * u.x) / uu, (k * nrm.y + s * u.y) / uu};
}

// Parameter range [smin, smax] of the line <nrm, p> = k inside the box.
template <class S>
bool clip_line(const P2<S>& u, const P2<S>& nrm, const S& k, const P2<S>& lo, const P2<S>& hi, S& smin, S& smax)
{
    S uu = dot2(u, u);
    bool have = false;
    auto apply = [&](const S& uc, const S& nc, const S& l, const S& h) {
        // (k nc + s uc) / uu in [l, h]
        if (uc == S(0)) {
            S c = k * nc / uu;
            return c >= l && c <= h;
        }
        S a = (l * uu - k * nc) / uc;
        S b = (h * uu - k * nc) / uc;
        if (a > b) std::swap(a, b);
        if (!have) {
            smin = a;
            smax = b;
            have = true;
        } else {
            smin = std::max(smin, a);
            smax = std::min(smax, b);
        }
        return true;
    };
    if (!apply(u.x, nrm.x, lo.x, hi.x)) return false;
    if (!apply(u.y, nrm.y, lo.y, hi.y)) return false;
    return have && smin < smax;
}

struct EdgeInterval {
    std::size_t line;
    int sign;
};

template <class S>
EdgeDirectionResidual direction_residual(const std::vector<P2<S>>& v, std::size_t i, const std::vector<P2<S>>& trans,
                                         const P2<S>& lo, const P2<S>& hi)
{
    const std::size_t n = v.size();
    const std::size_t j = i + n / 2;
    const P2<S> u = minus(v[(i + 1) % n], v[i]);
    const P2<S> nrm{-u.y, u.x};
    const double ulen = std::sqrt(as_double(dot2(u, u)));

    struct Seg {
        S key;
        S a;
        S b;
        int sign;
    };
    std::vector<Seg> segs;
    segs.reserve(2 * trans.size());
    for (const auto& t : trans) {
        P2<S> p0{v[i].x + t.x, v[i].y + t.y};
        P2<S> p1{v[(i + 1) % n].x + t.x, v[(i + 1) % n].y + t.y};
        segs.push_back({dot2(nrm, p0), dot2(u, p0), dot2(u, p1), +1});
        P2<S> q0{v[j % n].x + t.x, v[j % n].y + t.y};
        P2<S> q1{v[(j + 1) % n].x + t.x, v[(j + 1) % n].y + t.y};
        segs.push_back({dot2(nrm, q0), dot2(u, q1), dot2(u, q0), -1});
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.key < y.key; });

    EdgeDirectionResidual out;
    out.direction = {as_double(u.x) / ulen, as_double(u.y) / ulen};
    S total = S(0);
    const S scale_ref = dot2(u, u);
    std::size_t g = 0;
    while (g < segs.size()) {
        std::size_t e = g + 1;
        while (e < segs.size() && near_equal(segs[e].key, segs[g].key, as_double(scale_ref))) ++e;
        S smin, smax;
        if (clip_line(u, nrm, segs[g].key, lo, hi, smin, smax)) {
            ++out.lines;
            std::vector<std::pair<S, int>> events;
            for (std::size_t k = g; k < e; ++k) {
                events.emplace_back(segs[k].a, segs[k].sign);
                events.emplace_back(segs[k].b, -segs[k].sign);
            }
            std::sort(events.begin(), events.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            int net = 0;
            for (std::size_t k = 0; k + 1 < events.size(); ++k) {
                net += events[k].second;
                if (net == 0) continue;
                S a = std::max(events[k].first, smin);
                S b = std::min(events[k + 1].first, smax);
                if (!(a < b)) continue;
                total += b - a;
                if (!out.witness) {
                    auto p = point_on_line(u, nrm, segs[g].key, S((a + b) / 2));
                    out.witness = Real2{as_double(p.x), as_double(p.y)};
                }
            }
        }
        g = e;
    }
    out.residual = as_double(total) / ulen;
    return out;
}

template <class S>
EdgeCancellationReport cancellation_impl(const std::vector<P2<S>>& v, const std::vector<P2<S>>& trans,
                                         const P2<S>& lo, const P2<S>& hi, const std::vector<P2<S>>& samples,
                                         double tol, long level)
{
    EdgeCancellationReport r;
    r.tol = tol;
    r.expected_level = level;
    for (std::size_t i = 0; i < v.size() / 2; ++i) {
        auto d = direction_residual(v, i, trans, lo, hi);
        r.max_residual = std::max(r.max_residual, d.residual);
        r.directions.push_back(d);
    }
    P2<S> plo = v.front(), phi = v.front();
    for (const auto& p : v) {
        plo = {std::min(plo.x, p.x), std::min(plo.y, p.y)};
        phi = {std::max(phi.x, p.x), std::max(phi.y, p.y)};
    }
    r.samples = samples.size();
    for (const auto& x : samples) {
        long c = 0;
        for (const auto& t : trans) {
            P2<S> y = minus(x, t);
            if (y.x < plo.x || y.x > phi.x || y.y < plo.y || y.y > phi.y) continue;
            if (point_in(v, y)) ++c;
        }
        if (c != level) {
            ++r.coverage_mismatches;
            if (!r.coverage_witness) {
                r.coverage_witness = Real2{as_double(x.x), as_double(x.y)};
                r.witness_coverage = c;
            }
        }
    }
    r.passed = r.max_residual < tol && r.coverage_mismatches == 0;
    return r;
}

template <class S>
bool symmetric_impl(const std::vector<P2<S>>& v, double tol)
{
    S cx = S(0), cy = S(0);
    for (const auto& p : v) {
        cx += p.x;
        cy += p.y;
    }
    cx /= S(static_cast<long>(v.size()));
    cy /= S(static_cast<long>(v.size()));
    for (const auto& p : v) {
        P2<S> m{2 * cx - p.x, 2 * cy - p.y};
        bool found = false;
        for (const auto& q : v) {
            if constexpr (std::is_same_v<S, double>)
                found = std::abs(q.x - m.x) <= tol && std::abs(q.y - m.y) <= tol;
            else
                found = q.x == m.x && q.y == m.y;
            if (found) break;
        }
        if (!found) return false;
    }
    return true;
}

std::vector<P2<Rational>> to_p2(const std::vector<Vec>& v)
{
    std::vector<P2<Rational>> out;
    for (const auto& p : v) out.push_back({p[0], p[1]});
    return out;
}

std::vector<P2<double>> to_p2(const std::vector<Real2>& v)
{
    std::vector<P2<double>> out;
    for (const auto& p : v) out.push_back({p[0], p[1]});
    return out;
}

int orientation(const Vec& a, const Vec& b, const Vec& c)
{
    return sgn((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

bool on_segment(const Vec& a, const Vec& b, const Vec& p)
{
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
           p[1] <= std::max(a[1], b[1]);
}

bool segments_meet(const Vec& a, const Vec& b, const Vec& c, const Vec& d)
{
    int o1 = orientation(a, b, c), o2 = orientation(a, b, d), o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

// Outward normal direction with first nonzero coordinate +-1, and the signed multiple.
std::pair<Vec, Rational> normal_class(const Vec& n)
{
    Rational lead = n[0] != 0 ? n[0] : n[1];
    Rational mag = abs_of(lead);
    Vec dir = scale(n, 1 / mag);
    if (lead < 0) dir = scale(dir, -1);
    return {dir, lead < 0 ? -mag : mag};
}

} // namespace

Polygon2D::Polygon2D(std::vector<Vec> vertices) : vertices_(std::move(vertices))
{
    const std::size_t n = vertices_.size();
    if (n < 3) throw DomainError("a polygon needs at least three vertices");
    for (const auto& p : vertices_)
        if (p.size() != 2) throw DomainError("polygon vertices must be planar");
    for (std::size_t i = 0; i < n; ++i)
        if (vertices_[i] == vertices_[(i + 1) % n]) throw DomainError("repeated polygon vertex");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_meet(vertices_[i], vertices_[(i + 1) % n], vertices_[j], vertices_[(j + 1) % n]))
                throw DomainError("polygon is not simple");
        }
    if (area() <= 0) throw DomainError("polygon vertices must be counterclockwise with positive area");
}

Rational Polygon2D::area() const
{
    Rational a = 0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = vertices_[i];
        const auto& q = vertices_[(i + 1) % n];
        a += p[0] * q[1] - p[1] * q[0];
    }
    return a / 2;
}

bool Polygon2D::contains(const Vec& x) const { return point_in(to_p2(vertices_), P2<Rational>{x[0], x[1]}); }

double RealPolygon::area() const
{
    double a = 0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) a += vertices[i][0] * vertices[(i + 1) % n][1] - vertices[i][1] * vertices[(i + 1) % n][0];
    return a / 2;
}

bool RealPolygon::contains(const Real2& x) const { return point_in(to_p2(vertices), P2<double>{x[0], x[1]}); }

RealPolygon to_real(const Polygon2D& p)
{
    RealPolygon r;
    for (const auto& v : p.vertices()) r.vertices.push_back({to_double(v[0]), to_double(v[1])});
    return r;
}

RealPolygon regular_hexagon(double side)
{
    RealPolygon h;
    for (int k = 0; k < 6; ++k) {
        double a = k * std::numbers::pi / 3;
        h.vertices.push_back({side * std::cos(a), side * std::sin(a)});
    }
    return h;
}

RealLattice2D hexagonal_lattice(double side)
{
    const double r3 = std::sqrt(3.0);
    return RealLattice2D{{1.5 * side, 0.5 * r3 * side}, {0.0, r3 * side}, {0.0, 0.0}};
}

std::vector<Real2> RealLattice2D::points_in_box(const Real2& lo, const Real2& hi) const
{
    const double det = b1[0] * b2[1] - b1[1] * b2[0];
    if (det == 0.0) throw SingularLatticeError("lattice generators are parallel");
    double amin = 1e300, amax = -1e300, cmin = 1e300, cmax = -1e300;
    for (double x : {lo[0], hi[0]})
        for (double y : {lo[1], hi[1]}) {
            double px = x - offset[0], py = y - offset[1];
            double a = (px * b2[1] - py * b2[0]) / det;
            double c = (b1[0] * py - b1[1] * px) / det;
            amin = std::min(amin, a);
            amax = std::max(amax, a);
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
    std::vector<Real2> out;
    const double slack = 1e-12;
    for (long a = static_cast<long>(std::floor(amin)) - 1; a <= static_cast<long>(std::ceil(amax)) + 1; ++a)
        for (long c = static_cast<long>(std::floor(cmin)) - 1; c <= static_cast<long>(std::ceil(cmax)) + 1; ++c) {
            Real2 p{offset[0] + a * b1[0] + c * b2[0], offset[1] + a * b1[1] + c * b2[1]};
            if (p[0] >= lo[0] - slack && p[0] <= hi[0] + slack && p[1] >= lo[1] - slack && p[1] <= hi[1] + slack)
                out.push_back(p);
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool central_symmetry_check(const Polygon2D& p) { return symmetric_impl(to_p2(p.vertices()), 0.0); }

bool central_symmetry_check(const RealPolygon& p, double tol) { return symmetric_impl(to_p2(p.vertices), tol); }

EdgeCancellationReport verify_polygon_edge_cancellation(const Polygon2D& p, const TranslationSet& t, const Vec& lo,
                                                        const Vec& hi, std::size_t samples, double tol,
                                                        const Rational& level, std::uint64_t seed)
{
    if (!central_symmetry_check(p)) throw PreconditionError("edge pairing needs a centrally symmetric polygon");
    if (!is_integer(level)) throw DomainError("polygon coverage level must be an integer");
    Vec plo = p.vertices().front(), phi = plo;
    for (const auto& v : p.vertices())
        for (std::size_t i = 0; i < 2; ++i) {
            plo[i] = std::min(plo[i], v[i]);
            phi[i] = std::max(phi[i], v[i]);
        }
    auto trans = translations_in_box(t, sub(lo, phi), sub(hi, plo));
    auto pts = halton_points(lo, hi, samples, seed);
    return cancellation_impl(to_p2(p.vertices()), to_p2(trans), P2<Rational>{lo[0], lo[1]}, P2<Rational>{hi[0], hi[1]},
                             to_p2(pts), tol, level.get_num().get_si());
}

EdgeCancellationReport verify_polygon_edge_cancellation(const RealPolygon& p, const RealLattice2D& lattice,
                                                        const Real2& lo, const Real2& hi, std::size_t samples,
                                                        double tol, long level, std::uint64_t seed)
{
    if (p.vertices.size() < 4 || p.vertices.size() % 2 != 0 || !central_symmetry_check(p, 1e-9))
        throw PreconditionError("edge pairing needs a centrally symmetric polygon");
    Real2 plo = p.vertices.front(), phi = plo;
    for (const auto& v : p.vertices)
        for (std::size_t i = 0; i < 2; ++i) {
            plo[i] = std::min(plo[i], v[i]);
            phi[i] = std::max(phi[i], v[i]);
        }
    auto trans = lattice.points_in_box({lo[0] - phi[0], lo[1] - phi[1]}, {hi[0] - plo[0], hi[1] - plo[1]});
    std::vector<Real2> pts;
    for (const auto& x : halton_points({parse_rational("0"), parse_rational("0")}, {Rational(1), Rational(1)}, samples, seed))
        pts.push_back({lo[0] + (hi[0] - lo[0]) * to_double(x[0]), lo[1] + (hi[1] - lo[1]) * to_double(x[1])});
    return cancellation_impl(to_p2(p.vertices), to_p2(trans), P2<double>{lo[0], lo[1]}, P2<double>{hi[0], hi[1]},
                             to_p2(pts), tol, level);
}

std::vector<FaceBalance> face_balance_check(const Polygon2D& p)
{
    std::map<std::vector<std::string>, FaceBalance> classes;
    std::vector<std::vector<std::string>> order;
    const auto& v = p.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        Vec e = sub(v[(i + 1) % v.size()], v[i]);
        Vec n{e[1], -e[0]};
        auto [dir, mult] = normal_class(n);
        std::vector<std::string> key{to_string(dir[0]), to_string(dir[1])};
        auto [it, fresh] = classes.try_emplace(key);
        if (fresh) {
            it->second.direction = dir;
            order.push_back(key);
        }
        if (mult > 0)
            it->second.plus += mult;
        else
            it->second.minus -= mult;
    }
    std::vector<FaceBalance> out;
    for (const auto& key : order) {
        FaceBalance f = classes[key];
        double len = std::sqrt(to_double(dot(f.direction, f.direction)));
        f.plus_measure = to_double(f.plus) * len;
        f.minus_measure = to_double(f.minus) * len;
        f.balanced = f.plus == f.minus;
        out.push_back(f);
    }
    return out;
}

std::vector<FaceBalance> face_balance_check(const BoxUnionTile& tile)
{
    const std::size_t d = tile.dim();
    std::vector<std::vector<Rational>> cuts(d);
    for (const auto& b : tile.boxes())
        for (std::size_t i = 0; i < d; ++i) {
            cuts[i].push_back(b.corner[i]);
            cuts[i].push_back(b.corner[i] + b.widths[i]);
        }
    for (auto& c : cuts) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::vector<std::size_t> n(d), stride(d, 1);
    for (std::size_t i = 0; i < d; ++i) n[i] = cuts[i].size() - 1;
    for (std::size_t i = d; i-- > 1;) stride[i - 1] = stride[i] * n[i];
    std::size_t total = stride[0] * n[0];
    std::vector<char> occupied(total, 0);
    std::vector<std::size_t> k(d, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        Vec mid(d);
        for (std::size_t i = 0; i < d; ++i) {
            k[i] = (idx / stride[i]) % n[i];
            mid[i] = (cuts[i][k[i]] + cuts[i][k[i] + 1]) / 2;
        }
        occupied[idx] = tile.value_at(mid) != 0;
    }
    std::vector<FaceBalance> out(d);
    for (std::size_t axis = 0; axis < d; ++axis) {
        out[axis].direction = zero_vec(d);
        out[axis].direction[axis] = 1;
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (!occupied[idx]) continue;
        Rational vol = 1;
        for (std::size_t i = 0; i < d; ++i) {
            k[i] = (idx / stride[i]) % n[i];
            vol *= cuts[i][k[i] + 1] - cuts[i][k[i]];
        }
        for (std::size_t axis = 0; axis < d; ++axis) {
            Rational face = vol / (cuts[axis][k[axis] + 1] - cuts[axis][k[axis]]);
            bool up_open = k[axis] + 1 == n[axis] || !occupied[idx + stride[axis]];
            bool down_open = k[axis] == 0 || !occupied[idx - stride[axis]];
            if (up_open) out[axis].plus += face;
            if (down_open) out[axis].minus += face;
        }
    }
    for (auto& f : out) {
        f.plus_measure = to_double(f.plus);
        f.minus_measure = to_double(f.minus);
        f.balanced = f.plus == f.minus;
    }
    return out;
}

bool all_balanced(const std::vector<FaceBalance>& balance)
{
    return std::all_of(balance.begin(), balance.end(), [](const FaceBalance& f) { return f.balanced; });
}

} // namespace tilinglab
