#include "tilinglab/tiling/translation_set.hpp"

#include "tilinglab/core/errors.hpp"

#include <algorithm>

namespace tilinglab {

namespace {

constexpr std::size_t kApPeriodCap = 1'000'000;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_union(const LatticeUnion& u)
{
    if (u.members.empty()) throw DomainError("lattice union is empty");
    for (const auto& m : u.members)
        if (m.dim() != u.members.front().dim()) throw DomainError("lattice union members differ in dimension");
}

} // namespace

Rational ShiftedColumns::shift(long column) const
{
    auto it = shifts.find(column);
    return it == shifts.end() ? Rational(0) : it->second;
}

LatticeUnion as_lattice_union(const ApUnion& ap)
{
    if (ap.progressions.empty()) throw DomainError("ap union is empty");
    LatticeUnion u;
    for (const auto& p : ap.progressions) {
        if (p.alpha <= 0) throw DomainError("progression steps must be positive");
        u.members.emplace_back(Matrix::diagonal({p.alpha}), Vec{p.beta});
    }
    return u;
}

std::size_t dimension_of(const TranslationSet& t)
{
    return std::visit(overloaded{[](const Lattice& l) { return l.dim(); },
                                 [](const LatticeUnion& u) {
                                     check_union(u);
                                     return u.members.front().dim();
                                 },
                                 [](const ApUnion&) { return std::size_t{1}; },
                                 [](const PointPatch& p) { return p.dim; },
                                 [](const ShiftedColumns&) { return std::size_t{2}; }},
                      t);
}

bool is_periodic(const TranslationSet& t)
{
    return std::holds_alternative<Lattice>(t) || std::holds_alternative<LatticeUnion>(t) ||
           std::holds_alternative<ApUnion>(t);
}

std::vector<Vec> translations_in_box(const TranslationSet& t, const Vec& lo, const Vec& hi, std::size_t cap)
{
    std::vector<Vec> out;
    auto append = [&](std::vector<Vec> pts) {
        if (out.size() + pts.size() > cap) throw CapacityError("translation enumeration exceeded the point cap", cap);
        for (auto& p : pts) out.push_back(std::move(p));
    };
    std::visit(overloaded{[&](const Lattice& l) { append(enumerate_box(l, lo, hi, cap)); },
                          [&](const LatticeUnion& u) {
                              check_union(u);
                              for (const auto& m : u.members) append(enumerate_box(m, lo, hi, cap));
                          },
                          [&](const ApUnion& ap) {
                              for (const auto& m : as_lattice_union(ap).members) append(enumerate_box(m, lo, hi, cap));
                          },
                          [&](const PointPatch& p) {
                              if (!p.exact) throw DomainError("exact enumeration needs a rational patch");
                              for (const auto& x : p.points) {
                                  bool inside = true;
                                  for (std::size_t i = 0; i < x.size() && inside; ++i)
                                      inside = x[i] >= lo[i] && x[i] <= hi[i];
                                  if (inside) out.push_back(x);
                              }
                          },
                          [&](const ShiftedColumns& c) {
                              if (lo.size() != 2 || hi.size() != 2) throw DomainError("shifted columns are planar");
                              for (Integer m = ceil_of(lo[0]); m <= floor_of(hi[0]); ++m) {
                                  Rational s = c.shift(m.get_si());
                                  for (Integer n = ceil_of(lo[1] - s); n <= floor_of(hi[1] - s); ++n) {
                                      if (out.size() >= cap)
                                          throw CapacityError("translation enumeration exceeded the point cap", cap);
                                      out.push_back({Rational(m), Rational(n) + s});
                                  }
                              }
                          }},
               t);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

Rational density_of(const TranslationSet& t)
{
    return std::visit(overloaded{[](const Lattice& l) -> Rational { return 1 / abs_of(lattice_determinant(l)); },
                                 [](const LatticeUnion& u) -> Rational {
                                     check_union(u);
                                     Rational s = 0;
                                     for (const auto& m : u.members) s += 1 / abs_of(lattice_determinant(m));
                                     return s;
                                 },
                                 [](const ApUnion& ap) -> Rational {
                                     Rational s = 0;
                                     for (const auto& p : ap.progressions) {
                                         if (p.alpha <= 0) throw DomainError("progression steps must be positive");
                                         s += 1 / p.alpha;
                                     }
                                     return s;
                                 },
                                 [](const PointPatch&) -> Rational {
                                     throw DomainError("a finite patch has no asymptotic density");
                                 },
                                 [](const ShiftedColumns&) -> Rational { return Rational(1); }},
                      t);
}

Lattice period_lattice(const TranslationSet& t)
{
    if (const auto* l = std::get_if<Lattice>(&t)) return l->group();
    const LatticeUnion* u = std::get_if<LatticeUnion>(&t);
    LatticeUnion converted;
    if (const auto* ap = std::get_if<ApUnion>(&t)) {
        converted = as_lattice_union(*ap);
        u = &converted;
    }
    if (u == nullptr) throw DomainError("translation set is not periodic; use sampled verification");
    check_union(*u);
    std::vector<Lattice> groups;
    for (const auto& m : u->members) groups.push_back(m.group());
    Lattice p = lattice_intersection(groups);
    if (std::holds_alternative<ApUnion>(t)) {
        Rational cells = 0;
        for (const auto& m : u->members) cells += abs_of(lattice_determinant(p)) / abs_of(lattice_determinant(m));
        if (cells > kApPeriodCap) throw CapacityError("progression period exceeds the cell cap", kApPeriodCap);
    }
    return p;
}

} // namespace tilinglab
