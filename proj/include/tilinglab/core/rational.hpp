#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tilinglab {

using Integer = mpz_class;
using Rational = mpq_class;
using Vec = std::vector<Rational>;

/// Serialises as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p", and finite decimals such as "-0.125" (converted exactly).
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
/// q - floor(q), in [0, 1).
Rational frac_of(const Rational& q);
Rational abs_of(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
std::vector<double> to_doubles(const Vec& v);

Vec make_vec(std::initializer_list<Rational> values);
Vec zero_vec(std::size_t dim);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rational& s);
Rational dot(const Vec& a, const Vec& b);
Rational max_abs(const Vec& a);
bool lex_less(const Vec& a, const Vec& b);

Integer lcm_of_denominators(const Vec& values);

std::string to_string(const Vec& v);

} // namespace tilinglab
