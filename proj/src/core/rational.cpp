#include "tilinglab/core/rational.hpp"

#include "tilinglab/core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tilinglab {

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Integer parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw DomainError("not an integer: '" + std::string(s) + "'");
    }
    Integer value(std::string(s), 10);
    return negative ? Integer(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) {
        throw DomainError("empty rational");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!den_text.empty() && den_text.front() == '-') {
            throw DomainError("denominator must be positive in '" + std::string(text) + "'");
        }
        Integer den = parse_integer(den_text);
        if (den == 0) {
            throw DomainError("zero denominator in '" + std::string(text) + "'");
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
            (int_part.empty() && frac_part.empty())) {
            throw DomainError("malformed decimal '" + std::string(text) + "'");
        }
        std::string digits = std::string(int_part) + std::string(frac_part);
        Integer num(digits.empty() ? std::string("0") : digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
        Rational q(negative ? Integer(-num) : num, den);
        q.canonicalize();
        return q;
    }
    return Rational(parse_integer(text));
}

Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational frac_of(const Rational& q)
{
    Rational r = q - Rational(floor_of(q));
    return r;
}

Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::vector<double> to_doubles(const Vec& v)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.get_d());
    return out;
}

Vec make_vec(std::initializer_list<Rational> values) { return Vec(values); }

Vec zero_vec(std::size_t dim) { return Vec(dim, Rational(0)); }

Vec add(const Vec& a, const Vec& b)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Vec& a, const Rational& s)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Rational dot(const Vec& a, const Vec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational max_abs(const Vec& a)
{
    Rational m = 0;
    for (const auto& x : a) {
        Rational v = abs_of(x);
        if (v > m) m = v;
    }
    return m;
}

bool lex_less(const Vec& a, const Vec& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Integer lcm_of_denominators(const Vec& values)
{
    Integer l = 1;
    for (const auto& q : values) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    return l;
}

std::string to_string(const Vec& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << to_string(v[i]);
    }
    os << ')';
    return os.str();
}

} // namespace tilinglab
