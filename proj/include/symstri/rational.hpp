#pragma once
// ============================================================================
// Exact rational arithmetic helpers.
//
// A single arbitrary-precision rational type backs every exact computation in
// the project: gram matrices, spectral values, Farey mediants, arc-cell
// endpoints, L1 masses.  Farey L1-mass accumulations take lcm's over
// thousands of arc denominators, which overflow any fixed-width integer, so
// the backing integers must be unbounded.
// ============================================================================

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symstri {

using BigInt = boost::multiprecision::cpp_int;
using Rat    = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline double rat_to_double(const Rat& r) { return r.template convert_to<double>(); }

/** Exact conversion of a finite double into a rational (binary expansion). */
inline Rat rat_of_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_of_double: non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [1/2, 1)
    // 53 doublings make the mantissa integral.
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(mant);
    if (exp >= 0) {
        r *= Rat(BigInt(1) << exp);
    } else {
        r /= Rat(BigInt(1) << (-exp));
    }
    return r;
}

/** Parse "p", "-p", or "p/q" (q > 0 after normalization). */
inline Rat parse_rat(const std::string& s) {
    auto is_int_token = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int_token(s)) throw std::invalid_argument("not an integer");
            return Rat(BigInt(s));
        }
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (!is_int_token(ns) || !is_int_token(ds))
            throw std::invalid_argument("not an integer pair");
        BigInt num(ns), den(ds);
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rat: cannot parse '" + s + "' as p/q");
    }
}

/** Render as "p" or "p/q" in lowest terms. */
inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

/** Floor toward -infinity. */
inline BigInt rat_floor(const Rat& r) {
    BigInt n = rat_num(r), d = rat_den(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

inline BigInt rat_ceil(const Rat& r) { return -rat_floor(-r); }

/** Fractional part in [0, 1). */
inline Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

/** Distance to the nearest integer, in [0, 1/2]. */
inline Rat rat_dist_to_int(const Rat& r) {
    Rat f = rat_frac(r);
    Rat g = Rat(1) - f;
    return f < g ? f : g;
}

inline BigInt big_gcd(BigInt a, BigInt b) { return boost::multiprecision::gcd(a, b); }
inline BigInt big_lcm(BigInt a, BigInt b) { return boost::multiprecision::lcm(a, b); }

/** lcm of the denominators of a list of rationals (at least 1). */
inline BigInt lcm_denominators(const std::vector<Rat>& rs) {
    BigInt l = 1;
    for (const auto& r : rs) l = big_lcm(l, rat_den(r));
    return l;
}

} // namespace symstri
