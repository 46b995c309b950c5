/*
 * rational.hpp
 * ------------
 * Exact arbitrary-precision integers and rationals, plus the error
 * taxonomy used across the library. Every coefficient in the engine is
 * a Rational; no floating point enters the symbolic layer.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace martinet {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Malformed external data (bad JSON, unparsable numbers). CLI exit 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition or genericity condition failed. CLI exit 3.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact identity that must hold by construction failed to verify.
struct invariant_violation : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw input_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(num, den);
}

inline int sign(const Rational& r) { return r.sign(); }

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::runtime_error& e) {
        throw input_error("bad rational literal '" + s + "'");
    }
}

// Decimal-free canonical form: "3", "-1/2".
inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

// True iff r = root^2 with root rational (root returned positive).
inline bool is_perfect_square(const Rational& r, Rational& root) {
    Int rn, rd;
    if (!is_perfect_square(numerator(r), rn)) return false;
    if (!is_perfect_square(denominator(r), rd)) return false;
    root = make_rational(rn, rd);
    return true;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw input_error("zero to a negative power");
        return Rational(1) / pow_rational(base, -e);
    }
    Rational acc(1), b = base;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

// Generalized binomial coefficient C(p, k) = p(p-1)...(p-k+1)/k! for
// rational p, used by the fractional-power series expansion.
inline Rational binomial(const Rational& p, long k) {
    Rational acc(1);
    for (long i = 0; i < k; ++i) {
        acc *= (p - Rational(i));
        acc /= Rational(i + 1);
    }
    return acc;
}

} // namespace martinet
