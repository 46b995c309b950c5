/*
 * monomial.hpp
 * ------------
 * Bivariate monomials x^ex y^ey with the canonical graded-lex order
 * (total degree ascending, then x-power descending), and integer
 * quasidegree gradings. A Grading assigns level(x^i y^j) = wx*i + wy*j
 * with positive integer weights, so truncation by level is well defined
 * and commutes with the graded operators.
 */
#pragma once

#include <compare>
#include <cstdint>

#include "rational.hpp"

namespace martinet {

struct Monomial {
    int ex = 0;
    int ey = 0;

    int total_degree() const { return ex + ey; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical order: 1, x, y, x^2, xy, y^2, ...
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.total_degree() != b.total_degree())
            return a.total_degree() < b.total_degree();
        return a.ex > b.ex;
    }
};

inline bool grlex_less(const Monomial& a, const Monomial& b) {
    return GrlexLess{}(a, b);
}

struct Grading {
    long wx = 1;
    long wy = 1;

    long level(const Monomial& m) const {
        return wx * static_cast<long>(m.ex) + wy * static_cast<long>(m.ey);
    }
    friend bool operator==(const Grading&, const Grading&) = default;
};

inline constexpr long kNoCap = -1; // sentinel: no truncation

} // namespace martinet
