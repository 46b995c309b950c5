/*
 * weights.hpp
 * -----------
 * Quasihomogeneous weight systems (m1, m2; 1): f(t^m1 x, t^m2 y) = t f(x, y).
 * The Euler field is E_f = m1 x d/dx + m2 y d/dy and M = m1 + m2. All
 * level bookkeeping is done with the integer grading denom*(m1, m2).
 */
#pragma once

#include <boost/multiprecision/integer.hpp>

#include "monomial.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace martinet {

struct WeightSystem {
    Rational m1;
    Rational m2;
    long denom = 1; // lcm of the weight denominators

    WeightSystem() = default;
    WeightSystem(const Rational& w1, const Rational& w2) : m1(w1), m2(w2) {
        if (m1 <= 0 || m2 <= 0)
            throw precondition_error("weights must be positive");
        Int l = boost::multiprecision::lcm(denominator(m1), denominator(m2));
        denom = l.convert_to<long>();
    }

    Rational M() const { return m1 + m2; }

    Rational quasidegree(Monomial m) const {
        return m1 * Rational(m.ex) + m2 * Rational(m.ey);
    }

    Grading grading() const {
        return Grading{(m1 * denom).convert_to<long>(),
                       (m2 * denom).convert_to<long>()};
    }

    // Eigenvalue of L_{E_f} on x^i y^j dx^dy: <m, b> + M. Always positive.
    Rational euler_eigenvalue(Monomial m) const { return quasidegree(m) + M(); }

    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

// True iff every support monomial of f sits at quasidegree exactly 1.
inline bool is_quasihomogeneous_of_degree_one(const Poly& f,
                                              const WeightSystem& w) {
    Grading g = w.grading();
    return f.is_quasihomogeneous(g, w.denom);
}

} // namespace martinet
