/*
 * forms.hpp
 * ---------
 * Differential forms on the plane with polynomial coefficients and the
 * exterior calculus the engine needs: d, wedge with df, and interior
 * product with the Euler field of a weight system.
 *
 * Boundary conventions (H = {x = 0}):
 *   x*Omega^0_H : functions in (x^2)
 *   x*Omega^1_H : P dx + Q dy with P in (x), Q in (x^2)
 *   x*Omega^2   : g dx^dy with g in (x)
 */
#pragma once

#include <variant>

#include "poly.hpp"
#include "weights.hpp"

namespace martinet {

struct OneForm {
    Poly p; // coefficient of dx
    Poly q; // coefficient of dy

    bool is_zero() const { return p.is_zero() && q.is_zero(); }
    friend bool operator==(const OneForm&, const OneForm&) = default;
    friend OneForm operator+(const OneForm& a, const OneForm& b) {
        return {a.p + b.p, a.q + b.q};
    }
    friend OneForm operator-(const OneForm& a, const OneForm& b) {
        return {a.p - b.p, a.q - b.q};
    }
    OneForm truncate(const Grading& g, long cap) const {
        return {p.truncate(g, cap), q.truncate(g, cap)};
    }
};

struct TwoForm {
    Poly c; // coefficient of dx^dy

    bool is_zero() const { return c.is_zero(); }
    friend bool operator==(const TwoForm&, const TwoForm&) = default;
    friend TwoForm operator+(const TwoForm& a, const TwoForm& b) {
        return {a.c + b.c};
    }
    friend TwoForm operator-(const TwoForm& a, const TwoForm& b) {
        return {a.c - b.c};
    }
    friend TwoForm operator*(const Poly& f, const TwoForm& w) {
        return {f * w.c};
    }
    friend TwoForm operator*(const Rational& s, const TwoForm& w) {
        return {s * w.c};
    }
    TwoForm truncate(const Grading& g, long cap) const {
        return {c.truncate(g, cap)};
    }
};

inline OneForm exterior_derivative(const Poly& f) { return {f.dx(), f.dy()}; }

inline TwoForm exterior_derivative(const OneForm& a) {
    return {a.q.dx() - a.p.dy()};
}

// df ^ eta = (f_x Q - f_y P) dx^dy.
inline TwoForm wedge_df(const Poly& f, const OneForm& eta) {
    return {f.dx() * eta.q - f.dy() * eta.p};
}

// E_f . (g dx^dy) = g (m1 x dy - m2 y dx).
inline OneForm interior_euler(const WeightSystem& w, const TwoForm& form) {
    return {(-w.m2) * form.c.mul_monomial({0, 1}),
            w.m1 * form.c.mul_monomial({1, 0})};
}

// E_f . (P dx + Q dy) = m1 x P + m2 y Q.
inline Poly interior_euler(const WeightSystem& w, const OneForm& form) {
    return w.m1 * form.p.mul_monomial({1, 0}) +
           w.m2 * form.q.mul_monomial({0, 1});
}

// Membership tests for the boundary subcomplexes.
inline bool in_x_omega0_H(const Poly& h) { return h.in_ideal_x(2); }
inline bool in_omega1_H(const OneForm& a) { return a.q.in_ideal_x(1); }
inline bool in_x_omega1_H(const OneForm& a) {
    return a.p.in_ideal_x(1) && a.q.in_ideal_x(2);
}
inline bool in_x_omega2(const TwoForm& w) { return w.c.in_ideal_x(1); }

// Degree-erased view used at the JSON/CLI boundary where the degree of
// a form is data, not a type.
using FormAny = std::variant<Poly, OneForm, TwoForm>;

inline int degree(const FormAny& f) { return static_cast<int>(f.index()); }

inline FormAny exterior_derivative(const FormAny& f) {
    if (std::holds_alternative<Poly>(f))
        return exterior_derivative(std::get<Poly>(f));
    if (std::holds_alternative<OneForm>(f))
        return exterior_derivative(std::get<OneForm>(f));
    throw precondition_error("top degree");
}

inline FormAny interior_euler(const WeightSystem& w, const FormAny& f) {
    if (std::holds_alternative<TwoForm>(f))
        return interior_euler(w, std::get<TwoForm>(f));
    if (std::holds_alternative<OneForm>(f))
        return interior_euler(w, std::get<OneForm>(f));
    throw precondition_error("interior product needs degree >= 1");
}

} // namespace martinet
