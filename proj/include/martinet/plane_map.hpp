/*
 * plane_map.hpp
 * -------------
 * Truncated polynomial self-maps of the plane fixing the origin:
 * composition, inversion by fixed-point iteration, and pullback of
 * functions and forms. Every map carries the grading and level cap it
 * was built with; jet arithmetic at that cap is exact because all
 * components vanish at the origin.
 */
#pragma once

#include "forms.hpp"
#include "poly.hpp"

namespace martinet {

struct PlaneMap {
    Poly fx; // image of x
    Poly fy; // image of y
    Grading grading;
    long cap = kNoCap;

    PlaneMap() = default;
    PlaneMap(Poly ix, Poly iy, Grading g, long cap_level)
        : fx(std::move(ix)), fy(std::move(iy)), grading(g), cap(cap_level) {
        if (fx.eval00() != 0 || fy.eval00() != 0)
            throw precondition_error("plane map must fix the origin");
        fx = fx.truncate(grading, cap);
        fy = fy.truncate(grading, cap);
    }

    static PlaneMap identity(Grading g, long cap_level) {
        return PlaneMap(Poly::x(), Poly::y(), g, cap_level);
    }

    // Linear part (a b; c d) acting as x -> ax+by, y -> cx+dy.
    struct Linear {
        Rational a, b, c, d;
        Rational det() const { return a * d - b * c; }
    };
    Linear linear_part() const {
        return {fx.coeff({1, 0}), fx.coeff({0, 1}), fy.coeff({1, 0}),
                fy.coeff({0, 1})};
    }
    bool invertible_linear_part() const { return linear_part().det() != 0; }
    bool boundary_preserving() const { return fx.in_ideal_x(1); }

    friend bool operator==(const PlaneMap&, const PlaneMap&) = default;
};

inline Poly pullback(const PlaneMap& m, const Poly& f) {
    return f.substitute(m.fx, m.fy, m.grading, m.cap);
}

inline Poly jacobian_det(const PlaneMap& m) {
    return mul_trunc(m.fx.dx(), m.fy.dy(), m.grading, m.cap) -
           mul_trunc(m.fx.dy(), m.fy.dx(), m.grading, m.cap);
}

inline OneForm pullback(const PlaneMap& m, const OneForm& a) {
    Poly P = pullback(m, a.p);
    Poly Q = pullback(m, a.q);
    return {mul_trunc(P, m.fx.dx(), m.grading, m.cap) +
                mul_trunc(Q, m.fy.dx(), m.grading, m.cap),
            mul_trunc(P, m.fx.dy(), m.grading, m.cap) +
                mul_trunc(Q, m.fy.dy(), m.grading, m.cap)};
}

inline TwoForm pullback(const PlaneMap& m, const TwoForm& w) {
    return {mul_trunc(pullback(m, w.c), jacobian_det(m), m.grading, m.cap)};
}

inline FormAny pullback(const PlaneMap& m, const FormAny& f) {
    return std::visit([&](const auto& v) -> FormAny { return pullback(m, v); },
                      f);
}

// Explicit-cap variant used at the operation surface.
inline FormAny pullback(const PlaneMap& m, const FormAny& f, long cap) {
    if (cap < 0) throw precondition_error("negative truncation cap");
    if (!m.invertible_linear_part())
        throw precondition_error("singular linear part");
    return pullback(PlaneMap(m.fx, m.fy, m.grading, cap), f);
}

// a . b : apply b first, then a. Gradings must agree; the tighter cap wins.
inline PlaneMap compose(const PlaneMap& a, const PlaneMap& b) {
    if (a.grading != b.grading)
        throw precondition_error("composing maps with different gradings");
    long cap = (a.cap == kNoCap) ? b.cap
               : (b.cap == kNoCap) ? a.cap
                                   : std::min(a.cap, b.cap);
    return PlaneMap(a.fx.substitute(b.fx, b.fy, a.grading, cap),
                    a.fy.substitute(b.fx, b.fy, a.grading, cap), a.grading,
                    cap);
}

// Inverse through the cap by fixed-point iteration on
// Psi = L^{-1} (id - N(Psi)), where m = L + N splits off the linear part.
inline PlaneMap invert_map(const PlaneMap& m) {
    auto L = m.linear_part();
    Rational det = L.det();
    if (det == 0) throw precondition_error("singular linear part");
    Rational ia = L.d / det, ib = -L.b / det, ic = -L.c / det, id = L.a / det;

    Poly nx = m.fx - Poly::monomial({1, 0}, L.a) - Poly::monomial({0, 1}, L.b);
    Poly ny = m.fy - Poly::monomial({1, 0}, L.c) - Poly::monomial({0, 1}, L.d);

    auto apply_linv = [&](const Poly& u, const Poly& v) {
        return std::pair<Poly, Poly>{ia * u + ib * v, ic * u + id * v};
    };

    auto [px, py] = apply_linv(Poly::x(), Poly::y());
    PlaneMap psi(px, py, m.grading, m.cap);
    long min_w = std::max(std::min(m.grading.wx, m.grading.wy), 1L);
    long full = (m.cap == kNoCap) ? 8 * min_w : m.cap;
    long max_iter = full / min_w + 2;
    // Each pass gains at least one correct level, so run early passes at
    // low caps; the last passes at the full cap dominate the cost.
    for (long it = 0; it < max_iter; ++it) {
        long capk = std::min(full, 2 * min_w + (it + 1) * min_w);
        Poly u = Poly::x() - nx.substitute(psi.fx, psi.fy, m.grading, capk);
        Poly v = Poly::y() - ny.substitute(psi.fx, psi.fy, m.grading, capk);
        auto [qx, qy] = apply_linv(u, v);
        PlaneMap next(qx, qy, m.grading, m.cap);
        if (capk == full && next == psi) break;
        psi = next;
    }
    PlaneMap round_trip = compose(m, psi);
    if (round_trip.fx != Poly::x().truncate(m.grading, m.cap) ||
        round_trip.fy != Poly::y().truncate(m.grading, m.cap))
        throw invariant_violation("map inversion failed to verify");
    return psi;
}

} // namespace martinet
