/*
 * normalizer.hpp
 * --------------
 * Coordinate normalizations for the nondegenerate boundary pair:
 *   - flatten a Martinet curve {g = 0} to {x = 0},
 *   - reduce an A1-type boundary function to x + a y^2 (a = +-1
 *     whenever the y^2-coefficient is a perfect rational square;
 *     otherwise the rational residual scale is kept and reported),
 *   - solve the Vey ODE (2/5) t w' + w = c, w(0) = 1, and build the
 *     normalizing map Phi = (x v(f), y v(f)^{1/2}) with its exact
 *     pullback certificate Phi^*(x dx^dy) = x c(f) dx^dy,
 *   - run the whole pipeline on a pair (omega, f).
 *
 * Everything is exact; every stage verifies its own identity before
 * returning.
 */
#pragma once

#include "francoise.hpp"
#include "plane_map.hpp"
#include "series.hpp"

namespace martinet {

inline const Grading kA1Grading{2, 1}; // weights (1, 1/2), denom 2

// Multiplicative inverse of a unit polynomial as a truncated series in
// two variables, by Newton iteration Z <- Z(2 - PZ).
inline Poly poly_unit_inverse(const Poly& p, const Grading& g, long cap) {
    Rational p0 = p.eval00();
    if (p0 == 0) throw precondition_error("polynomial is not a unit");
    Poly z(Rational(1) / p0);
    Poly two(Rational(2));
    long steps = 2;
    for (long c = 1; c < std::max(cap, 1L); c *= 2) ++steps;
    for (long k = 0; k < steps; ++k)
        z = mul_trunc(z, two - mul_trunc(p, z, g, cap), g, cap);
    if (!(mul_trunc(p, z, g, cap) == Poly(Rational(1))))
        throw invariant_violation("unit inversion failed");
    return z;
}

inline Poly poly_from_y_series(const Series& s) {
    Poly p;
    for (size_t k = 0; k <= s.order(); ++k)
        p.add_term({0, static_cast<int>(k)}, s[k]);
    return p;
}

// w_k = 5 c_k / (5 + 2k): the coefficientwise solution of
// (2/5) t w' + w = c with w(0) = 1, equal to the integral solution
// t^{-5/2} int_0^t (5/2) s^{3/2} c(s) ds termwise.
inline Series solve_vey_ode(const Series& c) {
    if (c.at_or_zero(0) != 1)
        throw precondition_error("invariant not normalized");
    Series w(c.order());
    for (size_t k = 0; k <= c.order(); ++k)
        w[k] = Rational(5) * c[k] / Rational(5 + 2 * static_cast<long>(k));
    return w;
}

struct NormalizationResult {
    PlaneMap map; // Phi
    Series psi;   // psi(t) = t v(t), psi(0) = 0, psi'(0) = 1
    Series w;     // v^{5/2}
    Series v;
    Series c; // the input invariant
    long cap = kNoCap;
    Rational quad = Rational(1); // coefficient a in f = x + a y^2
};

// Build Phi = (x v(f), y v(f)^{1/2}) for f = x + quad * y^2 and verify
// the exact pullback identity Phi^*(x dx^dy) = x c(f) dx^dy through the
// cap. Treats c as an exact polynomial, so the series data can be
// extended as far as the cap requires.
inline NormalizationResult build_morse_normalizer(const Series& c, long cap,
                                                  const Rational& quad = Rational(1)) {
    if (c.at_or_zero(0) != 1)
        throw precondition_error("invariant not normalized");
    if (quad == 0) throw precondition_error("degenerate quadratic part");
    const Grading g = kA1Grading;
    if (cap == kNoCap) cap = 2 * (static_cast<long>(c.order()) + 4);

    const size_t K =
        std::max(c.order(), static_cast<size_t>(std::max(cap, 0L) / 2 + 2));
    Series w = solve_vey_ode(c.extended(K));
    Series v = series_power(w, Rational(2) / 5, K);
    Series sqrt_v = series_power(w, Rational(1) / 5, K); // v^{1/2} = w^{1/5}

    Poly fhat = Poly::x() + Poly::monomial({0, 2}, quad);
    Poly vx = (Poly::x() * compose_series(v, fhat, g, cap)).truncate(g, cap);
    Poly vy = (Poly::y() * compose_series(sqrt_v, fhat, g, cap)).truncate(g, cap);
    PlaneMap phi(vx, vy, g, cap);

    TwoForm lhs = pullback(phi, TwoForm{Poly::x()});
    Poly rhs = (Poly::x() * compose_series(c.extended(K), fhat, g, cap))
                   .truncate(g, cap);
    if (!(lhs.c == rhs))
        throw invariant_violation("normalizer pullback identity failed");

    NormalizationResult result;
    result.map = phi;
    result.v = v;
    result.w = w.truncated(c.order());
    result.c = c;
    result.cap = cap;
    result.quad = quad;
    Series psi(c.order() + 1);
    for (size_t k = 1; k <= c.order() + 1; ++k) psi[k] = v.at_or_zero(k - 1);
    result.psi = psi;
    return result;
}

// Coordinates (g, y) (or (g, x) when g_x(0) = 0) flatten the curve
// {g = 0} onto {x = 0}: the pullback of the new x is g.
inline PlaneMap flatten_martinet_curve(const Poly& g, long cap,
                                       const Grading& grading = kA1Grading) {
    if (g.eval00() != 0)
        throw precondition_error("not a Martinet point: curve misses origin");
    Rational gx = g.dx().eval00(), gy = g.dy().eval00();
    if (gx == 0 && gy == 0)
        throw precondition_error("not a Martinet point: dg(0) = 0");
    PlaneMap m = (gx != 0) ? PlaneMap(g, Poly::y(), grading, cap)
                           : PlaneMap(g, Poly::x(), grading, cap);
    if (!m.invertible_linear_part())
        throw invariant_violation("flattening map is singular");
    return m;
}

struct A1Normalization {
    PlaneMap map;  // boundary-preserving, f o map = x + quad * y^2
    Rational quad; // +-1 when |f_yy(0)/2| is a perfect rational square
};

// One-variable Morse normalization of f(0, y) by y -> y u(y) (solved as
// the compositional inverse of z sqrt(U(z))), then x -> x B(x, y)
// absorbing the x-dependent unit.
inline A1Normalization normalize_A1_boundary(const Poly& f, long cap,
                                             const Grading& grading = kA1Grading) {
    if (f.eval00() != 0) throw precondition_error("f(0,0) != 0");
    if (f.dx().eval00() == 0)
        throw precondition_error("f not regular at 0 transversally to H");
    std::vector<Rational> r = f.restrict_to_boundary();
    if (r.size() > 1 && r[1] != 0)
        throw precondition_error("f|_H not critical at 0");
    if (r.size() < 3 || r[2] == 0)
        throw precondition_error("f|_H not Morse at 0");
    const Rational a0 = r[2];

    // f(0, z) = a0 z^2 U(z), U(0) = 1. Want g with f(0, g(y)) = a y^2:
    // g = G^{-1}(s y) for G(z) = z sqrt(U(z)).
    const size_t Ky = static_cast<size_t>(std::max(cap, 2L));
    Series U(Ky);
    U[0] = 1;
    for (size_t j = 1; j <= Ky; ++j)
        U[j] = (j + 2 < r.size()) ? r[j + 2] / a0 : Rational(0);
    Series sqrtU = series_power(U, Rational(1) / 2, Ky);
    Series G(Ky);
    for (size_t k = 1; k <= Ky; ++k) G[k] = sqrtU[k - 1];
    Series Ginv = series_comp_inverse(G, Ky);

    Rational s(1), root;
    Rational abs_a0 = a0 < 0 ? -a0 : a0;
    if (is_perfect_square(abs_a0, root)) s = Rational(1) / root;
    Series gy(Ky);
    Rational spow(1);
    for (size_t k = 1; k <= Ky; ++k) {
        spow *= s;
        gy[k] = Ginv[k] * spow;
    }
    const Rational a = a0 * s * s;

    PlaneMap psi1(Poly::x(), poly_from_y_series(gy), grading, cap);
    Poly F = pullback(psi1, f);
    Poly target = Poly::monomial({0, 2}, a);
    for (const auto& [m, coeff] : F.terms())
        if (m.ex == 0 && !(m == Monomial{0, 2} && coeff == a))
            throw invariant_violation("boundary Morse normalization failed");

    // F = x A + a y^2 = (x + a y^2) o M for M = (x A, y), so inverting M
    // absorbs the unit A into the x-coordinate.
    Poly A = (F - target).divide_by_x(1);
    PlaneMap psi2 =
        invert_map(PlaneMap((Poly::x() * A).truncate(grading, cap), Poly::y(),
                            grading, cap));

    PlaneMap phi = compose(psi1, psi2);
    Poly check = pullback(phi, f);
    if (!(check == (Poly::x() + target).truncate(grading, cap)))
        throw invariant_violation("A1 normalization identity failed");
    if (!phi.boundary_preserving())
        throw invariant_violation("A1 normalizer is not boundary-preserving");
    return {phi, a};
}

struct NormalizePairResult {
    PlaneMap phi;  // exact germ normalizer: pullbacks of (omega, f) along
                   // phi give (x c(fhat) dx^dy + dfhat^dxi, fhat) exactly
    Series psi;    // Vey invariant, psi(t) = t v(t)
    Series w, v, c;
    Rational quad; // fhat = x + quad * y^2
    Poly xi;
    BoundaryGerm germ;
    NormalizationResult vey;
};

// Pipeline: flatten the Martinet curve, push the pair forward,
// normalize f to x + a y^2, decompose omega, rescale so c(0) = 1 by
// (x, y/c0) (this preserves f-values and folds c0 into the quadratic
// coefficient), then solve the Vey ODE. Each stage verifies exactly.
inline NormalizePairResult normalize_pair(const TwoForm& omega, const Poly& f,
                                          long cap = kNoCap, size_t N = 8) {
    const Grading g = kA1Grading;
    if (cap == kNoCap) cap = 2 * (static_cast<long>(N) + 4);

    const Poly& gcoef = omega.c;
    if (gcoef.eval00() != 0 ||
        (gcoef.dx().eval00() == 0 && gcoef.dy().eval00() == 0))
        throw precondition_error("martinet stage: omega is not Martinet at 0");

    PlaneMap flat = flatten_martinet_curve(gcoef, cap, g);
    PlaneMap inv_flat = invert_map(flat);
    TwoForm omega1 = pullback(inv_flat, omega);
    Poly f1 = pullback(inv_flat, f);

    A1Normalization a1 = normalize_A1_boundary(f1, cap, g);
    TwoForm omega2 = pullback(a1.map, omega1);

    Poly fhat2 = Poly::x() + Poly::monomial({0, 2}, a1.quad);
    BoundaryGerm germ2 = milnor_boundary(fhat2, WeightSystem(Rational(1), Rational(1) / 2));
    DecompositionResult dec2 = decompose(omega2, germ2, cap + 2);
    if (!dec2.residual.is_zero())
        throw invariant_violation("decomposition left a residual");
    Rational c0 = dec2.c[0].at_or_zero(0);
    if (c0 == 0)
        throw invariant_violation("Martinet form decomposed with c(0) = 0");

    Rational mu_scale = Rational(1) / c0;
    PlaneMap scale(Poly::x(), Poly::monomial({0, 1}, mu_scale), g, cap);
    TwoForm omega3 = pullback(scale, omega2);
    Rational quad = a1.quad * mu_scale * mu_scale;

    Poly fhat = Poly::x() + Poly::monomial({0, 2}, quad);
    BoundaryGerm germ = milnor_boundary(fhat, WeightSystem(Rational(1), Rational(1) / 2));
    DecompositionResult dec = decompose(omega3, germ, cap + 2);
    Series chat = dec.c[0];
    if (chat.at_or_zero(0) != 1)
        throw invariant_violation("c(0) normalization failed");

    NormalizationResult vey = build_morse_normalizer(chat.extended(std::max(chat.order(), N)), cap, quad);

    PlaneMap phi = compose(compose(inv_flat, a1.map), scale);
    if (!(pullback(phi, f) == fhat.truncate(g, cap)))
        throw invariant_violation("composite germ normalization failed");

    NormalizePairResult out;
    out.phi = phi;
    out.psi = vey.psi.truncated(N + 1);
    out.w = vey.w;
    out.v = vey.v.truncated(N + 1);
    out.c = chat;
    out.quad = quad;
    out.xi = dec.xi;
    out.germ = germ;
    out.vey = vey;
    return out;
}

} // namespace martinet
