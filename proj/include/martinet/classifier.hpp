/*
 * classifier.hpp
 * --------------
 * Classification of singular Lagrangian germs L = (alpha, f) on the
 * plane up to variational equivalence (alpha -> alpha + dxi, f -> f +
 * const, composed with diffeomorphisms). Four generic classes:
 *
 *   lnf0: omega(0) != 0, df(0) != 0                 (no invariant)
 *   lnf1: omega(0) != 0, f Morse                    (invariant phi)
 *   lnf2: Martinet, f|_H regular                    (sign only)
 *   lnf3: Martinet, f regular, f|_H Morse           (invariant psi)
 *
 * The classifier only ever evaluates exact rational data at the origin;
 * there are no numeric thresholds. Reported invariant series are
 * normalized so that the normal-form germ built from the same series
 * classifies back to it: for lnf1 and lnf3 the report carries the
 * series parametrizing f in the normal form, i.e. the compositional
 * inverse of the t v(t) produced by the Vey substitution.
 *
 * Over the rationals some real rescalings are unavailable (they need
 * square roots), so a residual positive rational `scale` accompanies
 * the invariant; it is 1 on every orbit of a normal form under rational
 * coordinate changes.
 */
#pragma once

#include <optional>
#include <string>

#include "normalizer.hpp"

namespace martinet {

struct LagrangianGerm {
    OneForm alpha; // potential of the gyroscopic 1-form, omega = d(alpha)
    Poly f;        // scalar potential
};

enum class LagrangianClass { lnf0, lnf1, lnf2, lnf3, nongeneric };

inline const char* to_string(LagrangianClass c) {
    switch (c) {
        case LagrangianClass::lnf0: return "lnf0";
        case LagrangianClass::lnf1: return "lnf1";
        case LagrangianClass::lnf2: return "lnf2";
        case LagrangianClass::lnf3: return "lnf3";
        default: return "nongeneric";
    }
}

struct GenericityConditions {
    bool omega_nonzero = false;         // omega(0) != 0
    bool martinet = false;              // omega(0) = 0, dg(0) != 0
    bool f_regular = false;             // df(0) != 0
    bool hessian_nondegenerate = false; // when df(0) = 0
    bool restriction_critical = false;  // d(f|_H)(0) = 0, Martinet case
    bool restriction_morse = false;     // (f|_H)''(0) != 0
};

struct ClassificationReport {
    LagrangianClass tag = LagrangianClass::nongeneric;
    int sign = 0;              // lnf2: sign in x1^2/2 x2' + sign*x2;
                               // lnf3: sign of the y^2 coefficient
    std::string signature;     // lnf1 Hessian signature: "++", "+-", "--"
    std::optional<Series> invariant; // phi (lnf1) or psi (lnf3)
    std::optional<PlaneMap> normalizer;
    Rational scale = Rational(1); // residual rational scale (1 when exact)
    GenericityConditions conditions;
    std::string reason;             // set for nongeneric germs
    std::optional<BoundaryGerm> germ; // local algebra used (lnf1/lnf3)
};

inline OneForm gauge_reduce(const OneForm& alpha, const Poly& xi) {
    return alpha + exterior_derivative(xi);
}

namespace detail {

// Solve g(chi(y), y) = 0 with chi(0) = 0, assuming g_x(0) != 0.
// Plain iteration chi <- chi - g(chi, y)/g_x(0) gains one level a step.
inline Poly solve_curve(const Poly& g, bool x_of_y, const Grading& gr,
                        long cap) {
    const Poly& gsw = g;
    Rational lead = x_of_y ? g.dx().eval00() : g.dy().eval00();
    if (lead == 0) throw invariant_violation("curve solve needs a regular direction");
    Poly chi;
    long min_w = std::min(gr.wx, gr.wy);
    for (long it = 0; it <= cap / std::max(min_w, 1L) + 2; ++it) {
        Poly val = x_of_y ? gsw.substitute(chi, Poly::y(), gr, cap)
                          : gsw.substitute(Poly::x(), chi, gr, cap);
        Poly next = (chi - val * (Rational(1) / lead)).truncate(gr, cap);
        if (next == chi) break;
        chi = next;
    }
    Poly residue = x_of_y ? gsw.substitute(chi, Poly::y(), gr, cap)
                          : gsw.substitute(Poly::x(), chi, gr, cap);
    if (!residue.is_zero())
        throw invariant_violation("implicit curve solve failed");
    return chi;
}

// Restriction of f to the curve {g = 0} as a univariate polynomial in
// the surviving coordinate; index k holds the k-th Taylor coefficient.
inline std::vector<Rational> restrict_to_curve(const Poly& f, const Poly& g,
                                               long cap) {
    const Grading gr{1, 1};
    bool x_of_y = g.dx().eval00() != 0;
    Poly chi = solve_curve(g, x_of_y, gr, cap);
    Poly r = x_of_y ? f.substitute(chi, Poly::y(), gr, cap)
                    : f.substitute(Poly::x(), chi, gr, cap);
    std::vector<Rational> out(static_cast<size_t>(cap) + 1, Rational(0));
    for (const auto& [m, c] : r.terms()) {
        int k = x_of_y ? m.ey : m.ex;
        if (m.ex + m.ey != k)
            throw invariant_violation("restriction is not univariate");
        if (k <= cap) out[k] = c;
    }
    return out;
}

struct MorseNormalization {
    PlaneMap map; // f o map = a x^2 + c y^2 exactly through the cap
    Rational a, c;
};

// Ordinary Morse normalization over Q: rational congruence
// diagonalization of the quadratic part, then degreewise absorption of
// higher terms into the Jacobian ideal (2a x, 2c y).
inline MorseNormalization morse_normalize(const Poly& f_in, long cap) {
    const Grading gr{1, 1};
    Poly f = f_in.truncate(gr, cap);
    PlaneMap total = PlaneMap::identity(gr, cap);

    auto apply = [&](const PlaneMap& t) {
        total = compose(total, t);
        f = pullback(t, f);
    };

    Rational A = f.coeff({2, 0}), B = f.coeff({1, 1}), C = f.coeff({0, 2});
    if (Rational(4) * A * C - B * B == 0)
        throw precondition_error("degenerate quadratic part");
    if (A == 0 && C == 0) {
        apply(PlaneMap(Poly::x(), Poly::x() + Poly::y(), gr, cap));
        A = f.coeff({2, 0});
        B = f.coeff({1, 1});
        C = f.coeff({0, 2});
    }
    if (B != 0) {
        if (A != 0) {
            apply(PlaneMap(Poly::x() - Poly::monomial({0, 1}, B / (2 * A)),
                           Poly::y(), gr, cap));
        } else {
            apply(PlaneMap(Poly::x(),
                           Poly::y() - Poly::monomial({1, 0}, B / (2 * C)), gr,
                           cap));
        }
    }
    const Rational a = f.coeff({2, 0}), c = f.coeff({0, 2});
    if (a == 0 || c == 0)
        throw invariant_violation("diagonalization failed");

    for (long deg = 3; deg <= cap; ++deg) {
        Poly piece = f.graded_piece(gr, deg);
        if (piece.is_zero()) continue;
        Poly sx, sy; // f_deg = (2a x) sx + (2c y) sy
        for (const auto& [m, coeff] : piece.terms()) {
            if (m.ex >= 1)
                sx.add_term({m.ex - 1, m.ey}, coeff / (2 * a));
            else
                sy.add_term({m.ex, m.ey - 1}, coeff / (2 * c));
        }
        apply(PlaneMap(Poly::x() - sx, Poly::y() - sy, gr, cap));
    }

    Poly expect = Poly::monomial({2, 0}, a) + Poly::monomial({0, 2}, c);
    if (!(f == expect))
        throw invariant_violation("Morse normalization failed");
    return {total, a, c};
}

} // namespace detail

inline GenericityConditions genericity_check(const OneForm& alpha,
                                             const Poly& f, long cap = 16) {
    GenericityConditions out;
    TwoForm omega = exterior_derivative(alpha);
    const Poly& g = omega.c;
    out.omega_nonzero = g.eval00() != 0;
    out.f_regular = f.dx().eval00() != 0 || f.dy().eval00() != 0;
    if (!out.omega_nonzero) {
        out.martinet = g.dx().eval00() != 0 || g.dy().eval00() != 0;
        if (out.martinet) {
            auto r = detail::restrict_to_curve(f, g, std::max(cap, 4L));
            out.restriction_critical = r[1] == 0;
            out.restriction_morse = r[1] == 0 && r[2] != 0;
        }
    } else {
        Rational A = f.coeff({2, 0}), B = f.coeff({1, 1}), C = f.coeff({0, 2});
        out.hessian_nondegenerate = Rational(4) * A * C - B * B != 0;
    }
    return out;
}

inline ClassificationReport classify(const LagrangianGerm& L,
                                     long cap = kNoCap, size_t N = 8) {
    if (cap == kNoCap) cap = 2 * static_cast<long>(N) + 8;

    // The constant part of f is pure gauge. Inputs are exact polynomial
    // germs; everything the classification reads lives below the working
    // cap plus a safety margin, so clip high-degree data up front.
    // Total degree bounds every positive-weight level from below, so a
    // total-degree clip at cap + slack keeps every level the pipeline
    // can see.
    const Grading gclip{1, 1};
    const long data_cap = cap + 12;
    Poly f = L.f.truncate(gclip, data_cap);
    f.add_term({0, 0}, -f.eval00());

    TwoForm omega = exterior_derivative(L.alpha);
    omega.c = omega.c.truncate(gclip, data_cap);
    const Poly& g = omega.c;

    ClassificationReport rep;
    rep.conditions = genericity_check(L.alpha, f, cap);

    if (rep.conditions.omega_nonzero) {
        if (rep.conditions.f_regular) {
            rep.tag = LagrangianClass::lnf0;
            return rep;
        }
        if (!rep.conditions.hessian_nondegenerate) {
            rep.tag = LagrangianClass::nongeneric;
            rep.reason = "degenerate critical point (codimension > 2)";
            return rep;
        }
        // lnf1: normalize f to a x^2 + c y^2, decompose omega in the
        // ordinary Brieskorn module, canonicalize.
        auto morse = detail::morse_normalize(f, cap);
        TwoForm omega1 = pullback(morse.map, omega);
        Rational a = morse.a, c = morse.c;
        PlaneMap M = morse.map;

        const Grading gr{1, 1};
        Poly fhat = Poly::monomial({2, 0}, a) + Poly::monomial({0, 2}, c);
        WeightSystem w12(Rational(1) / 2, Rational(1) / 2);
        DecompositionResult dec = decompose_ordinary(omega1, fhat, w12, cap + 2);
        Series chat = dec.c[0];
        Rational c0 = chat.at_or_zero(0);
        if (c0 == 0)
            throw invariant_violation("symplectic form decomposed with c(0) = 0");
        if (c0 < 0) {
            // Swap x and y: flips the orientation, negates the series.
            PlaneMap swap(Poly::y(), Poly::x(), gr, cap);
            M = compose(M, swap);
            std::swap(a, c);
            fhat = Poly::monomial({2, 0}, a) + Poly::monomial({0, 2}, c);
            omega1 = pullback(swap, omega1);
            dec = decompose_ordinary(omega1, fhat, w12, cap + 2);
            chat = dec.c[0];
            c0 = chat.at_or_zero(0);
            if (c0 <= 0)
                throw invariant_violation("orientation normalization failed");
        }

        Series chi = (Rational(1) / c0) * chat.extended(std::max(chat.order(), N > 0 ? N - 1 : 0));
        Series phi = series_comp_inverse(series_integrate(chi).truncated(N), N);

        rep.tag = LagrangianClass::lnf1;
        rep.signature = (a > 0 ? (c > 0 ? "++" : "+-")
                                : (c > 0 ? "+-" : "--"));
        Rational ac = a * c;
        rep.scale = c0 * c0 / (ac < 0 ? -ac : ac);
        rep.invariant = phi;
        rep.normalizer = M;
        rep.germ = dec.germ;
        return rep;
    }

    if (!rep.conditions.martinet) {
        rep.tag = LagrangianClass::nongeneric;
        rep.reason = "codimension > 2";
        return rep;
    }

    if (!rep.conditions.restriction_critical) {
        // lnf2: flatten and read the orientation-coupled sign.
        const Grading gr{1, 1};
        PlaneMap flat = flatten_martinet_curve(g, cap, gr);
        PlaneMap inv_flat = invert_map(flat);
        TwoForm omega_flat = pullback(inv_flat, omega);
        Poly f_flat = pullback(inv_flat, f);
        Rational u0 = omega_flat.c.coeff({1, 0});
        Rational fy0 = f_flat.dy().eval00();
        if (u0 == 0 || fy0 == 0)
            throw invariant_violation("lnf2 flattening lost genericity");
        rep.tag = LagrangianClass::lnf2;
        rep.sign = (u0 * fy0 > 0) ? -1 : +1;
        rep.normalizer = inv_flat;
        return rep;
    }

    if (!rep.conditions.f_regular) {
        rep.tag = LagrangianClass::nongeneric;
        rep.reason = "f singular on the Martinet curve (codimension > 2)";
        return rep;
    }
    if (!rep.conditions.restriction_morse) {
        rep.tag = LagrangianClass::nongeneric;
        rep.reason = "degenerate tangency with the Martinet curve (codimension > 2)";
        return rep;
    }

    // lnf3: full boundary pipeline; the reported psi parametrizes f in
    // the normal form x1^2/2 x2' - psi(x1 + quad x2^2).
    NormalizePairResult np = normalize_pair(omega, f, 2 * (static_cast<long>(N) + 4), N);
    rep.tag = LagrangianClass::lnf3;
    rep.sign = np.quad > 0 ? +1 : -1;
    Rational qabs = np.quad < 0 ? -np.quad : np.quad;
    rep.scale = qabs;
    rep.invariant = series_comp_inverse(np.psi.truncated(N + 1), N + 1);
    rep.normalizer = np.phi;
    return rep;
}

inline ClassificationReport classify(const OneForm& alpha, const Poly& f,
                                     long cap = kNoCap, size_t N = 8) {
    return classify(LagrangianGerm{alpha, f}, cap, N);
}

} // namespace martinet
