/*
 * francoise.hpp
 * -------------
 * Iterative decomposition of a 2-form in the deformation module of a
 * quasihomogeneous (boundary) singularity:
 *
 *   omega = x * sum_i c_i(f) e_i dx^dy + df^d(xi) + f^P * residual,
 *
 * built step by step from graded reduction, division by df via
 * inversion of the Euler operator, and the relative homotopy operator.
 * Every result carries an exact certificate; verify_certificate
 * recomputes it from scratch.
 *
 * The boundary-free variant decomposes in Omega^2 / df^d(Omega^0) with
 * the ordinary Jacobian ideal and no x-factor.
 */
#pragma once

#include <vector>

#include "forms.hpp"
#include "local_algebra.hpp"
#include "series.hpp"

namespace martinet {

inline constexpr long kDefaultMaxOrder = 32;

// Solve L_{E_f} theta = rhs coefficientwise: the Euler operator acts on
// x^i y^j dx^dy with eigenvalue m1 i + m2 j + M > 0.
inline TwoForm euler_invert(const WeightSystem& w, const TwoForm& rhs) {
    TwoForm theta;
    for (const auto& [m, c] : rhs.c.terms())
        theta.c.add_term(m, c / w.euler_eigenvalue(m));
    return theta;
}

// Primitive h of a closed 1-form pi with h(0,0) = 0, by the monomial
// rule x^i y^j dx -> x^{i+1} y^j / (i+j+1) and symmetrically for dy
// (the divisor is the total degree of the output monomial). When
// require_boundary is set, pi must lie in x*Omega^1_H and then h lands
// in (x^2) automatically.
inline Poly homotopy_potential(const OneForm& pi, bool require_boundary) {
    if (!exterior_derivative(pi).is_zero())
        throw precondition_error("not closed");
    if (require_boundary && !in_x_omega1_H(pi))
        throw precondition_error("1-form not in x*Omega^1_H");
    Poly h;
    for (const auto& [m, c] : pi.p.terms())
        h.add_term({m.ex + 1, m.ey}, c / Rational(m.ex + m.ey + 1));
    for (const auto& [m, c] : pi.q.terms())
        h.add_term({m.ex, m.ey + 1}, c / Rational(m.ex + m.ey + 1));
    if (!(exterior_derivative(h) == pi))
        throw invariant_violation("homotopy operator failed to invert d");
    if (require_boundary && !in_x_omega0_H(h))
        throw invariant_violation("homotopy potential left x*Omega^0_H");
    return h;
}

struct DivisionResult {
    TwoForm theta; // in x*Omega^2 (boundary case)
    Poly h;        // in x*Omega^0_H (boundary case), h(0,0) = 0 always
};

// Division lemma df ^ eta = f * theta + df ^ dh for eta in x*Omega^1_H:
// theta = L_{E_f}^{-1}(d eta), h = homotopy potential of eta - E_f . theta.
// The identity is verified exactly before returning.
inline DivisionResult divide_by_df(const BoundaryGerm& germ,
                                   const OneForm& eta) {
    if (germ.boundary && !in_x_omega1_H(eta))
        throw precondition_error("1-form not in x*Omega^1_H");
    const WeightSystem& w = germ.weights;
    TwoForm theta = euler_invert(w, exterior_derivative(eta));
    OneForm pi = eta - interior_euler(w, theta);
    Poly h = homotopy_potential(pi, germ.boundary);

    TwoForm lhs = wedge_df(germ.f, eta);
    TwoForm rhs = germ.f * theta + wedge_df(germ.f, exterior_derivative(h));
    if (!(lhs == rhs))
        throw invariant_violation("division identity df^eta = f theta + df^dh failed");
    return {theta, h};
}

struct DecompositionResult {
    BoundaryGerm germ;
    std::vector<Series> c; // length mu, coefficients of t^p
    Poly xi;
    TwoForm residual; // zero for polynomial input
    long iterations = 0;
};

inline bool verify_certificate(const DecompositionResult& r,
                               const TwoForm& omega) {
    Poly normal;
    for (size_t i = 0; i < r.germ.basis.size(); ++i) {
        Poly ci = compose_series_exact(r.c[i], r.germ.f);
        normal += ci.mul_monomial(r.germ.basis[i]);
    }
    if (r.germ.boundary) normal = normal.mul_monomial({1, 0});
    TwoForm recon = TwoForm{normal} +
                    wedge_df(r.germ.f, exterior_derivative(r.xi));
    Poly fpow(Rational(1));
    for (long k = 0; k < r.iterations; ++k) fpow = fpow * r.germ.f;
    recon = recon + TwoForm{fpow * r.residual.c};
    return recon == omega;
}

// The iteration: reduce the working coefficient, turn the cofactors
// into a 1-form vanishing on H, divide by df, accumulate, recurse on
// theta. Each pass lowers every quasidegree in the working form by one,
// so polynomial input terminates with zero residual.
inline DecompositionResult decompose(const TwoForm& omega,
                                     const BoundaryGerm& germ,
                                     long max_order = kDefaultMaxOrder) {
    if (germ.boundary && !in_x_omega2(omega))
        throw precondition_error("2-form not in x*Omega^2");

    DecompositionResult result;
    result.germ = germ;
    std::vector<std::vector<Rational>> coeffs(germ.mu);

    TwoForm working = omega;
    Poly fpow(Rational(1));
    long p = 0;
    while (true) {
        Poly gt = germ.boundary ? working.c.divide_by_x(1) : working.c;
        ReductionCertificate cert = graded_reduce(gt, germ);
        for (long i = 0; i < germ.mu; ++i) coeffs[i].push_back(cert.c[i]);

        OneForm eta;
        if (germ.boundary) {
            // g = sum c_i e_i + p (x f_x) + q f_y, eta~ = -q dx + x p dy,
            // eta = x eta~ keeps eta in x*Omega^1_H by construction.
            eta = OneForm{-cert.q.mul_monomial({1, 0}),
                          cert.p.mul_monomial({2, 0})};
        } else {
            eta = OneForm{-cert.q, cert.p};
        }

        if (eta.is_zero()) {
            result.iterations = p + 1;
            break;
        }
        DivisionResult div = divide_by_df(germ, eta);
        result.xi += fpow * div.h;
        working = div.theta;
        fpow = fpow * germ.f;
        ++p;
        if (working.is_zero()) {
            result.iterations = p;
            break;
        }
        if (p >= max_order) {
            result.iterations = p;
            result.residual = working; // flagged: nonzero residual
            break;
        }
    }

    size_t order = result.iterations > 0 ? result.iterations - 1 : 0;
    for (long i = 0; i < germ.mu; ++i) {
        std::vector<Rational> padded = coeffs[i];
        padded.resize(order + 1, Rational(0));
        result.c.push_back(Series(std::move(padded)));
    }
    if (result.residual.is_zero() && !verify_certificate(result, omega))
        throw invariant_violation("decomposition certificate failed");
    return result;
}

inline DecompositionResult decompose_ordinary(const TwoForm& omega,
                                              const Poly& f,
                                              const WeightSystem& w,
                                              long max_order = kDefaultMaxOrder) {
    BoundaryGerm germ = milnor_ordinary(f, w);
    return decompose(omega, germ, max_order);
}

} // namespace martinet
