/*
 * flux.hpp
 * --------
 * Floating-point verification of the period-integral relation
 * t V'(t) = c(t) V0(t) on the vanishing half-cycle
 * gamma(t) = {x >= 0, x + y^2 = t} of the pair (x c(f) dx^dy, x + y^2):
 *
 *   V0(t) = int_{gamma(t)} alpha0,  alpha0 = x^2 dy - (xy/2) dx,
 *   V(t)  = int_{gamma(t)} A dy,    A(x,y) = int_0^x s c(s + y^2) ds.
 *
 * The primitive A dy with A(0, y) = 0 is the canonical choice: its
 * endpoint contributions on the Martinet curve vanish, so V is well
 * defined. The integrands restricted to gamma(t) are polynomials in the
 * parameter, so Gauss-Legendre quadrature is exact to rounding at the
 * default 64 nodes.
 */
#pragma once

#include <cmath>
#include <vector>

#include "poly.hpp"
#include "series.hpp"

namespace martinet {

struct QuadratureNode {
    double x;
    double w;
};

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on
// the Legendre recurrence.
inline std::vector<QuadratureNode> gauss_legendre(int n) {
    if (n < 1) throw precondition_error("quadrature needs at least one node");
    std::vector<QuadratureNode> out(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        out[i].x = x;
        out[i].w = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return out;
}

// alpha0 pulled back to gamma(t): x = t - y^2, dx = -2y dy gives the
// integrand x^2 + x y^2 = t (t - y^2).
inline double flux_V0(double t, int nodes = 64) {
    if (t <= 0) throw precondition_error("flux requires t > 0");
    if (nodes < 8) throw precondition_error("flux requires nodes >= 8");
    auto gl = gauss_legendre(nodes);
    double rt = std::sqrt(t);
    double acc = 0;
    for (const auto& node : gl) {
        double y = rt * node.x;
        double x = t - y * y;
        acc += node.w * (x * x + x * y * y);
    }
    return rt * acc;
}

// Exact canonical primitive A(x, y) = int_0^x s c(s + y^2) ds as a
// polynomial: sum_k c_k sum_m binom(k,m) x^{m+2} y^{2(k-m)} / (m+2).
inline Poly flux_primitive(const Series& c) {
    Poly A;
    for (size_t k = 0; k <= c.order(); ++k) {
        if (c[k] == 0) continue;
        for (size_t m = 0; m <= k; ++m) {
            Rational coef = c[k] * binomial(Rational(static_cast<long>(k)),
                                            static_cast<long>(m)) /
                            Rational(static_cast<long>(m) + 2);
            A.add_term({static_cast<int>(m + 2), static_cast<int>(2 * (k - m))},
                       coef);
        }
    }
    return A;
}

inline double flux_V(double t, const Series& c, int nodes = 64) {
    if (t <= 0) throw precondition_error("flux requires t > 0");
    if (nodes < 8) throw precondition_error("flux requires nodes >= 8");
    Poly A = flux_primitive(c);
    auto gl = gauss_legendre(nodes);
    double rt = std::sqrt(t);
    double acc = 0;
    for (const auto& node : gl) {
        double y = rt * node.x;
        acc += node.w * A.eval_double(t - y * y, y);
    }
    return rt * acc;
}

// Termwise integral of t V' = c V0: V(t) = (4/3) sum c_k t^{k+5/2}/(k+5/2).
inline double flux_V_series(double t, const Series& c) {
    double acc = 0;
    for (size_t k = 0; k <= c.order(); ++k) {
        double e = static_cast<double>(k) + 2.5;
        acc += to_double(c[k]) * std::pow(t, e) / e;
    }
    return (4.0 / 3.0) * acc;
}

struct FluxSample {
    double t = 0;
    double V = 0;
    double V0 = 0;
    double Vprime = 0;
    double residual = 0; // |t V' - c(t) V0| / max(1, |c(t) V0|)
};

inline FluxSample flux_sample(const Series& c, double t, double fd_step,
                              int nodes) {
    FluxSample s;
    s.t = t;
    s.V = flux_V(t, c, nodes);
    s.V0 = flux_V0(t, nodes);
    double h = fd_step * t;
    s.Vprime = (flux_V(t + h, c, nodes) - flux_V(t - h, c, nodes)) / (2 * h);
    double rhs = c.eval_double(t) * s.V0;
    s.residual = std::abs(t * s.Vprime - rhs) / std::max(1.0, std::abs(rhs));
    return s;
}

inline std::vector<FluxSample> flux_samples(const Series& c,
                                            const std::vector<double>& grid,
                                            double fd_step = 1e-5,
                                            int nodes = 64) {
    std::vector<FluxSample> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(flux_sample(c, t, fd_step, nodes));
    return out;
}

// Max relative residual of t V' = c V0 over the grid, checked both by
// finite differences and against the termwise series for V.
inline double check_flux_relation(const Series& c,
                                  const std::vector<double>& grid,
                                  double fd_step = 1e-5, int nodes = 64) {
    double worst = 0;
    for (double t : grid) {
        FluxSample s = flux_sample(c, t, fd_step, nodes);
        worst = std::max(worst, s.residual);
        double vs = flux_V_series(t, c);
        worst = std::max(worst,
                         std::abs(s.V - vs) / std::max(1.0, std::abs(vs)));
    }
    return worst;
}

// Least-squares fit of the first degree+1 coefficients of c from
// sampled c(t_i) = (3/4) t_i^{-3/2} V'(t_i), via modified Gram-Schmidt
// QR. Errors out on short or ill-conditioned grids.
inline std::vector<double> recover_invariant(const std::vector<FluxSample>& samples,
                                             int degree) {
    const size_t rows = samples.size();
    const size_t cols = static_cast<size_t>(degree) + 1;
    if (rows < cols) throw precondition_error("grid insufficient");

    std::vector<std::vector<double>> A(rows, std::vector<double>(cols));
    std::vector<double> b(rows);
    for (size_t i = 0; i < rows; ++i) {
        double t = samples[i].t;
        double p = 1;
        for (size_t k = 0; k < cols; ++k) {
            A[i][k] = p;
            p *= t;
        }
        b[i] = 0.75 * std::pow(t, -1.5) * samples[i].Vprime;
    }

    std::vector<std::vector<double>> Q = A;
    std::vector<std::vector<double>> R(cols, std::vector<double>(cols, 0.0));
    for (size_t k = 0; k < cols; ++k) {
        double nrm = 0;
        for (size_t i = 0; i < rows; ++i) nrm += Q[i][k] * Q[i][k];
        nrm = std::sqrt(nrm);
        R[k][k] = nrm;
        if (nrm == 0) throw precondition_error("grid insufficient");
        for (size_t i = 0; i < rows; ++i) Q[i][k] /= nrm;
        for (size_t j = k + 1; j < cols; ++j) {
            double dot = 0;
            for (size_t i = 0; i < rows; ++i) dot += Q[i][k] * Q[i][j];
            R[k][j] = dot;
            for (size_t i = 0; i < rows; ++i) Q[i][j] -= dot * Q[i][k];
        }
    }
    double rmax = 0, rmin = 0;
    for (size_t k = 0; k < cols; ++k) {
        double d = std::abs(R[k][k]);
        rmax = std::max(rmax, d);
        rmin = (k == 0) ? d : std::min(rmin, d);
    }
    if (rmin == 0 || rmax / rmin > 1e8)
        throw precondition_error("grid insufficient");

    std::vector<double> qtb(cols, 0.0);
    for (size_t k = 0; k < cols; ++k)
        for (size_t i = 0; i < rows; ++i) qtb[k] += Q[i][k] * b[i];
    std::vector<double> sol(cols, 0.0);
    for (size_t k = cols; k-- > 0;) {
        double acc = qtb[k];
        for (size_t j = k + 1; j < cols; ++j) acc -= R[k][j] * sol[j];
        sol[k] = acc / R[k][k];
    }
    return sol;
}

inline std::vector<double> parse_grid(double a, double b, int n) {
    if (n < 1 || b < a) throw input_error("bad grid specification");
    std::vector<double> grid;
    if (n == 1) {
        grid.push_back(a);
        return grid;
    }
    for (int i = 0; i < n; ++i)
        grid.push_back(a + (b - a) * i / (n - 1));
    return grid;
}

} // namespace martinet
