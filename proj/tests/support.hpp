// Shared test helpers: deterministic random generators for rationals,
// polynomials, forms, series and plane maps, plus the numeric
// finite-difference oracle used to recheck symbolic derivatives.
#pragma once

#include <martinet/martinet.hpp>
#include <random>

namespace testsupport {

using namespace martinet;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed2026);
    return gen;
}

inline Rational rand_rational(int lo = -5, int hi = 5, int max_den = 3) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
    return make_rational(num(rng()), den(rng()));
}

inline Rational rand_nonzero_rational(int lo = -5, int hi = 5, int max_den = 3) {
    for (;;) {
        Rational r = rand_rational(lo, hi, max_den);
        if (r != 0) return r;
    }
}

// Random polynomial supported on quasidegree levels <= cap, with about
// `density` of the admissible monomials present.
inline Poly rand_poly(const Grading& g, long cap, double density = 0.5,
                      int min_x_power = 0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Poly p;
    for (long level = 0; level <= cap; ++level) {
        for (Monomial m : monomials_at_level(g, level)) {
            if (m.ex < min_x_power) continue;
            if (coin(rng()) > density) continue;
            p.add_term(m, rand_rational());
        }
    }
    return p;
}

// Random 2-form in x*Omega^2 with quasidegree(coefficient) <= cap.
inline TwoForm rand_two_form_x(const Grading& g, long cap) {
    for (;;) {
        Poly c = rand_poly(g, cap, 0.6, 1);
        if (!c.is_zero()) return TwoForm{c};
    }
}

inline Series rand_series(size_t order, bool unit_leading = false,
                          int max_den = 3) {
    std::vector<Rational> c(order + 1);
    for (auto& v : c) v = rand_rational(-2, 2, max_den);
    if (unit_leading) c[0] = Rational(1);
    return Series(std::move(c));
}

// Random polynomial diffeomorphism germ with invertible linear part and
// sparse higher terms up to total degree 3. Exact (no truncation), so
// pullbacks through it stay exact. boundary = true keeps {x = 0} fixed.
inline PlaneMap rand_diffeo(const Grading& g, bool boundary,
                            long cap = kNoCap) {
    std::uniform_int_distribution<int> small(-2, 2);
    for (;;) {
        Rational a = rand_nonzero_rational(-2, 2, 2);
        Rational b = boundary ? Rational(0) : rand_rational(-2, 2, 2);
        Rational c = rand_rational(-2, 2, 2);
        Rational d = rand_nonzero_rational(-2, 2, 2);
        if (a * d - b * c == 0) continue;
        Poly fx = Poly::monomial({1, 0}, a) + Poly::monomial({0, 1}, b);
        Poly fy = Poly::monomial({1, 0}, c) + Poly::monomial({0, 1}, d);
        for (int k = 0; k < 3; ++k) {
            std::uniform_int_distribution<int> ei(0, 3), ej(0, 3);
            int i = ei(rng()), j = ej(rng());
            if (i + j < 2 || i + j > 3) continue;
            Rational coef = rand_rational(-1, 1, 2);
            if (!boundary || i >= 1) fx += Poly::monomial({i, j}, coef);
            fy += Poly::monomial({i, j}, rand_rational(-1, 1, 2));
        }
        return PlaneMap(fx, fy, g, cap);
    }
}

// Finite-difference check that `form` is the exterior derivative of g,
// sampled at random points: the derived examples are rechecked
// numerically, independent of the symbolic path.
inline bool fd_matches_gradient(const Poly& g, const OneForm& dg,
                                double tol = 1e-6) {
    std::uniform_real_distribution<double> pt(-0.4, 0.4);
    const double h = 1e-6;
    for (int k = 0; k < 8; ++k) {
        double x = pt(rng()), y = pt(rng());
        double fx = (g.eval_double(x + h, y) - g.eval_double(x - h, y)) / (2 * h);
        double fy = (g.eval_double(x, y + h) - g.eval_double(x, y - h)) / (2 * h);
        if (std::abs(fx - dg.p.eval_double(x, y)) > tol) return false;
        if (std::abs(fy - dg.q.eval_double(x, y)) > tol) return false;
    }
    return true;
}

inline Poly poly_x_plus_y2() { return Poly::x() + Poly::monomial({0, 2}); }

inline Series series_one() { return Series(std::vector<Rational>{Rational(1)}); }

} // namespace testsupport
