/*
 * series.hpp
 * ----------
 * Truncated univariate power series with exact rational coefficients,
 * indexed 0..N inclusive. Operations take the truncation order
 * explicitly; nothing here guesses orders. Coefficients beyond the
 * stored order are unknown in general -- extended() pads with zeros and
 * is only valid when the series is an exact polynomial.
 */
#pragma once

#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace martinet {

class Series {
  public:
    Series() : c_(1, Rational(0)) {}
    explicit Series(size_t order) : c_(order + 1, Rational(0)) {}
    explicit Series(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.assign(1, Rational(0));
    }

    static Series constant(const Rational& v, size_t order = 0) {
        Series s(order);
        s.c_[0] = v;
        return s;
    }
    // The identity series t (order >= 1).
    static Series identity(size_t order) {
        Series s(order < 1 ? 1 : order);
        s.c_[1] = 1;
        return s;
    }

    size_t order() const { return c_.size() - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](size_t k) const { return c_[k]; }
    Rational& operator[](size_t k) { return c_[k]; }
    Rational at_or_zero(size_t k) const {
        return k < c_.size() ? c_[k] : Rational(0);
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    Series truncated(size_t order) const {
        Series s(order);
        for (size_t k = 0; k <= order && k < c_.size(); ++k) s.c_[k] = c_[k];
        return s;
    }
    // Zero-padded extension; exact only for polynomial series.
    Series extended(size_t order) const {
        if (order <= this->order()) return truncated(order);
        Series s(order);
        for (size_t k = 0; k < c_.size(); ++k) s.c_[k] = c_[k];
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        Series s(std::max(a.order(), b.order()));
        for (size_t k = 0; k < s.c_.size(); ++k)
            s.c_[k] = a.at_or_zero(k) + b.at_or_zero(k);
        return s;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series s(std::max(a.order(), b.order()));
        for (size_t k = 0; k < s.c_.size(); ++k)
            s.c_[k] = a.at_or_zero(k) - b.at_or_zero(k);
        return s;
    }
    friend Series operator*(const Rational& v, const Series& a) {
        Series s = a;
        for (auto& x : s.c_) x *= v;
        return s;
    }

    friend bool operator==(const Series&, const Series&) = default;

    double eval_double(double t) const {
        double acc = 0;
        for (size_t k = c_.size(); k-- > 0;)
            acc = acc * t + to_double(c_[k]);
        return acc;
    }

  private:
    std::vector<Rational> c_;
};

inline Series series_mul(const Series& a, const Series& b, size_t order) {
    Series s(order);
    for (size_t k = 0; k <= order; ++k) {
        Rational acc(0);
        for (size_t i = 0; i <= k; ++i)
            acc += a.at_or_zero(i) * b.at_or_zero(k - i);
        s[k] = acc;
    }
    return s;
}

// Multiplicative inverse; requires a(0) != 0.
inline Series series_inverse(const Series& a, size_t order) {
    if (a.at_or_zero(0) == 0)
        throw precondition_error("series has no multiplicative inverse");
    Series s(order);
    s[0] = Rational(1) / a[0];
    for (size_t k = 1; k <= order; ++k) {
        Rational acc(0);
        for (size_t i = 1; i <= k; ++i)
            acc += a.at_or_zero(i) * s.at_or_zero(k - i);
        s[k] = -acc / a[0];
    }
    return s;
}

// s^p for rational p by the generalized binomial series. Requires
// s(0) = 1 so that (1 + u)^p converges coefficientwise.
inline Series series_power(const Series& s, const Rational& p, size_t order) {
    if (s.at_or_zero(0) != 1)
        throw precondition_error("unnormalized leading term");
    Series u = s.truncated(order);
    u[0] = 0;
    Series acc = Series::constant(Rational(1), order);
    Series upow = Series::constant(Rational(1), order);
    for (size_t k = 1; k <= order; ++k) {
        upow = series_mul(upow, u, order);
        acc = acc + binomial(p, static_cast<long>(k)) * upow;
    }
    return acc;
}

inline Series series_power(const Series& s, const Rational& p) {
    return series_power(s, p, s.order());
}

// c(h(t)) with h(0) = 0, truncated.
inline Series series_compose(const Series& c, const Series& h, size_t order) {
    if (h.at_or_zero(0) != 0)
        throw precondition_error("composition needs h(0) = 0");
    Series acc = Series::constant(c.at_or_zero(std::min(order, c.order())), order);
    for (size_t k = std::min(order, c.order()); k-- > 0;) {
        acc = series_mul(acc, h, order);
        acc[0] += c[k];
    }
    return acc;
}

// Termwise primitive with zero constant term; raises the order by one.
inline Series series_integrate(const Series& a) {
    Series s(a.order() + 1);
    for (size_t k = 0; k <= a.order(); ++k)
        s[k + 1] = a[k] / Rational(k + 1);
    return s;
}

inline Series series_derivative(const Series& a) {
    if (a.order() == 0) return Series(0);
    Series s(a.order() - 1);
    for (size_t k = 1; k <= a.order(); ++k) s[k - 1] = a[k] * Rational(k);
    return s;
}

// Compositional inverse of psi with psi(0) = 0, psi'(0) != 0: returns
// sigma with psi(sigma(t)) = t through the order. Newton iteration
// sigma <- sigma - (psi o sigma - id) / (psi' o sigma) doubles the
// number of correct coefficients per pass.
inline Series series_comp_inverse(const Series& psi, size_t order) {
    if (psi.at_or_zero(0) != 0 || psi.at_or_zero(1) == 0)
        throw precondition_error("series is not invertible under composition");
    Series sigma(order);
    if (order >= 1) sigma[1] = Rational(1) / psi[1];
    Series psi_full = psi.extended(order);
    Series psi_d = series_derivative(psi.extended(order + 1));
    size_t cur = 1;
    while (cur < order) {
        cur = std::min(order, 2 * cur);
        Series err = series_compose(psi_full, sigma.truncated(cur), cur) -
                     Series::identity(cur);
        Series slope = series_compose(psi_d, sigma.truncated(cur), cur);
        Series corr = series_mul(err, series_inverse(slope, cur), cur);
        for (size_t k = 0; k <= cur; ++k)
            sigma[k] = sigma.at_or_zero(k) - corr.at_or_zero(k);
    }
    if (!(series_compose(psi_full, sigma, order) == Series::identity(order)))
        throw invariant_violation("compositional inverse failed to verify");
    return sigma;
}

// Sum c_k f^k truncated at quasidegree level cap.
inline Poly compose_series(const Series& c, const Poly& f, const Grading& g,
                           long cap) {
    Poly acc(c[c.order()]);
    for (size_t k = c.order(); k-- > 0;) {
        acc = mul_trunc(acc, f, g, cap);
        acc += Poly(c[k]);
    }
    return acc;
}

// Untruncated variant for exact certificate checks (c polynomial).
inline Poly compose_series_exact(const Series& c, const Poly& f) {
    Poly acc(c[c.order()]);
    for (size_t k = c.order(); k-- > 0;) {
        acc = acc * f;
        acc += Poly(c[k]);
    }
    return acc;
}

} // namespace martinet
