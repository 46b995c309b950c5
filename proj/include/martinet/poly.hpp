/*
 * poly.hpp
 * --------
 * Sparse exact polynomials in two variables over the rationals. Terms
 * are kept in the canonical graded-lex order and zero coefficients are
 * never stored, so equal polynomials have identical representations and
 * serialize identically.
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace martinet {

class Poly {
  public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    Poly() = default;
    explicit Poly(const Rational& c) {
        if (c != 0) terms_[Monomial{0, 0}] = c;
    }
    explicit Poly(long c) : Poly(Rational(c)) {}

    static Poly monomial(Monomial m, const Rational& c = Rational(1)) {
        Poly p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }
    static Poly x() { return monomial({1, 0}); }
    static Poly y() { return monomial({0, 1}); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(Monomial m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Monomial m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    // Sort-merge product over packed grlex keys: one ordered map build
    // instead of a tree insert per term pair.
    static Poly multiply(const Poly& a, const Poly& b, const Grading* g,
                         long cap) {
        Poly r;
        if (a.terms_.empty() || b.terms_.empty()) return r;
        auto key = [](int ex, int ey) {
            return (static_cast<long>(ex + ey) << 24) |
                   static_cast<long>((1 << 24) - 1 - ex);
        };
        std::vector<std::pair<long, Rational>> buf;
        buf.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                int ex = ma.ex + mb.ex, ey = ma.ey + mb.ey;
                if (g && cap != kNoCap && g->level({ex, ey}) > cap) continue;
                buf.emplace_back(key(ex, ey), ca * cb);
            }
        std::sort(buf.begin(), buf.end(),
                  [](const auto& u, const auto& v) { return u.first < v.first; });
        for (size_t i = 0; i < buf.size();) {
            size_t j = i + 1;
            Rational acc = std::move(buf[i].second);
            while (j < buf.size() && buf[j].first == buf[i].first)
                acc += buf[j++].second;
            if (acc != 0) {
                int total = static_cast<int>(buf[i].first >> 24);
                int ex = (1 << 24) - 1 - static_cast<int>(buf[i].first & ((1 << 24) - 1));
                r.terms_.emplace_hint(r.terms_.end(), Monomial{ex, total - ex},
                                      std::move(acc));
            }
            i = j;
        }
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        return multiply(a, b, nullptr, kNoCap);
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(const Rational& s, const Poly& p) {
        Poly r;
        if (s == 0) return r;
        for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
        return r;
    }
    friend Poly operator*(const Poly& p, const Rational& s) { return s * p; }
    Poly& operator*=(const Rational& s) { return *this = s * *this; }

    friend bool operator==(const Poly&, const Poly&) = default;

    Poly dx() const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (m.ex > 0) r.terms_[{m.ex - 1, m.ey}] = c * m.ex;
        return r;
    }
    Poly dy() const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (m.ey > 0) r.terms_[{m.ex, m.ey - 1}] = c * m.ey;
        return r;
    }

    Poly mul_monomial(Monomial m, const Rational& c = Rational(1)) const {
        Poly r;
        if (c == 0) return r;
        for (const auto& [mm, cc] : terms_)
            r.terms_[{mm.ex + m.ex, mm.ey + m.ey}] = cc * c;
        return r;
    }

    Rational eval00() const { return coeff({0, 0}); }

    // Smallest power of x dividing every term; zero polynomial counts as
    // divisible by any power.
    int min_x_power() const {
        int k = -1;
        for (const auto& [m, c] : terms_)
            k = (k < 0) ? m.ex : std::min(k, m.ex);
        return k < 0 ? 1 << 20 : k;
    }

    bool in_ideal_x(int power = 1) const { return min_x_power() >= power; }

    Poly divide_by_x(int power = 1) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            if (m.ex < power)
                throw invariant_violation("polynomial not divisible by x^" +
                                          std::to_string(power));
            r.terms_[{m.ex - power, m.ey}] = c;
        }
        return r;
    }

    // Coefficients of f(0, y) as a dense vector indexed by the y-power.
    std::vector<Rational> restrict_to_boundary() const {
        std::vector<Rational> out;
        for (const auto& [m, c] : terms_) {
            if (m.ex != 0) continue;
            if (static_cast<size_t>(m.ey) >= out.size()) out.resize(m.ey + 1);
            out[m.ey] = c;
        }
        return out;
    }

    long max_level(const Grading& g) const {
        long lvl = 0;
        for (const auto& [m, c] : terms_) lvl = std::max(lvl, g.level(m));
        return lvl;
    }

    Poly truncate(const Grading& g, long cap) const {
        if (cap == kNoCap) return *this;
        Poly r;
        for (const auto& [m, c] : terms_)
            if (g.level(m) <= cap) r.terms_[m] = c;
        return r;
    }

    Poly graded_piece(const Grading& g, long level) const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (g.level(m) == level) r.terms_[m] = c;
        return r;
    }

    std::map<long, Poly> split_levels(const Grading& g) const {
        std::map<long, Poly> out;
        for (const auto& [m, c] : terms_) out[g.level(m)].terms_[m] = c;
        return out;
    }

    bool is_quasihomogeneous(const Grading& g, long level) const {
        for (const auto& [m, c] : terms_)
            if (g.level(m) != level) return false;
        return true;
    }

    // Substitution x -> sx, y -> sy, truncated at quasidegree level cap.
    // Valid through the cap as long as sx, sy carry no constant term;
    // powers that fall entirely beyond the cap vanish and are skipped.
    Poly substitute(const Poly& sx, const Poly& sy, const Grading& g,
                    long cap) const {
        int max_ex = 0, max_ey = 0;
        for (const auto& [m, c] : terms_) {
            max_ex = std::max(max_ex, m.ex);
            max_ey = std::max(max_ey, m.ey);
        }
        std::vector<Poly> px(max_ex + 1), py(max_ey + 1);
        px[0] = Poly(Rational(1));
        for (int i = 1; i <= max_ex; ++i) {
            if (px[i - 1].is_zero()) break;
            px[i] = multiply(px[i - 1], sx, &g, cap);
        }
        py[0] = Poly(Rational(1));
        for (int j = 1; j <= max_ey; ++j) {
            if (py[j - 1].is_zero()) break;
            py[j] = multiply(py[j - 1], sy, &g, cap);
        }
        Poly r;
        for (const auto& [m, c] : terms_) {
            if (px[m.ex].is_zero() || py[m.ey].is_zero()) continue;
            r += multiply(px[m.ex], py[m.ey], &g, cap) * c;
        }
        return r;
    }

    double eval_double(double vx, double vy) const {
        double acc = 0;
        for (const auto& [m, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < m.ex; ++i) t *= vx;
            for (int j = 0; j < m.ey; ++j) t *= vy;
            acc += t;
        }
        return acc;
    }

    friend Poly mul_trunc(const Poly& a, const Poly& b, const Grading& g,
                          long cap) {
        return multiply(a, b, &g, cap);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << rational_to_string(c);
            if (m.ex) os << "*x^" << m.ex;
            if (m.ey) os << "*y^" << m.ey;
        }
        return os.str();
    }

  private:
    TermMap terms_;
};

} // namespace martinet
