/*
 * local_algebra.hpp
 * -----------------
 * Local algebra of a boundary singularity (f, H = {x=0}): weight
 * detection, the graded quotient by the Jacobian ideal (x f_x, f_y)
 * computed level by level, Milnor numbers mu = mu1 + mu0, the monomial
 * basis e_i, and certified graded reduction
 *
 *     g = sum_i c_i e_i + p * gen1 + q * gen2     (exact identity).
 *
 * The same engine with the ordinary ideal (f_x, f_y) serves the
 * boundary-free Brieskorn case. The ideal is quasihomogeneous, so the
 * graded quotient agrees with the local one and plain linear algebra
 * per level is enough.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "forms.hpp"
#include "poly.hpp"
#include "weights.hpp"

namespace martinet {

inline constexpr long kDefaultQuasidegreeCap = 10;

// Monomials of a given integer level, x-power descending: within a
// level the elimination prefers high x-powers as pivots so that the
// surviving basis favors low x-powers (Table-1 style bases).
inline std::vector<Monomial> monomials_at_level(const Grading& g, long L) {
    std::vector<Monomial> out;
    if (L < 0) return out;
    for (long i = L / g.wx; i >= 0; --i) {
        long rem = L - i * g.wx;
        if (rem % g.wy == 0)
            out.push_back({static_cast<int>(i), static_cast<int>(rem / g.wy)});
    }
    return out;
}

// Exact Gaussian elimination: solve M u = rhs, free unknowns set to 0.
// Returns false when the system is inconsistent.
inline bool solve_linear_system(std::vector<std::vector<Rational>> M,
                                std::vector<Rational> rhs,
                                std::vector<Rational>& sol) {
    const size_t rows = M.size();
    const size_t cols = rows ? M[0].size() : 0;
    sol.assign(cols, Rational(0));
    std::vector<size_t> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pr = row;
        while (pr < rows && M[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(M[pr], M[row]);
        std::swap(rhs[pr], rhs[row]);
        Rational inv = Rational(1) / M[row][col];
        for (size_t j = col; j < cols; ++j) M[row][j] *= inv;
        rhs[row] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || M[r][col] == 0) continue;
            Rational factor = M[r][col];
            for (size_t j = col; j < cols; ++j) M[r][j] -= factor * M[row][j];
            rhs[r] -= factor * rhs[row];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (size_t r = row; r < rows; ++r)
        if (rhs[r] != 0) return false;
    for (size_t r = 0; r < row; ++r) sol[pivot_col_of_row[r]] = rhs[r];
    return true;
}

struct ReductionCertificate {
    std::vector<Rational> c; // coordinates on the basis
    Poly p;                  // cofactor of gen1
    Poly q;                  // cofactor of gen2
};

struct BoundaryGerm {
    Poly f;
    WeightSystem weights;
    bool boundary = true; // false: ordinary Milnor algebra of f
    long mu = 0;
    long mu1 = 0;
    long mu0 = 0;
    std::vector<Monomial> basis; // canonical graded-lex order
    Poly gen1;                   // x f_x   (f_x in the ordinary case)
    Poly gen2;                   // f_y
    long stop_level = 0;

    Grading grading() const { return weights.grading(); }
};

// Weights (m1, m2) with m1 i + m2 j = 1 on every support monomial.
inline WeightSystem detect_weights(const Poly& f) {
    if (f.is_zero()) throw precondition_error("zero polynomial");
    if (f.eval00() != 0) throw precondition_error("f(0,0) must vanish");
    std::vector<Monomial> supp;
    for (const auto& [m, c] : f.terms()) supp.push_back(m);

    const Monomial m0 = supp.front();
    std::optional<WeightSystem> found;
    for (size_t k = 1; k < supp.size() && !found; ++k) {
        Rational det = Rational(m0.ex) * supp[k].ey - Rational(supp[k].ex) * m0.ey;
        if (det == 0) continue;
        Rational m1 = (Rational(supp[k].ey) - Rational(m0.ey)) / det;
        Rational m2 = (Rational(m0.ex) - Rational(supp[k].ex)) / det;
        if (m1 <= 0 || m2 <= 0)
            throw precondition_error("not quasihomogeneous in given coordinates");
        found = WeightSystem(m1, m2);
    }
    if (!found) {
        // Rank-1 support. With a single monomial a one-parameter family
        // of weight systems fits; with several distinct monomials the
        // equations m1 i + m2 j = 1 are inconsistent.
        if (supp.size() == 1)
            throw precondition_error(
                "underdetermined quasihomogeneous weights; supply them explicitly");
        throw precondition_error("not quasihomogeneous in given coordinates");
    }
    for (const auto& m : supp)
        if (found->quasidegree(m) != 1)
            throw precondition_error("not quasihomogeneous in given coordinates");
    return *found;
}

namespace detail {

struct GeneratorSet {
    // Nonzero quasihomogeneous generators with their levels.
    std::vector<Poly> gens;
    std::vector<long> levels;
    // Index of each generator in the original (gen1, gen2) pair, so the
    // reduction can route cofactors even when one generator is zero.
    std::vector<int> slot;
};

inline GeneratorSet make_generators(const Poly& gen1, const Poly& gen2,
                                    const Grading& g) {
    GeneratorSet gs;
    auto push = [&](const Poly& gen, int which) {
        if (gen.is_zero()) return;
        long lvl = g.level(gen.terms().begin()->first);
        if (!gen.is_quasihomogeneous(g, lvl))
            throw invariant_violation("ideal generator is not quasihomogeneous");
        gs.gens.push_back(gen);
        gs.levels.push_back(lvl);
        gs.slot.push_back(which);
    };
    push(gen1, 0);
    push(gen2, 1);
    return gs;
}

// Surviving (non-pivot) monomials at one level under the graded ideal.
inline std::vector<Monomial> survivors_at_level(const GeneratorSet& gs,
                                                const Grading& g, long L) {
    std::vector<Monomial> cols = monomials_at_level(g, L);
    if (cols.empty()) return {};
    auto col_index = [&](Monomial m) -> size_t {
        for (size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == m) return i;
        throw invariant_violation("monomial outside its level block");
    };

    std::vector<std::vector<Rational>> reduced; // echelon rows
    std::vector<size_t> pivots;
    for (size_t k = 0; k < gs.gens.size(); ++k) {
        for (Monomial mult : monomials_at_level(g, L - gs.levels[k])) {
            Poly elem = gs.gens[k].mul_monomial(mult);
            std::vector<Rational> row(cols.size(), Rational(0));
            for (const auto& [m, c] : elem.terms()) row[col_index(m)] = c;
            for (size_t r = 0; r < reduced.size(); ++r) {
                if (row[pivots[r]] == 0) continue;
                Rational factor = row[pivots[r]];
                for (size_t j = 0; j < cols.size(); ++j)
                    row[j] -= factor * reduced[r][j];
            }
            size_t lead = 0;
            while (lead < row.size() && row[lead] == 0) ++lead;
            if (lead == row.size()) continue;
            Rational inv = Rational(1) / row[lead];
            for (auto& v : row) v *= inv;
            reduced.push_back(row);
            pivots.push_back(lead);
        }
    }
    std::vector<Monomial> surv;
    for (size_t j = 0; j < cols.size(); ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
            surv.push_back(cols[j]);
    return surv;
}

// Level-by-level elimination with the stopping window max(wx, wy): once
// every monomial in a window of that width lies in the graded ideal,
// the x- and y-factorizations push every higher monomial in as well.
inline std::optional<std::pair<std::vector<Monomial>, long>>
quotient_basis(const GeneratorSet& gs, const Grading& g, long cap) {
    const long window = std::max(g.wx, g.wy);
    std::vector<Monomial> basis;
    long last_survivor_level = -1;
    for (long L = 0; L <= cap; ++L) {
        auto surv = survivors_at_level(gs, g, L);
        if (!surv.empty()) {
            last_survivor_level = L;
            basis.insert(basis.end(), surv.begin(), surv.end());
        }
        if (L - std::max(last_survivor_level, -1L) >= window)
            return std::make_pair(basis, L);
    }
    return std::nullopt;
}

} // namespace detail

// Certified reduction of g modulo the graded ideal, level by level.
inline ReductionCertificate graded_reduce(const Poly& g,
                                          const BoundaryGerm& germ) {
    const Grading gr = germ.grading();
    auto gs = detail::make_generators(germ.gen1, germ.gen2, gr);

    ReductionCertificate cert;
    cert.c.assign(germ.mu, Rational(0));

    for (const auto& [L, piece] : g.split_levels(gr)) {
        std::vector<Monomial> cols = monomials_at_level(gr, L);
        auto col_index = [&](Monomial m) -> size_t {
            for (size_t i = 0; i < cols.size(); ++i)
                if (cols[i] == m) return i;
            throw invariant_violation("monomial outside its level block");
        };

        // Unknowns: basis coordinates at this level, then one multiplier
        // monomial per generator and admissible multiplier.
        struct Unknown {
            int kind;   // 0 = basis coordinate, 1 = generator multiplier
            size_t idx; // basis index, or generator index
            Monomial mult;
        };
        std::vector<Unknown> unknowns;
        for (size_t i = 0; i < germ.basis.size(); ++i)
            if (gr.level(germ.basis[i]) == L)
                unknowns.push_back({0, i, {}});
        for (size_t k = 0; k < gs.gens.size(); ++k)
            for (Monomial mult : monomials_at_level(gr, L - gs.levels[k]))
                unknowns.push_back({1, k, mult});

        std::vector<std::vector<Rational>> M(
            cols.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
        for (size_t u = 0; u < unknowns.size(); ++u) {
            Poly col_poly =
                unknowns[u].kind == 0
                    ? Poly::monomial(germ.basis[unknowns[u].idx])
                    : gs.gens[unknowns[u].idx].mul_monomial(unknowns[u].mult);
            for (const auto& [m, c] : col_poly.terms())
                M[col_index(m)][u] = c;
        }
        std::vector<Rational> rhs(cols.size(), Rational(0));
        for (const auto& [m, c] : piece.terms()) rhs[col_index(m)] = c;

        std::vector<Rational> sol;
        if (!solve_linear_system(M, rhs, sol))
            throw invariant_violation("graded reduction system inconsistent");
        for (size_t u = 0; u < unknowns.size(); ++u) {
            if (sol[u] == 0) continue;
            if (unknowns[u].kind == 0) {
                cert.c[unknowns[u].idx] += sol[u];
            } else {
                Poly& target = gs.slot[unknowns[u].idx] == 0 ? cert.p : cert.q;
                target.add_term(unknowns[u].mult, sol[u]);
            }
        }
    }

    // The certificate is the contract; recheck it.
    Poly recon = cert.p * germ.gen1 + cert.q * germ.gen2;
    for (size_t i = 0; i < cert.c.size(); ++i)
        recon.add_term(germ.basis[i], cert.c[i]);
    if (!(recon == g))
        throw invariant_violation("reduction certificate identity failed");
    return cert;
}

namespace detail {

inline BoundaryGerm milnor_common(const Poly& f, const WeightSystem& w,
                                  bool boundary, long cap_level) {
    if (f.eval00() != 0) throw precondition_error("f(0,0) must vanish");
    if (!is_quasihomogeneous_of_degree_one(f, w))
        throw precondition_error("not quasihomogeneous in given coordinates");
    const Grading g = w.grading();
    if (cap_level == kNoCap) cap_level = w.denom * kDefaultQuasidegreeCap;

    BoundaryGerm germ;
    germ.f = f;
    germ.weights = w;
    germ.boundary = boundary;
    germ.gen1 = boundary ? f.dx().mul_monomial({1, 0}) : f.dx();
    germ.gen2 = f.dy();

    auto gs = make_generators(germ.gen1, germ.gen2, g);
    auto qb = quotient_basis(gs, g, cap_level);
    if (!qb)
        throw precondition_error("multiplicity not finite within cap");
    germ.basis = qb->first;
    std::sort(germ.basis.begin(), germ.basis.end(), GrlexLess{});
    germ.stop_level = qb->second;
    germ.mu = static_cast<long>(germ.basis.size());

    if (boundary) {
        auto gs1 = make_generators(f.dx(), f.dy(), g);
        auto qb1 = quotient_basis(gs1, g, cap_level);
        if (!qb1)
            throw invariant_violation("mu finite but mu1 not finite");
        germ.mu1 = static_cast<long>(qb1->first.size());

        std::vector<Rational> fy0 = f.dy().restrict_to_boundary();
        long ord = -1;
        for (size_t j = 0; j < fy0.size(); ++j)
            if (fy0[j] != 0) { ord = static_cast<long>(j); break; }
        if (ord < 0)
            throw invariant_violation("mu finite but f_y vanishes on H");
        germ.mu0 = ord;
        if (germ.mu != germ.mu1 + germ.mu0)
            throw invariant_violation("mu = mu1 + mu0 failed");
    } else {
        germ.mu1 = germ.mu;
        germ.mu0 = 0;
    }
    return germ;
}

} // namespace detail

inline BoundaryGerm milnor_boundary(const Poly& f, const WeightSystem& w,
                                    long cap_level = kNoCap) {
    return detail::milnor_common(f, w, true, cap_level);
}

inline BoundaryGerm milnor_boundary(const Poly& f, long cap_level = kNoCap) {
    return milnor_boundary(f, detect_weights(f), cap_level);
}

inline BoundaryGerm milnor_ordinary(const Poly& f, const WeightSystem& w,
                                    long cap_level = kNoCap) {
    return detail::milnor_common(f, w, false, cap_level);
}

} // namespace martinet
