#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace martinet;
using namespace testsupport;

TEST_CASE("canonical term order is graded-lex with x first") {
    Poly p = Poly::monomial({0, 2}) + Poly::monomial({1, 1}) +
             Poly::monomial({2, 0}) + Poly::y() + Poly::x() + Poly(1L);
    std::vector<Monomial> order;
    for (const auto& [m, c] : p.terms()) order.push_back(m);
    std::vector<Monomial> expect = {{0, 0}, {1, 0}, {0, 1},
                                    {2, 0}, {1, 1}, {0, 2}};
    REQUIRE(order == expect);
}

TEST_CASE("rational parsing and formatting") {
    REQUIRE(rational_to_string(parse_rational("-2/4")) == "-1/2");
    REQUIRE(rational_to_string(parse_rational("3")) == "3");
    REQUIRE_THROWS_AS(parse_rational("1/0"), input_error);
    REQUIRE_THROWS_AS(parse_rational("x"), input_error);
}

TEST_CASE("exterior derivative") {
    SECTION("d(x^2 y) = 2xy dx + x^2 dy, rechecked by finite differences") {
        Poly g = Poly::monomial({2, 1});
        OneForm dg = exterior_derivative(g);
        REQUIRE(dg.p == Poly::monomial({1, 1}, Rational(2)));
        REQUIRE(dg.q == Poly::monomial({2, 0}));
        REQUIRE(fd_matches_gradient(g, dg));
    }
    SECTION("d(-(x/2) dx) = 0") {
        OneForm a{Poly::monomial({1, 0}, Rational(-1) / 2), Poly()};
        REQUIRE(exterior_derivative(a).is_zero());
    }
    SECTION("d(x^2 y dy) = 2xy dx^dy") {
        OneForm a{Poly(), Poly::monomial({2, 1})};
        REQUIRE(exterior_derivative(a) ==
                TwoForm{Poly::monomial({1, 1}, Rational(2))});
    }
    SECTION("top degree errors") {
        FormAny top = TwoForm{Poly::x()};
        REQUIRE_THROWS_WITH(exterior_derivative(top), "top degree");
    }
    SECTION("d o d = 0 on random functions") {
        for (int k = 0; k < 100; ++k) {
            Poly g = rand_poly({1, 1}, 6, 0.4);
            REQUIRE(exterior_derivative(exterior_derivative(g)).is_zero());
        }
    }
}

TEST_CASE("wedge with df") {
    Poly f = poly_x_plus_y2();
    SECTION("df ^ (-(x/2) dx) = xy dx^dy for f = x + y^2") {
        OneForm eta{Poly::monomial({1, 0}, Rational(-1) / 2), Poly()};
        REQUIRE(wedge_df(f, eta) == TwoForm{Poly::monomial({1, 1})});
    }
    SECTION("df ^ df = 0") {
        for (int k = 0; k < 20; ++k) {
            Poly g = rand_poly({1, 1}, 5, 0.4);
            REQUIRE(wedge_df(g, exterior_derivative(g)).is_zero());
        }
    }
    SECTION("df ^ (x^2 y dy) = x^2 y dx^dy") {
        OneForm eta{Poly(), Poly::monomial({2, 1})};
        REQUIRE(wedge_df(f, eta) == TwoForm{Poly::monomial({2, 1})});
    }
    SECTION("antisymmetry: df ^ dg = -dg ^ df") {
        for (int k = 0; k < 50; ++k) {
            Poly a = rand_poly({1, 1}, 5, 0.4), b = rand_poly({1, 1}, 5, 0.4);
            REQUIRE(wedge_df(a, exterior_derivative(b)) ==
                    TwoForm{} - wedge_df(b, exterior_derivative(a)));
        }
    }
}

TEST_CASE("interior product with the Euler field") {
    WeightSystem w(Rational(1), Rational(1) / 2);
    SECTION("E_f . (x dx^dy) = x^2 dy - (xy/2) dx") {
        OneForm a = interior_euler(w, TwoForm{Poly::x()});
        REQUIRE(a.p == Poly::monomial({1, 1}, Rational(-1) / 2));
        REQUIRE(a.q == Poly::monomial({2, 0}));
    }
    SECTION("zero form") {
        REQUIRE(interior_euler(w, TwoForm{}).is_zero());
    }
    SECTION("E_f . ((2/3) xy dx^dy)") {
        OneForm a = interior_euler(w, TwoForm{Poly::monomial({1, 1}, Rational(2) / 3)});
        REQUIRE(a.q == Poly::monomial({2, 1}, Rational(2) / 3));
        REQUIRE(a.p == Poly::monomial({1, 2}, Rational(-1) / 3));
    }
    SECTION("degree 0 errors") {
        FormAny fn = Poly::x();
        REQUIRE_THROWS_AS(interior_euler(w, fn), precondition_error);
    }
    SECTION("f theta = df ^ (E_f . theta) for quasihomogeneous f") {
        std::vector<Poly> germs = {
            poly_x_plus_y2(),                                   // A1
            Poly::monomial({2, 0}) + Poly::monomial({0, 3}),    // F4
            Poly::monomial({1, 1}) + Poly::monomial({0, 3}),    // C3
            Poly::monomial({3, 0}) + Poly::monomial({0, 2})};   // B3
        for (const Poly& f : germs) {
            WeightSystem wf = detect_weights(f);
            for (int k = 0; k < 25; ++k) {
                TwoForm theta{rand_poly(wf.grading(), 4 * wf.denom, 0.5)};
                REQUIRE(wedge_df(f, interior_euler(wf, theta)) ==
                        TwoForm{f * theta.c});
            }
        }
    }
}

TEST_CASE("pullback of forms") {
    Grading g{1, 1};
    SECTION("identity map fixes forms") {
        PlaneMap id = PlaneMap::identity(g, 10);
        Poly f = rand_poly(g, 6, 0.5);
        REQUIRE(pullback(id, f) == f);
        TwoForm w{rand_poly(g, 6, 0.5)};
        REQUIRE(pullback(id, w) == w);
    }
    SECTION("(2x, 3y) pulls x dx^dy to 12x dx^dy") {
        PlaneMap m(Poly::monomial({1, 0}, Rational(2)),
                   Poly::monomial({0, 1}, Rational(3)), g, 10);
        REQUIRE(pullback(m, TwoForm{Poly::x()}) ==
                TwoForm{Poly::monomial({1, 0}, Rational(12))});
    }
    SECTION("unimodular shear preserves the area form") {
        PlaneMap m(Poly::x(), Poly::y() + Poly::x(), g, 10);
        REQUIRE(pullback(m, TwoForm{Poly(1L)}) == TwoForm{Poly(1L)});
    }
    SECTION("negative cap errors") {
        PlaneMap m = PlaneMap::identity(g, 10);
        REQUIRE_THROWS_AS(pullback(m, FormAny{Poly::x()}, -3),
                          precondition_error);
    }
    SECTION("pullback commutes with d") {
        for (int k = 0; k < 15; ++k) {
            PlaneMap phi = rand_diffeo(g, false);
            Poly f = rand_poly(g, 5, 0.5);
            REQUIRE(exterior_derivative(pullback(phi, f)) ==
                    pullback(phi, exterior_derivative(f)));
        }
    }
    SECTION("functoriality: (phi o psi)^* = psi^* o phi^*") {
        // Exact polynomial maps: strict equality.
        for (int k = 0; k < 15; ++k) {
            PlaneMap phi = rand_diffeo(g, false);
            PlaneMap psi = rand_diffeo(g, false);
            FormAny eta = OneForm{rand_poly(g, 4, 0.4), rand_poly(g, 4, 0.4)};
            REQUIRE(pullback(compose(phi, psi), eta) ==
                    pullback(psi, pullback(phi, eta)));
        }
        // Cap-truncated maps agree through the valid jet levels (the
        // derivative in the frame transform costs one level).
        for (int k = 0; k < 15; ++k) {
            PlaneMap phi = rand_diffeo(g, false, 8);
            PlaneMap psi = rand_diffeo(g, false, 8);
            OneForm eta{rand_poly(g, 5, 0.4), rand_poly(g, 5, 0.4)};
            OneForm a = pullback(compose(phi, psi), eta);
            OneForm b = pullback(psi, pullback(phi, eta));
            REQUIRE(a.truncate(g, 6) == b.truncate(g, 6));
        }
    }
}

TEST_CASE("series composition with a polynomial") {
    Grading g{2, 1};
    Poly f = poly_x_plus_y2();
    SECTION("constant series") {
        REQUIRE(compose_series(series_one(), f, g, 10) == Poly(1L));
    }
    SECTION("identity series returns f") {
        Series t(std::vector<Rational>{Rational(0), Rational(1)});
        REQUIRE(compose_series(t, f, g, 10) == f);
    }
    SECTION("1 + t evaluates to 1 + f") {
        Series c(std::vector<Rational>{Rational(1), Rational(1)});
        REQUIRE(compose_series(c, f, g, 10) == Poly(1L) + f);
    }
}

TEST_CASE("fractional series powers") {
    SECTION("power of 1 is 1") {
        Series one = series_one().extended(4);
        REQUIRE(series_power(one, Rational(2) / 5) == one);
    }
    SECTION("(1 + (5/7) t)^{2/5} = 1 + (2/7) t - (3/49) t^2 + ...") {
        Series s(std::vector<Rational>{Rational(1), Rational(5) / 7});
        Series p = series_power(s.extended(2), Rational(2) / 5);
        REQUIRE(p[0] == 1);
        REQUIRE(p[1] == Rational(2) / 7);
        REQUIRE(p[2] == Rational(-3) / 49);
    }
    SECTION("(1 + t)^2 = 1 + 2t + t^2") {
        Series s(std::vector<Rational>{Rational(1), Rational(1), Rational(0)});
        REQUIRE(series_power(s, Rational(2)) ==
                Series(std::vector<Rational>{Rational(1), Rational(2), Rational(1)}));
    }
    SECTION("unnormalized leading term errors") {
        Series s(std::vector<Rational>{Rational(2), Rational(1)});
        REQUIRE_THROWS_WITH(series_power(s, Rational(1) / 2),
                            "unnormalized leading term");
    }
    SECTION("round trip (s^p)^{1/p} = s") {
        for (int k = 0; k < 30; ++k) {
            Series s = rand_series(6, true);
            Rational p = rand_nonzero_rational(-3, 3, 4);
            REQUIRE(series_power(series_power(s, p), Rational(1) / p) == s);
        }
    }
}

TEST_CASE("map inversion") {
    Grading g{2, 1};
    SECTION("identity inverts to identity") {
        PlaneMap id = PlaneMap::identity(g, 12);
        REQUIRE(invert_map(id) == id);
    }
    SECTION("(2x, 3y) inverts to (x/2, y/3)") {
        PlaneMap m(Poly::monomial({1, 0}, Rational(2)),
                   Poly::monomial({0, 1}, Rational(3)), g, 12);
        PlaneMap inv = invert_map(m);
        REQUIRE(inv.fx == Poly::monomial({1, 0}, Rational(1) / 2));
        REQUIRE(inv.fy == Poly::monomial({0, 1}, Rational(1) / 3));
    }
    SECTION("(x(1+y), y) inverts to the geometric series") {
        PlaneMap m(Poly::x() + Poly::monomial({1, 1}), Poly::y(), g, 8);
        PlaneMap inv = invert_map(m);
        Poly expect;
        for (int j = 0; 2 + j <= 8; ++j)
            expect.add_term({1, j}, (j % 2 == 0) ? Rational(1) : Rational(-1));
        REQUIRE(inv.fx == expect);
        REQUIRE(inv.fy == Poly::y());
    }
    SECTION("singular linear part errors") {
        PlaneMap m(Poly::x() + Poly::y(), Poly::x() + Poly::y(), g, 8);
        REQUIRE_THROWS_WITH(invert_map(m), "singular linear part");
    }
    SECTION("round trip is the identity through the cap; boundary maps stay boundary") {
        for (int k = 0; k < 20; ++k) {
            bool boundary = k % 2 == 0;
            PlaneMap m = rand_diffeo(g, boundary, 10);
            PlaneMap inv = invert_map(m);
            PlaneMap rt = compose(m, inv);
            REQUIRE(rt.fx == Poly::x());
            REQUIRE(rt.fy == Poly::y());
            if (boundary) REQUIRE(inv.boundary_preserving());
        }
    }
}

TEST_CASE("polynomial JSON round trip is canonical") {
    for (int k = 0; k < 20; ++k) {
        Poly p = rand_poly({1, 1}, 6, 0.5);
        Json j = to_json(p);
        REQUIRE(poly_from_json(j) == p);
        REQUIRE(j.dump() == to_json(poly_from_json(j)).dump());
    }
    FormAny a = OneForm{Poly::x(), Poly::monomial({2, 0})};
    REQUIRE(form_from_json(to_json(a)) == a);
}
