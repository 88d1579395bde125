#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ydouble/atoms.hpp"
#include "ydouble/delta.hpp"
#include "ydouble/mpoly.hpp"
#include "ydouble/polyhs.hpp"
#include "ydouble/series.hpp"

using namespace ydouble;

namespace {

// Independent oracle: geometric expansion of 1/(u - (v - c*h)) with
// |u| >> |v|, computed term by term.
PolyHS geom_coeff_u_inverse(const Rat& shift_c, int u_exp, int v_exp) {
    int k = -u_exp - 1;
    if (k < 0) return PolyHS();
    int j = k - v_exp;
    if (j < 0 || v_exp < 0) return PolyHS();
    Rat c = binomial(k, j) * rat_pow(-shift_c, j);
    return PolyHS::term(c, j, 0);
}

}  // namespace

TEST_CASE("poly_arith examples") {
    PolyHS h = PolyHS::hbar();
    PolyHS one(1);
    CHECK(poly_arith(h + one, h - one, '*') == PolyHS::term(Rat(1), 2, 0) - one);
    CHECK(poly_arith(h * PolyHS::s(), PolyHS(), '*') == PolyHS());
    PolyHS sh = PolyHS::s() * h;
    CHECK(poly_arith(sh, sh, '+') == PolyHS::term(Rat(2), 1, 1));
}

TEST_CASE("mpoly gcd and exact division") {
    MPoly u = MPoly::spec(0), v = MPoly::spec(1), h = MPoly::hbar();
    MPoly a = (u - v) * (u + v);
    auto q = MPoly::divide_exact(a, u - v);
    REQUIRE(q.has_value());
    CHECK(*q == u + v);
    CHECK(!MPoly::divide_exact(a, u - v - h).has_value());

    MPoly g = MPoly::gcd((u - v) * (u - v + h), (u - v) * (u + v));
    CHECK(g == u - v);

    CHECK(MPoly::gcd(MPoly(rat(4, 3)), MPoly(rat(2, 5))) == MPoly(1));
}

TEST_CASE("factor_canon examples") {
    MPoly u = MPoly::spec(0), v = MPoly::spec(1), h = MPoly::hbar();
    LinAtom uv = atom2(0, 1, Rat(0));
    LinAtom uvh = atom2(0, 1, Rat(1));
    LinAtom uq = atom1(0, rat(1, 4));

    SUBCASE("direct factorization") {
        MPoly num = (u - v) * (u - v + h);
        MPoly den = (u + h * rat(1, 4)) * (u + h * rat(1, 4));
        FactorProduct f = factor_canon(num, den, {uv, uvh, uq});
        CHECK(f.twice_exponent(uv) == 2);
        CHECK(f.twice_exponent(uvh) == 2);
        CHECK(f.twice_exponent(uq) == -4);
        CHECK(f.num() == MPoly(1));
        CHECK(f.den() == MPoly(1));
    }
    SUBCASE("x/x is one") {
        FactorProduct f = factor_canon(u - v, u - v, {uv});
        CHECK(f.is_one());
    }
    SUBCASE("residual after division, oracle = polynomial division") {
        MPoly num = u * u - v * v;
        FactorProduct f = factor_canon(num, u - v, {uv});
        CHECK(f.atoms().empty());
        CHECK(f.num() == u + v);
        CHECK(f.den() == MPoly(1));
    }
    SUBCASE("idempotence and multiplicativity") {
        FactorProduct f = factor_canon((u - v) * (u - v + h), MPoly(1), {uv, uvh});
        FactorProduct g = factor_canon(u + h * rat(1, 4), u - v, {uq, uv});
        FactorProduct fg = f * g;
        MPoly num = (u - v) * (u - v + h) * (u + h * rat(1, 4));
        FactorProduct direct = factor_canon(num, u - v, {uv, uvh, uq});
        CHECK(fg == direct);
    }
}

TEST_CASE("half-integer atom canonicalization") {
    LinAtom m = atom1(0, rat(1, 4), -1);  // [-(u + h/4)]
    SUBCASE("integer power of a negative atom becomes signed positive atom") {
        FactorProduct f = FactorProduct::from_atom(m, 2);  // [-(u+h/4)]^1
        LinAtom p = atom1(0, rat(1, 4), +1);
        CHECK(f.twice_exponent(p) == 2);
        CHECK(f.num() == MPoly(-1));
    }
    SUBCASE("[-L]^(3/2) = -[-L]^(1/2) L") {
        FactorProduct f = FactorProduct::from_atom(m, 3);
        LinAtom p = atom1(0, rat(1, 4), +1);
        CHECK(f.twice_exponent(m) == 1);
        CHECK(f.twice_exponent(p) == 2);
        CHECK(f.num() == MPoly(-1));
    }
    SUBCASE("[-L]^(-1/2) = -[-L]^(1/2) L^(-1)") {
        FactorProduct f = FactorProduct::from_atom(m, -1);
        LinAtom p = atom1(0, rat(1, 4), +1);
        CHECK(f.twice_exponent(m) == 1);
        CHECK(f.twice_exponent(p) == -2);
        CHECK(f.num() == MPoly(-1));
    }
    SUBCASE("half powers multiply to the signed linear factor") {
        FactorProduct f = FactorProduct::from_atom(m, 1);
        FactorProduct ff = f * f;
        LinAtom p = atom1(0, rat(1, 4), +1);
        CHECK(ff.twice_exponent(p) == 2);
        CHECK(ff.num() == MPoly(-1));
        CHECK(ff.twice_exponent(m) == 0);
    }
}

TEST_CASE("expand_region examples") {
    LinAtom uv = atom2(0, 1, Rat(0));
    SUBCASE("1/(u-v), |u|>>|v|, order 3: geometric series") {
        FactorProduct f = FactorProduct::from_atom(uv, -2);
        RegionalSeries s = expand_region(f, {0, 1}, 3);
        CHECK(s.coeff({-1, 0}) == PolyHS(1));
        CHECK(s.coeff({-2, 1}) == PolyHS(1));
        CHECK(s.coeff({-3, 2}) == PolyHS(1));
        CHECK(s.coeff({-2, 0}) == PolyHS());
    }
    SUBCASE("1/(u-v+h): coefficient of u^{-2} is v - h (oracle: geometric)") {
        LinAtom uvh = atom2(0, 1, Rat(1));
        FactorProduct f = FactorProduct::from_atom(uvh, -2);
        RegionalSeries s = expand_region(f, {0, 1}, 4);
        for (int ve = 0; ve <= 2; ++ve)
            CHECK(s.coeff({-2, ve}) == geom_coeff_u_inverse(Rat(1), -2, ve));
        CHECK(s.coeff({-2, 1}) == PolyHS(1));
        CHECK(s.coeff({-2, 0}) == PolyHS::term(Rat(-1), 1, 0));
    }
    SUBCASE("(u + c h)^1 expands to itself") {
        LinAtom uc = atom1(0, rat(1, 2));
        FactorProduct f = FactorProduct::from_atom(uc, 2);
        RegionalSeries s = expand_region(f, {0, 1}, 3);
        CHECK(s.coeff({1, 0}) == PolyHS(1));
        CHECK(s.coeff({0, 0}) == PolyHS::term(rat(1, 2), 1, 0));
        CHECK(s.terms.size() == 2);
    }
    SUBCASE("homomorphism property up to truncation") {
        LinAtom uvh = atom2(0, 1, rat(1, 2));
        LinAtom uc = atom1(0, rat(-1, 4));
        FactorProduct f = FactorProduct::from_atom(uv, -2);
        FactorProduct g = FactorProduct::from_atom(uvh, -2) * FactorProduct::from_atom(uc, 2);
        FactorProduct fg = f * g;
        RegionalSeries sf = expand_region(f, {0, 1}, 6);
        RegionalSeries sg = expand_region(g, {0, 1}, 6);
        RegionalSeries prod = series_mul(sf, sg);
        RegionalSeries direct = expand_window(fg, {0, 1}, prod.lo);
        for (auto& [e, c] : direct.terms) CHECK(prod.coeff(e) == c);
        for (auto& [e, c] : prod.terms) CHECK(direct.coeff(e) == c);
    }
    SUBCASE("unresolvable atom reports an error") {
        FactorProduct f = FactorProduct::from_atom(atom2(0, 2, Rat(0)), -2);
        CHECK_THROWS_AS(expand_region(f, {0, 1}, 3), std::domain_error);
    }
}

TEST_CASE("delta_coeff") {
    SUBCASE("unshifted diagonal support") {
        DeltaAtom d{0, 1, Rat(0), 0};
        CHECK(delta_coeff(d, 0, 0) == PolyHS(1));
        CHECK(delta_coeff(d, 5, 5) == PolyHS(1));
        CHECK(delta_coeff(d, 5, 4) == PolyHS());
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; n <= 10; ++n)
                CHECK(delta_coeff(d, m, n) == (m == n ? PolyHS(1) : PolyHS()));
    }
    SUBCASE("shifted delta, one Taylor order per bidegree") {
        DeltaAtom d{0, 1, rat(1, 2), 0};
        // coefficient of u^{-2} v^0 in sum_k u^{-k-1}(v - h/2)^k: k=1 gives -h/2
        CHECK(delta_coeff(d, 1, 0) == PolyHS::term(rat(-1, 2), 1, 0));
        CHECK(delta_coeff(d, 0, 1) == PolyHS());
    }
}

TEST_CASE("region_difference") {
    LinAtom uv = atom2(0, 1, Rat(0));
    SUBCASE("1/(u-v) gives delta(u-v)") {
        FactorProduct f = FactorProduct::from_atom(uv, -2);
        auto deltas = region_difference(f);
        REQUIRE(deltas.size() == 1);
        CHECK(deltas[0].first == DeltaAtom{0, 1, Rat(0), 0});
        CHECK(deltas[0].second.is_one());
    }
    SUBCASE("regular kernel gives nothing") {
        FactorProduct f = FactorProduct::from_atom(atom1(0, rat(1, 4)), 2);
        CHECK(region_difference(f).empty());
    }
    SUBCASE("shifted pole matches delta_coeff bidegree by bidegree") {
        for (Rat c : {Rat(0), rat(1, 4), rat(-1, 4), rat(1, 2), rat(-1, 2), rat(3, 4), Rat(1)}) {
            FactorProduct f = FactorProduct::from_atom(atom2(0, 1, c), -2);
            auto deltas = region_difference(f);
            REQUIRE(deltas.size() == 1);
            CHECK(deltas[0].second.is_one());
            std::vector<int> lo = {-8, -8};
            RegionalSeries plus = expand_window(f, {0, 1}, lo);
            RegionalSeries minus = expand_window(f, {1, 0}, lo);
            for (int m = 0; m <= 6; ++m)
                for (int n = -6; n <= 6; ++n) {
                    PolyHS a = plus.coeff({-m - 1, n});
                    PolyHS b = minus.coeff({n, -m - 1});  // region (v,u) order
                    PolyHS expect = delta_coeff(deltas[0].first, m, n);
                    CHECK(a - b == expect);
                }
        }
    }
    SUBCASE("double pole reports nonsimple") {
        FactorProduct f = FactorProduct::from_atom(uv, -4);
        CHECK_THROWS_AS(region_difference(f), NonsimplePole);
    }
    SUBCASE("residue carries the regular factors at the support") {
        // f = (u + h)/(u - v - h/2): residue at u = v + h/2 is (v + 3h/2)
        FactorProduct f = FactorProduct::from_atom(atom2(0, 1, rat(-1, 2)), -2) *
                          FactorProduct::from_atom(atom1(0, Rat(1)), 2);
        auto deltas = region_difference(f);
        REQUIRE(deltas.size() == 1);
        FactorProduct expect = FactorProduct::from_atom(atom1(1, rat(3, 2)), 2);
        CHECK(deltas[0].second == expect);
    }
}
