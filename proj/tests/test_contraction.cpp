#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ydouble/nprod.hpp"
#include "ydouble/words.hpp"

using namespace ydouble;

namespace {

// Oracle: compose two catalog operators mode by mode through states and
// compare with the normal-ordered product applied through nprod_apply_state.
bool oracle_pair(const GVO& g1, const GVO& g2, int sector, int max_degree, int pwin,
                 int nwin = 1) {
    NProd np = contract(g1, 0, g2, 1);
    std::map<int, std::pair<int, int>> windows{{0, {-pwin - 1, pwin}}, {1, {-pwin - 1, pwin}}};
    for (auto& st : enumerate_states(sector, max_degree, nwin)) {
        std::map<std::vector<int>, FockVector> via_nprod, via_composition;
        try {
            via_nprod = nprod_apply_state(np, st, max_degree, {0, 1}, windows);
            int mid = max_degree + 8 + 2 * pwin;
            auto inner = apply_gvo_state(g2, st, mid, -pwin - 1 - mid, pwin + mid);
            for (auto& [q, fv] : inner)
                for (auto& [s2, c] : fv.terms()) {
                    auto outer = apply_gvo_state(g1, s2, max_degree, -pwin - 1, pwin);
                    for (auto& [p, fv2] : outer) {
                        if (q < -pwin - 1 || q > pwin) continue;
                        FockVector scaled = fv2;
                        scaled *= c;
                        auto& slot = via_composition[{p, q}];
                        slot += scaled;
                    }
                }
        } catch (const std::domain_error&) {
            continue;
        }
        for (auto it = via_composition.begin(); it != via_composition.end();) {
            if (it->second.is_zero())
                it = via_composition.erase(it);
            else
                ++it;
        }
        if (!(via_nprod == via_composition)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("contraction scalars match hand results") {
    SUBCASE("X+ X+ gives (u-v)(u-v+h)") {
        NProd np = contract(catalog("X+"), 0, catalog("X+"), 1);
        FactorProduct expect = FactorProduct::from_atom(atom2(0, 1, Rat(0)), 2) *
                               FactorProduct::from_atom(atom2(0, 1, Rat(1)), 2);
        CHECK(np.scalar == expect);
    }
    SUBCASE("Phi- Phi- gives the half-integer exchange atom") {
        NProd np = contract(catalog("Phi-", 1), 0, catalog("Phi-", 0), 1);
        FactorProduct expect = FactorProduct::from_atom(atom1(0, rat(1, 4), -1), 1) *
                               FactorProduct::from_atom(atom1(0, rat(1, 4), -1), 1);
        CHECK(np.scalar == expect);
        NProd np2 = contract(catalog("Phi-", 0), 0, catalog("Phi-", 1), 1);
        FactorProduct expect2 = FactorProduct::from_atom(atom1(0, rat(1, 4), -1), 1) *
                                FactorProduct::from_atom(atom1(1, rat(1, 4), -1), 1);
        CHECK(np2.scalar == expect2);
    }
    SUBCASE("unit factor") {
        GVO unit;
        NProd np = contract(catalog("X+"), 0, unit, 1);
        CHECK(np.scalar.is_one());
    }
}

TEST_CASE("three-point contraction scalar equals product of pair scalars") {
    std::vector<std::pair<std::string, int>> names = {{"X+", -1}, {"X-", -1}, {"k1+", -1},
                                                      {"Phi-", 0}, {"Psi+", 1}};
    for (auto& [n1, s1] : names)
        for (auto& [n2, s2] : names)
            for (auto& [n3, s3] : names) {
                GVO g1 = catalog(n1, s1), g2 = catalog(n2, s2), g3 = catalog(n3, s3);
                NProd three = nprod_of(g1, 0);
                contract_append(three, g2, 1);
                contract_append(three, g3, 2);
                FactorProduct pairs = contract(g1, 0, g2, 1).scalar;
                pairs.mul(contract(g1, 0, g3, 2).scalar);
                pairs.mul(contract(g2, 1, g3, 2).scalar);
                // prefactors multiply once per appearance in pair products;
                // compensate so both sides count each operator once
                Rat pre = g1.prefactor * g2.prefactor * g3.prefactor;
                if (pre != 1) {
                    FactorProduct fix{Rat(1) / pre};
                    pairs.mul(fix);
                }
                CHECK(three.scalar == pairs);
            }
}

TEST_CASE("oracle equivalence: normal-ordered product equals composition") {
    std::vector<std::pair<std::string, int>> names = {
        {"X+", -1}, {"X-", -1}, {"k1+", -1}, {"k2+", -1},
        {"k1-", -1}, {"k2-", -1}, {"Phi-", -2}, {"Psi+", -2}};
    for (int sector : {0, 1}) {
        for (auto& [n1, s1] : names)
            for (auto& [n2, s2] : names) {
                int right_sector = s2 == -2 ? sector : s2;
                GVO g2 = catalog(n2, right_sector >= 0 && s2 == -2 ? right_sector : (s2 == -2 ? sector : -1));
                FockVector probe =
                    apply_lattice(g2.lattice, FockVector(highest_weight_state(sector)));
                int mid_sector = probe.terms().begin()->first.i;
                GVO g1 = catalog(n1, s1 == -2 ? mid_sector : -1);
                CHECK(oracle_pair(g1, g2, sector, 2, 2));
            }
    }
}

TEST_CASE("exchange rule soundness on states") {
    GVO zm;  // [u + h/4]^{(alpha, d)}
    zm.zeromodes = {{alpha(), rat(1, 4), +1, Rat(0)}};
    GVO lat;  // e^{-eps2}
    lat.lattice = -eps2();
    NProd zl = contract(zm, 0, lat, 0);
    NProd lz = contract(lat, 0, zm, 0);
    FactorProduct ratio = zl.scalar * lz.scalar.inverse();
    CHECK(ratio == FactorProduct::from_atom(atom1(0, rat(1, 4)), 2));
    for (auto& st : enumerate_states(0, 2, 1)) {
        std::map<int, std::pair<int, int>> win{{0, {-3, 3}}};
        auto a = nprod_apply_state(zl, st, 2, {0}, win);
        auto b = nprod_apply_state(lz, st, 2, {0}, win);
        std::map<std::vector<int>, FockVector> b_scaled;
        for (auto& [e, fv] : b) {
            std::vector<int> e1 = {e[0] + 1};
            if (e1[0] <= 3) {
                auto& slot = b_scaled[e1];
                slot += fv;
            }
            FockVector hterm = fv;
            hterm *= PolyHS::term(rat(1, 4), 1, 0);
            auto& slot2 = b_scaled[e];
            slot2 += hterm;
        }
        for (auto it = b_scaled.begin(); it != b_scaled.end();) {
            if (it->second.is_zero())
                it = b_scaled.erase(it);
            else
                ++it;
        }
        for (auto& [e, fv] : a) {
            if (e[0] < -3 || e[0] > 2) continue;
            FockVector other = b_scaled.count(e) ? b_scaled[e] : FockVector();
            CHECK(fv == other);
        }
    }
}

TEST_CASE("ordered difference reproduces the delta structure") {
    SUBCASE("[E(u), F(v)] collapses onto H at the shifted supports") {
        auto od = ordered_difference(catalog("E"), catalog("F"));
        CHECK(od.scalars_match);
        REQUIRE(od.deltas.size() == 2);
        bool seen_minus = false, seen_plus = false;
        for (auto& [d, coeff] : od.deltas) {
            GVO gv = coeff.skel.to_gvo(1);
            if (d.c == rat(-1, 2)) {
                seen_minus = true;
                CHECK(gv == gvo_shift(catalog("H+"), rat(-1, 4)));
                auto [n, dd] = coeff.scalar.integer_part_ratio();
                CHECK(n == MPoly(1));
                CHECK(dd == MPoly::hbar());
            }
            if (d.c == rat(1, 2)) {
                seen_plus = true;
                CHECK(gv == gvo_shift(catalog("H-"), rat(-1, 4)));
                auto [n, dd] = coeff.scalar.integer_part_ratio();
                CHECK(n == MPoly(-1));
                CHECK(dd == MPoly::hbar());
            }
        }
        CHECK(seen_minus);
        CHECK(seen_plus);
    }
    SUBCASE("commuting pair has no deltas and unit scalar") {
        auto od = ordered_difference(catalog("K+"), catalog("E"));
        CHECK(od.scalars_match);
        CHECK(od.deltas.empty());
        CHECK(od.forward.scalar.is_one());
    }
    SUBCASE("identical annihilation-only operators commute exactly") {
        auto od = ordered_difference(catalog("k1+"), catalog("k1+"));
        CHECK(od.scalars_match);
        CHECK(od.deltas.empty());
    }
}

TEST_CASE("word identity checker on small identities") {
    SUBCASE("X+X+ exchange") {
        Word l, r;
        l.factors = {{0, catalog("X+")}, {1, catalog("X+")}};
        l.prefactor = FactorProduct::from_atom(atom2(0, 1, Rat(-1)), 2);
        r.factors = {{1, catalog("X+")}, {0, catalog("X+")}};
        r.prefactor = FactorProduct::from_atom(atom2(0, 1, Rat(1)), 2);
        auto res = check_word_identity({l}, {r});
        CHECK(res.status == WordCheck::Status::pass);
    }
    SUBCASE("mutated exchange fails") {
        Word l, r;
        l.factors = {{0, catalog("X+")}, {1, catalog("X+")}};
        l.prefactor = FactorProduct::from_atom(atom2(0, 1, Rat(-1)), 2);
        r.factors = {{1, catalog("X+")}, {0, catalog("X+")}};
        r.prefactor = FactorProduct::from_atom(atom2(0, 1, rat(1, 2)), 2);
        auto res = check_word_identity({l}, {r});
        CHECK(res.status == WordCheck::Status::fail);
        CHECK(!res.witness.empty());
    }
    SUBCASE("[E,F] equals its delta expansion") {
        Word l1, l2;
        l1.factors = {{0, catalog("E")}, {1, catalog("F")}};
        l2.factors = {{1, catalog("F")}, {0, catalog("E")}};
        l2.prefactor.mul_rat(Rat(-1));
        Word r1, r2;
        r1.delta = DeltaAtom{0, 1, rat(-1, 2), 0};
        r1.factors = {{0, gvo_shift(catalog("H+"), rat(-1, 4))}};
        r1.prefactor = FactorProduct::ratio(MPoly(1), MPoly::hbar());
        r2.delta = DeltaAtom{0, 1, rat(1, 2), 0};
        r2.factors = {{1, gvo_shift(catalog("H-"), rat(-1, 4))}};
        r2.prefactor = FactorProduct::ratio(MPoly(-1), MPoly::hbar());
        auto res = check_word_identity({l1, l2}, {r1, r2});
        CHECK(res.status == WordCheck::Status::pass);
    }
}
