#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ydouble/apply.hpp"
#include "ydouble/gvo.hpp"

using namespace ydouble;

namespace {

bool same_action(const GVO& a, const GVO& b, int sector, int max_degree, int p_lo, int p_hi,
                 int nwin = 1) {
    for (auto& st : enumerate_states(sector, max_degree, nwin)) {
        std::map<int, FockVector> ra, rb;
        try {
            ra = apply_gvo_state(a, st, max_degree, p_lo, p_hi);
            rb = apply_gvo_state(b, st, max_degree, p_lo, p_hi);
        } catch (const std::domain_error&) {
            continue;  // inadmissible state for this operator
        }
        if (!(ra == rb)) return false;
    }
    return true;
}

// Composition g1(u) g2(u) at equal arguments, mode by mode.
std::map<int, FockVector> composed_modes(const GVO& g1, const GVO& g2, const FockState& st,
                                         int max_degree, int p_lo, int p_hi, int mid_cap) {
    std::map<int, FockVector> out;
    auto inner = apply_gvo_state(g2, st, mid_cap, p_lo - mid_cap - 2, p_hi + mid_cap + 2);
    for (auto& [q, fv] : inner) {
        for (auto& [s2, c] : fv.terms()) {
            auto outer = apply_gvo_state(g1, s2, max_degree, p_lo - q, p_hi - q);
            for (auto& [p, fv2] : outer) {
                FockVector scaled = fv2;
                scaled *= c;
                auto& slot = out[p + q];
                slot += scaled;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

}  // namespace

TEST_CASE("catalog entries match the defining data") {
    SUBCASE("X+ term lists") {
        GVO g = catalog("X+");
        REQUIRE(g.creation.size() == 2);
        CHECK(g.creation[0] == ExpTerm{1, -1, rat(-3, 4)});
        CHECK(g.creation[1] == ExpTerm{2, +1, rat(1, 4)});
        REQUIRE(g.annihilation.size() == 2);
        CHECK(g.annihilation[0] == ExpTerm{1, +1, rat(1, 4)});
        CHECK(g.annihilation[1] == ExpTerm{2, -1, rat(1, 4)});
        CHECK(g.lattice == alpha());
        REQUIRE(g.zeromodes.size() == 1);
        CHECK(g.zeromodes[0] == ZeroMode{alpha(), rat(1, 4), +1, Rat(0)});
    }
    SUBCASE("k1- term list") {
        GVO g = catalog("k1-");
        REQUIRE(g.creation.size() == 2);
        CHECK(g.creation[0] == ExpTerm{2, -1, Rat(0)});
        CHECK(g.creation[1] == ExpTerm{2, +1, Rat(1)});
        CHECK(g.annihilation.empty());
        CHECK(g.lattice.is_zero());
        CHECK(g.zeromodes.empty());
    }
    SUBCASE("Phi- term list") {
        GVO g = catalog("Phi-", 0);
        REQUIRE(g.creation.size() == 1);
        CHECK(g.creation[0] == ExpTerm{2, +1, rat(5, 4)});
        REQUIRE(g.annihilation.size() == 1);
        CHECK(g.annihilation[0] == ExpTerm{1, +1, rat(1, 4)});
        CHECK(g.lattice == -eps2());
        REQUIRE(g.zeromodes.size() == 1);
        CHECK(g.zeromodes[0].sigma == -1);
        CHECK(g.zeromodes[0].lambda == rat(1, 2) * alpha());
        GVO g1 = catalog("Phi-", 1);
        CHECK(g1.zeromodes[0].offset == rat(1, 2));
    }
}

TEST_CASE("gvo_shift") {
    GVO g = catalog("X+");
    GVO s = gvo_shift(g, rat(1, 2));
    CHECK(s.creation[0].shift == rat(-1, 4));
    CHECK(s.creation[1].shift == rat(3, 4));
    CHECK(gvo_shift(g, Rat(0)) == g);
    CHECK(gvo_shift(gvo_shift(g, rat(1, 4)), rat(1, 4)) == gvo_shift(g, rat(1, 2)));
    CHECK(catalog("E") == gvo_shift(catalog("X+"), rat(1, 2)));
}

TEST_CASE("gvo_inverse") {
    SUBCASE("involution") {
        GVO g = catalog("k1+");
        CHECK(gvo_inverse(gvo_inverse(g)) == g);
    }
    SUBCASE("inverse composes to the identity action") {
        GVO g = catalog("k1+");
        GVO gi = gvo_inverse(g);
        for (auto& st : enumerate_states(0, 3, 1)) {
            auto res = composed_modes(gi, g, st, 3, -4, 0, 6);
            for (auto& [p, fv] : res) {
                if (p == 0)
                    CHECK(fv == FockVector(st));
                else
                    CHECK(fv.is_zero());
            }
        }
    }
    SUBCASE("lattice shift rejected") { CHECK_THROWS(gvo_inverse(catalog("X+"))); }
}

TEST_CASE("gvo_merge equals composition") {
    // H+ = k2+(u+h/2) k1+(u+h/2)^{-1}: merged entry vs mode-by-mode product
    GVO h = catalog("H+");
    GVO left = gvo_shift(catalog("k2+"), rat(1, 2));
    GVO right = gvo_inverse(gvo_shift(catalog("k1+"), rat(1, 2)));
    for (auto& st : enumerate_states(0, 2, 1)) {
        auto merged = apply_gvo_state(h, st, 2, -3, 0);
        auto composed = composed_modes(left, right, st, 2, -3, 0, 5);
        for (int p = -3; p <= 0; ++p) {
            FockVector a = merged.count(p) ? merged[p] : FockVector();
            FockVector b = composed.count(p) ? composed[p] : FockVector();
            CHECK(a == b);
        }
    }
    CHECK_THROWS(gvo_merge(catalog("k1+"), catalog("k1-")));
}

TEST_CASE("gvo_apply examples") {
    FockState vac0 = highest_weight_state(0);
    SUBCASE("[u^0] X+ on vacuum hits the shifted vacuum") {
        FockVector r = gvo_apply(catalog("X+"), 0, FockVector(vac0), 2);
        FockState target = vac0;
        target.n = 1;
        CHECK(dual_pairing(target, r) == PolyHS(1));
    }
    SUBCASE("[u^{-1}] k1+ on vacuum = -(s/2) h: oracle = exp(x log((u-h/2)/(u+h/2)))") {
        FockVector r = gvo_apply(catalog("k1+"), -1, FockVector(vac0), 0);
        PolyHS expect = PolyHS::term(rat(-1, 2), 1, 1);  // -(1/2) h s
        CHECK(dual_pairing(vac0, r) == expect);
    }
    SUBCASE("<Lambda_1,s-1| [u^0] Phi-(i=0) |Lambda_0,s> = 1") {
        FockVector r = gvo_apply(catalog("Phi-", 0), 0, FockVector(vac0), 0);
        FockState target = highest_weight_state(1, -1);
        CHECK(dual_pairing(target, r) == PolyHS(1));
        // and it is the only surviving u-power on the vacuum component
        for (int p = -4; p <= 4; ++p) {
            if (p == 0) continue;
            FockVector rp = gvo_apply(catalog("Phi-", 0), p, FockVector(vac0), 0);
            CHECK(dual_pairing(target, rp) == PolyHS());
        }
    }
    SUBCASE("<Lambda_0,s-1| Psi+(i=1) |Lambda_1,s> = 1") {
        FockState vac1 = highest_weight_state(1);
        FockVector r = gvo_apply(catalog("Psi+", 1), 0, FockVector(vac1), 0);
        FockState target = highest_weight_state(0, -1);
        CHECK(dual_pairing(target, r) == PolyHS(1));
    }
}

TEST_CASE("hbar homogeneity and per-slice degree locality") {
    // Matrix elements of [u^p] g between degree-d and degree-d' states are
    // hbar-homogeneous of degree (d'-d) - p + E, with s-degree <= hbar-degree.
    std::vector<std::pair<std::string, int>> names = {
        {"k1+", -1}, {"k2+", -1}, {"k1-", -1}, {"k2-", -1}, {"X+", -1},   {"X-", -1},
        {"H+", -1},  {"H-", -1},  {"K+", -1},  {"K-", -1},  {"E", -1},    {"F", -1},
        {"Phi-", 0}, {"Phi-", 1}, {"Psi+", 0}, {"Psi+", 1}};
    for (auto& [name, sector] : names) {
        GVO g = catalog(name, sector);
        int src_sector = sector >= 0 ? sector : 0;
        for (auto& st : enumerate_states(src_sector, 3, 1)) {
            ZeroModeData zd;
            try {
                zd = zero_mode_data(g, st);
            } catch (const std::domain_error&) {
                continue;
            }
            int d = st.boson_degree();
            auto res = apply_gvo_state(g, st, 4, -4, 4);
            for (auto& [p, fv] : res)
                for (auto& [st2, c] : fv.terms()) {
                    int expect = (st2.boson_degree() - d) - p + static_cast<int>(zd.n_tot);
                    for (auto& [key, coef] : c.terms()) {
                        CHECK(key.first == expect);
                        CHECK(key.second <= key.first);
                    }
                }
        }
    }
}
