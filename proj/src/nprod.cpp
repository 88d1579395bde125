#include "ydouble/nprod.hpp"

#include "ydouble/series.hpp"
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ydouble {

void Skeleton::normalize() {
    {
        std::map<std::tuple<int, int, Rat>, int> acc;
        for (auto& t : creation) acc[{t.var, t.color, t.shift}] += t.coeff;
        creation.clear();
        for (auto& [k, c] : acc)
            if (c != 0) creation.push_back({std::get<0>(k), std::get<1>(k), c, std::get<2>(k)});
    }
    {
        std::map<std::tuple<int, int, Rat>, int> acc;
        for (auto& t : annihilation) acc[{t.var, t.color, t.shift}] += t.coeff;
        annihilation.clear();
        for (auto& [k, c] : acc)
            if (c != 0)
                annihilation.push_back({std::get<0>(k), std::get<1>(k), c, std::get<2>(k)});
    }
    {
        std::map<std::tuple<int, Rat, int>, WeightVector> acc;
        for (auto& z : zeromodes) {
            auto key = std::make_tuple(z.var, z.shift, z.sigma);
            auto it = acc.find(key);
            if (it == acc.end())
                acc[key] = z.lambda;
            else
                it->second = it->second + z.lambda;
        }
        zeromodes.clear();
        for (auto& [k, lam] : acc)
            if (!lam.is_zero())
                zeromodes.push_back({std::get<0>(k), lam, std::get<1>(k), std::get<2>(k)});
    }
}

std::set<int> Skeleton::vars() const {
    std::set<int> out;
    for (auto& t : creation) out.insert(t.var);
    for (auto& t : annihilation) out.insert(t.var);
    for (auto& z : zeromodes) out.insert(z.var);
    return out;
}

std::string Skeleton::key() const {
    std::ostringstream os;
    os << "C:";
    for (auto& t : creation)
        os << "(" << t.var << "," << t.color << "," << t.coeff << "," << t.shift.get_str() << ")";
    os << "|A:";
    for (auto& t : annihilation)
        os << "(" << t.var << "," << t.color << "," << t.coeff << "," << t.shift.get_str() << ")";
    os << "|L:" << lattice.e1.get_str() << "," << lattice.e2.get_str() << "|Z:";
    for (auto& z : zeromodes)
        os << "(" << z.var << "," << z.lambda.e1.get_str() << "," << z.lambda.e2.get_str() << ","
           << z.shift.get_str() << "," << z.sigma << ")";
    return os.str();
}

Skeleton Skeleton::subst_var(int from, int to, const Rat& c) const {
    Skeleton out = *this;
    for (auto& t : out.creation)
        if (t.var == from) {
            t.var = to;
            t.shift += c;
        }
    for (auto& t : out.annihilation)
        if (t.var == from) {
            t.var = to;
            t.shift += c;
        }
    for (auto& z : out.zeromodes)
        if (z.var == from) {
            z.var = to;
            z.shift += c;
        }
    out.normalize();
    return out;
}

GVO Skeleton::to_gvo(int var) const {
    GVO g;
    for (auto& t : creation) {
        if (t.var != var) throw std::domain_error("to_gvo: multi-variable skeleton");
        g.creation.push_back({t.color, t.coeff, t.shift});
    }
    for (auto& t : annihilation) {
        if (t.var != var) throw std::domain_error("to_gvo: multi-variable skeleton");
        g.annihilation.push_back({t.color, t.coeff, t.shift});
    }
    for (auto& z : zeromodes) {
        if (z.var != var) throw std::domain_error("to_gvo: multi-variable skeleton");
        g.zeromodes.push_back({z.lambda, z.shift, z.sigma, Rat(0)});
    }
    g.lattice = lattice;
    g.normalize();
    return g;
}

NProd nprod_of(const GVO& g, int var) {
    NProd np;
    np.scalar = FactorProduct(Rat(1));
    contract_append(np, g, var);
    return np;
}

void contract_append(NProd& acc, const GVO& g, int var) {
    // Boson contractions: annihilation on the left against creation on the
    // right, same color. exp(A)exp(B) = exp([A,B]) exp(B)exp(A) with the
    // commutator summed to (1-z)^(-1)-type closed form.
    for (auto& a : acc.skel.annihilation)
        for (auto& c : g.creation) {
            if (a.color != c.color) continue;
            int e = -a.coeff * c.coeff;  // exponent of (1 - z)
            if (e == 0) continue;
            if (a.var == var) {
                if (a.shift == c.shift)
                    throw std::domain_error("contract: coincident same-variable contraction");
                // (1 - z) = ((b - a) h) / (x + b h)
                MPoly num = MPoly::hbar() * (a.shift - c.shift);
                FactorProduct base =
                    FactorProduct::ratio(num, MPoly::spec(var) + MPoly::hbar() * a.shift,
                                         {atom1(var, a.shift)});
                acc.scalar.mul(base.pow_twice(2 * e));
            } else {
                // (1 - z) = (x_l - x_r + (b - a) h) / (x_l + b h)
                acc.scalar.mul_atom(atom2(a.var, var, a.shift - c.shift), 2 * e);
                acc.scalar.mul_atom(atom1(a.var, a.shift), -2 * e);
            }
        }
    // Zero-mode exchange against the incoming lattice shift.
    if (!g.lattice.is_zero())
        for (auto& z : acc.skel.zeromodes) {
            Rat e = bilinear(z.lambda, g.lattice);
            if (e == 0) continue;
            Rat twice = e * 2;
            if (!is_integer(twice))
                throw std::domain_error("contract: exchange exponent not a half-integer");
            acc.scalar.mul_atom(atom1(z.var, z.shift, z.sigma), static_cast<int>(to_long(twice)));
        }
    // Merge the shell; constant zero-mode offsets go to the scalar.
    for (auto& t : g.creation) acc.skel.creation.push_back({var, t.color, t.coeff, t.shift});
    for (auto& t : g.annihilation)
        acc.skel.annihilation.push_back({var, t.color, t.coeff, t.shift});
    acc.skel.lattice = acc.skel.lattice + g.lattice;
    for (auto& z : g.zeromodes) {
        acc.skel.zeromodes.push_back({var, z.lambda, z.shift, z.sigma});
        if (z.offset != 0) {
            Rat twice = z.offset * 2;
            if (!is_integer(twice))
                throw std::domain_error("contract: zero-mode offset not a half-integer");
            acc.scalar.mul_atom(atom1(var, z.shift, z.sigma), static_cast<int>(to_long(twice)));
        }
    }
    if (g.prefactor != 1) acc.scalar.mul_rat(g.prefactor);
    acc.skel.normalize();
}

NProd contract(const GVO& g1, int var1, const GVO& g2, int var2) {
    NProd np = nprod_of(g1, var1);
    contract_append(np, g2, var2);
    return np;
}

namespace {

using MSeries = std::map<std::vector<int>, PolyHS>;

void mseries_add(MSeries& a, const std::vector<int>& e, const PolyHS& c) {
    if (c.is_zero()) return;
    auto it = a.find(e);
    if (it == a.end()) {
        a[e] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) a.erase(it);
    }
}

MSeries mseries_mul(const MSeries& a, const MSeries& b, const std::vector<int>& floor_exp) {
    MSeries out;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            bool keep = true;
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                if (e[i] < floor_exp[i]) keep = false;
            }
            if (keep) mseries_add(out, e, ca * cb);
        }
    return out;
}

}  // namespace

std::map<std::vector<int>, FockVector> nprod_apply_state(
    const NProd& np, const FockState& st, int max_degree, const std::vector<int>& region,
    const std::map<int, std::pair<int, int>>& windows) {
    size_t nv = region.size();
    auto vpos = [&](int id) {
        for (size_t i = 0; i < nv; ++i)
            if (region[i] == id) return static_cast<int>(i);
        throw std::invalid_argument("nprod_apply_state: variable outside region");
    };

    // Split the scalar: cross atoms stay for regional expansion; single-
    // variable atoms turn into constant zero-mode exponents handled with the
    // state readouts; the residual must be free of spectral variables.
    FactorProduct cross(Rat(1));
    std::map<std::pair<int, std::pair<Rat, int>>, int> const_zm;  // (var,(shift,sigma)) -> 2e
    for (auto& [at, e] : np.scalar.atoms()) {
        if (at.b >= 0) {
            if (e % 2 != 0)
                throw std::domain_error("nprod_apply_state: half-integer cross atom");
            cross.mul_atom(at, e);
        } else {
            const_zm[{at.a, {at.c, at.sigma}}] += e;
        }
    }
    if (np.scalar.num().has_spec_vars() || np.scalar.den().has_spec_vars())
        throw std::domain_error("nprod_apply_state: spectral residual in scalar");
    PolyHS content = np.scalar.num().to_polyhs();
    if (!(np.scalar.den() == MPoly(1)))
        throw std::domain_error("nprod_apply_state: non-unit scalar denominator");

    // Per-variable zero-mode data: skeleton readouts plus constant scalar
    // exponents, combined before the integrality checks.
    std::vector<long> n_tot(nv, 0);
    Rat sign(1);
    std::vector<std::vector<std::pair<Rat, PolyHS>>> tails(nv);  // (shift, exponent)
    {
        std::map<std::pair<int, std::pair<Rat, int>>, std::pair<Rat, Rat>> expo;  // -> (rat, s)
        for (auto& z : np.skel.zeromodes) {
            auto [r, q] = weight_readout(z.lambda, st);
            auto& slot = expo[{z.var, {z.shift, z.sigma}}];
            slot.first += r;
            slot.second += q;
        }
        for (auto& [k, e] : const_zm) {
            auto& slot = expo[k];
            slot.first += Rat(e) / 2;
        }
        std::vector<Rat> stot(nv, Rat(0)), rtot(nv, Rat(0));
        for (auto& [k, rs] : expo) {
            int vi = vpos(k.first);
            auto [shift, sigma] = k.second;
            rtot[vi] += rs.first;
            stot[vi] += rs.second;
            if (sigma < 0) {
                if (rs.second != 0 || !is_integer(rs.first))
                    throw std::domain_error("nprod_apply_state: signed zero mode not integral");
                if (to_long(rs.first) % 2 != 0) sign = -sign;
            }
            PolyHS x = PolyHS(rs.first) + PolyHS::s() * PolyHS(rs.second);
            tails[vi].push_back({shift, x});
        }
        for (size_t i = 0; i < nv; ++i) {
            if (stot[i] != 0 || !is_integer(rtot[i]))
                throw std::domain_error("nprod_apply_state: unmatched pure power");
            n_tot[i] = to_long(rtot[i]);
        }
    }

    // Window floors for the joint series.
    std::vector<int> lo(nv), hi(nv);
    for (size_t i = 0; i < nv; ++i) {
        auto w = windows.at(region[i]);
        lo[i] = w.first;
        hi[i] = w.second;
    }
    std::vector<int> headroom(nv);
    for (size_t i = 0; i < nv; ++i)
        headroom[i] = max_degree + static_cast<int>(std::max<long>(n_tot[i], 0)) + 1;
    // Cross-scalar expansion can also raise exponents by its positive atoms.
    for (auto& [at, e] : cross.atoms())
        if (e > 0) {
            headroom[vpos(at.a)] += e / 2;
            headroom[vpos(at.b)] += e / 2;
        }
    std::vector<int> wfloor(nv);
    for (size_t i = 0; i < nv; ++i) wfloor[i] = lo[i] - headroom[i];

    // Base multi-series: pure powers, sign, content, zero-mode tails, and
    // the cross-scalar regional expansion.
    MSeries base;
    {
        std::vector<int> e(nv);
        for (size_t i = 0; i < nv; ++i) e[i] = static_cast<int>(n_tot[i]);
        PolyHS c = content;
        c *= sign;
        mseries_add(base, e, c);
    }
    for (size_t i = 0; i < nv; ++i)
        for (auto& [shift, x] : tails[i]) {
            MSeries tail;
            int top = 0;
            for (auto& [e, c] : base) top = std::max(top, e[i]);
            int depth = top - wfloor[i];
            for (int t = 0; t <= depth; ++t) {
                PolyHS fall(1);
                for (int j = 0; j < t; ++j) fall *= x - PolyHS(j);
                Rat tf(1);
                for (int j = 2; j <= t; ++j) tf *= Rat(j);
                fall *= Rat(1) / tf;
                std::vector<int> e(nv, 0);
                e[i] = -t;
                mseries_add(tail, e, fall * PolyHS::term(rat_pow(shift, t), t, 0));
            }
            base = mseries_mul(base, tail, wfloor);
        }
    if (!cross.is_one()) {
        RegionalSeries cs = expand_window(cross, region, wfloor);
        MSeries cm;
        for (auto& [e, c] : cs.terms) cm[e] = c;
        base = mseries_mul(base, cm, wfloor);
    }
    if (base.empty()) return {};

    // Lattice shift once.
    FockVector shifted = apply_lattice(np.skel.lattice, FockVector(st));
    FockState st2 = shifted.terms().begin()->first;

    // Annihilation stage over all variables.
    std::vector<std::pair<MSeries, FockState>> ann_results;
    {
        std::vector<std::pair<std::pair<int, int>, int>> groups;
        auto collectp = [&](const std::vector<int>& part, int color) {
            for (size_t i = 0; i < part.size();) {
                size_t j = i;
                while (j < part.size() && part[j] == part[i]) ++j;
                groups.push_back({{color, part[i]}, static_cast<int>(j - i)});
                i = j;
            }
        };
        collectp(st2.l1, 1);
        collectp(st2.l2, 2);

        std::vector<std::pair<MSeries, std::map<std::pair<int, int>, int>>> partial;
        MSeries one;
        one[std::vector<int>(nv, 0)] = PolyHS(1);
        partial.push_back({one, {}});
        for (auto& [ck, mult] : groups) {
            auto [color, k] = ck;
            MSeries psi;
            for (auto& t : np.skel.annihilation)
                if (t.color == color) {
                    int vi = vpos(t.var);
                    for (int d = 0; -k - d >= wfloor[vi]; ++d) {
                        Rat coef = binomial(-k, d) * rat_pow(t.shift, d) * Rat(t.coeff) * rat(1, k);
                        std::vector<int> e(nv, 0);
                        e[vi] = -k - d;
                        mseries_add(psi, e, PolyHS::term(coef, d, 0));
                    }
                }
            std::vector<std::pair<MSeries, std::map<std::pair<int, int>, int>>> next;
            for (auto& [w, removed] : partial) {
                next.push_back({w, removed});
                if (psi.empty()) continue;
                MSeries pw = psi;
                for (int m = 1; m <= mult; ++m) {
                    MSeries wm = mseries_mul(w, pw, wfloor);
                    Rat factor = rat_pow(Rat(k), m) * binomial(mult, m);
                    for (auto& [e, c] : wm) c *= factor;
                    auto rem = removed;
                    rem[{color, k}] = m;
                    next.push_back({std::move(wm), std::move(rem)});
                    if (m < mult) pw = mseries_mul(pw, psi, wfloor);
                }
            }
            partial = std::move(next);
        }
        for (auto& [w, removed] : partial) {
            if (w.empty()) continue;
            FockState ns = st2;
            for (auto& [ck, m] : removed) {
                auto [color, k] = ck;
                std::vector<int>& part = color == 1 ? ns.l1 : ns.l2;
                for (int t = 0; t < m; ++t) part.erase(std::find(part.begin(), part.end(), k));
            }
            ann_results.push_back({w, ns});
        }
    }

    // Creation stage.
    std::map<std::vector<int>, FockVector> result;
    for (auto& [w_ann, st3] : ann_results) {
        MSeries stage = mseries_mul(base, w_ann, wfloor);
        if (stage.empty()) continue;
        int budget = max_degree - st3.boson_degree();
        if (budget < 0) continue;

        std::vector<std::tuple<int, int, MSeries>> chis;
        for (int k = 1; k <= budget; ++k)
            for (int color : {1, 2}) {
                MSeries chi;
                for (auto& t : np.skel.creation)
                    if (t.color == color) {
                        int vi = vpos(t.var);
                        for (int d = 0; d <= k; ++d) {
                            Rat coef =
                                binomial(k, d) * rat_pow(t.shift, d) * Rat(t.coeff) * rat(1, k);
                            std::vector<int> e(nv, 0);
                            e[vi] = k - d;
                            mseries_add(chi, e, PolyHS::term(coef, d, 0));
                        }
                    }
                if (!chi.empty()) chis.push_back({color, k, chi});
            }

        struct Rec {
            const std::vector<std::tuple<int, int, MSeries>>& chis;
            const std::vector<int>& wfloor;
            const std::vector<int>& lo;
            const std::vector<int>& hi;
            std::map<std::vector<int>, FockVector>& result;

            void emit(const MSeries& w, const FockState& s) {
                for (auto& [e, c] : w) {
                    bool in = true;
                    for (size_t i = 0; i < e.size(); ++i)
                        if (e[i] < lo[i] || e[i] > hi[i]) in = false;
                    if (in) result[e].add(s, c);
                }
            }
            void go(size_t idx, int budget, const MSeries& w, const FockState& s) {
                if (w.empty()) return;
                if (idx == chis.size()) {
                    emit(w, s);
                    return;
                }
                auto& [color, k, chi] = chis[idx];
                go(idx + 1, budget, w, s);
                MSeries acc = w;
                Rat mfact(1);
                for (int m = 1; m * k <= budget; ++m) {
                    acc = mseries_mul(acc, chi, wfloor);
                    if (acc.empty()) break;
                    mfact *= Rat(m);
                    MSeries scaled = acc;
                    for (auto& [e, c] : scaled) c *= Rat(1) / mfact;
                    FockState ns = s;
                    std::vector<int>& part = color == 1 ? ns.l1 : ns.l2;
                    for (int t = 0; t < m; ++t) part.push_back(k);
                    std::sort(part.begin(), part.end(), std::greater<int>());
                    go(idx + 1, budget - m * k, scaled, ns);
                }
            }
        };
        Rec rec{chis, wfloor, lo, hi, result};
        rec.go(0, budget, stage, st3);
    }

    for (auto it = result.begin(); it != result.end();) {
        if (it->second.is_zero())
            it = result.erase(it);
        else
            ++it;
    }
    return result;
}

OrderedDifference ordered_difference(const GVO& g1, const GVO& g2, int var_a, int var_b) {
    OrderedDifference out;
    out.forward = contract(g1, var_a, g2, var_b);
    out.backward = contract(g2, var_b, g1, var_a);
    Skeleton fs = out.forward.skel, bs = out.backward.skel;
    fs.normalize();
    bs.normalize();
    if (!(fs == bs)) throw std::logic_error("ordered_difference: shells differ");
    out.scalars_match = out.forward.scalar == out.backward.scalar;
    if (!out.scalars_match) return out;
    for (auto& [d, residue] : region_difference(out.forward.scalar, var_a, var_b)) {
        NProd coeff;
        coeff.scalar = residue;
        coeff.skel = out.forward.skel.subst_var(var_a, var_b, -d.c);
        out.deltas.push_back({d, coeff});
    }
    return out;
}

}  // namespace ydouble
