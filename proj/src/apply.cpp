#include "ydouble/apply.hpp"

#include <algorithm>
#include <stdexcept>

namespace ydouble {

namespace {

struct SeriesCtx {
    int floor_exp;
    int hbar_cap;

    void add(USeries& a, int p, const PolyHS& c) const {
        if (p < floor_exp) return;
        PolyHS cc = hbar_cap == INT_MAX ? c : c.truncated_hbar(hbar_cap);
        if (cc.is_zero()) return;
        auto it = a.find(p);
        if (it == a.end()) {
            a[p] = cc;
        } else {
            it->second += cc;
            if (it->second.is_zero()) a.erase(it);
        }
    }

    USeries mul(const USeries& a, const USeries& b) const {
        USeries out;
        for (auto& [pa, ca] : a)
            for (auto& [pb, cb] : b) {
                if (pa + pb < floor_exp) continue;
                add(out, pa + pb, ca * cb);
            }
        return out;
    }

    // (u + shift*h)^e as a series down to the floor.
    USeries shifted_power(const Rat& shift, int e) const {
        USeries out;
        int tmax = e >= 0 ? e : e - floor_exp;
        for (int t = 0; t <= tmax; ++t)
            add(out, e - t, PolyHS::term(binomial(e, t) * rat_pow(shift, t), t, 0));
        return out;
    }
};

// Falling factorial x(x-1)...(x-t+1)/t! with a PolyHS argument.
PolyHS polyhs_binomial(const PolyHS& x, int t) {
    PolyHS out(1);
    for (int j = 0; j < t; ++j) out *= x - PolyHS(j);
    Rat f(1);
    for (int j = 2; j <= t; ++j) f *= Rat(j);
    out *= Rat(1) / f;
    return out;
}

}  // namespace

ZeroModeData zero_mode_data(const GVO& g, const FockState& st) {
    ZeroModeData out;
    Rat total(0), s_total(0);
    for (auto& z : g.zeromodes) {
        auto [r, q] = weight_readout(z.lambda, st);
        Rat x = r + z.offset;
        total += x;
        s_total += q;
        if (z.sigma < 0) {
            if (q != 0 || !is_integer(x))
                throw std::domain_error("zero mode: signed factor with non-integer exponent");
            if (to_long(x) % 2 != 0) out.sign = -out.sign;
        }
    }
    if (s_total != 0 || !is_integer(total))
        throw std::domain_error("zero mode: unmatched non-integer pure u-power");
    out.n_tot = to_long(total);
    return out;
}

std::map<int, FockVector> apply_gvo_state(const GVO& g, const FockState& st, int max_degree,
                                          int p_lo, int p_hi, int hbar_cap) {
    std::map<int, FockVector> result;
    if (p_hi < p_lo) return result;

    ZeroModeData zd = zero_mode_data(g, st);

    int headroom = max_degree + static_cast<int>(std::max<long>(zd.n_tot, 0)) + 1;
    SeriesCtx ctx{p_lo - headroom, hbar_cap};

    // Zero modes: u^{n_tot} * sign * product of (1 + c h/u)^x tails.
    USeries total_series;
    total_series[static_cast<int>(zd.n_tot)] = PolyHS(zd.sign);
    for (auto& z : g.zeromodes) {
        auto [r, q] = weight_readout(z.lambda, st);
        PolyHS x = PolyHS(r + z.offset) + PolyHS::s() * PolyHS(q);
        int top = total_series.empty() ? 0 : total_series.rbegin()->first;
        int depth = std::max(0, top - ctx.floor_exp);
        int tail_cap = hbar_cap == INT_MAX ? depth : std::min(depth, hbar_cap);
        USeries tail;
        for (int t = 0; t <= tail_cap; ++t)
            ctx.add(tail, -t, polyhs_binomial(x, t) * PolyHS::term(rat_pow(z.shift, t), t, 0));
        total_series = ctx.mul(total_series, tail);
        if (total_series.empty()) return result;
    }

    // Lattice shift.
    FockVector shifted = apply_lattice(g.lattice, FockVector(st));
    if (shifted.terms().size() != 1) throw std::logic_error("lattice shift not a relabeling");
    FockState st2 = shifted.terms().begin()->first;

    // Annihilation stage.
    std::vector<std::pair<USeries, FockState>> ann_results;
    {
        std::vector<std::pair<std::pair<int, int>, int>> groups;  // (color, part) -> mult
        auto collect = [&](const std::vector<int>& part, int color) {
            for (size_t i = 0; i < part.size();) {
                size_t j = i;
                while (j < part.size() && part[j] == part[i]) ++j;
                groups.push_back({{color, part[i]}, static_cast<int>(j - i)});
                i = j;
            }
        };
        collect(st2.l1, 1);
        collect(st2.l2, 2);

        std::vector<std::pair<USeries, std::map<std::pair<int, int>, int>>> partial;
        USeries one;
        one[0] = PolyHS(1);
        partial.push_back({one, {}});
        for (auto& [ck, mult] : groups) {
            auto [color, k] = ck;
            USeries psi;
            for (auto& t : g.annihilation)
                if (t.color == color) {
                    USeries pw = ctx.shifted_power(t.shift, -k);
                    for (auto& [p, c] : pw) ctx.add(psi, p, c * (Rat(t.coeff) * rat(1, k)));
                }
            std::vector<std::pair<USeries, std::map<std::pair<int, int>, int>>> next;
            for (auto& [w, removed] : partial) {
                next.push_back({w, removed});
                if (psi.empty()) continue;
                USeries pw = psi;
                for (int m = 1; m <= mult; ++m) {
                    USeries wm = ctx.mul(w, pw);
                    Rat factor = rat_pow(Rat(k), m) * binomial(mult, m);
                    USeries scaled;
                    for (auto& [p, c] : wm) scaled[p] = c * factor;
                    auto rem = removed;
                    rem[{color, k}] = m;
                    next.push_back({std::move(scaled), std::move(rem)});
                    if (m < mult) pw = ctx.mul(pw, psi);
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

    // Creation stage and final assembly.
    for (auto& [w_ann, st3] : ann_results) {
        USeries base = ctx.mul(total_series, w_ann);
        if (base.empty()) continue;
        int budget = max_degree - st3.boson_degree();
        if (budget < 0) continue;

        std::vector<std::tuple<int, int, USeries>> chis;  // (color, k, chi)
        for (int k = 1; k <= budget; ++k)
            for (int color : {1, 2}) {
                USeries chi;
                for (auto& t : g.creation)
                    if (t.color == color) {
                        USeries pw = ctx.shifted_power(t.shift, k);
                        for (auto& [p, c] : pw) ctx.add(chi, p, c * (Rat(t.coeff) * rat(1, k)));
                    }
                if (!chi.empty()) chis.push_back({color, k, chi});
            }

        struct Rec {
            const std::vector<std::tuple<int, int, USeries>>& chis;
            const SeriesCtx& ctx;
            std::map<int, FockVector>& result;
            int p_lo, p_hi;

            void emit(const USeries& w, const FockState& s) {
                for (auto& [p, c] : w) {
                    if (p < p_lo || p > p_hi) continue;
                    result[p].add(s, c);
                }
            }
            void go(size_t idx, int budget, const USeries& w, const FockState& s) {
                if (w.empty()) return;
                if (idx == chis.size()) {
                    emit(w, s);
                    return;
                }
                auto& [color, k, chi] = chis[idx];
                go(idx + 1, budget, w, s);
                USeries acc = w;
                Rat mfact(1);
                for (int m = 1; m * k <= budget; ++m) {
                    acc = ctx.mul(acc, chi);
                    if (acc.empty()) break;
                    mfact *= Rat(m);
                    USeries scaled;
                    for (auto& [p, c] : acc) scaled[p] = c * (Rat(1) / mfact);
                    FockState ns = s;
                    std::vector<int>& part = color == 1 ? ns.l1 : ns.l2;
                    for (int t = 0; t < m; ++t) part.push_back(k);
                    std::sort(part.begin(), part.end(), std::greater<int>());
                    go(idx + 1, budget - m * k, scaled, ns);
                }
            }
        };
        Rec rec{chis, ctx, result, p_lo, p_hi};
        rec.go(0, budget, base, st3);
    }

    if (g.prefactor != 1)
        for (auto& [p, fv] : result) fv *= PolyHS(g.prefactor);
    for (auto it = result.begin(); it != result.end();) {
        if (it->second.is_zero())
            it = result.erase(it);
        else
            ++it;
    }
    return result;
}

FockVector gvo_apply(const GVO& g, int p, const FockVector& v, int max_degree, int hbar_cap) {
    FockVector out;
    for (auto& [st, c] : v.terms()) {
        auto res = apply_gvo_state(g, st, max_degree, p, p, hbar_cap);
        auto it = res.find(p);
        if (it != res.end()) {
            FockVector scaled = it->second;
            scaled *= c;
            out += scaled;
        }
    }
    return out;
}

std::map<std::vector<int>, FockVector> word_apply_state(
    const std::vector<WordFactorOp>& factors, const FockState& st,
    const std::vector<int>& degree_caps, const std::vector<int>& vars,
    const std::map<int, std::pair<int, int>>& windows, int hbar_cap) {
    if (degree_caps.size() != factors.size())
        throw std::invalid_argument("word_apply_state: one degree cap per factor");
    auto var_index = [&](int id) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == id) return static_cast<int>(i);
        throw std::invalid_argument("word_apply_state: unknown variable");
    };
    std::map<std::vector<int>, FockVector> acc;
    acc[std::vector<int>(vars.size(), 0)] = FockVector(st);
    for (size_t idx = factors.size(); idx-- > 0;) {
        const auto& f = factors[idx];
        auto win = windows.at(f.var);
        int vi = var_index(f.var);
        int cap = degree_caps[idx];
        std::map<std::vector<int>, FockVector> next;
        for (auto& [exps, fv] : acc)
            for (auto& [s, c] : fv.terms()) {
                auto res = apply_gvo_state(f.op, s, cap, win.first, win.second, hbar_cap);
                for (auto& [p, rv] : res) {
                    std::vector<int> ne = exps;
                    ne[vi] += p;
                    FockVector scaled = rv;
                    scaled *= c;
                    auto slot = next.find(ne);
                    if (slot == next.end())
                        next[ne] = std::move(scaled);
                    else
                        slot->second += scaled;
                }
            }
        for (auto jt = next.begin(); jt != next.end();) {
            if (jt->second.is_zero())
                jt = next.erase(jt);
            else
                ++jt;
        }
        acc = std::move(next);
    }
    return acc;
}

FockVector current_mode_apply(const GVO& g, long mode, const FockVector& v, int max_degree,
                              int hbar_cap) {
    return gvo_apply(g, static_cast<int>(-mode - 1), v, max_degree, hbar_cap);
}

FockVector commutator_mode(const GVO& g, int p, const GVO& current, long mode,
                           const FockVector& v, int max_degree, int hbar_cap) {
    // Intermediate components above max_degree can flow back down through
    // the second factor; widen the cap between the two applications.
    int mid = max_degree + 12 + std::abs(p) + static_cast<int>(std::abs(mode)) + 2 * 2;
    FockVector xv = current_mode_apply(current, mode, v, mid, hbar_cap);
    FockVector first = gvo_apply(g, p, xv, max_degree, hbar_cap);
    FockVector gv = gvo_apply(g, p, v, mid, hbar_cap);
    FockVector second = current_mode_apply(current, mode, gv, max_degree, hbar_cap);
    return first - second;
}

}  // namespace ydouble
