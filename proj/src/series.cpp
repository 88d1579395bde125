#include "ydouble/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ydouble {

RegionalSeries& RegionalSeries::add(const std::vector<int>& exps, const PolyHS& c) {
    if (c.is_zero()) return *this;
    auto it = terms.find(exps);
    if (it == terms.end()) {
        terms[exps] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
    return *this;
}

std::string RegionalSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (size_t i = 0; i < vars.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << spec_var_name(vars[i]);
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return first ? "0" : os.str();
}

static std::vector<int> series_hi(const RegionalSeries& s) {
    std::vector<int> hi = s.lo;
    for (auto& [e, c] : s.terms)
        for (size_t i = 0; i < e.size(); ++i) hi[i] = std::max(hi[i], e[i]);
    return hi;
}

RegionalSeries series_mul(const RegionalSeries& a, const RegionalSeries& b) {
    if (a.vars != b.vars) throw std::invalid_argument("series_mul: region mismatch");
    RegionalSeries out;
    out.vars = a.vars;
    std::vector<int> ha = series_hi(a), hb = series_hi(b);
    out.lo.resize(a.vars.size());
    for (size_t i = 0; i < a.vars.size(); ++i)
        out.lo[i] = std::max(a.lo[i] + hb[i], ha[i] + b.lo[i]);
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            std::vector<int> e(ea.size());
            bool keep = true;
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                if (e[i] < out.lo[i]) keep = false;
            }
            if (keep) out.add(e, ca * cb);
        }
    return out;
}

RegionalSeries series_add(const RegionalSeries& a, const RegionalSeries& b) {
    if (a.vars != b.vars) throw std::invalid_argument("series_add: region mismatch");
    RegionalSeries out;
    out.vars = a.vars;
    out.lo.resize(a.vars.size());
    for (size_t i = 0; i < a.vars.size(); ++i) out.lo[i] = std::max(a.lo[i], b.lo[i]);
    auto keep = [&](const std::vector<int>& e) {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] < out.lo[i]) return false;
        return true;
    };
    for (auto& [e, c] : a.terms)
        if (keep(e)) out.add(e, c);
    for (auto& [e, c] : b.terms)
        if (keep(e)) out.add(e, c);
    return out;
}

RegionalSeries series_neg(RegionalSeries a) {
    for (auto& [e, c] : a.terms) c = -c;
    return a;
}

namespace {

int var_pos(const std::vector<int>& vars, int id) {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == id) return static_cast<int>(i);
    return -1;
}

// Series of sigma^e * (X + d*x_sub + c*hbar)^e around the dominant variable
// X = x_dom, valid down to lo[dom].
RegionalSeries expand_atom_power(const std::vector<int>& vars, const std::vector<int>& lo,
                                 int dom_pos, int sub_pos, const Rat& sub_coef, const Rat& c,
                                 int sigma, int e) {
    RegionalSeries out;
    out.vars = vars;
    out.lo = lo;
    int tmax = e >= 0 ? e : e - lo[dom_pos];
    Rat sig = sigma < 0 ? rat_pow(Rat(-1), e) : Rat(1);
    for (int t = 0; t <= tmax; ++t) {
        // C(e, t) * X^(e-t) * (sub_coef*x_sub + c*h)^t
        Rat bc = binomial(e, t) * sig;
        if (bc == 0) continue;
        for (int j = 0; j <= t; ++j) {
            // choose j powers of x_sub, t-j powers of c*h
            Rat term = bc * binomial(t, j) * rat_pow(sub_coef, j) * rat_pow(c, t - j);
            if (term == 0) continue;
            if (sub_pos < 0 && j > 0) continue;
            std::vector<int> exps(vars.size(), 0);
            exps[dom_pos] = e - t;
            if (j > 0) exps[sub_pos] += j;
            bool keep = true;
            for (size_t i = 0; i < exps.size(); ++i)
                if (exps[i] < lo[i]) keep = false;
            if (keep) out.add(exps, PolyHS::term(term, t - j, 0));
        }
    }
    return out;
}

// Region-lex comparison of exponent vectors: outermost variable first.
bool region_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// Multiply keeping every term above a fixed floor. Used inside
// expand_window, where the headroom-widened floor already accounts for all
// remaining factors; recomputing a conservative floor per step would drop
// terms that later factors still push back into the window.
RegionalSeries series_mul_floor(const RegionalSeries& a, const RegionalSeries& b,
                                const std::vector<int>& floor_lo) {
    RegionalSeries out;
    out.vars = a.vars;
    out.lo = floor_lo;
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            std::vector<int> e(ea.size());
            bool keep = true;
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                if (e[i] < floor_lo[i]) keep = false;
            }
            if (keep) out.add(e, ca * cb);
        }
    return out;
}

}  // namespace

RegionalSeries expand_window(const FactorProduct& f, const std::vector<int>& vars,
                             const std::vector<int>& lo) {
    if (vars.size() != lo.size()) throw std::invalid_argument("expand_window: size mismatch");

    // Positive-degree headroom per variable over all factors, to widen the
    // internal window so later multiplications cannot push terms back in.
    std::vector<int> head(vars.size(), 0);
    for (auto& [at, te] : f.atoms()) {
        if (te % 2 != 0) throw std::domain_error("expand: half-integer atom exponent");
        int e = te / 2;
        if (e > 0) {
            int pa = var_pos(vars, at.a);
            if (pa >= 0) head[pa] += e;
            if (at.b >= 0) {
                int pb = var_pos(vars, at.b);
                if (pb >= 0) head[pb] += e;
            }
        }
    }
    // Numerator can also raise exponents; add its max degrees.
    for (size_t i = 0; i < vars.size(); ++i) {
        int d = f.num().degree_in(spec_key(vars[i]));
        if (d > 0) head[i] += d;
    }

    std::vector<int> wide(lo.size());
    for (size_t i = 0; i < lo.size(); ++i) wide[i] = lo[i] - head[i];

    RegionalSeries acc;
    acc.vars = vars;
    acc.lo = wide;
    acc.add(std::vector<int>(vars.size(), 0), PolyHS(1));

    for (auto& [at, te] : f.atoms()) {
        int e = te / 2;
        int pa = var_pos(vars, at.a);
        int pb = at.b >= 0 ? var_pos(vars, at.b) : -1;
        if (pa < 0 && pb < 0) throw std::domain_error("expand: atom variable outside region");
        RegionalSeries fac;
        if (at.b < 0) {
            if (pa < 0) throw std::domain_error("expand: atom variable outside region");
            fac = expand_atom_power(vars, wide, pa, -1, Rat(0), at.c, at.sigma, e);
        } else {
            if (pa < 0 || pb < 0)
                throw std::domain_error("expand: region does not resolve atom " + at.str());
            if (pa < pb) {
                fac = expand_atom_power(vars, wide, pa, pb, Rat(-1), at.c, at.sigma, e);
            } else {
                // sigma*(x_a - x_b + c h) = (-sigma)*(x_b - x_a - c h)
                fac = expand_atom_power(vars, wide, pb, pa, Rat(-1), -at.c,
                                        at.sigma < 0 ? +1 : -1, e);
            }
        }
        acc = series_mul_floor(acc, fac, wide);
    }

    // Numerator polynomial.
    {
        RegionalSeries np;
        np.vars = vars;
        np.lo = wide;
        for (auto& [m, c] : f.num().terms()) {
            std::vector<int> exps(vars.size(), 0);
            int he = 0, se = 0;
            bool ok = true;
            for (auto& [k, ke] : m) {
                if (k == kVarHbar)
                    he = ke;
                else if (k == kVarS)
                    se = ke;
                else {
                    int p = var_pos(vars, k - 2);
                    if (p < 0) ok = false;
                    else exps[p] = ke;
                }
            }
            if (!ok) throw std::domain_error("expand: numerator variable outside region");
            np.add(exps, PolyHS::term(c, he, se));
        }
        acc = series_mul_floor(acc, np, wide);
    }

    // Denominator: invert around its region-lex leading monomial.
    if (!(f.den() == MPoly(1))) {
        const MPoly& den = f.den();
        // Find leading monomial in region-lex order.
        std::vector<int> lead_exp(vars.size(), 0);
        PolyHS lead_coef;
        bool have = false;
        std::map<std::vector<int>, PolyHS> rest;
        for (auto& [m, c] : den.terms()) {
            std::vector<int> exps(vars.size(), 0);
            int he = 0, se = 0;
            for (auto& [k, ke] : m) {
                if (k == kVarHbar) he = ke;
                else if (k == kVarS) se = ke;
                else {
                    int p = var_pos(vars, k - 2);
                    if (p < 0) throw std::domain_error("expand: denominator variable outside region");
                    exps[p] = ke;
                }
            }
            if (he > 0 || se > 0) {
                auto& slot = rest[exps];
                slot += PolyHS::term(c, he, se);
                continue;
            }
            if (!have || region_less(lead_exp, exps)) {
                if (have) {
                    auto& slot = rest[lead_exp];
                    slot += lead_coef;
                }
                lead_exp = exps;
                lead_coef = PolyHS::term(c, 0, 0);
                have = true;
            } else if (exps == lead_exp) {
                lead_coef += PolyHS::term(c, 0, 0);
            } else {
                auto& slot = rest[exps];
                slot += PolyHS::term(c, 0, 0);
            }
        }
        if (!have || !lead_coef.is_constant() || lead_coef.constant_value() == 0)
            throw std::domain_error("expand: denominator not invertible in region");
        Rat lc = lead_coef.constant_value();

        // den = lc * x^lead (1 + R),  R = rest / (lc * x^lead).
        RegionalSeries R;
        R.vars = vars;
        R.lo = wide;
        for (auto& [e, c] : rest) {
            if (c.is_zero()) continue;
            std::vector<int> sh(e.size());
            for (size_t i = 0; i < e.size(); ++i) sh[i] = e[i] - lead_exp[i];
            if (!region_less(sh, std::vector<int>(e.size(), 0)))
                throw std::domain_error("expand: denominator not invertible in region");
            PolyHS cc = c;
            cc *= Rat(1) / lc;
            R.add(sh, cc);
        }
        RegionalSeries inv;
        inv.vars = vars;
        inv.lo = wide;
        inv.add(std::vector<int>(vars.size(), 0), PolyHS(Rat(1) / lc));
        // inv *= sum_t (-R)^t, truncated by the window.
        RegionalSeries powR;
        powR.vars = vars;
        powR.lo = wide;
        powR.add(std::vector<int>(vars.size(), 0), PolyHS(1));
        RegionalSeries geom = powR;
        int safety = 0;
        while (true) {
            powR = series_mul_floor(powR, series_neg(R), wide);
            if (powR.terms.empty()) break;
            geom = series_add(geom, powR);
            if (++safety > 10000)
                throw std::domain_error("expand: denominator inversion did not terminate");
        }
        RegionalSeries invfull = series_mul_floor(inv, geom, wide);
        // Shift exponents by -lead_exp.
        RegionalSeries shifted;
        shifted.vars = vars;
        shifted.lo = wide;
        for (auto& [e, c] : invfull.terms) {
            std::vector<int> sh(e.size());
            for (size_t i = 0; i < e.size(); ++i) sh[i] = e[i] - lead_exp[i];
            shifted.add(sh, c);
        }
        shifted.lo = wide;
        acc = series_mul_floor(acc, shifted, wide);
    }

    // Trim to the requested window.
    RegionalSeries out;
    out.vars = vars;
    out.lo = lo;
    for (auto& [e, c] : acc.terms) {
        bool keep = true;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] < lo[i]) keep = false;
        if (keep) out.add(e, c);
    }
    return out;
}

RegionalSeries expand_region(const FactorProduct& f, const std::vector<int>& vars, int order) {
    // Leading exponent per variable: sum of atom tops plus numerator degree
    // minus denominator leading exponents.
    std::vector<int> lead(vars.size(), 0);
    auto pos_of = [&](int id) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == id) return static_cast<int>(i);
        return -1;
    };
    for (size_t i = 0; i < vars.size(); ++i) {
        int key = spec_key(vars[i]);
        int top = 0;
        for (auto& [at, te] : f.atoms()) {
            int e = te / 2;
            if (at.a != vars[i] && at.b != vars[i]) continue;
            if (e > 0) {
                top += e;  // positive powers raise the max exponent
                continue;
            }
            // Negative powers lower only the dominant variable.
            int dom = at.a;
            if (at.b >= 0) {
                int pa = pos_of(at.a), pb = pos_of(at.b);
                dom = (pb < 0 || (pa >= 0 && pa < pb)) ? at.a : at.b;
            }
            if (dom == vars[i]) top += e;
        }
        top += std::max(0, f.num().degree_in(key));
        top -= std::max(0, f.den().degree_in(key));
        lead[i] = top;
    }
    std::vector<int> lo(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) lo[i] = lead[i] - order;
    return expand_window(f, vars, lo);
}

}  // namespace ydouble
