#include "ydouble/delta.hpp"

#include <sstream>

namespace ydouble {

std::string DeltaAtom::str() const {
    std::ostringstream os;
    os << "delta";
    if (r > 0) os << "^(" << r << ")";
    os << "(" << spec_var_name(a) << " - " << spec_var_name(b);
    if (c != 0) {
        if (c > 0)
            os << " + " << (c == 1 ? std::string() : c.get_str() + "*") << "h";
        else
            os << " - " << (c == -1 ? std::string() : Rat(-c).get_str() + "*") << "h";
    }
    os << ")";
    return os.str();
}

static Rat falling(long m, long r) {
    Rat out(1);
    for (long t = 0; t < r; ++t) out *= Rat(m - t);
    return out;
}

PolyHS delta_coeff(const DeltaAtom& d, long m, long n) {
    // delta(x_a - x_b + c h) = sum_k x_a^(-k-1) (x_b - c h)^k, and
    // delta^(r) applies (-d/dx_b)^r termwise. The x_a^(-m-1) x_b^n
    // coefficient picks k = m and the single Taylor order m - n - r... with
    // the derivative, k = m and the binomial index m - r - n.
    long j = m - d.r - n;  // power of (-c h)
    if (j < 0) return PolyHS();
    Rat coef = falling(m, d.r);
    if (d.r % 2 != 0) coef = -coef;
    coef *= binomial(m - d.r, j);
    coef *= rat_pow(-d.c, j);
    if (coef == 0) return PolyHS();
    return PolyHS::term(coef, static_cast<int>(j), 0);
}

std::vector<std::pair<DeltaAtom, FactorProduct>> region_difference(const FactorProduct& f,
                                                                   int var_a, int var_b) {
    std::vector<std::pair<DeltaAtom, FactorProduct>> out;
    for (auto& [at, te] : f.atoms()) {
        bool crosses = at.b >= 0 && ((at.a == var_a && at.b == var_b) ||
                                     (at.a == var_b && at.b == var_a));
        if (!crosses) continue;
        if (te >= 0) continue;
        if (te != -2) throw NonsimplePole(at);
        // Canonical orientation has at.a = var_a < var_b = at.b, sigma = +1.
        FactorProduct residue = f;
        residue.mul_atom(at, +2);
        residue = residue.subst_spec(var_a, var_b, -at.c);
        DeltaAtom d;
        d.a = var_a;
        d.b = var_b;
        d.c = at.c;
        d.r = 0;
        if (at.sigma < 0) residue.mul_rat(Rat(-1));
        out.push_back({d, residue});
    }
    return out;
}

}  // namespace ydouble
