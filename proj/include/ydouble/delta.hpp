#ifndef YDOUBLE_DELTA_HPP
#define YDOUBLE_DELTA_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "ydouble/atoms.hpp"
#include "ydouble/polyhs.hpp"

namespace ydouble {

// Formal delta atom delta^(r)(x_a - x_b + c*hbar). The two-sided series
// delta(u - v) = sum_k u^(-k-1) v^k; the shifted delta is its Taylor tower
// in the hbar shift, and for a fixed bidegree exactly one Taylor order
// contributes.
struct DeltaAtom {
    int a = 0;
    int b = 1;
    Rat c = Rat(0);
    int r = 0;

    std::string str() const;

    friend bool operator<(const DeltaAtom& x, const DeltaAtom& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.r < y.r;
    }
    friend bool operator==(const DeltaAtom& x, const DeltaAtom& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.r == y.r;
    }
};

// Coefficient of x_a^(-m-1) x_b^n in the delta atom; zero when m - n < r.
PolyHS delta_coeff(const DeltaAtom& d, long m, long n);

struct NonsimplePole : std::domain_error {
    LinAtom atom;
    explicit NonsimplePole(const LinAtom& at)
        : std::domain_error("nonsimple pole at " + at.str()), atom(at) {}
};

// expand(f, |x_a| >> |x_b|) - expand(f, |x_b| >> |x_a|) written exactly as a
// sum of delta atoms with factor-product coefficients (residues at the
// crossed simple poles, evaluated at the delta's support in x_b).
// Throws NonsimplePole when f has a double or higher cross pole.
std::vector<std::pair<DeltaAtom, FactorProduct>> region_difference(const FactorProduct& f,
                                                                   int var_a = 0, int var_b = 1);

}  // namespace ydouble

#endif
