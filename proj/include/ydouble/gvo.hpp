#ifndef YDOUBLE_GVO_HPP
#define YDOUBLE_GVO_HPP

#include <string>
#include <vector>

#include "ydouble/rational.hpp"
#include "ydouble/weight.hpp"

namespace ydouble {

// One exponential term: coeff * (u + shift*h)^{+-k} multiplying a_{color,-+k}/k
// inside the creation or annihilation exponential.
struct ExpTerm {
    int color = 1;   // boson color 1 or 2
    int coeff = 0;   // integer, catalog entries use +-1
    Rat shift = Rat(0);

    friend bool operator==(const ExpTerm& x, const ExpTerm& y) {
        return x.color == y.color && x.coeff == y.coeff && x.shift == y.shift;
    }
};

// Zero-mode factor [sigma*(u + shift*h)]^{(lambda, d) + offset}.
struct ZeroMode {
    WeightVector lambda;
    Rat shift = Rat(0);
    int sigma = +1;
    Rat offset = Rat(0);

    friend bool operator==(const ZeroMode& x, const ZeroMode& y) {
        return x.lambda == y.lambda && x.shift == y.shift && x.sigma == y.sigma &&
               x.offset == y.offset;
    }
};

// Generalized normal-ordered vertex operator: the single type housing every
// current and vertex operator of the catalog. Factors are written in normal
// order (creation, annihilation, lattice, zero modes) and applied right to
// left on states.
struct GVO {
    std::vector<ExpTerm> creation;
    std::vector<ExpTerm> annihilation;
    WeightVector lattice;            // integral
    std::vector<ZeroMode> zeromodes;
    Rat prefactor = Rat(1);

    void normalize();  // combine like entries, drop zeros, sort
    bool empty() const {
        return creation.empty() && annihilation.empty() && lattice.is_zero() &&
               zeromodes.empty() && prefactor == 1;
    }
    friend bool operator==(const GVO& a, const GVO& b) {
        return a.creation == b.creation && a.annihilation == b.annihilation &&
               a.lattice == b.lattice && a.zeromodes == b.zeromodes &&
               a.prefactor == b.prefactor;
    }
};

// Translate the spectral argument by c*h.
GVO gvo_shift(GVO g, const Rat& c);

// Inverse of a pure exponential-with-zero-modes operator (no lattice part).
GVO gvo_inverse(GVO g);

// Concatenate two operators whose parts commute (no lattice on either side,
// and not one creation-side against the other's annihilation side).
GVO gvo_merge(const GVO& g1, const GVO& g2);

// Named catalog. The level is fixed at c = 1 on the Fock modules, so every
// u_{+-} in the defining formulas is already substituted u +- h/4.
// Names: k1+ k2+ k1- k2- X+ X- H+ H- K+ K- E F Phi- Psi+  (X+ and X- are the
// 1/h-normalized currents; Phi-/Psi+ take the source sector 0 or 1).
GVO catalog(const std::string& name, int sector = -1);

// Deterministic JSON rendering of every catalog entry.
std::string catalog_dump_json();

}  // namespace ydouble

#endif
