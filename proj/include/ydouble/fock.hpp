#ifndef YDOUBLE_FOCK_HPP
#define YDOUBLE_FOCK_HPP

#include <map>
#include <string>
#include <vector>

#include "ydouble/polyhs.hpp"
#include "ydouble/weight.hpp"

namespace ydouble {

// Basis element of F_{i,s}: two partitions (boson modes by color), the alpha
// offset n above bar_lambda_i, the sector i, and an integer offset ds of the
// formal parameter s (lattice shifts move s by integers).
struct FockState {
    std::vector<int> l1, l2;  // partitions, parts sorted descending
    int n = 0;
    int i = 0;
    int ds = 0;

    int boson_degree() const;
    // Lattice point beta = bar_lambda_i + n*alpha + ((s+ds)/2)(eps1+eps2),
    // split into its rational part and the coefficient of s.
    WeightVector beta_rational() const;
    static WeightVector beta_s_part() { return {rat(1, 2), rat(1, 2)}; }

    std::string str() const;

    friend bool operator<(const FockState& x, const FockState& y) {
        if (x.i != y.i) return x.i < y.i;
        if (x.ds != y.ds) return x.ds < y.ds;
        if (x.n != y.n) return x.n < y.n;
        if (x.l1 != y.l1) return x.l1 < y.l1;
        return x.l2 < y.l2;
    }
    friend bool operator==(const FockState& x, const FockState& y) {
        return x.i == y.i && x.ds == y.ds && x.n == y.n && x.l1 == y.l1 && x.l2 == y.l2;
    }
};

inline FockState highest_weight_state(int sector, int ds = 0) {
    FockState st;
    st.i = sector;
    st.ds = ds;
    return st;
}

// Finite linear combination of basis states with PolyHS coefficients.
class FockVector {
  public:
    FockVector() = default;
    explicit FockVector(const FockState& st, const PolyHS& c = PolyHS(1)) {
        if (!c.is_zero()) terms_[st] = c;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<FockState, PolyHS>& terms() const { return terms_; }

    void add(const FockState& st, const PolyHS& c);
    FockVector& operator+=(const FockVector& o);
    FockVector& operator-=(const FockVector& o);
    FockVector& operator*=(const PolyHS& c);
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    friend FockVector operator*(FockVector a, const PolyHS& c) { return a *= c; }

    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.terms_ == b.terms_;
    }

    FockVector truncated_degree(int max_degree) const;
    std::string str() const;

  private:
    std::map<FockState, PolyHS> terms_;
};

// Boson mode a_{color,k} (k != 0); k < 0 creates a part, k > 0 annihilates
// with coefficient k * multiplicity.
FockVector apply_boson(int color, int k, const FockVector& v);

// Lattice translation e^gamma for integral gamma, a pure relabeling.
FockVector apply_lattice(const WeightVector& gamma, const FockVector& v);

// (lambda, beta(state)) split into (rational part, coefficient of s).
std::pair<Rat, Rat> weight_readout(const WeightVector& lambda, const FockState& st);

// Coefficient of the named basis state.
PolyHS dual_pairing(const FockState& st, const FockVector& v);

// All states of the sector with boson degree <= max_degree and |n| <= nwin,
// at ds = 0, in canonical order.
std::vector<FockState> enumerate_states(int sector, int max_degree, int nwin);

}  // namespace ydouble

#endif
