#ifndef YDOUBLE_APPLY_HPP
#define YDOUBLE_APPLY_HPP

#include <climits>
#include <map>
#include <vector>

#include "ydouble/fock.hpp"
#include "ydouble/gvo.hpp"

namespace ydouble {

// Laurent coefficients in one spectral variable.
using USeries = std::map<int, PolyHS>;

// Integer part of the total zero-mode exponent of g on st, together with
// the sign collected from the sigma = -1 factors. Throws std::domain_error
// when the exponent fails to be an integer or the s-parts fail to cancel
// (an inadmissible state for this operator).
struct ZeroModeData {
    long n_tot = 0;
    Rat sign = Rat(1);
};
ZeroModeData zero_mode_data(const GVO& g, const FockState& st);

// Coefficients of u^p in g(u)|st> for p in [p_lo, p_hi], exact on all
// components of boson degree <= max_degree. When hbar_cap < INT_MAX the
// arithmetic runs in Q[h,s]/(h^(hbar_cap+1)); single applications are exact
// without a cap, compositions use caps justified by hbar homogeneity.
std::map<int, FockVector> apply_gvo_state(const GVO& g, const FockState& st, int max_degree,
                                          int p_lo, int p_hi, int hbar_cap = INT_MAX);

// Coefficient of u^p in g(u) v, exact on components of degree <= max_degree.
FockVector gvo_apply(const GVO& g, int p, const FockVector& v, int max_degree,
                     int hbar_cap = INT_MAX);

// Operator word g_1(x_1) ... g_r(x_r) applied to a state, right to left,
// collecting joint coefficients of the spectral variables. Result keys align
// with `vars` (sorted distinct variable ids); `windows` gives the mode range
// collected per variable; `degree_caps[i]` is the boson-degree cap in force
// after factor i has been applied (degree_caps.front() is the final cap).
struct WordFactorOp {
    int var = 0;
    GVO op;
};
std::map<std::vector<int>, FockVector> word_apply_state(
    const std::vector<WordFactorOp>& factors, const FockState& st,
    const std::vector<int>& degree_caps, const std::vector<int>& vars,
    const std::map<int, std::pair<int, int>>& windows, int hbar_cap = INT_MAX);

// Mode m of a current (coefficient of x^{-m-1} of its generating series).
FockVector current_mode_apply(const GVO& g, long mode, const FockVector& v, int max_degree,
                              int hbar_cap = INT_MAX);

// [ [u^p] g(u), x_mode ] v: commutator of a GVO coefficient with a current
// mode, the state-level form of commutator-defined operators. Intermediate
// degrees are widened internally so the result is exact on components of
// degree <= max_degree (per hbar slice when a cap is given).
FockVector commutator_mode(const GVO& g, int p, const GVO& current, long mode,
                           const FockVector& v, int max_degree, int hbar_cap = INT_MAX);

}  // namespace ydouble

#endif
