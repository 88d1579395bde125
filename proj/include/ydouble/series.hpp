#ifndef YDOUBLE_SERIES_HPP
#define YDOUBLE_SERIES_HPP

#include <map>
#include <string>
#include <vector>

#include "ydouble/atoms.hpp"
#include "ydouble/polyhs.hpp"

namespace ydouble {

// Laurent-type expansion of a factor product in one region. The region is a
// total order |vars[0]| >> |vars[1]| >> ... (hbar below everything). Terms
// are exact; the series is complete on every monomial whose exponents are
// componentwise >= lo.
struct RegionalSeries {
    std::vector<int> vars;                      // spectral ids, outermost first
    std::map<std::vector<int>, PolyHS> terms;   // exponent vector -> coefficient
    std::vector<int> lo;                        // validity floor per variable

    PolyHS coeff(const std::vector<int>& exps) const {
        auto it = terms.find(exps);
        return it == terms.end() ? PolyHS() : it->second;
    }

    RegionalSeries& add(const std::vector<int>& exps, const PolyHS& c);
    std::string str() const;
};

RegionalSeries series_mul(const RegionalSeries& a, const RegionalSeries& b);
RegionalSeries series_add(const RegionalSeries& a, const RegionalSeries& b);
RegionalSeries series_neg(RegionalSeries a);

// Expand f in the region given by vars, exact on all exponent vectors >= lo
// componentwise. Every atom must be resolvable in the region and all atom
// exponents must be integers. Throws std::domain_error otherwise.
RegionalSeries expand_window(const FactorProduct& f, const std::vector<int>& vars,
                             const std::vector<int>& lo);

// Truncation-order form: exact down to (leading exponent - order) in every
// region variable.
RegionalSeries expand_region(const FactorProduct& f, const std::vector<int>& vars, int order);

}  // namespace ydouble

#endif
