#ifndef YDOUBLE_EVALMOD_HPP
#define YDOUBLE_EVALMOD_HPP

#include <map>
#include <string>

#include "ydouble/atoms.hpp"
#include "ydouble/delta.hpp"
#include "ydouble/polyhs.hpp"

namespace ydouble {

// Element of the two-dimensional evaluation module tensored with Laurent
// polynomials in the evaluation parameter. Basis index 0 = w_+, 1 = w_-.
class EvalVector {
  public:
    EvalVector() = default;
    static EvalVector basis(int b) {
        EvalVector v;
        v.terms_[{b, 0}] = PolyHS(1);
        return v;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<int, int>, PolyHS>& terms() const { return terms_; }

    void add(int b, int u_exp, const PolyHS& c);
    EvalVector& operator+=(const EvalVector& o);
    EvalVector& operator-=(const EvalVector& o);
    EvalVector& operator*=(const PolyHS& c);
    friend EvalVector operator+(EvalVector a, const EvalVector& b) { return a += b; }
    friend EvalVector operator-(EvalVector a, const EvalVector& b) { return a -= b; }
    friend bool operator==(const EvalVector& a, const EvalVector& b) {
        return a.terms_ == b.terms_;
    }
    std::string str() const;

  private:
    std::map<std::pair<int, int>, PolyHS> terms_;
};

// Mode k of the named current acting on the evaluation module at c = 0:
//   h_k w_± = ±u^k w_±   (k >= 0 from H+, k < 0 from H-)
//   e_k w_- = u^k w_+,  e_k w_+ = 0
//   f_k w_+ = u^k w_-,  f_k w_- = 0
// names: "h", "e", "f", and "H+"/"H-" as mode-window guards on h.
EvalVector eval_apply_mode(const std::string& name, long k, const EvalVector& v);

// Series-level action of a current on a basis vector: either a diagonal
// rational coefficient or a delta atom tying the current variable to the
// evaluation parameter. xvar/u0var are spectral variable ids.
struct EvalSeriesAction {
    int basis_out = 0;
    bool is_delta = false;
    FactorProduct coeff;  // rational coefficient (diagonal actions)
    DeltaAtom delta;      // when is_delta
};
EvalSeriesAction eval_apply_series(const std::string& name, int basis_in, int xvar, int u0var);

}  // namespace ydouble

#endif
