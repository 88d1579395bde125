#ifndef YDOUBLE_NPROD_HPP
#define YDOUBLE_NPROD_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ydouble/apply.hpp"
#include "ydouble/atoms.hpp"
#include "ydouble/delta.hpp"
#include "ydouble/gvo.hpp"

namespace ydouble {

struct TaggedExp {
    int var;
    int color;
    int coeff;
    Rat shift;
};

struct TaggedZm {
    int var;
    WeightVector lambda;
    Rat shift;
    int sigma;
};

// Variable-tagged normal-ordered operator shell: merged creation parts, then
// annihilation parts, one total lattice shift, then pure (lambda, d)-power
// zero modes. Constant zero-mode offsets live in the scalar, never here.
struct Skeleton {
    std::vector<TaggedExp> creation, annihilation;
    WeightVector lattice;
    std::vector<TaggedZm> zeromodes;

    void normalize();
    std::set<int> vars() const;
    std::string key() const;  // canonical grouping key (after normalize)
    Skeleton subst_var(int from, int to, const Rat& c) const;  // x_from := x_to + c h
    GVO to_gvo(int var) const;  // single-variable skeletons only
    friend bool operator==(const Skeleton& a, const Skeleton& b) {
        return a.creation == b.creation && a.annihilation == b.annihilation &&
               a.lattice == b.lattice && a.zeromodes == b.zeromodes;
    }
};

inline bool operator==(const TaggedExp& a, const TaggedExp& b) {
    return a.var == b.var && a.color == b.color && a.coeff == b.coeff && a.shift == b.shift;
}
inline bool operator==(const TaggedZm& a, const TaggedZm& b) {
    return a.var == b.var && a.lambda == b.lambda && a.shift == b.shift && a.sigma == b.sigma;
}

// Normal-ordered product: exact contraction scalar times the merged shell.
struct NProd {
    FactorProduct scalar;
    Skeleton skel;
};

NProd nprod_of(const GVO& g, int var);

// Extend the normal-ordered product by one factor on the right. The scalar
// collects every contraction of acc's annihilation parts against g's
// creation parts and every zero-mode/lattice exchange factor.
void contract_append(NProd& acc, const GVO& g, int var);

NProd contract(const GVO& g1, int var1, const GVO& g2, int var2);

// Joint coefficients of the normal-ordered product applied to a state:
// scalar expanded in the region given by `region` (outermost first), shell
// applied stage by stage. Exact on components of degree <= max_degree.
std::map<std::vector<int>, FockVector> nprod_apply_state(
    const NProd& np, const FockState& st, int max_degree, const std::vector<int>& region,
    const std::map<int, std::pair<int, int>>& windows);

// g1(x_a) g2(x_b) expanded for |x_a| >> |x_b| minus the opposite order and
// region: the regular parts cancel exactly and the difference is carried by
// the delta atoms at the scalar's crossed simple poles.
struct OrderedDifference {
    NProd forward;   // g1 at var_a left of g2 at var_b
    NProd backward;  // g2 at var_b left of g1 at var_a
    bool scalars_match = false;
    std::vector<std::pair<DeltaAtom, NProd>> deltas;  // coefficients at var_b
};
OrderedDifference ordered_difference(const GVO& g1, const GVO& g2, int var_a = 0, int var_b = 1);

}  // namespace ydouble

#endif
