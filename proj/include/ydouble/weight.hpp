#ifndef YDOUBLE_WEIGHT_HPP
#define YDOUBLE_WEIGHT_HPP

#include <string>

#include "ydouble/rational.hpp"

namespace ydouble {

// Element of the gl_2 weight space, coordinates over (eps1, eps2) with
// (eps_i, eps_j) = delta_ij.
struct WeightVector {
    Rat e1 = Rat(0);
    Rat e2 = Rat(0);

    friend WeightVector operator+(const WeightVector& x, const WeightVector& y) {
        return {x.e1 + y.e1, x.e2 + y.e2};
    }
    friend WeightVector operator-(const WeightVector& x, const WeightVector& y) {
        return {x.e1 - y.e1, x.e2 - y.e2};
    }
    friend WeightVector operator-(const WeightVector& x) { return {-x.e1, -x.e2}; }
    friend WeightVector operator*(const Rat& c, const WeightVector& x) {
        return {c * x.e1, c * x.e2};
    }
    friend bool operator==(const WeightVector& x, const WeightVector& y) {
        return x.e1 == y.e1 && x.e2 == y.e2;
    }
    friend bool operator<(const WeightVector& x, const WeightVector& y) {
        if (x.e1 != y.e1) return x.e1 < y.e1;
        return x.e2 < y.e2;
    }
    bool is_zero() const { return e1 == 0 && e2 == 0; }
    std::string str() const;
};

inline Rat bilinear(const WeightVector& x, const WeightVector& y) {
    return x.e1 * y.e1 + x.e2 * y.e2;
}

inline WeightVector eps1() { return {Rat(1), Rat(0)}; }
inline WeightVector eps2() { return {Rat(0), Rat(1)}; }
inline WeightVector alpha() { return {Rat(1), Rat(-1)}; }
// Classical parts of the fundamental weights: bar_lambda(0) = 0 and
// bar_lambda(1) = alpha/2, the embedding that makes the lattice bookkeeping
// of the vertex operators close.
inline WeightVector bar_lambda(int i) {
    return i == 0 ? WeightVector{} : WeightVector{rat(1, 2), rat(-1, 2)};
}

}  // namespace ydouble

#endif
