#ifndef YDOUBLE_RATIONAL_HPP
#define YDOUBLE_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ydouble {

// Exact rational scalar. mpq_class keeps gcd(num, den) = 1 and den > 0
// once canonicalized; every constructor here canonicalizes.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    long n = e;
    if (n < 0) {
        if (b == 0) throw std::domain_error("inverse of zero rational");
        b = Rat(1) / b;
        n = -n;
    }
    Rat out(1);
    while (n > 0) {
        if (n & 1) out *= b;
        b *= b;
        n >>= 1;
    }
    return out;
}

// Generalized binomial C(m, j) for integer m (possibly negative), j >= 0.
inline Rat binomial(long m, long j) {
    if (j < 0) return Rat(0);
    Rat out(1);
    for (long t = 0; t < j; ++t) {
        out *= Rat(m - t);
        out /= Rat(t + 1);
    }
    return out;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
    if (!is_integer(r)) throw std::domain_error("rational is not an integer");
    if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer too large");
    return r.get_num().get_si();
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace ydouble

#endif
