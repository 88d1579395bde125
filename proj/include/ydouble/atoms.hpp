#ifndef YDOUBLE_ATOMS_HPP
#define YDOUBLE_ATOMS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ydouble/mpoly.hpp"

namespace ydouble {

// One linear factor sigma * (x_a - x_b + c*hbar); x_b is absent when b < 0.
// Atoms are the only objects raised to half-integer powers; equality of
// factor products is exponent-map equality, never a branch choice.
struct LinAtom {
    int a = 0;
    int b = -1;
    Rat c = Rat(0);
    int sigma = +1;

    MPoly poly() const;
    std::string str() const;

    friend bool operator<(const LinAtom& x, const LinAtom& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.sigma < y.sigma;
    }
    friend bool operator==(const LinAtom& x, const LinAtom& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.sigma == y.sigma;
    }
};

inline LinAtom atom1(int a, const Rat& c, int sigma = +1) { return {a, -1, c, sigma}; }
inline LinAtom atom2(int a, int b, const Rat& c, int sigma = +1) { return {a, b, c, sigma}; }

// Canonical product of linear atoms with exponents in (1/2)Z (stored
// doubled) times a reduced ratio of polynomials. Canonical form:
//   - difference atoms oriented with a < b (sign absorbed),
//   - sigma = -1 atoms carry exponent exactly 1/2; integer parts are
//     rewritten into the sigma = +1 atom with a (-1)^m factor,
//   - residual num/den GCD-reduced, den's leading coefficient = 1,
//   - residual divisible by no atom of the product.
class FactorProduct {
  public:
    FactorProduct() : num_(1), den_(1) {}
    explicit FactorProduct(const Rat& c) : num_(c), den_(1) {}
    explicit FactorProduct(const MPoly& p) : num_(p), den_(1) { canonicalize({}); }

    static FactorProduct one() { return FactorProduct(); }
    static FactorProduct from_atom(const LinAtom& at, int twice_exp);
    static FactorProduct ratio(const MPoly& num, const MPoly& den,
                               const std::vector<LinAtom>& hints = {});

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    const std::map<LinAtom, int>& atoms() const { return atoms_; }
    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    int twice_exponent(const LinAtom& at) const;

    FactorProduct& mul_atom(const LinAtom& at, int twice_exp);
    FactorProduct& mul_poly(const MPoly& p);
    FactorProduct& mul_rat(const Rat& c);
    FactorProduct& mul(const FactorProduct& o);
    friend FactorProduct operator*(FactorProduct x, const FactorProduct& y) { return x.mul(y); }

    FactorProduct inverse() const;
    FactorProduct pow_twice(int twice_e) const;  // value^(twice_e/2)

    // Substitute spectral variable x := y + c*hbar (y optional).
    FactorProduct subst_spec(int x_spec, std::optional<int> y_spec, const Rat& c) const;

    // hbar -> factor*hbar on every shift and residual (mutation hook).
    FactorProduct scale_hbar(const Rat& factor) const;

    // Expand integer-exponent content into a plain num/den pair. Atoms with
    // half-integer exponents must be handled by the caller (half_core).
    std::pair<MPoly, MPoly> integer_part_ratio() const;
    std::map<LinAtom, int> half_core() const;  // atoms with odd doubled exponent

    bool depends_on_spec(int spec_id) const;

    friend bool operator==(const FactorProduct& x, const FactorProduct& y) {
        return x.atoms_ == y.atoms_ && x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const FactorProduct& x, const FactorProduct& y) { return !(x == y); }
    friend bool operator<(const FactorProduct& x, const FactorProduct& y);

    std::string str() const;

  private:
    void canonicalize(const std::vector<LinAtom>& extra_candidates);

    std::map<LinAtom, int> atoms_;  // atom -> doubled exponent, never 0
    MPoly num_, den_;
};

// Greedy atom extraction with hints; the operation form of the canonical
// constructor. Throws std::domain_error on a zero denominator.
FactorProduct factor_canon(const MPoly& num, const MPoly& den,
                           const std::vector<LinAtom>& hints = {});

}  // namespace ydouble

#endif
