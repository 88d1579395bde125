#ifndef YDOUBLE_MPOLY_HPP
#define YDOUBLE_MPOLY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ydouble/polyhs.hpp"
#include "ydouble/rational.hpp"

namespace ydouble {

// Spectral variable ids. 0 and 1 are the u, v of two-point relations;
// ids >= 2 are insertion variables of commutator-defined operators.
std::string spec_var_name(int id);

// Monomial keys for MPoly. Variable keys: 0 = hbar, 1 = s, 2 + k = spectral
// variable k. A monomial is a sorted list of (var key, positive exponent).
using Mono = std::vector<std::pair<int, int>>;

constexpr int kVarHbar = 0;
constexpr int kVarS = 1;
inline int spec_key(int spec_id) { return 2 + spec_id; }

// Sparse multivariate polynomial over Rat. Used for the residual part of
// canonical factor products and for cleared-denominator comparisons.
class MPoly {
  public:
    MPoly() = default;
    explicit MPoly(const Rat& c) {
        if (c != 0) terms_[{}] = c;
    }
    MPoly(long c) : MPoly(Rat(c)) {}

    static MPoly var(int key, int exp = 1) {
        MPoly p;
        p.terms_[{{key, exp}}] = Rat(1);
        return p;
    }
    static MPoly hbar() { return var(kVarHbar); }
    static MPoly s_sym() { return var(kVarS); }
    static MPoly spec(int spec_id) { return var(spec_key(spec_id)); }
    static MPoly from_polyhs(const PolyHS& p);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, Rat>& terms() const { return terms_; }

    void add_term(const Mono& m, const Rat& c);

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(const MPoly& a);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly& operator*=(const Rat& c);
    friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    std::set<int> vars_present() const;
    int degree_in(int key) const;  // -1 for zero polynomial

    // Coefficient of key^exp, as a polynomial in the remaining variables.
    MPoly coeff_of(int key, int exp) const;

    // Leading (monomial, coefficient) in global lex order over variable keys.
    std::pair<Mono, Rat> leading() const;

    // Exact division; nullopt when the division does not come out exact.
    static std::optional<MPoly> divide_exact(const MPoly& num, const MPoly& den);

    // GCD over Q[h, s, spectral...], normalized integer-primitive with a
    // positive leading coefficient.
    static MPoly gcd(const MPoly& a, const MPoly& b);

    MPoly pow(int e) const;

    // Substitute spectral variable x := (optional spectral y) + c * hbar.
    MPoly subst_spec(int x_spec, std::optional<int> y_spec, const Rat& c) const;

    // Substitute hbar := c * hbar (mutation hooks) or hbar := 0.
    MPoly scale_hbar(const Rat& c) const;

    bool has_spec_vars() const;
    PolyHS to_polyhs() const;  // requires no spectral variables

    std::string str() const;

  private:
    std::map<Mono, Rat> terms_;
};

// True when a precedes b in global lex order (lower var keys weigh more).
bool mono_lex_less(const Mono& a, const Mono& b);

}  // namespace ydouble

#endif
