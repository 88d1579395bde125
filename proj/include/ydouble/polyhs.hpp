#ifndef YDOUBLE_POLYHS_HPP
#define YDOUBLE_POLYHS_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "ydouble/rational.hpp"

namespace ydouble {

// Polynomial in the formal symbols hbar and s over exact rationals.
// This is the coefficient ring of every state-level computation.
// Terms are keyed by (hbar exponent, s exponent); zero coefficients are
// never stored, so structural equality is arithmetic equality.
class PolyHS {
  public:
    using Key = std::pair<int, int>;  // (hbar exp, s exp)

    PolyHS() = default;
    explicit PolyHS(const Rat& c) {
        if (c != 0) terms_[{0, 0}] = c;
    }
    PolyHS(long c) : PolyHS(Rat(c)) {}

    static PolyHS term(const Rat& c, int hexp, int sexp = 0) {
        PolyHS p;
        if (c != 0) p.terms_[{hexp, sexp}] = c;
        return p;
    }
    static PolyHS hbar(int e = 1) { return term(Rat(1), e, 0); }
    static PolyHS s(int e = 1) { return term(Rat(1), 0, e); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
    }
    Rat constant_value() const {
        auto it = terms_.find({0, 0});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    const std::map<Key, Rat>& terms() const { return terms_; }

    Rat coeff(int hexp, int sexp) const {
        auto it = terms_.find({hexp, sexp});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    int hbar_degree() const {  // -1 for the zero polynomial
        int d = -1;
        for (auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int s_degree() const {
        int d = -1;
        for (auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    void add_term(const Rat& c, int hexp, int sexp) {
        if (c == 0) return;
        auto it = terms_.find({hexp, sexp});
        if (it == terms_.end()) {
            terms_[{hexp, sexp}] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    PolyHS& operator+=(const PolyHS& o) {
        for (auto& [k, c] : o.terms_) add_term(c, k.first, k.second);
        return *this;
    }
    PolyHS& operator-=(const PolyHS& o) {
        for (auto& [k, c] : o.terms_) add_term(-c, k.first, k.second);
        return *this;
    }
    friend PolyHS operator+(PolyHS a, const PolyHS& b) { return a += b; }
    friend PolyHS operator-(PolyHS a, const PolyHS& b) { return a -= b; }
    friend PolyHS operator-(const PolyHS& a) {
        PolyHS out;
        for (auto& [k, c] : a.terms_) out.terms_[k] = -c;
        return out;
    }
    friend PolyHS operator*(const PolyHS& a, const PolyHS& b) {
        PolyHS out;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_)
                out.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
        return out;
    }
    PolyHS& operator*=(const PolyHS& o) { return *this = *this * o; }
    PolyHS& operator*=(const Rat& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    friend PolyHS operator*(PolyHS a, const Rat& c) { return a *= c; }
    friend PolyHS operator*(const Rat& c, PolyHS a) { return a *= c; }

    friend bool operator==(const PolyHS& a, const PolyHS& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PolyHS& a, const PolyHS& b) { return !(a == b); }
    friend bool operator<(const PolyHS& a, const PolyHS& b) { return a.terms_ < b.terms_; }

    // Drop all terms of hbar degree above cap (exact arithmetic in the
    // truncated quotient ring; callers state the cap they rely on).
    PolyHS truncated_hbar(int cap) const {
        PolyHS out;
        for (auto& [k, c] : terms_)
            if (k.first <= cap) out.terms_[k] = c;
        return out;
    }

    // Deterministic rendering, terms ordered lexicographically in
    // (hbar exp, s exp).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : terms_) {
            Rat a = c;
            if (!first) {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool unit = (a == 1) && (k.first > 0 || k.second > 0);
            if (!unit) os << a.get_str();
            if (k.first > 0) {
                if (!unit) os << "*";
                os << "h";
                if (k.first > 1) os << "^" << k.first;
                if (k.second > 0) os << "*";
            }
            if (k.second > 0) {
                if (unit && k.first == 0) {
                } else if (k.first == 0 && !unit) {
                    os << "*";
                }
                os << "s";
                if (k.second > 1) os << "^" << k.second;
            }
        }
        return os.str();
    }

  private:
    std::map<Key, Rat> terms_;
};

inline PolyHS poly_arith(const PolyHS& a, const PolyHS& b, char op) {
    switch (op) {
        case '+': return a + b;
        case '*': return a * b;
        default: throw std::invalid_argument("poly_arith: op must be '+' or '*'");
    }
}

}  // namespace ydouble

#endif
