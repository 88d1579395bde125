#include "ydouble/atoms.hpp"

#include <sstream>
#include <stdexcept>

namespace ydouble {

MPoly LinAtom::poly() const {
    MPoly p = MPoly::spec(a);
    if (b >= 0) p -= MPoly::spec(b);
    p += MPoly::hbar() * c;
    if (sigma < 0) p *= Rat(-1);
    return p;
}

std::string LinAtom::str() const {
    std::ostringstream os;
    if (sigma < 0) os << "-(";
    os << spec_var_name(a);
    if (b >= 0) os << " - " << spec_var_name(b);
    if (c != 0) {
        if (c > 0)
            os << " + " << (c == 1 ? std::string() : c.get_str() + "*") << "h";
        else
            os << " - " << (c == -1 ? std::string() : Rat(-c).get_str() + "*") << "h";
    }
    if (sigma < 0) os << ")";
    return os.str();
}

FactorProduct FactorProduct::from_atom(const LinAtom& at, int twice_exp) {
    FactorProduct f;
    f.mul_atom(at, twice_exp);
    return f;
}

FactorProduct FactorProduct::ratio(const MPoly& num, const MPoly& den,
                                   const std::vector<LinAtom>& hints) {
    if (den.is_zero()) throw std::domain_error("FactorProduct: zero denominator");
    FactorProduct f;
    f.num_ = num;
    f.den_ = den;
    f.canonicalize(hints);
    return f;
}

bool FactorProduct::is_one() const {
    return atoms_.empty() && num_ == MPoly(1) && den_ == MPoly(1);
}

int FactorProduct::twice_exponent(const LinAtom& at) const {
    auto it = atoms_.find(at);
    return it == atoms_.end() ? 0 : it->second;
}

FactorProduct& FactorProduct::mul_atom(const LinAtom& at, int twice_exp) {
    if (twice_exp == 0) return *this;
    atoms_[at] += twice_exp;
    canonicalize({});
    return *this;
}

FactorProduct& FactorProduct::mul_poly(const MPoly& p) {
    num_ *= p;
    canonicalize({});
    return *this;
}

FactorProduct& FactorProduct::mul_rat(const Rat& c) {
    num_ *= c;
    canonicalize({});
    return *this;
}

FactorProduct& FactorProduct::mul(const FactorProduct& o) {
    for (auto& [at, e] : o.atoms_) atoms_[at] += e;
    num_ *= o.num_;
    den_ *= o.den_;
    canonicalize({});
    return *this;
}

FactorProduct FactorProduct::inverse() const {
    if (num_.is_zero()) throw std::domain_error("inverse of zero factor product");
    FactorProduct out;
    for (auto& [at, e] : atoms_) out.atoms_[at] = -e;
    out.num_ = den_;
    out.den_ = num_;
    out.canonicalize({});
    return out;
}

FactorProduct FactorProduct::pow_twice(int twice_e) const {
    if (twice_e % 2 != 0) {
        // Only a bare atom with even doubled exponent supports a half power.
        if (atoms_.size() == 1 && num_ == MPoly(1) && den_ == MPoly(1) &&
            (atoms_.begin()->second * twice_e) % 2 == 0) {
            FactorProduct out;
            out.atoms_[atoms_.begin()->first] = atoms_.begin()->second * twice_e / 2;
            out.canonicalize({});
            return out;
        }
        throw std::domain_error("half-integer power of a composite factor product");
    }
    int e = twice_e / 2;
    FactorProduct out;
    for (auto& [at, ae] : atoms_) out.atoms_[at] = ae * e;
    if (e >= 0) {
        out.num_ = num_.pow(e);
        out.den_ = den_.pow(e);
    } else {
        out.num_ = den_.pow(-e);
        out.den_ = num_.pow(-e);
    }
    out.canonicalize({});
    return out;
}

FactorProduct FactorProduct::subst_spec(int x_spec, std::optional<int> y_spec,
                                        const Rat& c) const {
    FactorProduct out;
    out.num_ = num_.subst_spec(x_spec, y_spec, c);
    out.den_ = den_.subst_spec(x_spec, y_spec, c);
    for (auto& [at, e] : atoms_) {
        LinAtom n = at;
        if (at.a == x_spec) {
            if (!y_spec) {
                if (at.b >= 0)
                    throw std::domain_error("subst_spec: difference atom to pure shift");
                // (x + c0*h) -> ((c0 + c)*h): a constant.
                if (e % 2 != 0)
                    throw std::domain_error("substitution collapses a half-integer atom");
                MPoly val = MPoly::hbar() * (at.c + c);
                if (at.sigma < 0) val *= Rat(-1);
                if (val.is_zero()) throw std::domain_error("substitution hits an atom zero");
                int ie = e / 2;
                if (ie >= 0)
                    out.num_ *= val.pow(ie);
                else
                    out.den_ *= val.pow(-ie);
                continue;
            }
            n.a = *y_spec;
            n.c = at.c + c;
        } else if (at.b == x_spec) {
            if (!y_spec) {
                n.b = -1;  // (x_a - x + c0*h) -> (x_a + (c0 - c)*h)
                n.c = at.c - c;
            } else {
                n.b = *y_spec;
                n.c = at.c - c;
            }
        }
        if (n.b == n.a && n.b >= 0) {
            // (y - y + c'*h) collapsed to a constant.
            if (e % 2 != 0)
                throw std::domain_error("substitution collapses a half-integer atom");
            MPoly val = MPoly::hbar() * n.c;
            if (n.sigma < 0) val *= Rat(-1);
            if (val.is_zero()) throw std::domain_error("substitution hits an atom zero");
            int ie = e / 2;
            if (ie >= 0)
                out.num_ *= val.pow(ie);
            else
                out.den_ *= val.pow(-ie);
            continue;
        }
        out.atoms_[n] += e;
    }
    out.canonicalize({});
    return out;
}

FactorProduct FactorProduct::scale_hbar(const Rat& factor) const {
    FactorProduct out;
    out.num_ = num_.scale_hbar(factor);
    out.den_ = den_.scale_hbar(factor);
    for (auto& [at, e] : atoms_) {
        LinAtom n = at;
        n.c = at.c * factor;
        out.atoms_[n] += e;
    }
    out.canonicalize({});
    return out;
}

std::pair<MPoly, MPoly> FactorProduct::integer_part_ratio() const {
    MPoly n = num_, d = den_;
    for (auto& [at, e] : atoms_) {
        int ie = e / 2;           // integer part of the exponent
        if (e % 2 != 0) ie = 0;   // half-exponent atoms excluded entirely
        if (e % 2 == 0) {
            if (ie > 0)
                n *= at.poly().pow(ie);
            else
                d *= at.poly().pow(-ie);
        }
    }
    return {n, d};
}

std::map<LinAtom, int> FactorProduct::half_core() const {
    std::map<LinAtom, int> out;
    for (auto& [at, e] : atoms_)
        if (e % 2 != 0) out[at] = e;
    return out;
}

bool FactorProduct::depends_on_spec(int spec_id) const {
    int key = spec_key(spec_id);
    if (num_.degree_in(key) > 0 || den_.degree_in(key) > 0) return true;
    for (auto& [at, e] : atoms_)
        if (at.a == spec_id || at.b == spec_id) return true;
    return false;
}

bool operator<(const FactorProduct& x, const FactorProduct& y) {
    if (x.atoms_ != y.atoms_) return x.atoms_ < y.atoms_;
    if (!(x.num_ == y.num_)) return x.num_.terms() < y.num_.terms();
    return x.den_.terms() < y.den_.terms();
}

void FactorProduct::canonicalize(const std::vector<LinAtom>& extra_candidates) {
    if (den_.is_zero()) throw std::domain_error("FactorProduct: zero denominator");
    if (num_.is_zero()) {
        atoms_.clear();
        den_ = MPoly(1);
        return;
    }

    // Orient difference atoms, normalize sigma = -1 exponents.
    std::map<LinAtom, int> fixed;
    Rat sign(1);
    for (auto& [at, e] : atoms_) {
        if (e == 0) continue;
        LinAtom n = at;
        if (n.b >= 0 && n.a > n.b) {
            std::swap(n.a, n.b);
            n.c = -n.c;
            n.sigma = -n.sigma;
        }
        if (n.sigma < 0) {
            if (e % 2 == 0) {
                if ((e / 2) % 2 != 0) sign = -sign;
                n.sigma = +1;
                fixed[n] += e;
            } else {
                int m = (e - 1) / 2;  // [-L]^(m + 1/2) = (-1)^m [-L]^(1/2) L^m
                if (m % 2 != 0) sign = -sign;
                LinAtom pos = n;
                pos.sigma = +1;
                if (m != 0) fixed[pos] += 2 * m;
                fixed[n] += 1;
            }
        } else {
            fixed[n] += e;
        }
    }
    for (auto it = fixed.begin(); it != fixed.end();) {
        if (it->second == 0)
            it = fixed.erase(it);
        else
            ++it;
    }
    atoms_ = std::move(fixed);
    num_ *= sign;

    // Candidate atoms for residual extraction.
    std::vector<LinAtom> cands = extra_candidates;
    for (auto& [at, e] : atoms_) {
        LinAtom pos = at;
        pos.sigma = +1;
        cands.push_back(pos);
    }
    for (auto& c : cands) {
        if (c.b >= 0 && c.a > c.b) {
            std::swap(c.a, c.b);
            c.c = -c.c;
            c.sigma = -c.sigma;
        }
        c.sigma = +1;
    }

    bool changed = true;
    while (changed) {
        changed = false;
        MPoly g = MPoly::gcd(num_, den_);
        if (!(g == MPoly(1))) {
            num_ = *MPoly::divide_exact(num_, g);
            den_ = *MPoly::divide_exact(den_, g);
            changed = true;
        }
        for (auto& cand : cands) {
            MPoly ap = cand.poly();
            while (true) {
                auto q = MPoly::divide_exact(num_, ap);
                if (!q) break;
                num_ = *q;
                atoms_[cand] += 2;
                if (atoms_[cand] == 0) atoms_.erase(cand);
                changed = true;
            }
            while (true) {
                auto q = MPoly::divide_exact(den_, ap);
                if (!q) break;
                den_ = *q;
                atoms_[cand] -= 2;
                if (atoms_[cand] == 0) atoms_.erase(cand);
                changed = true;
            }
        }
    }

    // Scale so den's lex-leading coefficient is 1.
    Rat lead = den_.leading().second;
    if (lead != 1) {
        Rat inv = Rat(1) / lead;
        num_ *= inv;
        den_ *= inv;
    }
}

std::string FactorProduct::str() const {
    std::ostringstream os;
    bool wrote = false;
    for (auto& [at, e] : atoms_) {
        if (wrote) os << " ";
        wrote = true;
        os << "(" << at.str() << ")";
        if (e != 2) {
            os << "^";
            if (e % 2 == 0)
                os << (e / 2);
            else
                os << "(" << e << "/2)";
        }
    }
    bool trivial_ratio = num_ == MPoly(1) && den_ == MPoly(1);
    if (!trivial_ratio || !wrote) {
        if (wrote) os << " * ";
        os << "(" << num_.str() << ")";
        if (!(den_ == MPoly(1))) os << "/(" << den_.str() << ")";
    }
    return os.str();
}

FactorProduct factor_canon(const MPoly& num, const MPoly& den,
                           const std::vector<LinAtom>& hints) {
    return FactorProduct::ratio(num, den, hints);
}

}  // namespace ydouble
