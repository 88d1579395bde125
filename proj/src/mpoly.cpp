#include "ydouble/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ydouble {

std::string spec_var_name(int id) {
    switch (id) {
        case 0: return "u";
        case 1: return "v";
        default: return "w" + std::to_string(id - 1);
    }
}

static std::string var_key_name(int key) {
    if (key == kVarHbar) return "h";
    if (key == kVarS) return "s";
    return spec_var_name(key - 2);
}

MPoly MPoly::from_polyhs(const PolyHS& p) {
    MPoly out;
    for (auto& [k, c] : p.terms()) {
        Mono m;
        if (k.first > 0) m.push_back({kVarHbar, k.first});
        if (k.second > 0) m.push_back({kVarS, k.second});
        out.add_term(m, c);
    }
    return out;
}

void MPoly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MPoly operator-(const MPoly& a) {
    MPoly out;
    for (auto& [m, c] : a.terms_) out.terms_[m] = -c;
    return out;
}

static Mono mono_mul(const Mono& a, const Mono& b) {
    Mono out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            int e = a[i].second + b[j].second;
            if (e != 0) out.push_back({a[i].first, e});
            ++i;
            ++j;
        }
    }
    return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
}

MPoly& MPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

std::set<int> MPoly::vars_present() const {
    std::set<int> out;
    for (auto& [m, c] : terms_)
        for (auto& [k, e] : m) out.insert(k);
    return out;
}

int MPoly::degree_in(int key) const {
    int d = -1;
    for (auto& [m, c] : terms_) {
        int e = 0;
        for (auto& [k, ke] : m)
            if (k == key) e = ke;
        d = std::max(d, e);
    }
    return d;
}

MPoly MPoly::coeff_of(int key, int exp) const {
    MPoly out;
    for (auto& [m, c] : terms_) {
        int e = 0;
        Mono rest;
        for (auto& [k, ke] : m) {
            if (k == key)
                e = ke;
            else
                rest.push_back({k, ke});
        }
        if (e == exp) out.add_term(rest, c);
    }
    return out;
}

bool mono_lex_less(const Mono& a, const Mono& b) {
    // Walk variable keys in increasing order; a higher exponent on an
    // earlier key wins.
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int ka = i < a.size() ? a[i].first : INT32_MAX;
        int kb = j < b.size() ? b[j].first : INT32_MAX;
        if (ka == kb) {
            if (a[i].second != b[j].second) return a[i].second < b[j].second;
            ++i;
            ++j;
        } else if (ka < kb) {
            return false;  // a has a positive exponent where b has zero
        } else {
            return true;
        }
    }
    return false;
}

std::pair<Mono, Rat> MPoly::leading() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (mono_lex_less(best->first, it->first)) best = it;
    return {best->first, best->second};
}

static std::optional<Mono> mono_div(const Mono& num, const Mono& den) {
    Mono out;
    size_t i = 0, j = 0;
    while (i < num.size() || j < den.size()) {
        if (j == den.size()) {
            out.push_back(num[i++]);
        } else if (i == num.size()) {
            return std::nullopt;
        } else if (num[i].first < den[j].first) {
            out.push_back(num[i++]);
        } else if (num[i].first > den[j].first) {
            return std::nullopt;
        } else {
            int e = num[i].second - den[j].second;
            if (e < 0) return std::nullopt;
            if (e > 0) out.push_back({num[i].first, e});
            ++i;
            ++j;
        }
    }
    return out;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& num, const MPoly& den) {
    if (den.is_zero()) throw std::domain_error("division by zero polynomial");
    MPoly rem = num;
    MPoly quot;
    auto [dlm, dlc] = den.leading();
    while (!rem.is_zero()) {
        auto [rlm, rlc] = rem.leading();
        auto q = mono_div(rlm, dlm);
        if (!q) return std::nullopt;
        MPoly qt;
        qt.add_term(*q, rlc / dlc);
        quot += qt;
        rem -= qt * den;
    }
    return quot;
}

// Integer-primitive normalization: scale by a rational so coefficients are
// coprime integers and the lex-leading coefficient is positive.
static MPoly primitive_normalize(const MPoly& p) {
    if (p.is_zero()) return p;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    MPoly out = p;
    out *= scale;
    if (out.leading().second < 0) out *= Rat(-1);
    return out;
}

// Univariate view in one variable with MPoly coefficients.
static std::map<int, MPoly> as_univariate(const MPoly& p, int key) {
    std::map<int, MPoly> out;
    int d = p.degree_in(key);
    for (int e = 0; e <= d; ++e) {
        MPoly c = p.coeff_of(key, e);
        if (!c.is_zero()) out[e] = c;
    }
    return out;
}

static MPoly from_univariate(const std::map<int, MPoly>& u, int key) {
    MPoly out;
    for (auto& [e, c] : u) {
        MPoly xe = e == 0 ? MPoly(1) : MPoly::var(key, e);
        out += c * xe;
    }
    return out;
}

static int uni_deg(const std::map<int, MPoly>& u) {
    return u.empty() ? -1 : u.rbegin()->first;
}

// Pseudo-remainder of a by b in the shared main variable.
static std::map<int, MPoly> pseudo_rem(std::map<int, MPoly> a, const std::map<int, MPoly>& b,
                                       int key) {
    int db = uni_deg(b);
    const MPoly& lb = b.rbegin()->second;
    while (uni_deg(a) >= db) {
        int da = uni_deg(a);
        MPoly la = a.rbegin()->second;
        // a := lb*a - la*x^(da-db)*b
        std::map<int, MPoly> next;
        for (auto& [e, c] : a) {
            MPoly t = c * lb;
            if (!t.is_zero()) next[e] = t;
        }
        for (auto& [e, c] : b) {
            auto it = next.find(e + da - db);
            MPoly sub = c * la;
            if (it == next.end()) {
                if (!sub.is_zero()) next[e + da - db] = -sub;
            } else {
                it->second -= sub;
                if (it->second.is_zero()) next.erase(it);
            }
        }
        if (uni_deg(next) == da) throw std::logic_error("pseudo_rem: degree did not drop");
        a = std::move(next);
    }
    return a;
}

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : primitive_normalize(b);
    if (b.is_zero()) return primitive_normalize(a);
    std::set<int> vars = a.vars_present();
    for (int v : b.vars_present()) vars.insert(v);
    if (vars.empty()) return MPoly(1);

    int key = *vars.rbegin();  // recurse on the highest key first
    auto ua = as_univariate(a, key);
    auto ub = as_univariate(b, key);

    // Content = gcd of coefficients (polynomials in the remaining vars).
    auto content = [&](const std::map<int, MPoly>& u) {
        MPoly c;
        for (auto& [e, coef] : u) c = MPoly::gcd(c, coef);
        return c;
    };
    MPoly ca = content(ua);
    MPoly cb = content(ub);
    MPoly cont_gcd = MPoly::gcd(ca, cb);

    auto divide_content = [&](std::map<int, MPoly>& u, const MPoly& c) {
        for (auto& [e, coef] : u) {
            auto q = divide_exact(coef, c);
            if (!q) throw std::logic_error("content division failed");
            coef = *q;
        }
    };
    divide_content(ua, ca);
    divide_content(ub, cb);

    // Primitive PRS on the primitive parts.
    auto primitive_part = [&](std::map<int, MPoly> u) {
        MPoly c = content(u);
        divide_content(u, c);
        return u;
    };
    if (uni_deg(ua) < uni_deg(ub)) std::swap(ua, ub);
    while (true) {
        if (ub.empty()) break;
        auto r = pseudo_rem(ua, ub, key);
        if (r.empty()) {
            ua = ub;
            break;
        }
        ua = ub;
        ub = primitive_part(std::move(r));
    }
    MPoly result = cont_gcd * from_univariate(ua, key);
    return primitive_normalize(result);
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw std::domain_error("MPoly::pow negative exponent");
    MPoly out(1);
    MPoly base = *this;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

MPoly MPoly::subst_spec(int x_spec, std::optional<int> y_spec, const Rat& c) const {
    int xk = spec_key(x_spec);
    MPoly repl;
    if (y_spec) repl += MPoly::spec(*y_spec);
    repl += MPoly::hbar() * c;
    MPoly out;
    for (auto& [m, coef] : terms_) {
        MPoly t(coef);
        for (auto& [k, e] : m) {
            if (k == xk)
                t *= repl.pow(e);
            else
                t *= MPoly::var(k, e);
        }
        out += t;
    }
    return out;
}

MPoly MPoly::scale_hbar(const Rat& c) const {
    MPoly out;
    for (auto& [m, coef] : terms_) {
        Rat f = coef;
        Mono rest;
        for (auto& [k, e] : m) {
            if (k == kVarHbar) {
                f *= rat_pow(c, e);
                if (c != 0) rest.push_back({k, e});
            } else {
                rest.push_back({k, e});
            }
        }
        out.add_term(rest, f);
    }
    return out;
}

bool MPoly::has_spec_vars() const {
    for (auto& [m, c] : terms_)
        for (auto& [k, e] : m)
            if (k >= 2) return true;
    return false;
}

PolyHS MPoly::to_polyhs() const {
    PolyHS out;
    for (auto& [m, c] : terms_) {
        int he = 0, se = 0;
        for (auto& [k, e] : m) {
            if (k == kVarHbar)
                he = e;
            else if (k == kVarS)
                se = e;
            else
                throw std::domain_error("to_polyhs: spectral variable present");
        }
        out.add_term(c, he, se);
    }
    return out;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rat a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (a != 1 || m.empty()) os << a.get_str();
        bool star = (a != 1);
        for (auto& [k, e] : m) {
            if (star) os << "*";
            os << var_key_name(k);
            if (e > 1) os << "^" << e;
            star = true;
        }
    }
    return os.str();
}

}  // namespace ydouble
