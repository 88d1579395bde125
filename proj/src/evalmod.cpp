#include "ydouble/evalmod.hpp"

#include <sstream>
#include <stdexcept>

namespace ydouble {

void EvalVector::add(int b, int u_exp, const PolyHS& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(b, u_exp);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_[key] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

EvalVector& EvalVector::operator+=(const EvalVector& o) {
    for (auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

EvalVector& EvalVector::operator-=(const EvalVector& o) {
    for (auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
}

EvalVector& EvalVector::operator*=(const PolyHS& c) {
    std::map<std::pair<int, int>, PolyHS> out;
    for (auto& [k, v] : terms_) {
        PolyHS w = v * c;
        if (!w.is_zero()) out[k] = w;
    }
    terms_ = std::move(out);
    return *this;
}

std::string EvalVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k.second != 0) os << "*u^" << k.second;
        os << (k.first == 0 ? " w+" : " w-");
    }
    return os.str();
}

EvalVector eval_apply_mode(const std::string& name, long k, const EvalVector& v) {
    EvalVector out;
    for (auto& [key, c] : v.terms()) {
        auto [b, e] = key;
        if (name == "h" || name == "H+" || name == "H-") {
            if (name == "H+" && k < 0) continue;
            if (name == "H-" && k >= 0) continue;
            PolyHS w = c;
            if (b == 1) w = -w;
            out.add(b, e + static_cast<int>(k), w);
        } else if (name == "e") {
            if (b == 1) out.add(0, e + static_cast<int>(k), c);
        } else if (name == "f") {
            if (b == 0) out.add(1, e + static_cast<int>(k), c);
        } else {
            throw std::invalid_argument("eval_apply_mode: unknown current " + name);
        }
    }
    return out;
}

EvalSeriesAction eval_apply_series(const std::string& name, int basis_in, int xvar, int u0var) {
    EvalSeriesAction act;
    LinAtom num = atom2(xvar, u0var, Rat(0));
    if (name == "H+" || name == "H-") {
        // (x - u0 ± h)/(x - u0) on w_±
        Rat sh = basis_in == 0 ? Rat(1) : Rat(-1);
        act.basis_out = basis_in;
        act.coeff = FactorProduct::from_atom(atom2(xvar, u0var, sh), 2) *
                    FactorProduct::from_atom(num, -2);
        return act;
    }
    if (name == "K+" || name == "K-") {
        act.basis_out = basis_in;
        act.coeff = FactorProduct::from_atom(atom2(xvar, u0var, Rat(-1)), 2) *
                    FactorProduct::from_atom(num, -2);
        return act;
    }
    if (name == "E") {
        if (basis_in == 0) throw std::domain_error("E annihilates w+");
        act.basis_out = 0;
        act.is_delta = true;
        act.delta = DeltaAtom{xvar, u0var, Rat(0), 0};
        return act;
    }
    if (name == "F") {
        if (basis_in == 1) throw std::domain_error("F annihilates w-");
        act.basis_out = 1;
        act.is_delta = true;
        act.delta = DeltaAtom{xvar, u0var, Rat(0), 0};
        return act;
    }
    throw std::invalid_argument("eval_apply_series: unknown current " + name);
}

}  // namespace ydouble
