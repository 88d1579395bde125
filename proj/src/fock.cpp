#include "ydouble/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ydouble {

std::string WeightVector::str() const {
    std::ostringstream os;
    os << "(" << e1.get_str() << ", " << e2.get_str() << ")";
    return os.str();
}

int FockState::boson_degree() const {
    int d = 0;
    for (int p : l1) d += p;
    for (int p : l2) d += p;
    return d;
}

WeightVector FockState::beta_rational() const {
    WeightVector b = bar_lambda(i) + Rat(n) * alpha();
    b = b + rat(ds, 2) * (eps1() + eps2());
    return b;
}

static std::string partition_str(const std::vector<int>& p) {
    std::ostringstream os;
    os << "(";
    for (size_t k = 0; k < p.size(); ++k) {
        if (k) os << ",";
        os << p[k];
    }
    os << ")";
    return os.str();
}

std::string FockState::str() const {
    std::ostringstream os;
    os << "F[i=" << i << ",s";
    if (ds > 0) os << "+" << ds;
    if (ds < 0) os << "-" << -ds;
    os << "] n=" << n << " λ1=" << partition_str(l1) << " λ2=" << partition_str(l2);
    return os.str();
}

void FockVector::add(const FockState& st, const PolyHS& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(st);
    if (it == terms_.end()) {
        terms_[st] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (auto& [st, c] : o.terms_) add(st, c);
    return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
    for (auto& [st, c] : o.terms_) add(st, -c);
    return *this;
}

FockVector& FockVector::operator*=(const PolyHS& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    std::map<FockState, PolyHS> out;
    for (auto& [st, v] : terms_) {
        PolyHS w = v * c;
        if (!w.is_zero()) out[st] = w;
    }
    terms_ = std::move(out);
    return *this;
}

FockVector FockVector::truncated_degree(int max_degree) const {
    FockVector out;
    for (auto& [st, c] : terms_)
        if (st.boson_degree() <= max_degree) out.add(st, c);
    return out;
}

std::string FockVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [st, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")·|" << st.str() << "⟩";
    }
    return os.str();
}

FockVector apply_boson(int color, int k, const FockVector& v) {
    if (k == 0) throw std::invalid_argument("apply_boson: k must be nonzero");
    if (color != 1 && color != 2) throw std::invalid_argument("apply_boson: color must be 1 or 2");
    FockVector out;
    for (auto& [st, c] : v.terms()) {
        const std::vector<int>& part = color == 1 ? st.l1 : st.l2;
        if (k < 0) {
            FockState ns = st;
            std::vector<int>& np = color == 1 ? ns.l1 : ns.l2;
            np.push_back(-k);
            std::sort(np.begin(), np.end(), std::greater<int>());
            out.add(ns, c);
        } else {
            long mult = std::count(part.begin(), part.end(), k);
            if (mult == 0) continue;
            FockState ns = st;
            std::vector<int>& np = color == 1 ? ns.l1 : ns.l2;
            np.erase(std::find(np.begin(), np.end(), k));
            out.add(ns, c * Rat(k * mult));
        }
    }
    return out;
}

FockVector apply_lattice(const WeightVector& gamma, const FockVector& v) {
    if (!is_integer(gamma.e1) || !is_integer(gamma.e2))
        throw std::invalid_argument("apply_lattice: gamma must be integral");
    long a = to_long(gamma.e1), b = to_long(gamma.e2);
    long d = a - b;
    FockVector out;
    for (auto& [st, c] : v.terms()) {
        FockState ns = st;
        ns.ds = st.ds + static_cast<int>(a + b);
        int ni = (st.i + static_cast<int>(((d % 2) + 2) % 2)) % 2;
        // bar_lambda_i + n*alpha + (d/2)*alpha = bar_lambda_ni + n'*alpha
        long twice_n = 2L * st.n + d + st.i - ni;
        if (twice_n % 2 != 0) throw std::logic_error("apply_lattice: lattice bookkeeping broke");
        ns.i = ni;
        ns.n = static_cast<int>(twice_n / 2);
        out.add(ns, c);
    }
    return out;
}

std::pair<Rat, Rat> weight_readout(const WeightVector& lambda, const FockState& st) {
    Rat rational = bilinear(lambda, st.beta_rational());
    Rat s_coef = bilinear(lambda, FockState::beta_s_part());
    return {rational, s_coef};
}

PolyHS dual_pairing(const FockState& st, const FockVector& v) {
    auto it = v.terms().find(st);
    return it == v.terms().end() ? PolyHS() : it->second;
}

static void partitions_of(int d, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    // Enumerate partitions of d with parts descending.
    struct Rec {
        std::vector<std::vector<int>>& out;
        std::vector<int>& cur;
        void go(int rest, int maxpart) {
            if (rest == 0) {
                out.push_back(cur);
                return;
            }
            for (int p = std::min(rest, maxpart); p >= 1; --p) {
                cur.push_back(p);
                go(rest - p, p);
                cur.pop_back();
            }
        }
    } rec{out, cur};
    rec.go(d, d);
}

std::vector<FockState> enumerate_states(int sector, int max_degree, int nwin) {
    std::vector<FockState> out;
    for (int n = -nwin; n <= nwin; ++n)
        for (int d = 0; d <= max_degree; ++d)
            for (int d1 = 0; d1 <= d; ++d1) {
                std::vector<std::vector<int>> p1, p2;
                partitions_of(d1, p1);
                partitions_of(d - d1, p2);
                if (d1 == 0) p1 = {{}};
                if (d - d1 == 0) p2 = {{}};
                for (auto& a : p1)
                    for (auto& b : p2) {
                        FockState st;
                        st.l1 = a;
                        st.l2 = b;
                        st.n = n;
                        st.i = sector;
                        out.push_back(st);
                    }
            }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ydouble
