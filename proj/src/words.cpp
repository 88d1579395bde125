#include "ydouble/words.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace ydouble {

namespace {

std::string delta_list_key(const std::vector<DeltaAtom>& ds) {
    std::ostringstream os;
    for (auto& d : ds)
        os << "d(" << d.a << "," << d.b << "," << d.c.get_str() << "," << d.r << ")";
    return os.str();
}

// Substitute var `from` := var `to` + c*h across a term; `to` inherits the
// region slot of `from` when absent.
void term_subst(NormalTerm& t, int from, std::optional<int> to, const Rat& c) {
    t.scalar = t.scalar.subst_spec(from, to, c);
    t.skel = t.skel.subst_var(from, to.value_or(from), c);
    if (!to) {
        t.region.erase(std::remove(t.region.begin(), t.region.end(), from), t.region.end());
        return;
    }
    bool present = std::find(t.region.begin(), t.region.end(), *to) != t.region.end();
    for (auto it = t.region.begin(); it != t.region.end();) {
        if (*it == from) {
            if (present) {
                it = t.region.erase(it);
                continue;
            }
            *it = *to;
            present = true;
        }
        ++it;
    }
}

// Attach a delta to a term: consume an extraction variable when one leg is
// being extracted ([x^{-1}] delta(x - y + c h) T(x) = T(y -+ c h)), otherwise
// record it and evaluate on the support, keeping the higher-id leg.
void apply_delta(NormalTerm& t, const DeltaAtom& d) {
    auto is_extract = [&](int v) {
        return std::find(t.extract.begin(), t.extract.end(), v) != t.extract.end();
    };
    if (is_extract(d.b)) {
        // support x_b = x_a + c h
        term_subst(t, d.b, d.a, d.c);
        t.extract.erase(std::remove(t.extract.begin(), t.extract.end(), d.b), t.extract.end());
    } else if (is_extract(d.a)) {
        term_subst(t, d.a, d.b, -d.c);
        t.extract.erase(std::remove(t.extract.begin(), t.extract.end(), d.a), t.extract.end());
    } else {
        t.deltas.push_back(d);
        std::sort(t.deltas.begin(), t.deltas.end());
        term_subst(t, d.a, d.b, -d.c);
    }
}

void finalize_term(NormalTerm& t) {
    // Relabel surviving extraction variables to the canonical low ids.
    std::sort(t.extract.begin(), t.extract.end());
    std::vector<int> pool = t.extract;
    for (size_t i = 0; i < t.extract.size(); ++i) {
        int want = 2 + static_cast<int>(i);
        int have = t.extract[i];
        if (have != want) {
            term_subst(t, have, want, Rat(0));
            t.extract[i] = want;
        }
    }
    std::sort(t.region.begin(), t.region.end());
    t.skel.normalize();
}

}  // namespace

std::string NormalTerm::group_key() const {
    std::ostringstream os;
    os << delta_list_key(deltas) << "|X:";
    for (int v : extract) os << v << ",";
    os << "|R:";
    for (int v : region) os << v << ",";
    os << "|" << skel.key();
    return os.str();
}

std::vector<NormalTerm> normalize_word(const Word& w) {
    NProd np;
    np.scalar = w.prefactor;
    std::vector<int> region;
    for (auto& [var, g] : w.factors) {
        if (std::find(region.begin(), region.end(), var) == region.end()) region.push_back(var);
        contract_append(np, g, var);
    }

    NormalTerm seed;
    seed.scalar = np.scalar;
    seed.skel = np.skel;
    seed.region = region;
    seed.extract = w.extract;
    if (w.delta) apply_delta(seed, *w.delta);

    std::vector<NormalTerm> out;
    std::deque<NormalTerm> work{seed};
    while (!work.empty()) {
        NormalTerm t = std::move(work.front());
        work.pop_front();
        if (t.scalar.is_zero()) continue;
        size_t inv = t.region.size();
        for (size_t i = 0; i + 1 < t.region.size(); ++i)
            if (t.region[i] > t.region[i + 1]) {
                inv = i;
                break;
            }
        if (inv == t.region.size()) {
            finalize_term(t);
            out.push_back(std::move(t));
            continue;
        }
        int x = t.region[inv], y = t.region[inv + 1];  // currently x >> y, ids x > y
        // Crossed poles between x and y: canonical atoms (y, x, c).
        std::vector<std::pair<Rat, int>> poles;
        for (auto& [at, e] : t.scalar.atoms())
            if (at.b >= 0 && at.a == y && at.b == x && e < 0) {
                if (e != -2) throw NonsimplePole(at);
                poles.push_back({at.c, e});
            }
        for (auto& [c, e] : poles) {
            NormalTerm child = t;
            LinAtom at = atom2(y, x, c);
            child.scalar.mul_atom(at, +2);
            child.scalar.mul_rat(Rat(-1));  // expand_{x>>y} = expand_{y>>x} - sum delta.res
            apply_delta(child, DeltaAtom{y, x, c, 0});
            work.push_back(std::move(child));
        }
        std::swap(t.region[inv], t.region[inv + 1]);
        work.push_back(std::move(t));
    }
    return out;
}

void ScalarSum::add(const FactorProduct& f, const Rat& coeff) {
    if (coeff == 0 || f.is_zero()) return;
    auto core = f.half_core();
    std::ostringstream os;
    for (auto& [at, e] : core) os << "[" << at.str() << "]^" << e << ";";
    std::string key = os.str();
    auto [n, d] = f.integer_part_ratio();
    n *= coeff;
    auto it = parts_.find(key);
    if (it == parts_.end()) {
        parts_[key] = Part{n, d};
        cores_[key] = core;
        return;
    }
    Part& p = it->second;
    MPoly num = p.num * d + n * p.den;
    MPoly den = p.den * d;
    if (num.is_zero()) {
        p.num = MPoly(0);
        p.den = MPoly(1);
        return;
    }
    MPoly g = MPoly::gcd(num, den);
    if (!(g == MPoly(1))) {
        num = *MPoly::divide_exact(num, g);
        den = *MPoly::divide_exact(den, g);
    }
    p.num = num;
    p.den = den;
}

bool ScalarSum::is_zero() const {
    for (auto& [k, p] : parts_)
        if (!p.num.is_zero()) return false;
    return true;
}

std::string ScalarSum::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, p] : parts_) {
        if (p.num.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (!k.empty()) os << k << " * ";
        os << "(" << p.num.str() << ")";
        if (!(p.den == MPoly(1))) os << "/(" << p.den.str() << ")";
    }
    return first ? "0" : os.str();
}

namespace {

struct Groups {
    std::map<std::string, ScalarSum> sums;
    std::map<std::string, std::string> describe;

    void add(const std::vector<Word>& words, const Rat& side) {
        for (auto& w : words)
            for (auto& t : normalize_word(w)) {
                std::string key = t.group_key();
                sums[key].add(t.scalar, side);
                if (!describe.count(key)) {
                    std::ostringstream os;
                    if (!t.deltas.empty()) os << delta_list_key(t.deltas) << " ";
                    os << "shell " << t.skel.key();
                    describe[key] = os.str();
                }
            }
    }
    std::optional<std::string> first_nonzero() const {
        for (auto& [k, s] : sums)
            if (!s.is_zero()) return describe.at(k) + " : " + s.str();
        return std::nullopt;
    }
};

}  // namespace

WordCheck check_word_identity(const std::vector<Word>& lhs, const std::vector<Word>& rhs) {
    WordCheck out;
    try {
        Groups diff;
        diff.add(lhs, Rat(1));
        diff.add(rhs, Rat(-1));
        auto bad = diff.first_nonzero();
        if (!bad) return out;
        Groups sum;
        sum.add(lhs, Rat(1));
        sum.add(rhs, Rat(1));
        if (!sum.first_nonzero()) {
            out.status = WordCheck::Status::sign_discrepancy;
            out.witness = *bad;
            return out;
        }
        out.status = WordCheck::Status::fail;
        out.witness = *bad;
    } catch (const NonsimplePole& e) {
        out.status = WordCheck::Status::nonsimple_pole;
        out.witness = e.what();
    }
    return out;
}

ScalarSum words_vacuum_element(const std::vector<Word>& words, const FockState& src,
                               const FockState& target) {
    ScalarSum out;
    for (auto& w : words)
        for (auto& t : normalize_word(w)) {
            if (!t.deltas.empty())
                throw std::domain_error("words_vacuum_element: delta term in a matrix element");
            FockVector moved = apply_lattice(t.skel.lattice, FockVector(src));
            const FockState& st2 = moved.terms().begin()->first;
            if (!(st2 == target)) continue;
            FactorProduct fp = t.scalar;
            for (auto& z : t.skel.zeromodes) {
                auto [r, q] = weight_readout(z.lambda, src);
                if (q != 0)
                    throw std::domain_error("words_vacuum_element: s-dependent zero mode");
                Rat twice = r * 2;
                if (!is_integer(twice))
                    throw std::domain_error("words_vacuum_element: bad readout");
                fp.mul_atom(atom1(z.var, z.shift, z.sigma), static_cast<int>(to_long(twice)));
            }
            // Extract surviving [w^{-1}] modes by residue calculus: with the
            // extraction variable innermost, only the pure-h poles lie inside.
            std::vector<FactorProduct> terms{fp};
            std::vector<int> exvars = t.extract;
            std::sort(exvars.rbegin(), exvars.rend());
            for (int wv : exvars) {
                std::vector<FactorProduct> next;
                for (auto& f : terms) {
                    for (auto& [at, e] : f.atoms()) {
                        if (at.b >= 0 || at.a != wv) continue;
                        if (e >= 0) continue;
                        if (e != -2)
                            throw std::domain_error(
                                "words_vacuum_element: higher-order inside pole");
                        FactorProduct res = f;
                        res.mul_atom(at, +2);
                        if (at.sigma < 0) res.mul_rat(Rat(-1));
                        res = res.subst_spec(wv, std::nullopt, -at.c);
                        next.push_back(res);
                    }
                }
                terms = std::move(next);
            }
            for (auto& f : terms) out.add(f, Rat(1));
        }
    return out;
}

bool scalar_sum_equals_rat(const ScalarSum& s, const Rat& value) {
    ScalarSum t = s;
    t.add(FactorProduct(value), Rat(-1));
    return t.is_zero();
}

}  // namespace ydouble
