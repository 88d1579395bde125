#include "ydouble/gvo.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <stdexcept>

namespace ydouble {

void GVO::normalize() {
    auto combine = [](std::vector<ExpTerm>& terms) {
        std::map<std::pair<int, Rat>, int> acc;
        for (auto& t : terms) acc[{t.color, t.shift}] += t.coeff;
        terms.clear();
        for (auto& [k, c] : acc)
            if (c != 0) terms.push_back({k.first, c, k.second});
    };
    combine(creation);
    combine(annihilation);
    std::map<std::pair<Rat, int>, ZeroMode> zacc;
    for (auto& z : zeromodes) {
        auto key = std::make_pair(z.shift, z.sigma);
        auto it = zacc.find(key);
        if (it == zacc.end()) {
            zacc[key] = z;
        } else {
            it->second.lambda = it->second.lambda + z.lambda;
            it->second.offset += z.offset;
        }
    }
    zeromodes.clear();
    for (auto& [k, z] : zacc)
        if (!(z.lambda.is_zero() && z.offset == 0)) zeromodes.push_back(z);
}

GVO gvo_shift(GVO g, const Rat& c) {
    for (auto& t : g.creation) t.shift += c;
    for (auto& t : g.annihilation) t.shift += c;
    for (auto& z : g.zeromodes) z.shift += c;
    return g;
}

GVO gvo_inverse(GVO g) {
    if (!g.lattice.is_zero())
        throw std::domain_error("gvo_inverse: operator has a lattice shift");
    for (auto& t : g.creation) t.coeff = -t.coeff;
    for (auto& t : g.annihilation) t.coeff = -t.coeff;
    for (auto& z : g.zeromodes) {
        z.lambda = -z.lambda;
        z.offset = -z.offset;
    }
    if (g.prefactor != 1 && g.prefactor != -1)
        g.prefactor = Rat(1) / g.prefactor;
    g.normalize();
    return g;
}

GVO gvo_merge(const GVO& g1, const GVO& g2) {
    if (!g1.lattice.is_zero() || !g2.lattice.is_zero())
        throw std::domain_error("gvo_merge: lattice shifts do not commute with zero modes");
    if ((!g1.annihilation.empty() && !g2.creation.empty()) ||
        (!g1.creation.empty() && !g2.annihilation.empty()))
        throw std::domain_error("gvo_merge: sides do not commute, use the contraction engine");
    GVO out = g1;
    out.creation.insert(out.creation.end(), g2.creation.begin(), g2.creation.end());
    out.annihilation.insert(out.annihilation.end(), g2.annihilation.begin(),
                            g2.annihilation.end());
    out.zeromodes.insert(out.zeromodes.end(), g2.zeromodes.begin(), g2.zeromodes.end());
    out.prefactor *= g2.prefactor;
    out.normalize();
    return out;
}

namespace {

GVO make_k_plus(int j) {
    GVO g;
    g.annihilation = {{j, -1, rat(1, 2)}, {j, +1, rat(-1, 2)}};
    WeightVector ej = j == 1 ? eps1() : eps2();
    g.zeromodes = {{ej, rat(-1, 2), +1, Rat(0)}, {-ej, rat(1, 2), +1, Rat(0)}};
    g.normalize();
    return g;
}

GVO make_k_minus(int j) {
    GVO g;
    if (j == 1) {
        // colors r > j contribute exp[ sum (a_{r,-k}/k)((u+h)^k - u^k) ]
        g.creation = {{2, +1, Rat(1)}, {2, -1, Rat(0)}};
    } else {
        // colors r < j contribute exp[ sum (a_{r,-k}/k)(u^k - (u-h)^k) ]
        g.creation = {{1, +1, Rat(0)}, {1, -1, Rat(-1)}};
    }
    g.normalize();
    return g;
}

GVO make_x_plus() {
    GVO g;
    g.creation = {{1, -1, rat(-3, 4)}, {2, +1, rat(1, 4)}};
    g.annihilation = {{1, +1, rat(1, 4)}, {2, -1, rat(1, 4)}};
    g.lattice = alpha();
    g.zeromodes = {{alpha(), rat(1, 4), +1, Rat(0)}};
    g.normalize();
    return g;
}

GVO make_x_minus() {
    GVO g;
    g.creation = {{1, +1, rat(-1, 4)}, {2, -1, rat(3, 4)}};
    g.annihilation = {{1, -1, rat(-1, 4)}, {2, +1, rat(-1, 4)}};
    g.lattice = -alpha();
    g.zeromodes = {{-alpha(), rat(-1, 4), +1, Rat(0)}};
    g.normalize();
    return g;
}

GVO make_phi_minus(int sector) {
    GVO g;
    g.creation = {{2, +1, rat(5, 4)}};
    g.annihilation = {{1, +1, rat(1, 4)}};
    g.lattice = -eps2();
    g.zeromodes = {{rat(1, 2) * alpha(), rat(1, 4), -1, rat(sector, 2)}};
    g.normalize();
    return g;
}

GVO make_psi_plus(int sector) {
    GVO g;
    g.creation = {{1, +1, rat(-1, 4)}};
    g.annihilation = {{2, +1, rat(3, 4)}};
    g.lattice = -eps1();
    g.zeromodes = {{rat(-1, 2) * alpha(), rat(3, 4), -1, rat(sector, 2)}};
    g.prefactor = sector == 1 ? Rat(1) : Rat(-1);  // (-1)^(1-i)
    g.normalize();
    return g;
}

}  // namespace

GVO catalog(const std::string& name, int sector) {
    if (name == "k1+") return make_k_plus(1);
    if (name == "k2+") return make_k_plus(2);
    if (name == "k1-") return make_k_minus(1);
    if (name == "k2-") return make_k_minus(2);
    if (name == "X+") return make_x_plus();
    if (name == "X-") return make_x_minus();
    if (name == "H+")
        return gvo_merge(gvo_shift(make_k_plus(2), rat(1, 2)),
                         gvo_inverse(gvo_shift(make_k_plus(1), rat(1, 2))));
    if (name == "H-")
        return gvo_merge(gvo_shift(make_k_minus(2), rat(1, 2)),
                         gvo_inverse(gvo_shift(make_k_minus(1), rat(1, 2))));
    if (name == "K+")
        return gvo_merge(gvo_shift(make_k_plus(1), rat(-1, 2)),
                         gvo_shift(make_k_plus(2), rat(1, 2)));
    if (name == "K-")
        return gvo_merge(gvo_shift(make_k_minus(1), rat(-1, 2)),
                         gvo_shift(make_k_minus(2), rat(1, 2)));
    if (name == "E") return gvo_shift(make_x_plus(), rat(1, 2));
    if (name == "F") return gvo_shift(make_x_minus(), rat(1, 2));
    if (name == "Phi-" || name == "Psi+") {
        if (sector != 0 && sector != 1)
            throw std::invalid_argument("catalog: " + name + " needs a source sector 0 or 1");
        return name == "Phi-" ? make_phi_minus(sector) : make_psi_plus(sector);
    }
    throw std::invalid_argument("catalog: unknown name " + name);
}

std::string catalog_dump_json() {
    using nlohmann::json;
    json doc = json::array();
    auto weight_json = [](const WeightVector& w) {
        return json{{"eps1", w.e1.get_str()}, {"eps2", w.e2.get_str()}};
    };
    auto gvo_json = [&](const std::string& name, int sector, const GVO& g) {
        json e;
        e["name"] = name;
        if (sector >= 0) e["sector"] = sector;
        auto terms = [](const std::vector<ExpTerm>& ts) {
            json arr = json::array();
            for (auto& t : ts)
                arr.push_back(
                    {{"color", t.color}, {"coeff", t.coeff}, {"shift", t.shift.get_str()}});
            return arr;
        };
        e["creation"] = terms(g.creation);
        e["annihilation"] = terms(g.annihilation);
        e["lattice"] = weight_json(g.lattice);
        json zms = json::array();
        for (auto& z : g.zeromodes)
            zms.push_back({{"lambda", weight_json(z.lambda)},
                           {"shift", z.shift.get_str()},
                           {"sigma", z.sigma},
                           {"offset", z.offset.get_str()}});
        e["zeromodes"] = zms;
        e["prefactor"] = g.prefactor.get_str();
        return e;
    };
    for (const char* n :
         {"k1+", "k2+", "k1-", "k2-", "X+", "X-", "H+", "H-", "K+", "K-", "E", "F"})
        doc.push_back(gvo_json(n, -1, catalog(n)));
    for (const char* n : {"Phi-", "Psi+"})
        for (int i = 0; i <= 1; ++i) doc.push_back(gvo_json(n, i, catalog(n, i)));
    return doc.dump(2);
}

}  // namespace ydouble
