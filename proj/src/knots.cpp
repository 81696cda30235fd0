#include "tav/knots.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "tav/polydet.hpp"

namespace tav {

FreeWord free_reduce(const FreeWord& w) {
    FreeWord out;
    for (int x : w) {
        if (x == 0) throw KnotError("free word: zero letter");
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

FreeWord free_inverse(const FreeWord& w) {
    FreeWord out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

long exponent_sum(const FreeWord& w) {
    long s = 0;
    for (int x : w) s += (x > 0) ? 1 : -1;
    return s;
}

void FoxElement::add(long c, const FreeWord& w) {
    if (c == 0) return;
    FreeWord r = free_reduce(w);
    for (auto& [cc, ww] : terms) {
        if (ww == r) {
            cc += c;
            if (cc == 0) {
                std::erase_if(terms, [&](const auto& t) { return t.first == 0; });
            }
            return;
        }
    }
    terms.emplace_back(c, std::move(r));
}

FoxElement FoxElement::operator+(const FoxElement& o) const {
    FoxElement r = *this;
    for (const auto& [c, w] : o.terms) r.add(c, w);
    return r;
}

FoxElement FoxElement::premul(const FreeWord& w) const {
    FoxElement r;
    for (const auto& [c, ww] : terms) {
        FreeWord nw = w;
        nw.insert(nw.end(), ww.begin(), ww.end());
        r.add(c, nw);
    }
    return r;
}

FoxElement fox_derivative(const FreeWord& w, unsigned j) {
    // d(uv)/ds = du/ds + u dv/ds; d s_j/d s_j = 1; d s_j^-1/d s_j = -s_j^-1
    FoxElement res;
    FreeWord prefix;
    const int g = static_cast<int>(j) + 1;
    for (int x : w) {
        if (x == g) {
            res.add(1, prefix);
        } else if (x == -g) {
            FreeWord p = prefix;
            p.push_back(x);
            res.add(-1, p);
        }
        prefix.push_back(x);
    }
    return res;
}

void WirtingerPresentation::validate() const {
    if (n < 1) throw KnotError(name + ": no generators");
    if (relators.size() + 1 != n)
        throw KnotError(name + ": expected n-1 relators");
    for (const auto& r : relators) {
        if (exponent_sum(r) != 0)
            throw KnotError(name + ": relator with nonzero exponent sum");
        for (int x : r)
            if (x == 0 || static_cast<unsigned>(std::abs(x)) > n)
                throw KnotError(name + ": relator letter out of range");
    }
}

// ---- braid closures ----

namespace {

std::vector<FreeWord> braid_act(const std::vector<int>& word, unsigned s) {
    // sigma_i: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
    std::vector<FreeWord> ws(s);
    for (unsigned i = 0; i < s; ++i) ws[i] = {static_cast<int>(i) + 1};
    for (int l : word) {
        unsigned i = static_cast<unsigned>(std::abs(l)) - 1;
        if (i + 1 >= s) throw KnotError("braid letter out of range");
        FreeWord a = ws[i], b = ws[i + 1];
        if (l > 0) {
            FreeWord w = a;
            w.insert(w.end(), b.begin(), b.end());
            FreeWord ai = free_inverse(a);
            w.insert(w.end(), ai.begin(), ai.end());
            ws[i] = free_reduce(w);
            ws[i + 1] = a;
        } else {
            FreeWord w = free_inverse(b);
            w.insert(w.end(), a.begin(), a.end());
            w.insert(w.end(), b.begin(), b.end());
            ws[i] = b;
            ws[i + 1] = free_reduce(w);
        }
    }
    return ws;
}

}  // namespace

WirtingerPresentation braid_closure_presentation(const std::string& name,
                                                 const std::vector<int>& word,
                                                 unsigned strands) {
    auto ws = braid_act(word, strands);
    // the closure is a knot iff the braid permutation is a single cycle;
    // each image word is a conjugate of one generator: its middle letter
    std::vector<unsigned> perm(strands);
    for (unsigned i = 0; i < strands; ++i) {
        FreeWord red = free_reduce(ws[i]);
        if (red.size() % 2 != 1) throw KnotError(name + ": bad braid image");
        int mid = red[red.size() / 2];
        if (mid < 0) throw KnotError(name + ": bad braid image core");
        perm[i] = static_cast<unsigned>(mid) - 1;
    }
    std::set<unsigned> cyc;
    unsigned x = 0;
    for (unsigned i = 0; i < strands; ++i) {
        cyc.insert(x);
        x = perm[x];
    }
    if (cyc.size() != strands)
        throw KnotError(name + ": braid closure is not a knot");
    WirtingerPresentation K;
    K.name = name;
    K.n = strands;
    for (unsigned i = 0; i + 1 < strands; ++i) {
        FreeWord r{-(static_cast<int>(i) + 1)};
        r.insert(r.end(), ws[i].begin(), ws[i].end());
        K.relators.push_back(free_reduce(r));
    }
    K.validate();
    return K;
}

WirtingerPresentation two_bridge_presentation(const std::string& name,
                                              unsigned p, unsigned q) {
    if (p % 2 == 0 || q % 2 == 0 || q >= p || std::gcd(p, q) != 1)
        throw KnotError(name + ": b(p,q) needs odd coprime q < p");
    // Omega = a^{e1} b^{e2} a^{e3} ... b^{e_{p-1}}, e_i = (-1)^{floor(iq/p)}
    FreeWord omega;
    for (unsigned i = 1; i < p; ++i) {
        int sign = ((static_cast<unsigned long>(i) * q / p) % 2 == 0) ? 1 : -1;
        int gen = (i % 2 == 1) ? 1 : 2;  // alternate a, b
        omega.push_back(sign * gen);
    }
    // relator: Omega a Omega^-1 b^-1
    FreeWord r = omega;
    r.push_back(1);
    FreeWord oi = free_inverse(omega);
    r.insert(r.end(), oi.begin(), oi.end());
    r.push_back(-2);
    WirtingerPresentation K;
    K.name = name;
    K.n = 2;
    K.relators.push_back(free_reduce(r));
    K.validate();
    return K;
}

// ---- Alexander polynomial ----

LaurentPoly fox_abelianized(const FreeWord& w, unsigned j, const Ring& Z) {
    LaurentPoly out(Z);
    long pref = 0;
    const int g = static_cast<int>(j) + 1;
    for (int x : w) {
        if (x == g) {
            out.set_coeff(pref, out.coeff(pref) + Z->one());
            ++pref;
        } else if (x == -g) {
            --pref;
            out.set_coeff(pref, out.coeff(pref) - Z->one());
        } else {
            pref += (x > 0) ? 1 : -1;
        }
    }
    return out;
}

LaurentPoly alexander_polynomial(const WirtingerPresentation& K) {
    K.validate();
    Ring Z = CoeffRing::integers();
    if (K.n == 1) return LaurentPoly::constant(Z->one());  // unknot
    PolyMat A(K.n - 1, K.n - 1, Z);
    for (unsigned i = 0; i + 1 < K.n; ++i)
        for (unsigned j = 0; j + 1 < K.n; ++j)  // delete last column
            A.at(i, j) = fox_abelianized(K.relators[i], j, Z);
    LaurentPoly d = normalize_unit(poly_det(A));
    RingElem at1 = d.eval(Z->one());
    if (!(at1.is_one() || at1 == -Z->one()))
        throw KnotError(K.name + ": Alexander polynomial fails |Delta(1)| = 1");
    return d;
}

// ---- bundled table ----

namespace {

struct KnotEntry {
    const char* name;
    // either a braid word on `strands` strands, or (strands==0) a 2-bridge pair
    std::vector<int> braid;
    unsigned strands;
    unsigned tb_p, tb_q;
    std::vector<long> alex;  // ascending coefficients, min exponent 0
};

const std::vector<KnotEntry>& knot_table() {
    static const std::vector<KnotEntry> table = {
        {"unknot", {}, 1, 0, 0, {1}},
        {"3_1", {1, 2, 1, 2}, 3, 0, 0, {1, -1, 1}},
        {"4_1", {1, -2, 1, -2}, 3, 0, 0, {1, -3, 1}},
        {"5_1", {1, 1, 1, 1, 1, 2}, 3, 0, 0, {1, -1, 1, -1, 1}},
        {"5_2", {1, 1, 1, 2, -1, 2}, 3, 0, 0, {2, -3, 2}},
        {"6_1", {1, 1, 2, -1, -3, 2, -3}, 4, 0, 0, {2, -5, 2}},
        {"6_2", {1, 1, 1, -2, 1, -2}, 3, 0, 0, {1, -3, 3, -3, 1}},
        {"6_3", {1, 1, -2, 1, -2, -2}, 3, 0, 0, {1, -3, 5, -3, 1}},
        {"7_1", {1, 1, 1, 1, 1, 1, 1, 2}, 3, 0, 0, {1, -1, 1, -1, 1, -1, 1}},
        {"7_2", {1, 1, 1, 2, -1, 2, 3, -2, 3}, 4, 0, 0, {3, -5, 3}},
        {"7_3", {1, 1, 1, 1, 1, 2, -1, 2}, 3, 0, 0, {2, -3, 3, -3, 2}},
        {"7_4", {1, 1, 2, -1, 2, 2, 3, -2, 3}, 4, 0, 0, {4, -7, 4}},
        {"7_5", {1, 1, 1, 1, 2, -1, 2, 2}, 3, 0, 0, {2, -4, 5, -4, 2}},
        {"7_6", {}, 0, 19, 7, {1, -5, 7, -5, 1}},
        {"7_7", {}, 0, 21, 13, {1, -5, 9, -5, 1}},
    };
    return table;
}

}  // namespace

std::vector<std::string> builtin_knot_names() {
    std::vector<std::string> out;
    for (const auto& e : knot_table()) out.push_back(e.name);
    return out;
}

WirtingerPresentation builtin_knot(const std::string& name) {
    for (const auto& e : knot_table()) {
        if (name != e.name) continue;
        WirtingerPresentation K;
        if (e.strands == 1) {
            K.name = e.name;
            K.n = 1;
        } else if (e.strands == 0) {
            K = two_bridge_presentation(e.name, e.tb_p, e.tb_q);
        } else {
            K = braid_closure_presentation(e.name, e.braid, e.strands);
        }
        // load-time self-check against the recorded Alexander polynomial
        Ring Z = CoeffRing::integers();
        LaurentPoly expect = normalize_unit(LaurentPoly::from_ints(Z, e.alex));
        LaurentPoly got = alexander_polynomial(K);
        if (!poly_equiv(got, expect, UnitMode::SignOnly))
            throw KnotError(std::string(e.name) +
                            ": Alexander self-check failed: got " + got.str());
        return K;
    }
    throw KnotError("unknown builtin knot: " + name);
}

WirtingerPresentation knot_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    WirtingerPresentation K;
    K.name = j.at("name").get<std::string>();
    K.n = j.at("generators").get<unsigned>();
    for (const auto& rel : j.at("relators")) {
        FreeWord w;
        for (const auto& tok : rel) {
            std::string t = tok.get<std::string>();
            if (t.empty() || t[0] != 's')
                throw KnotError("bad relator token: " + t);
            std::size_t caret = t.find('^');
            int idx = std::stoi(t.substr(1, caret == std::string::npos
                                                ? std::string::npos
                                                : caret - 1));
            int exp = 1;
            if (caret != std::string::npos) exp = std::stoi(t.substr(caret + 1));
            if (idx < 1 || static_cast<unsigned>(idx) > K.n)
                throw KnotError("generator index out of range: " + t);
            if (exp != 1 && exp != -1)
                throw KnotError("only exponents +-1 supported: " + t);
            w.push_back(exp > 0 ? idx : -idx);
        }
        K.relators.push_back(std::move(w));
    }
    K.validate();
    return K;
}

}  // namespace tav
