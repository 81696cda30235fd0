#include "tav/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace tav {

namespace {

std::vector<unsigned> closure(const FiniteGroup& G, std::vector<unsigned> seed) {
    std::set<unsigned> s(seed.begin(), seed.end());
    s.insert(0);
    std::deque<unsigned> q(s.begin(), s.end());
    while (!q.empty()) {
        unsigned a = q.front();
        q.pop_front();
        std::vector<unsigned> cur(s.begin(), s.end());
        for (unsigned b : cur) {
            for (unsigned c : {G.mul(a, b), G.mul(b, a), G.inv(a)}) {
                if (s.insert(c).second) q.push_back(c);
            }
        }
    }
    return {s.begin(), s.end()};
}

}  // namespace

Group FiniteGroup::make(std::string name, unsigned order, std::vector<unsigned> mul,
                        std::vector<std::string> labels) {
    if (order == 0 || mul.size() != static_cast<std::size_t>(order) * order ||
        labels.size() != order)
        throw GroupError("make: inconsistent sizes");
    auto at = [&](unsigned a, unsigned b) { return mul[a * order + b]; };
    // locate two-sided identity
    unsigned e = order;
    for (unsigned a = 0; a < order; ++a) {
        bool ok = true;
        for (unsigned b = 0; b < order && ok; ++b)
            if (at(a, b) != b || at(b, a) != b) ok = false;
        if (ok) {
            e = a;
            break;
        }
    }
    if (e == order) throw GroupError("make: no identity element");
    if (e != 0) {
        // renumber so the identity sits at index 0
        std::vector<unsigned> sig(order);
        std::iota(sig.begin(), sig.end(), 0u);
        std::swap(sig[0], sig[e]);  // involution
        std::vector<unsigned> m2(mul.size());
        std::vector<std::string> l2(order);
        for (unsigned a = 0; a < order; ++a) {
            l2[sig[a]] = labels[a];
            for (unsigned b = 0; b < order; ++b)
                m2[sig[a] * order + sig[b]] = sig[at(a, b)];
        }
        mul = std::move(m2);
        labels = std::move(l2);
    }
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = order;
    g->name_ = std::move(name);
    g->mul_ = std::move(mul);
    g->labels_ = std::move(labels);
    // Latin-square property and inverses
    g->inv_.assign(order, order);
    for (unsigned a = 0; a < order; ++a) {
        std::vector<bool> row(order, false), col(order, false);
        for (unsigned b = 0; b < order; ++b) {
            unsigned r = g->mul(a, b), c = g->mul(b, a);
            if (row[r] || col[c]) throw GroupError("make: table not a Latin square");
            row[r] = col[c] = true;
            if (r == 0) g->inv_[a] = b;
        }
        if (g->inv_[a] == order || g->mul(g->inv_[a], a) != 0)
            throw GroupError("make: inverses inconsistent");
    }
    // associativity: exhaustive when small, Light's test on generators otherwise
    if (order <= 64) {
        for (unsigned a = 0; a < order; ++a)
            for (unsigned b = 0; b < order; ++b)
                for (unsigned c = 0; c < order; ++c)
                    if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
                        throw GroupError("make: not associative");
    } else {
        for (unsigned a : g->generating_set())
            for (unsigned x = 0; x < order; ++x)
                for (unsigned y = 0; y < order; ++y)
                    if (g->mul(g->mul(x, a), y) != g->mul(x, g->mul(a, y)))
                        throw GroupError("make: not associative (Light)");
    }
    return g;
}

std::optional<unsigned> FiniteGroup::index_of_label(const std::string& l) const {
    for (unsigned i = 0; i < n_; ++i)
        if (labels_[i] == l) return i;
    return std::nullopt;
}

unsigned FiniteGroup::element_order(unsigned a) const {
    unsigned k = 1, x = a;
    while (x != 0) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (unsigned a = 0; a < n_; ++a)
        for (unsigned b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<unsigned> FiniteGroup::generating_set() const {
    std::vector<unsigned> gens;
    std::vector<unsigned> cl{0};
    while (cl.size() < n_) {
        // greedy: element giving the largest closure growth
        unsigned best = 0;
        std::size_t best_sz = cl.size();
        std::vector<unsigned> best_cl;
        for (unsigned a = 0; a < n_; ++a) {
            if (std::binary_search(cl.begin(), cl.end(), a)) continue;
            std::vector<unsigned> trial = gens;
            trial.push_back(a);
            auto c = closure(*this, trial);
            if (c.size() > best_sz) {
                best = a;
                best_sz = c.size();
                best_cl = std::move(c);
                if (best_sz == n_) break;
            }
        }
        gens.push_back(best);
        cl = std::move(best_cl);
    }
    return gens;
}

const std::vector<std::vector<unsigned>>& FiniteGroup::conjugacy_classes() const {
    if (classes_.empty()) {
        std::vector<bool> seen(n_, false);
        for (unsigned g = 0; g < n_; ++g) {
            if (seen[g]) continue;
            std::set<unsigned> cls;
            for (unsigned x = 0; x < n_; ++x) cls.insert(conj(g, x));
            for (unsigned c : cls) seen[c] = true;
            classes_.emplace_back(cls.begin(), cls.end());
        }
    }
    return classes_;
}

// ---- Subgroup / GroupHom ----

Subgroup::Subgroup(Group parent_, std::vector<unsigned> members_)
    : parent(std::move(parent_)), members(std::move(members_)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members[0] != 0)
        throw GroupError("Subgroup: must contain identity");
    for (unsigned a : members)
        for (unsigned b : members)
            if (!std::binary_search(members.begin(), members.end(),
                                    parent->mul(a, b)))
                throw GroupError("Subgroup: not closed");
    if (parent->order() % members.size() != 0)
        throw GroupError("Subgroup: Lagrange violation");
}

bool Subgroup::contains(unsigned g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

bool Subgroup::is_normal() const {
    for (unsigned h : members)
        for (unsigned x = 0; x < parent->order(); ++x)
            if (!contains(parent->conj(h, x))) return false;
    return true;
}

GroupHom::GroupHom(Group domain_, Group codomain_, std::vector<unsigned> images_)
    : domain(std::move(domain_)), codomain(std::move(codomain_)),
      images(std::move(images_)) {
    if (images.size() != domain->order()) throw GroupError("GroupHom: size");
    for (unsigned a = 0; a < domain->order(); ++a)
        for (unsigned b = 0; b < domain->order(); ++b)
            if (images[domain->mul(a, b)] != codomain->mul(images[a], images[b]))
                throw GroupError("GroupHom: not a homomorphism");
}

bool GroupHom::is_surjective() const {
    std::set<unsigned> img(images.begin(), images.end());
    return img.size() == codomain->order();
}

Subgroup GroupHom::kernel() const {
    std::vector<unsigned> k;
    for (unsigned a = 0; a < domain->order(); ++a)
        if (images[a] == 0) k.push_back(a);
    return Subgroup(domain, std::move(k));
}

GroupHom GroupHom::identity(const Group& G) {
    std::vector<unsigned> im(G->order());
    std::iota(im.begin(), im.end(), 0u);
    return GroupHom(G, G, std::move(im));
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
    std::vector<unsigned> im(inner.domain->order());
    for (unsigned a = 0; a < im.size(); ++a) im[a] = images[inner.images[a]];
    return GroupHom(inner.domain, codomain, std::move(im));
}

// ---- constructions ----

namespace {

template <typename MulFn, typename LabelFn>
Group make_from(const std::string& name, unsigned count, MulFn mulfn,
                LabelFn labelfn) {
    std::vector<unsigned> mul(static_cast<std::size_t>(count) * count);
    std::vector<std::string> labels(count);
    for (unsigned a = 0; a < count; ++a) {
        labels[a] = labelfn(a);
        for (unsigned b = 0; b < count; ++b) mul[a * count + b] = mulfn(a, b);
    }
    return FiniteGroup::make(name, count, std::move(mul), std::move(labels));
}

std::string power_label(const std::string& sym, unsigned i) {
    if (i == 0) return "e";
    if (i == 1) return sym;
    return sym + "^" + std::to_string(i);
}

std::string ab_label(unsigned i, unsigned j) {
    // a^i b^j
    std::string s;
    if (i) s = power_label("a", i);
    if (j) {
        if (!s.empty()) s += "*";
        s += power_label("b", j);
    }
    return s.empty() ? "e" : s;
}

}  // namespace

Group cyclic_group(unsigned m) {
    if (m == 0) throw GroupError("cyclic: order 0");
    return make_from(
        "cyclic:" + std::to_string(m), m,
        [m](unsigned a, unsigned b) { return (a + b) % m; },
        [](unsigned a) { return power_label("x", a); });
}

Group dihedral_group(unsigned n) {
    if (n == 0) throw GroupError("dihedral: n = 0");
    // element a^i b^j -> index i + n*j
    auto mulfn = [n](unsigned x, unsigned y) {
        unsigned i1 = x % n, j1 = x / n, i2 = y % n, j2 = y / n;
        unsigned i = j1 ? (i1 + n - i2 % n) % n : (i1 + i2) % n;
        return i + n * ((j1 + j2) % 2);
    };
    return make_from("dihedral:" + std::to_string(n), 2 * n, mulfn,
                     [n](unsigned x) { return ab_label(x % n, x / n); });
}

Group dicyclic_group(unsigned n) {
    if (n == 0) throw GroupError("dicyclic: n = 0");
    // <a,b | a^{2n}, b^2 = a^n, b a b^-1 = a^-1>; element a^i b^j, i<2n, j<2
    unsigned N = 2 * n;
    auto mulfn = [n, N](unsigned x, unsigned y) {
        unsigned i1 = x % N, j1 = x / N, i2 = y % N, j2 = y / N;
        unsigned i = j1 ? (i1 + N - i2 % N) % N : (i1 + i2) % N;
        unsigned j = j1 + j2;
        if (j == 2) {
            i = (i + n) % N;  // b^2 = a^n
            j = 0;
        }
        return i + N * j;
    };
    return make_from("dicyclic:" + std::to_string(n), 4 * n, mulfn,
                     [N](unsigned x) { return ab_label(x % N, x / N); });
}

namespace {

std::vector<std::vector<unsigned>> all_perms(unsigned n) {
    std::vector<unsigned> p(n);
    std::iota(p.begin(), p.end(), 0u);
    std::vector<std::vector<unsigned>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

bool perm_even(const std::vector<unsigned>& p) {
    unsigned inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0;
}

Group perm_group(const std::string& name,
                 std::vector<std::vector<unsigned>> perms) {
    std::sort(perms.begin(), perms.end());
    std::map<std::vector<unsigned>, unsigned> idx;
    for (unsigned i = 0; i < perms.size(); ++i) idx[perms[i]] = i;
    unsigned N = static_cast<unsigned>(perms.size());
    auto mulfn = [&](unsigned a, unsigned b) {
        const auto& pa = perms[a];
        const auto& pb = perms[b];
        std::vector<unsigned> c(pa.size());
        for (std::size_t i = 0; i < pa.size(); ++i) c[i] = pb[pa[i]];  // a then b
        return idx.at(c);
    };
    auto labelfn = [&](unsigned a) {
        std::string s = "p";
        for (unsigned v : perms[a]) s += std::to_string(v + 1);
        return s;
    };
    return make_from(name, N, mulfn, labelfn);
}

}  // namespace

Group symmetric_group(unsigned n) {
    if (n == 0 || n > 6) throw GroupError("symmetric: n out of range");
    return perm_group("symmetric:" + std::to_string(n), all_perms(n));
}

Group alternating_group(unsigned n) {
    if (n == 0 || n > 6) throw GroupError("alternating: n out of range");
    auto ps = all_perms(n);
    std::vector<std::vector<unsigned>> evens;
    for (auto& p : ps)
        if (perm_even(p)) evens.push_back(std::move(p));
    return perm_group("alternating:" + std::to_string(n), std::move(evens));
}

Group product_group(const Group& A, const Group& B) {
    unsigned na = A->order(), nb = B->order();
    auto mulfn = [&](unsigned x, unsigned y) {
        unsigned a1 = x % na, b1 = x / na, a2 = y % na, b2 = y / na;
        return A->mul(a1, a2) + na * B->mul(b1, b2);
    };
    auto labelfn = [&](unsigned x) {
        return "(" + A->label(x % na) + "," + B->label(x / na) + ")";
    };
    return make_from("product(" + A->name() + "," + B->name() + ")", na * nb,
                     mulfn, labelfn);
}

Group semidirect_group(unsigned p, unsigned m, unsigned r) {
    if (p < 2 || m < 1) throw GroupError("semidirect: bad parameters");
    r %= p;
    if (std::gcd<unsigned>(r, p) != 1) throw GroupError("semidirect: gcd(r,p) != 1");
    // r^m == 1 mod p required
    unsigned rm = 1;
    for (unsigned i = 0; i < m; ++i) rm = (rm * r) % p;
    if (rm != 1) throw GroupError("semidirect: r^m != 1 mod p");
    // element a^i b^j -> i + p*j; b a b^-1 = a^r
    std::vector<unsigned> rpow(m);
    rpow[0] = 1;
    for (unsigned j = 1; j < m; ++j) rpow[j] = (rpow[j - 1] * r) % p;
    auto mulfn = [&](unsigned x, unsigned y) {
        unsigned i1 = x % p, j1 = x / p, i2 = y % p, j2 = y / p;
        unsigned i = (i1 + i2 * rpow[j1]) % p;
        return i + p * ((j1 + j2) % m);
    };
    return make_from("semidirect(" + std::to_string(p) + "," + std::to_string(m) +
                         "," + std::to_string(r) + ")",
                     p * m, mulfn,
                     [p](unsigned x) { return ab_label(x % p, x / p); });
}

Group semidirect_by_aut(const Group& A, unsigned m,
                        const std::vector<unsigned>& phi, const std::string& name) {
    unsigned na = A->order();
    if (phi.size() != na) throw GroupError("semidirect_by_aut: size");
    // iterate phi j times
    std::vector<std::vector<unsigned>> pj(m, std::vector<unsigned>(na));
    std::iota(pj[0].begin(), pj[0].end(), 0u);
    for (unsigned j = 1; j < m; ++j)
        for (unsigned a = 0; a < na; ++a) pj[j][a] = phi[pj[j - 1][a]];
    // phi^m must be identity
    std::vector<unsigned> pm(na);
    for (unsigned a = 0; a < na; ++a) pm[a] = phi[pj[m - 1][a]];
    for (unsigned a = 0; a < na; ++a)
        if (pm[a] != a) throw GroupError("semidirect_by_aut: phi^m != id");
    auto mulfn = [&](unsigned x, unsigned y) {
        unsigned a1 = x % na, j1 = x / na, a2 = y % na, j2 = y / na;
        return A->mul(a1, pj[j1][a2]) + na * ((j1 + j2) % m);
    };
    auto labelfn = [&](unsigned x) {
        unsigned a = x % na, j = x / na;
        std::string s;
        if (a) s = A->label(a);
        if (j) {
            if (!s.empty()) s += "*";
            s += power_label("c", j);
        }
        return s.empty() ? "e" : s;
    };
    return make_from(name, na * m, mulfn, labelfn);
}

// ---- structural operations ----

Subgroup generated_subgroup(const Group& G, const std::vector<unsigned>& gens) {
    return Subgroup(G, closure(*G, gens));
}

Subgroup normal_closure(const Group& G, const std::vector<unsigned>& S) {
    std::set<unsigned> seed;
    for (unsigned s : S)
        for (unsigned x = 0; x < G->order(); ++x) seed.insert(G->conj(s, x));
    std::vector<unsigned> v(seed.begin(), seed.end());
    // closure of a conjugation-closed set is automatically normal
    return Subgroup(G, closure(*G, v));
}

Subgroup commutator_subgroup(const Group& G) {
    std::vector<unsigned> comms;
    for (unsigned a = 0; a < G->order(); ++a)
        for (unsigned b = 0; b < G->order(); ++b)
            comms.push_back(
                G->mul(G->mul(G->inv(a), G->inv(b)), G->mul(a, b)));
    return normal_closure(G, comms);
}

Subgroup center(const Group& G) {
    std::vector<unsigned> z;
    for (unsigned a = 0; a < G->order(); ++a) {
        bool central = true;
        for (unsigned b = 0; b < G->order() && central; ++b)
            if (G->mul(a, b) != G->mul(b, a)) central = false;
        if (central) z.push_back(a);
    }
    return Subgroup(G, std::move(z));
}

std::optional<unsigned> is_p_group(unsigned order) {
    if (order < 2) return std::nullopt;
    for (unsigned p = 2; p <= order; ++p) {
        if (order % p == 0) {
            unsigned o = order;
            while (o % p == 0) o /= p;
            if (o == 1) return p;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::pair<Group, GroupHom> quotient_group(const Group& G, const Subgroup& N) {
    if (!N.is_normal()) throw GroupError("quotient: subgroup not normal");
    unsigned n = G->order();
    std::vector<unsigned> canon(n);
    for (unsigned g = 0; g < n; ++g) {
        unsigned mn = n;
        for (unsigned x : N.members) mn = std::min(mn, G->mul(x, g));
        canon[g] = mn;
    }
    std::vector<unsigned> reps;
    for (unsigned g = 0; g < n; ++g)
        if (canon[g] == g) reps.push_back(g);
    std::map<unsigned, unsigned> idx;
    for (unsigned i = 0; i < reps.size(); ++i) idx[reps[i]] = i;
    unsigned q = static_cast<unsigned>(reps.size());
    std::vector<unsigned> mul(static_cast<std::size_t>(q) * q);
    std::vector<std::string> labels(q);
    for (unsigned i = 0; i < q; ++i) {
        labels[i] = "[" + G->label(reps[i]) + "]";
        for (unsigned j = 0; j < q; ++j)
            mul[i * q + j] = idx.at(canon[G->mul(reps[i], reps[j])]);
    }
    Group Q = FiniteGroup::make(G->name() + "/N" + std::to_string(N.order()), q,
                                std::move(mul), std::move(labels));
    std::vector<unsigned> im(n);
    for (unsigned g = 0; g < n; ++g) im[g] = idx.at(canon[g]);
    return {Q, GroupHom(G, Q, std::move(im))};
}

std::pair<Group, GroupHom> abelianization(const Group& G) {
    return quotient_group(G, commutator_subgroup(G));
}

std::pair<bool, std::optional<unsigned>> weight_le_one(const Group& G) {
    if (G->order() == 1) return {true, 0u};
    for (const auto& cls : G->conjugacy_classes()) {
        unsigned g = cls[0];
        if (g == 0) continue;
        if (normal_closure(G, {g}).order() == G->order()) return {true, g};
    }
    return {false, std::nullopt};
}

bool is_tav_group(const Group& G) {
    if (!weight_le_one(G).first) return false;
    unsigned d = commutator_subgroup(G).order();
    if (d == 1) return false;  // trivial G' counts as a p-group
    return !is_p_group(d).has_value();
}

bool is_seed(const Group& G) {
    if (!weight_le_one(G).first) throw GroupError("is_seed: weight > 1");
    Subgroup Z = center(G);
    Subgroup D = commutator_subgroup(G);
    for (unsigned z : Z.members) {
        if (z == 0) continue;
        Subgroup C = generated_subgroup(G, {z});
        bool trivial_meet = true;
        for (unsigned c : C.members)
            if (c != 0 && D.contains(c)) trivial_meet = false;
        if (trivial_meet) return false;
    }
    return true;
}

PullbackExt pullback_extension(const Group& G1, unsigned k, unsigned n,
                               std::optional<unsigned> designated) {
    auto [A, ab] = abelianization(G1);
    if (!A->is_abelian()) throw GroupError("pullback: abelianization not abelian?");
    if (A->order() != k)
        throw GroupError("pullback: abelianization has order " +
                         std::to_string(A->order()) + ", expected k");
    // identify A with C_k through powers of the designated generator's class
    unsigned c;
    if (designated) {
        c = ab(*designated);
    } else {
        c = 0;
        for (unsigned a = 0; a < A->order(); ++a)
            if (A->element_order(a) == k) {
                c = a;
                break;
            }
    }
    if (A->element_order(c) != k)
        throw GroupError("pullback: abelianization not cyclic of order k (or "
                         "designated element not a generator)");
    std::vector<unsigned> cpow(k);
    cpow[0] = 0;
    for (unsigned j = 1; j < k; ++j) cpow[j] = A->mul(cpow[j - 1], c);
    unsigned kn = k * n;
    // elements: pairs (z, l) with ab(z) = c^{l mod k}
    std::vector<std::pair<unsigned, unsigned>> elems;
    for (unsigned l = 0; l < kn; ++l)
        for (unsigned z = 0; z < G1->order(); ++z)
            if (ab(z) == cpow[l % k]) elems.emplace_back(z, l);
    std::map<std::pair<unsigned, unsigned>, unsigned> idx;
    for (unsigned i = 0; i < elems.size(); ++i) idx[elems[i]] = i;
    unsigned N = static_cast<unsigned>(elems.size());
    auto mulfn = [&](unsigned x, unsigned y) {
        auto [z1, l1] = elems[x];
        auto [z2, l2] = elems[y];
        return idx.at({G1->mul(z1, z2), (l1 + l2) % kn});
    };
    auto labelfn = [&](unsigned x) {
        auto [z, l] = elems[x];
        return "(" + G1->label(z) + "," + power_label("x", l) + ")";
    };
    Group Gkn = make_from("pullback(" + G1->name() + "," + std::to_string(k) +
                              "," + std::to_string(n) + ")",
                          N, mulfn, labelfn);
    // the identity (e,0) has index 0 after renumbering only if it was first:
    // elems is ordered with l ascending and z ascending, so (0,0) is first. Good.
    std::vector<unsigned> pr_im(N), pr2_im(N);
    for (unsigned i = 0; i < N; ++i) {
        pr_im[i] = elems[i].first;
        pr2_im[i] = elems[i].second;
    }
    Group Ckn = cyclic_group(kn);
    Group Cn = cyclic_group(n);
    std::vector<unsigned> iota_im(n);
    for (unsigned j = 0; j < n; ++j) iota_im[j] = idx.at({0u, (j * k) % kn});
    PullbackExt ext{Gkn, GroupHom(Gkn, G1, std::move(pr_im)),
                    GroupHom(Gkn, Ckn, std::move(pr2_im)),
                    GroupHom(Cn, Gkn, std::move(iota_im)), k, n};
    // central-extension sanity: image of iota central and equal to ker(pr)
    Subgroup Z = center(Gkn);
    for (unsigned j = 0; j < n; ++j)
        if (!Z.contains(ext.iota(j)))
            throw GroupError("pullback: iota image not central");
    Subgroup K = ext.pr.kernel();
    if (K.order() != n) throw GroupError("pullback: kernel of pr has wrong order");
    if (!ext.pr.is_surjective() || !ext.pr2.is_surjective())
        throw GroupError("pullback: projections not surjective");
    return ext;
}

// ---- isomorphism testing ----

namespace {

struct Fingerprint {
    std::vector<unsigned> orders;       // sorted element orders
    std::vector<std::size_t> classes;   // sorted conjugacy class sizes
    bool abelian;
    unsigned derived_order, center_order;
    auto tie() const {
        return std::tie(orders, classes, abelian, derived_order, center_order);
    }
};

Fingerprint fingerprint(const Group& G) {
    Fingerprint f;
    for (unsigned a = 0; a < G->order(); ++a) f.orders.push_back(G->element_order(a));
    std::sort(f.orders.begin(), f.orders.end());
    for (const auto& c : G->conjugacy_classes()) f.classes.push_back(c.size());
    std::sort(f.classes.begin(), f.classes.end());
    f.abelian = G->is_abelian();
    f.derived_order = commutator_subgroup(G).order();
    f.center_order = center(G).order();
    return f;
}

// extend partial map phi (defined on closed subset dom) with g -> h;
// returns false on conflict. phi uses -1 for undefined.
bool hom_extend(const Group& A, const Group& B, std::vector<int>& phi,
                std::vector<unsigned>& dom, unsigned g, unsigned h) {
    if (phi[g] != -1) return phi[g] == static_cast<int>(h);
    phi[g] = static_cast<int>(h);
    dom.push_back(g);
    std::deque<unsigned> work{g};
    while (!work.empty()) {
        unsigned x = work.front();
        work.pop_front();
        for (std::size_t i = 0; i < dom.size(); ++i) {
            unsigned d = dom[i];
            for (auto [u, v] : {std::pair{x, d}, std::pair{d, x}}) {
                unsigned ab = A->mul(u, v);
                unsigned im = B->mul(static_cast<unsigned>(phi[u]),
                                     static_cast<unsigned>(phi[v]));
                if (phi[ab] == -1) {
                    phi[ab] = static_cast<int>(im);
                    dom.push_back(ab);
                    work.push_back(ab);
                } else if (phi[ab] != static_cast<int>(im)) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool iso_search(const Group& A, const Group& B,
                const std::vector<unsigned>& gens, std::size_t gi,
                std::vector<int> phi, std::vector<unsigned> dom) {
    if (gi == gens.size()) {
        if (dom.size() != A->order()) return false;  // should not happen
        std::set<int> img(phi.begin(), phi.end());
        return img.size() == A->order();
    }
    unsigned g = gens[gi];
    unsigned og = A->element_order(g);
    for (unsigned h = 0; h < B->order(); ++h) {
        if (B->element_order(h) != og) continue;
        std::vector<int> phi2 = phi;
        std::vector<unsigned> dom2 = dom;
        if (!hom_extend(A, B, phi2, dom2, g, h)) continue;
        // injectivity so far
        std::set<int> img;
        bool dup = false;
        for (unsigned d : dom2) {
            if (!img.insert(phi2[d]).second) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        if (iso_search(A, B, gens, gi + 1, std::move(phi2), std::move(dom2)))
            return true;
    }
    return false;
}

}  // namespace

bool isomorphic(const Group& A, const Group& B) {
    if (A->order() != B->order()) return false;
    if (fingerprint(A).tie() != fingerprint(B).tie()) return false;
    auto gens = A->generating_set();
    std::vector<int> phi(A->order(), -1);
    std::vector<unsigned> dom;
    phi[0] = 0;
    dom.push_back(0);
    return iso_search(A, B, gens, 0, std::move(phi), std::move(dom));
}

// ---- GroupSpec DSL parser ----

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    unsigned cap;

    explicit Parser(const std::string& str, unsigned cap_) : s(str), cap(cap_) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw GroupError(std::string("GroupSpec: expected '") + c + "' at " +
                             std::to_string(pos));
    }
    unsigned number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (start == pos) throw GroupError("GroupSpec: expected number");
        return static_cast<unsigned>(std::stoul(s.substr(start, pos - start)));
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
    std::string label_until(char stop) {
        skip_ws();
        std::size_t start = pos;
        int depth = 0;
        while (pos < s.size() && (depth > 0 || s[pos] != stop)) {
            if (s[pos] == '(') ++depth;
            if (s[pos] == ')') --depth;
            ++pos;
        }
        std::string out = s.substr(start, pos - start);
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
            out.pop_back();
        return out;
    }

    Group parse() {
        std::string head = word();
        Group g;
        if (head == "cyclic" || head == "dihedral" || head == "dicyclic" ||
            head == "symmetric" || head == "alternating") {
            expect(':');
            unsigned m = number();
            if (head == "cyclic") g = cyclic_group(m);
            else if (head == "dihedral") g = dihedral_group(m);
            else if (head == "dicyclic") g = dicyclic_group(m);
            else if (head == "symmetric") g = symmetric_group(m);
            else g = alternating_group(m);
        } else if (head == "product") {
            expect('(');
            Group a = parse();
            expect(',');
            Group b = parse();
            expect(')');
            g = product_group(a, b);
        } else if (head == "semidirect") {
            expect('(');
            unsigned p = number();
            expect(',');
            unsigned m = number();
            expect(',');
            unsigned r = number();
            expect(')');
            g = semidirect_group(p, m, r);
        } else if (head == "quotient") {
            expect('(');
            Group a = parse();
            expect(',');
            std::string lab = label_until(')');
            expect(')');
            auto z = a->index_of_label(lab);
            if (!z) throw GroupError("GroupSpec: unknown element label '" + lab + "'");
            Subgroup C = generated_subgroup(a, {*z});
            Subgroup Z = center(a);
            for (unsigned c : C.members)
                if (!Z.contains(c))
                    throw GroupError("GroupSpec: quotient element not central");
            g = quotient_group(a, C).first;
        } else if (head == "pullback") {
            expect('(');
            Group a = parse();
            expect(',');
            unsigned k = number();
            expect(',');
            unsigned n = number();
            expect(')');
            g = pullback_extension(a, k, n).Gkn;
        } else {
            throw GroupError("GroupSpec: unknown construction '" + head + "'");
        }
        if (g->order() > cap)
            throw GroupError("GroupSpec: order " + std::to_string(g->order()) +
                             " exceeds cap " + std::to_string(cap));
        return g;
    }
};

}  // namespace

Group build_group(const std::string& spec, unsigned order_cap) {
    Parser p(spec, order_cap);
    Group g = p.parse();
    p.skip_ws();
    if (p.pos != spec.size())
        throw GroupError("GroupSpec: trailing input at " + std::to_string(p.pos));
    return g;
}

// ---- catalog ----

std::vector<Group> catalog_groups(unsigned max_order) {
    if (max_order > 23)
        throw GroupError("catalog_groups: completeness guaranteed only up to 23");
    std::vector<std::string> specs;
    for (unsigned m = 1; m <= 23; ++m) specs.push_back("cyclic:" + std::to_string(m));
    auto add = [&](std::string s) { specs.push_back(std::move(s)); };
    add("product(cyclic:2,cyclic:2)");                          // 4
    add("dihedral:3");                                          // 6
    add("product(cyclic:4,cyclic:2)");                          // 8
    add("product(cyclic:2,product(cyclic:2,cyclic:2))");        // 8
    add("dihedral:4");                                          // 8
    add("dicyclic:2");                                          // 8 (Q8)
    add("product(cyclic:3,cyclic:3)");                          // 9
    add("dihedral:5");                                          // 10
    add("product(cyclic:2,cyclic:6)");                          // 12
    add("dihedral:6");                                          // 12
    add("alternating:4");                                       // 12
    add("dicyclic:3");                                          // 12
    add("dihedral:7");                                          // 14
    add("product(cyclic:4,cyclic:4)");                          // 16
    add("product(cyclic:8,cyclic:2)");                          // 16
    add("product(cyclic:4,product(cyclic:2,cyclic:2))");        // 16
    add("product(cyclic:2,product(cyclic:2,product(cyclic:2,cyclic:2)))");  // 16
    add("dihedral:8");                                          // 16
    add("dicyclic:4");                                          // 16 (Q16)
    add("semidirect(8,2,3)");                                   // 16 (SD16)
    add("semidirect(8,2,5)");                                   // 16 (M16)
    add("product(dihedral:4,cyclic:2)");                        // 16
    add("product(dicyclic:2,cyclic:2)");                        // 16 (Q8xC2)
    add("semidirect(4,4,3)");                                   // 16 (C4:C4)
    add("quotient(product(dicyclic:2,cyclic:4),(a^2,x^2))");    // 16 (C4oD4)
    add("dihedral:9");                                          // 18
    add("product(cyclic:3,cyclic:6)");                          // 18
    add("product(cyclic:3,dihedral:3)");                        // 18
    add("dihedral:10");                                         // 20
    add("dicyclic:5");                                          // 20
    add("semidirect(5,4,2)");                                   // 20 (C5:C4)
    add("product(cyclic:2,cyclic:10)");                         // 20
    add("semidirect(7,3,2)");                                   // 21 (C7:C3)
    add("dihedral:11");                                         // 22

    std::vector<Group> out;
    for (const auto& s : specs) {
        Group g = build_group(s);
        if (g->order() <= max_order) out.push_back(g);
    }
    // (C2 x C2) x| C4 with the swap action (not expressible in the DSL grammar)
    if (max_order >= 16) {
        Group V = build_group("product(cyclic:2,cyclic:2)");
        // swap the two C2 factors: index a + 2*b -> b + 2*a
        std::vector<unsigned> swp{0, 2, 1, 3};
        out.push_back(semidirect_by_aut(V, 4, swp, "swap16"));
    }
    // (C3 x C3) x| C2 by inversion (C3 x| D3, generalized dihedral)
    if (max_order >= 18) {
        Group T = build_group("product(cyclic:3,cyclic:3)");
        std::vector<unsigned> invp(9);
        for (unsigned x = 0; x < 9; ++x) invp[x] = T->inv(x);
        out.push_back(semidirect_by_aut(T, 2, invp, "C3:D3"));
    }
    // dedup up to isomorphism (arbiter for the construction list)
    std::vector<Group> dedup;
    for (const auto& g : out) {
        bool dup = false;
        for (const auto& h : dedup)
            if (isomorphic(g, h)) {
                dup = true;
                break;
            }
        if (!dup) dedup.push_back(g);
    }
    std::stable_sort(dedup.begin(), dedup.end(),
                     [](const Group& a, const Group& b) {
                         return a->order() < b->order();
                     });
    return dedup;
}

}  // namespace tav
