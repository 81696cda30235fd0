#include "tav/epi.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tav {

unsigned eval_word(const Group& G, const FreeWord& w,
                   const std::vector<unsigned>& images) {
    unsigned r = 0;
    for (int x : w) {
        unsigned g = images[static_cast<unsigned>(std::abs(x)) - 1];
        r = G->mul(r, x > 0 ? g : G->inv(g));
    }
    return r;
}

Epimorphism::Epimorphism(WirtingerPresentation source_, Group target_,
                         std::vector<unsigned> images_)
    : source(std::move(source_)), target(std::move(target_)),
      images(std::move(images_)) {
    source.validate();
    if (images.size() != source.n) throw GroupError("Epimorphism: image count");
    for (const auto& r : source.relators)
        if (eval_word(target, r, images) != 0)
            throw GroupError("Epimorphism: relator not satisfied");
    if (generated_subgroup(target, images).order() != target->order())
        throw GroupError("Epimorphism: not surjective");
    // all images conjugate
    std::set<unsigned> cls;
    for (unsigned x = 0; x < target->order(); ++x)
        cls.insert(target->conj(images[0], x));
    for (unsigned im : images)
        if (!cls.count(im))
            throw GroupError("Epimorphism: images not in one conjugacy class");
}

unsigned Epimorphism::eval(const FreeWord& w) const {
    return eval_word(target, w, images);
}

namespace {

std::vector<unsigned> inner_canonical(const Group& G,
                                      const std::vector<unsigned>& images) {
    std::vector<unsigned> best;
    for (unsigned x = 0; x < G->order(); ++x) {
        std::vector<unsigned> c(images.size());
        for (std::size_t i = 0; i < images.size(); ++i) c[i] = G->conj(images[i], x);
        if (best.empty() || c < best) best = std::move(c);
    }
    return best;
}

}  // namespace

std::vector<Epimorphism> find_epimorphisms(const WirtingerPresentation& K,
                                           const Group& G, SearchMode mode,
                                           bool modulo_inner) {
    K.validate();
    std::vector<Epimorphism> out;
    if (G->order() == 1) {
        out.emplace_back(K, G, std::vector<unsigned>(K.n, 0u));
        return out;
    }
    // relators checkable once generators 1..maxgen are assigned
    std::vector<std::vector<const FreeWord*>> by_maxgen(K.n + 1);
    for (const auto& r : K.relators) {
        unsigned mx = 0;
        for (int x : r) mx = std::max(mx, static_cast<unsigned>(std::abs(x)));
        by_maxgen[mx].push_back(&r);
    }
    std::set<std::vector<unsigned>> seen_canon;
    std::vector<unsigned> images(K.n, 0);
    bool stop = false;

    auto leaf = [&](const std::vector<unsigned>& ims) {
        if (generated_subgroup(G, ims).order() != G->order()) return;
        if (modulo_inner) {
            auto canon = inner_canonical(G, ims);
            if (!seen_canon.insert(canon).second) return;
        }
        out.emplace_back(K, G, ims);
        if (mode == SearchMode::First) stop = true;
    };

    std::function<void(unsigned, const std::vector<unsigned>&)> rec =
        [&](unsigned gi, const std::vector<unsigned>& cls) {
            if (stop) return;
            if (gi == K.n) {
                leaf(images);
                return;
            }
            for (unsigned cand : cls) {
                images[gi] = cand;
                bool ok = true;
                for (const FreeWord* r : by_maxgen[gi + 1])
                    if (eval_word(G, *r, images) != 0) {
                        ok = false;
                        break;
                    }
                if (ok) rec(gi + 1, cls);
                if (stop) return;
            }
        };

    for (const auto& cls : G->conjugacy_classes()) {
        unsigned rep = cls[0];
        if (rep == 0) continue;
        if (normal_closure(G, {rep}).order() != G->order()) continue;
        images[0] = rep;
        bool ok = true;
        for (const FreeWord* r : by_maxgen[1])
            if (eval_word(G, *r, images) != 0) ok = false;
        if (!ok) continue;
        if (K.n == 1) {
            leaf(images);
        } else {
            std::vector<unsigned> full_cls = cls;  // sorted member list
            rec(1, full_cls);
        }
        if (stop) break;
    }
    return out;
}

Epimorphism lift_epimorphism(const Epimorphism& f1, const PullbackExt& ext) {
    const Group& G1 = f1.target;
    const Group& Gkn = ext.Gkn;
    // locate (z, l) in G_{k,n} through the two projections
    auto pair_index = [&](unsigned z, unsigned l) {
        for (unsigned g = 0; g < Gkn->order(); ++g)
            if (ext.pr(g) == z && ext.pr2(g) == l) return g;
        throw GroupError("lift: pair not present in pullback");
    };
    std::vector<unsigned> images(f1.images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        images[i] = pair_index(f1.images[i], 1 % (ext.k * ext.n));
    Epimorphism fn(f1.source, Gkn, images);  // re-verified by constructor
    for (std::size_t i = 0; i < images.size(); ++i)
        if (ext.pr(fn.images[i]) != f1.images[i])
            throw GroupError("lift: pr o f_n != f1");
    (void)G1;
    return fn;
}

}  // namespace tav
