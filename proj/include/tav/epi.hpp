#pragma once

#include "tav/group.hpp"
#include "tav/knots.hpp"

namespace tav {

/// Verified surjection G(K) ->> G with all generator images conjugate
/// (meridians are conjugate in a knot group).
struct Epimorphism {
    WirtingerPresentation source;
    Group target;
    std::vector<unsigned> images;  // per generator

    Epimorphism(WirtingerPresentation source, Group target,
                std::vector<unsigned> images);

    unsigned operator()(unsigned gen) const { return images[gen]; }
    unsigned eval(const FreeWord& w) const;
};

unsigned eval_word(const Group& G, const FreeWord& w,
                   const std::vector<unsigned>& images);

enum class SearchMode { First, All };

/// Backtracking search: s_1 ranges over conjugacy-class representatives whose
/// normal closure is G, the remaining generators over that class; relators are
/// checked as soon as their generators are assigned; surjectivity last.
/// modulo_inner collapses orbits under conjugation by G.
std::vector<Epimorphism> find_epimorphisms(const WirtingerPresentation& K,
                                           const Group& G,
                                           SearchMode mode = SearchMode::All,
                                           bool modulo_inner = false);

/// Canonical lift f_n(s_i) = (f1(s_i), x) through a pullback extension
/// built with designated generator f1(s_1); verified surjective with
/// pr o f_n = f1.
Epimorphism lift_epimorphism(const Epimorphism& f1, const PullbackExt& ext);

}  // namespace tav
