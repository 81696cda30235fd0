#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tav/epi.hpp"

using namespace tav;

TEST_CASE("eval_word") {
    auto C6 = cyclic_group(6);
    std::vector<unsigned> images{2, 3};
    CHECK(eval_word(C6, {1, 2}, images) == 5);
    CHECK(eval_word(C6, {1, -2}, images) == 5);  // 2 - 3 mod 6
    CHECK(eval_word(C6, {-1, -1, -1}, images) == 0);
    CHECK(eval_word(C6, {}, images) == 0);
}

TEST_CASE("epimorphism constructor verifies everything") {
    auto K = builtin_knot("3_1");
    auto D3 = dihedral_group(3);
    std::vector<unsigned> refl;
    for (unsigned g = 1; g < 6; ++g)
        if (D3->element_order(g) == 2) refl.push_back(g);
    REQUIRE(refl.size() == 3);
    // proper 3-coloring of the trefoil
    CHECK_NOTHROW(Epimorphism(K, D3, {refl[0], refl[1], refl[2]}));
    // constant assignment: not surjective
    CHECK_THROWS_AS(Epimorphism(K, D3, {refl[0], refl[0], refl[0]}),
                    GroupError);
    // rotation images: relators fail or images not conjugate
    CHECK_THROWS(Epimorphism(K, D3, {1, 2, 1}));
    CHECK_THROWS(Epimorphism(K, D3, std::vector<unsigned>{refl[0], refl[1]}));
}

TEST_CASE("search results for dihedral targets") {
    auto K3 = builtin_knot("3_1");
    auto K4 = builtin_knot("4_1");
    auto D3 = dihedral_group(3);
    auto D5 = dihedral_group(5);
    // det(3_1) = 3: with s1 pinned to the class representative there are two
    // proper 3-colorings (6 labelled ones = 2 x class size 3); one orbit
    auto all = find_epimorphisms(K3, D3, SearchMode::All);
    CHECK(all.size() == 2);
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(all[i].images[0] == all[0].images[0]);  // s1 normalized
    auto inner = find_epimorphisms(K3, D3, SearchMode::All, true);
    CHECK(inner.size() == 1);
    // det(4_1) = 5, no 3-colorings
    CHECK(find_epimorphisms(K4, D3, SearchMode::All).empty());
    CHECK_FALSE(find_epimorphisms(K4, D5, SearchMode::All).empty());
    // First mode returns exactly one
    CHECK(find_epimorphisms(K3, D3, SearchMode::First).size() == 1);
    // every returned map is a checked Epimorphism with meridian images
    for (const auto& f : all) {
        for (const auto& r : K3.relators) CHECK(f.eval(r) == 0);
        CHECK(generated_subgroup(D3, f.images).order() == 6);
    }
}

TEST_CASE("search against abelian and trivial targets") {
    auto K = builtin_knot("4_1");
    // abelianization: all generators to the same generator of C_m
    auto C5 = cyclic_group(5);
    auto fs = find_epimorphisms(K, C5, SearchMode::All, true);
    REQUIRE(!fs.empty());
    for (const auto& f : fs)
        for (unsigned i = 1; i < K.n; ++i) CHECK(f.images[i] == f.images[0]);
    auto C1 = cyclic_group(1);
    CHECK(find_epimorphisms(K, C1, SearchMode::All).size() == 1);
    // no epimorphism onto a non-weight-one group
    CHECK(find_epimorphisms(K, build_group("product(cyclic:2,cyclic:2)"),
                            SearchMode::All)
              .empty());
}

TEST_CASE("modulo-inner orbits partition the full list") {
    auto K = builtin_knot("4_1");
    auto D5 = dihedral_group(5);
    auto all = find_epimorphisms(K, D5, SearchMode::All);
    auto orbits = find_epimorphisms(K, D5, SearchMode::All, true);
    REQUIRE(!orbits.empty());
    // the inner-automorphism orbits of the representatives cover every
    // labelled epimorphism: |labelled| = |s1-normalized| x (class size)
    std::set<std::vector<unsigned>> labelled;
    for (const auto& f : orbits)
        for (unsigned x = 0; x < D5->order(); ++x) {
            std::vector<unsigned> c(f.images.size());
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] = D5->conj(f.images[i], x);
            labelled.insert(c);
        }
    std::set<unsigned> cls;
    for (unsigned x = 0; x < D5->order(); ++x)
        cls.insert(D5->conj(all[0].images[0], x));
    CHECK(labelled.size() == all.size() * cls.size());
    // each s1-normalized assignment appears among the labelled ones
    for (const auto& f : all) CHECK(labelled.count(f.images) == 1);
}

TEST_CASE("lifting through a pullback extension") {
    auto K = builtin_knot("3_1");
    auto D3 = dihedral_group(3);
    auto f1 = find_epimorphisms(K, D3, SearchMode::First)[0];
    for (unsigned n : {2u, 3u}) {
        auto ext = pullback_extension(D3, 2, n, f1.images[0]);
        auto fn = lift_epimorphism(f1, ext);
        CHECK(fn.target->order() == 6 * n);
        for (std::size_t i = 0; i < fn.images.size(); ++i) {
            CHECK(ext.pr(fn.images[i]) == f1.images[i]);
            CHECK(ext.pr2(fn.images[i]) == 1);  // second coordinate is x
        }
        // the lift is itself verified surjective by construction
        CHECK(generated_subgroup(fn.target, fn.images).order() ==
              fn.target->order());
    }
}
