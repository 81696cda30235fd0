#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "tav/group.hpp"

using namespace tav;

// Number of groups of each order up to isomorphism (classical counts).
static const std::map<unsigned, unsigned> kGroupCounts{
    {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},
    {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14},
    {17, 1}, {18, 5}, {19, 1}, {20, 5}, {21, 2}, {22, 2}, {23, 1}};

TEST_CASE("catalog matches the classical group counts below 24") {
    auto groups = catalog_groups(23);
    CHECK(groups.size() == 59);
    std::map<unsigned, unsigned> by_order;
    for (const auto& G : groups) {
        CHECK(G->order() <= 23);
        ++by_order[G->order()];
    }
    for (const auto& [o, c] : kGroupCounts) CHECK(by_order[o] == c);
    // sorted by order
    for (std::size_t i = 1; i < groups.size(); ++i)
        CHECK(groups[i - 1]->order() <= groups[i]->order());
}

TEST_CASE("catalog entries are pairwise non-isomorphic") {
    auto groups = catalog_groups(23);
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            if (groups[i]->order() == groups[j]->order())
                CHECK_FALSE(isomorphic(groups[i], groups[j]));
}

TEST_CASE("exactly 35 catalog groups have weight one") {
    auto groups = catalog_groups(23);
    unsigned w1 = 0;
    for (const auto& G : groups)
        if (weight_le_one(G).first) ++w1;
    CHECK(w1 == 35);
}

TEST_CASE("every weight-one group below 24 has p-group commutator") {
    for (const auto& G : catalog_groups(23)) {
        if (!weight_le_one(G).first) continue;
        unsigned d = commutator_subgroup(G).order();
        CHECK((d == 1 || is_p_group(d).has_value()));
        CHECK_FALSE(is_tav_group(G));
    }
}

TEST_CASE("catalog prefixes agree") {
    CHECK(catalog_groups(1).size() == 1);
    CHECK(catalog_groups(8).size() == 14);   // 1+1+1+2+1+2+1+5
    CHECK(catalog_groups(16).size() == 42);  // ... +2+2+1+5+1+2+1+14
}

TEST_CASE("specific groups are present") {
    auto groups = catalog_groups(23);
    auto contains = [&](const Group& H) {
        for (const auto& G : groups)
            if (G->order() == H->order() && isomorphic(G, H)) return true;
        return false;
    };
    CHECK(contains(dicyclic_group(3)));
    CHECK(contains(alternating_group(4)));
    CHECK(contains(build_group("semidirect(7,3,2)")));        // C7 x| C3
    CHECK(contains(build_group("semidirect(5,4,2)")));        // F20
    CHECK(contains(dihedral_group(9)));
    CHECK(contains(build_group("product(cyclic:3,dihedral:3)")));
    // (C3 x C3) x| C2 by inversion: order 18, derived subgroup C3 x C3
    bool found_c3d3 = false;
    for (const auto& G : groups) {
        if (G->order() != 18) continue;
        Subgroup d = commutator_subgroup(G);
        if (d.order() == 9 && !isomorphic(G, dihedral_group(9)) &&
            G->element_order(d.members[1]) == 3)
            found_c3d3 = true;
    }
    CHECK(found_c3d3);
}
