#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tav/wada.hpp"

using namespace tav;

namespace {

LaurentPoly random_poly(const Ring& R, std::mt19937_64& rng, int span = 3) {
    LaurentPoly p(R);
    long lo = static_cast<long>(rng() % 3) - 1;
    for (long e = lo; e < lo + span; ++e)
        if (rng() % 2) {
            long c = static_cast<long>(rng() % 5) - 2;
            if (R->kind() == CoeffRing::Kind::Ext)
                p.set_coeff(e, R->decode(rng() % R->field_size()));
            else
                p.set_coeff(e, R->from_int(c));
        }
    return p;
}

PolyMat random_mat(const Ring& R, std::mt19937_64& rng, unsigned n) {
    PolyMat M(n, n, R);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) M.at(i, j) = random_poly(R, rng);
    return M;
}

}  // namespace

TEST_CASE("phi is a homomorphism on words") {
    auto K = builtin_knot("3_1");
    auto D3 = dihedral_group(3);
    auto f = find_epimorphisms(K, D3, SearchMode::First)[0];
    Ring F5 = CoeffRing::prime_field(5);
    auto reg = Representation::regular(D3, F5);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        FreeWord u, v;
        for (int i = 0; i < 4; ++i) {
            int l = static_cast<int>(rng() % K.n) + 1;
            u.push_back(rng() % 2 ? l : -l);
            l = static_cast<int>(rng() % K.n) + 1;
            v.push_back(rng() % 2 ? l : -l);
        }
        FreeWord uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        PolyMat A = phi_word(u, f, reg), B = phi_word(v, f, reg),
                C = phi_word(uv, f, reg);
        // C == A * B
        for (unsigned i = 0; i < A.rows; ++i)
            for (unsigned j = 0; j < A.cols; ++j) {
                LaurentPoly s(F5);
                for (unsigned k = 0; k < A.cols; ++k)
                    s += A.at(i, k) * B.at(k, j);
                CHECK(s == C.at(i, j));
            }
    }
}

TEST_CASE("determinant engines agree on 100 random matrices") {
    std::mt19937_64 rng(0xDE7);
    std::vector<Ring> rings{CoeffRing::integers(), CoeffRing::prime_field(5),
                            CoeffRing::ext_field(2, 2),
                            CoeffRing::cyclotomic(3)};
    int done = 0;
    while (done < 100) {
        const Ring& R = rings[done % rings.size()];
        unsigned n = 2 + rng() % 3;
        PolyMat M = random_mat(R, rng, n);
        LaurentPoly expect = poly_det_cofactor(M);
        CHECK(poly_det(M) == expect);
        CHECK(poly_det_bareiss(M) == expect);
        if (R->kind() == CoeffRing::Kind::Prime ||
            R->kind() == CoeffRing::Kind::Ext) {
            auto v = poly_det_interp(M);
            if (R->kind() == CoeffRing::Kind::Prime) REQUIRE(v.has_value());
            if (v) CHECK(*v == expect);
        }
        if (R->kind() == CoeffRing::Kind::Cyclotomic) {
            auto v = poly_det_eval(M);
            REQUIRE(v.has_value());
            CHECK(*v == expect);
        }
        if (R->kind() == CoeffRing::Kind::Integers)
            CHECK(poly_det_crt(M) == expect);
        ++done;
    }
}

TEST_CASE("unknot invariant is 1/(t-1) up to unit") {
    auto K = builtin_knot("unknot");
    auto C3 = cyclic_group(3);
    Epimorphism f(K, C3, {1});
    Ring Z = CoeffRing::integers();
    auto T = twisted_alexander(K, f, Representation::trivial(C3, Z));
    CHECK(frac_equiv(T.value,
                     RationalLaurent(LaurentPoly::constant(Z->one()),
                                     LaurentPoly::from_ints(Z, {-1, 1})),
                     UnitMode::SignOnly));
}

TEST_CASE("trivial representation recovers Alexander/(t-1)") {
    Ring Z = CoeffRing::integers();
    for (const char* nm : {"3_1", "4_1", "5_2", "6_1"}) {
        auto K = builtin_knot(nm);
        auto C1 = cyclic_group(1);
        Epimorphism f(K, C1, std::vector<unsigned>(K.n, 0u));
        auto T = twisted_alexander(K, f, Representation::trivial(C1, Z));
        RationalLaurent expect(alexander_polynomial(K),
                               LaurentPoly::from_ints(Z, {-1, 1}));
        CHECK(frac_equiv(T.value, expect, UnitMode::SignOnly));
    }
}

TEST_CASE("deleted column is immaterial on 50 random triples") {
    std::mt19937_64 rng(0xC01);
    std::vector<std::string> knots{"3_1", "4_1", "5_1", "5_2", "6_1"};
    int done = 0;
    while (done < 50) {
        auto K = builtin_knot(knots[rng() % knots.size()]);
        Group G;
        switch (rng() % 4) {
            case 0: G = cyclic_group(2 + rng() % 5); break;
            case 1: G = dihedral_group(3); break;
            case 2: G = dihedral_group(5); break;
            default: G = cyclic_group(6); break;
        }
        auto fs = find_epimorphisms(K, G, SearchMode::First);
        if (fs.empty()) continue;
        Ring R;
        switch (rng() % 3) {
            case 0: R = CoeffRing::integers(); break;
            case 1: R = CoeffRing::prime_field(7); break;
            default: R = CoeffRing::cyclotomic(4); break;
        }
        Representation rep = rng() % 2 ? Representation::regular(G, R)
                                       : Representation::coset(
                                             G, commutator_subgroup(G), R);
        UnitMode mode = R->is_field() ? UnitMode::FullUnits : UnitMode::SignOnly;
        auto T0 = twisted_alexander(K, fs[0], rep, 0u);
        for (unsigned c = 1; c < K.n; ++c) {
            auto Tc = twisted_alexander(K, fs[0], rep, c);
            CHECK(frac_equiv(T0.value, Tc.value, mode));
        }
        ++done;
    }
}

TEST_CASE("block-triangular representations factor on 50 random cases") {
    std::mt19937_64 rng(0xB10C);
    std::vector<std::string> knots{"3_1", "4_1", "5_2"};
    int done = 0;
    while (done < 50) {
        auto K = builtin_knot(knots[done % knots.size()]);
        unsigned m = 2 + rng() % 4;  // cyclic target C_m
        auto G = cyclic_group(m);
        Epimorphism f(K, G, std::vector<unsigned>(K.n, 1 % m));
        Ring R = CoeffRing::prime_field(done % 2 ? 5 : 7);
        // beta = coset rep on <x^d>\G, delta = regular
        unsigned d = 1 + rng() % m;
        while (m % d) d = 1 + rng() % m;
        std::vector<unsigned> sub;
        for (unsigned j = 0; j < m; j += d) sub.push_back(j);
        std::sort(sub.begin(), sub.end());
        auto beta = Representation::coset(G, Subgroup(G, sub), R);
        auto delta = Representation::regular(G, R);
        unsigned b = beta.dim(), dd = delta.dim();
        // conjugate beta (+) delta by a random unipotent [[I, X], [0, I]]
        Mat X(b + dd, R);  // only the top-right b x dd block is used
        for (unsigned i = 0; i < b; ++i)
            for (unsigned j = 0; j < dd; ++j)
                X.at(i, b + j) = R->from_int(static_cast<long>(rng() % 5));
        std::vector<Mat> imgs;
        for (unsigned g = 0; g < m; ++g) {
            Mat Bm = beta.matrix(g), Dm = delta.matrix(g);
            Mat M(b + dd, R);
            for (unsigned i = 0; i < b; ++i)
                for (unsigned j = 0; j < b; ++j) M.at(i, j) = Bm.at(i, j);
            for (unsigned i = 0; i < dd; ++i)
                for (unsigned j = 0; j < dd; ++j)
                    M.at(b + i, b + j) = Dm.at(i, j);
            // U M U^{-1} with U = I + X: block top-right becomes B X' - X' D
            for (unsigned i = 0; i < b; ++i)
                for (unsigned j = 0; j < dd; ++j) {
                    RingElem acc = R->zero();
                    for (unsigned k = 0; k < b; ++k)
                        acc += Bm.at(i, k) * X.at(k, b + j);
                    for (unsigned k = 0; k < dd; ++k)
                        acc -= X.at(i, b + k) * Dm.at(k, j);
                    M.at(i, b + j) = acc;
                }
            imgs.push_back(std::move(M));
        }
        auto rho = Representation::from_matrices(G, R, imgs);
        auto Tr = twisted_alexander(K, f, rho);
        auto Tb = twisted_alexander(K, f, beta);
        auto Td = twisted_alexander(K, f, delta);
        CHECK(frac_equiv(Tr.value, Tb.value * Td.value, UnitMode::FullUnits));
        ++done;
    }
}

TEST_CASE("frobenius identity on 200 random F_p polynomials") {
    std::mt19937_64 rng(0xF0B);
    int done = 0;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        Ring F = CoeffRing::prime_field(p);
        for (int i = 0; i < 50; ++i, ++done) {
            LaurentPoly a = random_poly(F, rng, 5);
            LaurentPoly sub(F);
            for (const auto& [e, c] : a.coeffs())
                sub.set_coeff(e * static_cast<long>(p), c);
            CHECK(a.pow(static_cast<unsigned long>(p)) == sub);
        }
    }
    CHECK(done == 200);
}

TEST_CASE("cyclic regular rep equals the character product over Q(zeta_m)") {
    for (unsigned m : {2u, 3u, 4u}) {
        auto K = builtin_knot("3_1");
        auto Cm = cyclic_group(m);
        Epimorphism f(K, Cm, std::vector<unsigned>(K.n, 1 % m));
        Ring Q = CoeffRing::cyclotomic(m);
        auto lhs = twisted_alexander(K, f, Representation::regular(Cm, Q));
        LaurentPoly D = convert_poly(alexander_polynomial(K), Q);
        RingElem z = Q->generator();
        LaurentPoly num = LaurentPoly::constant(Q->one()), den = num;
        for (unsigned j = 0; j < m; ++j) {
            RingElem u = z.pow(mpz_class(j));
            num *= substitute_scaled(D, u);
            den *= LaurentPoly::term(u, 1) - LaurentPoly::constant(Q->one());
        }
        CHECK(frac_equiv(lhs.value, RationalLaurent(num, den),
                         UnitMode::FullUnits));
    }
}

TEST_CASE("vanishing detection") {
    auto K = builtin_knot("3_1");
    auto D3 = dihedral_group(3);
    auto f = find_epimorphisms(K, D3, SearchMode::First)[0];
    Ring Z = CoeffRing::integers();
    auto T = twisted_alexander(K, f, Representation::regular(D3, Z));
    CHECK_FALSE(is_vanishing(T));
}
