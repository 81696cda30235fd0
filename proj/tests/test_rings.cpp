#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tav/rings.hpp"

using namespace tav;

TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(1073741789));  // largest prime below 2^30
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));   // Carmichael
    CHECK_FALSE(is_prime_u64(6601));  // Carmichael
    CHECK_FALSE(is_prime_u64(1 << 20));
}

TEST_CASE("integers ring basics") {
    Ring Z = CoeffRing::integers();
    CHECK(Z->kind() == CoeffRing::Kind::Integers);
    CHECK_FALSE(Z->is_field());
    RingElem a = Z->from_int(-7), b = Z->from_int(5);
    CHECK((a * b).str() == "-35");
    CHECK((a + b) == Z->from_int(-2));
    CHECK(Z->from_int(1).is_unit());
    CHECK(Z->from_int(-1).is_unit());
    CHECK_FALSE(Z->from_int(2).is_unit());
    CHECK(Z->from_mpz(mpz_class("123456789012345678901234567890")) *
              Z->from_int(0) ==
          Z->zero());
}

TEST_CASE("ring interning") {
    CHECK(same_ring(CoeffRing::prime_field(7), CoeffRing::prime_field(7)));
    CHECK_FALSE(same_ring(CoeffRing::prime_field(7), CoeffRing::prime_field(5)));
    CHECK(same_ring(CoeffRing::cyclotomic(12), CoeffRing::cyclotomic(12)));
    CHECK(same_ring(CoeffRing::ext_field(2, 3), CoeffRing::ext_field(2, 3)));
}

TEST_CASE("prime field matches integer arithmetic") {
    Ring F = CoeffRing::prime_field(10007);
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
        long x = static_cast<long>(rng() % 20001) - 10000;
        long y = static_cast<long>(rng() % 20001) - 10000;
        mpz_class m = (mpz_class(x) * y) % 10007;
        if (m < 0) m += 10007;
        CHECK(F->from_int(x) * F->from_int(y) == F->from_mpz(m));
        mpz_class s = (mpz_class(x) + y) % 10007;
        if (s < 0) s += 10007;
        CHECK(F->from_int(x) + F->from_int(y) == F->from_mpz(s));
    }
    // Fermat inverses
    for (long x = 1; x < 50; ++x) {
        RingElem e = F->from_int(x);
        CHECK((e * e.inverse()).is_one());
    }
}

TEST_CASE("small extension fields satisfy field axioms exhaustively") {
    for (auto [p, d] : std::vector<std::pair<std::uint64_t, unsigned>>{
             {2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
        Ring F = CoeffRing::ext_field(p, d);
        std::uint64_t q = F->field_size();
        REQUIRE(q <= 25);
        std::vector<RingElem> els;
        for (std::uint64_t c = 0; c < q; ++c) {
            els.push_back(F->decode(c));
            CHECK(F->encode(els.back()) == c);  // roundtrip
        }
        for (std::uint64_t a = 0; a < q; ++a) {
            if (a) CHECK((els[a] * els[a].inverse()).is_one());
            for (std::uint64_t b = 0; b < q; ++b) {
                // code-table ops agree with element ops
                CHECK(F->encode(els[a] * els[b]) == F->mul_code(a, b));
                CHECK(F->encode(els[a] + els[b]) == F->add_code(a, b));
                CHECK(F->encode(els[a] - els[b]) == F->sub_code(a, b));
                for (std::uint64_t c = 0; c < q; ++c)  // distributivity
                    CHECK(els[a] * (els[b] + els[c]) ==
                          els[a] * els[b] + els[a] * els[c]);
            }
        }
        // multiplicative group has an element of full order q-1
        bool found = false;
        for (std::uint64_t a = 1; a < q; ++a)
            if (F->element_order(els[a]) == q - 1) found = true;
        CHECK(found);
    }
}

TEST_CASE("frobenius is additive in F_{p^d}") {
    Ring F = CoeffRing::ext_field(3, 3);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        RingElem a = F->decode(rng() % F->field_size());
        RingElem b = F->decode(rng() % F->field_size());
        CHECK((a + b).pow(3) == a.pow(3) + b.pow(3));
    }
}

TEST_CASE("cyclotomic fields") {
    // degrees phi(m)
    std::vector<unsigned> phi{0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
    for (unsigned m = 1; m <= 12; ++m) {
        Ring Q = CoeffRing::cyclotomic(m);
        CHECK(Q->cyc_modulus().size() == phi[m] + 1);
        RingElem z = Q->generator();
        CHECK(z.pow(m).is_one());
        if (m > 1) {
            // primitive: z^(m/q) != 1 for prime divisors q
            for (unsigned q = 2; q <= m; ++q)
                if (m % q == 0 && is_prime_u64(q)) CHECK_FALSE(z.pow(m / q).is_one());
        }
    }
    // zeta_4^2 = -1, zeta_3^2 + zeta_3 + 1 = 0
    Ring Q4 = CoeffRing::cyclotomic(4);
    CHECK(Q4->generator() * Q4->generator() == Q4->from_int(-1));
    Ring Q3 = CoeffRing::cyclotomic(3);
    RingElem z3 = Q3->generator();
    CHECK((z3 * z3 + z3 + Q3->one()).is_zero());
    // rational arithmetic through Q(zeta_1) = Q
    Ring Q1 = CoeffRing::cyclotomic(1);
    RingElem half = Q1->from_mpq(mpq_class(1, 2));
    CHECK(half + half == Q1->one());
    CHECK((half * Q1->from_int(2)).is_one());
}

TEST_CASE("cyclotomic inverses on random elements") {
    for (unsigned m : {3u, 4u, 5u, 8u, 12u}) {
        Ring Q = CoeffRing::cyclotomic(m);
        std::mt19937_64 rng(m);
        for (int i = 0; i < 30; ++i) {
            RingElem a = Q->zero();
            RingElem z = Q->one();
            for (unsigned j = 0; j + 1 < Q->cyc_modulus().size(); ++j) {
                a += Q->from_int(static_cast<long>(rng() % 11) - 5) * z;
                z *= Q->generator();
            }
            if (a.is_zero()) continue;
            CHECK((a * a.inverse()).is_one());
        }
    }
}

TEST_CASE("build_ext_field finds primitive roots") {
    {
        auto [F, z] = build_ext_field(2, 3);  // F_4
        CHECK(F->field_size() == 4);
        CHECK(F->element_order(z) == 3);
    }
    {
        auto [F, z] = build_ext_field(3, 2);  // -1 in F_3
        CHECK(F->field_size() == 3);
        CHECK(z == F->from_int(2));
    }
    {
        auto [F, z] = build_ext_field(3, 4);  // F_9, zeta_4
        CHECK(F->field_size() == 9);
        CHECK(F->element_order(z) == 4);
    }
    {
        auto [F, z] = build_ext_field(2, 7);  // d = ord_7(2) = 3
        CHECK(F->field_size() == 8);
        CHECK(F->element_order(z) == 7);
    }
    CHECK_THROWS_AS(build_ext_field(4, 3), RingError);   // p not prime
    CHECK_THROWS_AS(build_ext_field(3, 6), RingError);   // gcd != 1
}

TEST_CASE("convert_elem embeddings") {
    Ring Z = CoeffRing::integers();
    Ring F5 = CoeffRing::prime_field(5);
    Ring F25 = CoeffRing::ext_field(5, 2);
    Ring Q3 = CoeffRing::cyclotomic(3);
    CHECK(convert_elem(Z->from_int(7), F5) == F5->from_int(2));
    CHECK(convert_elem(Z->from_int(-1), Q3) == Q3->from_int(-1));
    // F_5 -> F_25 respects arithmetic
    for (long a = 0; a < 5; ++a)
        for (long b = 0; b < 5; ++b)
            CHECK(convert_elem(F5->from_int(a), F25) *
                      convert_elem(F5->from_int(b), F25) ==
                  convert_elem(F5->from_int(a * b), F25));
    CHECK_THROWS(convert_elem(F5->from_int(1), CoeffRing::prime_field(7)));
}

TEST_CASE("element_order divides group order") {
    Ring F = CoeffRing::ext_field(2, 4);  // F_16
    for (std::uint64_t c = 1; c < 16; ++c) {
        std::uint64_t o = F->element_order(F->decode(c));
        CHECK(15 % o == 0);
        CHECK(F->decode(c).pow(o).is_one());
    }
}
