#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffhyp/chars.hpp"

using namespace ffh;

TEST_CASE("multiplicative character evaluation") {
    auto k = FqField::make(5, 1);
    MultChar eps = trivial_char(k);
    for (uint64_t x = 1; x < 5; ++x) CHECK(eval_mult(eps, x) == CycloNumber(1L));
    for (uint64_t e = 0; e < 4; ++e) CHECK(eval_mult(gen_char(k, e), 0).is_zero());
    // quadratic character at 4 = g^2 over F_5 (g = 2)
    MultChar phi2 = char_of_exact_order(k, 2);
    CHECK(eval_mult(phi2, 4) == CycloNumber(1L));
    CHECK(eval_mult(phi2, 2) == CycloNumber(-1L));
}

TEST_CASE("delta indicator") {
    auto k = FqField::make(7, 1);
    CHECK(delta(trivial_char(k)) == 1);
    CHECK(delta(gen_char(k, 1)) == 0);
    for (long e = 0; e < 6; ++e) {
        MultChar chi = gen_char(k, e);
        CHECK(delta(chi * chi.inverse()) == 1);
    }
}

TEST_CASE("characters of exact order") {
    for (uint32_t q : {5u, 7u, 13u}) {
        auto k = FqField::make(q, 1);
        for (uint64_t d = 1; d <= q - 1; ++d) {
            if ((q - 1) % d != 0) continue;
            CHECK(char_of_exact_order(k, d).order() == d);
        }
    }
    CHECK_THROWS(char_of_exact_order(FqField::make(7, 1), 4));
    CHECK(char_of_exact_order(FqField::make(5, 1), 1).is_trivial());
}

TEST_CASE("orthogonality") {
    auto k = FqField::make(3, 2);
    for (uint64_t e = 0; e < 8; ++e) {
        MultChar chi = gen_char(k, static_cast<long>(e));
        CycloNumber s;
        for (uint64_t x = 1; x < 9; ++x) s += eval_mult(chi, x);
        if (e == 0)
            CHECK(s == CycloNumber(8L));
        else
            CHECK(s.is_zero());
    }
}

TEST_CASE("d-th power counting identity") {
    // sum_{i<d} phi_d^i(t) = d if t is a nonzero d-th power, else 0
    auto k = FqField::make(13, 1);
    for (uint64_t d : {2ull, 3ull, 4ull, 6ull}) {
        MultChar phid = char_of_exact_order(k, d);
        for (uint64_t t = 1; t < 13; ++t) {
            CycloNumber s;
            for (uint64_t i = 0; i < d; ++i) s += eval_mult(phid.pow(static_cast<long>(i)), t);
            bool is_power = k->dlog(t) % d == 0;
            CHECK(s == CycloNumber(is_power ? static_cast<long>(d) : 0L));
        }
    }
}

TEST_CASE("conjugate character inverts values") {
    auto k = FqField::make(7, 1);
    for (long e = 0; e < 6; ++e) {
        MultChar chi = gen_char(k, e);
        for (uint64_t x = 1; x < 7; ++x)
            CHECK(eval_mult(chi.inverse(), x) == eval_mult(chi, x).inverse());
    }
}

TEST_CASE("additive character") {
    auto k = FqField::make(3, 2);
    AddChar psi = add_char(k);
    CHECK(eval_add(psi, 0) == CycloNumber(1L));
    CycloNumber total;
    for (uint64_t x = 0; x < 9; ++x) total += eval_add(psi, x);
    CHECK(total.is_zero());
    for (uint64_t x = 0; x < 9; ++x)
        for (uint64_t y = 0; y < 9; ++y)
            CHECK(eval_add(psi, k->add(x, y)) == eval_add(psi, x) * eval_add(psi, y));
    for (uint64_t x = 0; x < 9; ++x)
        CHECK(eval_add(psi, x) * eval_add(psi, k->neg(x)) == CycloNumber(1L));
}

TEST_CASE("norm pullback") {
    auto k = FqField::make(5, 1);
    TowerEmbedding t(k, 2);
    MultChar eps_up = norm_pullback(trivial_char(k), t);
    CHECK(eps_up.is_trivial());

    for (uint64_t d : {2ull, 4ull}) {
        MultChar phid = char_of_exact_order(k, d);
        MultChar up = norm_pullback(phid, t);
        CHECK(up.pow(static_cast<long>(d)).is_trivial());
        // phi_{d,r}(embed(x)) = phi_d(x)^r on the base
        for (uint64_t x = 1; x < 5; ++x)
            CHECK(eval_mult(up, t.embed(x)) == eval_mult(phid, x).pow(2));
    }
}
