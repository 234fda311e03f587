#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ffhyp/field.hpp"

using namespace ffh;

TEST_CASE("prime field construction picks the documented generators") {
    auto f5 = FqField::make(5, 1);
    CHECK(f5->generator() == 2);
    auto f7 = FqField::make(7, 1);
    CHECK(f7->generator() == 3);
    CHECK_THROWS(FqField::make(6, 1));
    CHECK_THROWS(FqField::make(3, 20));
}

TEST_CASE("F9 construction") {
    auto f9 = FqField::make(3, 2);
    CHECK(f9->q() == 9);
    // generator must have multiplicative order 8
    uint64_t g = f9->generator();
    uint64_t x = g;
    int order = 1;
    while (x != 1) {
        x = f9->mul(x, g);
        ++order;
    }
    CHECK(order == 8);
}

TEST_CASE("make_field is deterministic") {
    auto a = FqField::make(7, 2);
    auto b = FqField::make(7, 2);
    CHECK(a->modulus() == b->modulus());
    CHECK(a->generator() == b->generator());
}

TEST_CASE("field arithmetic") {
    auto k = FqField::make(7, 1);
    for (uint64_t a = 1; a < 7; ++a) CHECK(k->mul(a, k->inv(a)) == 1);
    CHECK(k->pow(k->generator(), 6) == 1);
    for (int e = 1; e < 6; ++e) CHECK(k->pow(k->generator(), e) != 1);
    CHECK(k->dlog(1) == 0);
    CHECK(k->dlog(k->generator()) == 1);
    CHECK(k->dlog(k->pow(k->generator(), 5)) == 5);
    CHECK_THROWS_AS(k->inv(0), std::domain_error);
    CHECK_THROWS_AS(k->dlog(0), std::domain_error);

    auto k9 = FqField::make(3, 2);
    FieldElement a = fe(k9, 5), b = fe(k9, 7);
    CHECK((a * inv(a)).code == 1);
    CHECK_THROWS(fe(k9, 5) + fe(FqField::make(5, 1), 2));
}

TEST_CASE("trace to prime field") {
    auto k9 = FqField::make(3, 2);
    CHECK(k9->trace_to_prime(0) == 0);
    // additivity, exhaustive over F_9
    for (uint64_t a = 0; a < 9; ++a)
        for (uint64_t b = 0; b < 9; ++b)
            CHECK(k9->trace_to_prime(k9->add(a, b)) ==
                  (k9->trace_to_prime(a) + k9->trace_to_prime(b)) % 3);
    // over a prime field the trace is the identity
    auto k7 = FqField::make(7, 1);
    for (uint64_t a = 0; a < 7; ++a) CHECK(k7->trace_to_prime(a) == a);
}

TEST_CASE("frobenius fixes exactly the base field") {
    for (uint32_t q : {5u, 7u, 13u}) {
        for (uint32_t r : {2u, 3u}) {
            auto ext = FqField::make(q, r);
            uint64_t fixed = 0;
            for (uint64_t x = 0; x < ext->q(); ++x)
                if (ext->pow(x, static_cast<long>(q)) == x) ++fixed;
            CHECK(fixed == q);
        }
    }
}

TEST_CASE("power map image sizes") {
    auto k = FqField::make(13, 1);
    for (uint64_t d : {1ull, 2ull, 3ull, 4ull, 6ull, 12ull}) {
        std::set<uint64_t> image;
        for (uint64_t x = 1; x < 13; ++x) image.insert(k->pow(x, static_cast<long>(d)));
        CHECK(image.size() == 12 / d);
    }
}

TEST_CASE("tower embedding") {
    auto f5 = FqField::make(5, 1);
    TowerEmbedding id(f5, 1);
    for (uint64_t x = 0; x < 5; ++x) CHECK(id.embed(x) == x);

    TowerEmbedding t(f5, 2);
    // image of the generator has order 4 in F_25
    uint64_t img = t.generator_image();
    uint64_t x = img;
    int order = 1;
    while (x != 1) {
        x = t.ext()->mul(x, img);
        ++order;
    }
    CHECK(order == 4);

    // norm is multiplicative and norm(embed(x)) = x^2, exhaustively
    for (uint64_t a = 0; a < 25; ++a) {
        for (uint64_t b = 0; b < 25; ++b)
            CHECK(t.norm(t.ext()->mul(a, b)) == t.base()->mul(t.norm(a), t.norm(b)));
    }
    CHECK(t.norm(0) == 0);
    CHECK(t.norm(1) == 1);
    for (uint64_t x5 = 0; x5 < 5; ++x5) CHECK(t.norm(t.embed(x5)) == f5->pow(x5, 2));
}

TEST_CASE("tower embedding q=13 r=3") {
    auto f13 = FqField::make(13, 1);
    TowerEmbedding t(f13, 3);
    for (uint64_t x = 0; x < 13; ++x) CHECK(t.norm(t.embed(x)) == f13->pow(x, 3));
}
