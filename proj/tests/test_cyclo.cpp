#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ffhyp/cyclo.hpp"

using namespace ffh;

namespace {

CycloNumber random_cyclo(std::mt19937_64& rng, unsigned order) {
    CycloNumber x;
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        long num = static_cast<long>(rng() % 11) - 5;
        long den = 1 + static_cast<long>(rng() % 4);
        Rational r(num, den);
        r.canonicalize();
        CycloNumber mono = CycloNumber::root_of_unity(order, static_cast<long>(rng() % order));
        x += CycloNumber(r) * mono;
    }
    return x;
}

}  // namespace

TEST_CASE("roots of unity and reduction mod Phi_n") {
    CHECK(CycloNumber::root_of_unity(1, 0) == CycloNumber(1L));
    // i^2 = -1 under Phi_4 = x^2 + 1
    CycloNumber i = CycloNumber::root_of_unity(4, 1);
    CHECK(i * i == CycloNumber(-1L));
    // zeta_3 = zeta_6^2
    CHECK(CycloNumber::root_of_unity(3, 1).embedded(6) == CycloNumber::root_of_unity(6, 2));
    // Phi_5 relation: 1 + z + z^2 + z^3 = -z^4
    CycloNumber z = CycloNumber::root_of_unity(5, 1);
    CHECK(CycloNumber(1L) + z + z * z + z.pow(3) == -z.pow(4));
}

TEST_CASE("field operations") {
    CycloNumber z5 = CycloNumber::root_of_unity(5, 1);
    CHECK(z5.inverse() == CycloNumber::root_of_unity(5, 4));

    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        unsigned order = 1 + static_cast<unsigned>(rng() % 12);
        CycloNumber x = random_cyclo(rng, order);
        if (x.is_zero()) continue;
        CHECK(x * x.inverse() == CycloNumber(1L));
    }
    CHECK_THROWS_AS(CycloNumber().inverse(), std::domain_error);
}

TEST_CASE("ring axioms across mixed orders") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        unsigned na = 1 + static_cast<unsigned>(rng() % 10);
        unsigned nb = 1 + static_cast<unsigned>(rng() % 10);
        unsigned nc = 1 + static_cast<unsigned>(rng() % 10);
        CycloNumber a = random_cyclo(rng, na);
        CycloNumber b = random_cyclo(rng, nb);
        CycloNumber c = random_cyclo(rng, nc);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("embedding is an injective ring morphism") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        unsigned m = 2 + static_cast<unsigned>(rng() % 6);
        unsigned n = m * (1 + static_cast<unsigned>(rng() % 4));
        CycloNumber a = random_cyclo(rng, m);
        CycloNumber b = random_cyclo(rng, m);
        CHECK((a * b).embedded(n) == a.embedded(n) * b.embedded(n));
        CHECK((a + b).embedded(n) == a.embedded(n) + b.embedded(n));
        CHECK(a.embedded(n).is_zero() == a.is_zero());
    }
    CHECK(CycloNumber(1L).embedded(12) == CycloNumber(1L));
    CHECK(CycloNumber::root_of_unity(2, 1).embedded(6) == CycloNumber(-1L));
    CHECK_THROWS(CycloNumber::root_of_unity(4, 1).embedded(6));
}

TEST_CASE("try_rational") {
    CHECK(CycloNumber::root_of_unity(7, 0).try_rational() == Rational(1));
    CHECK(!CycloNumber::root_of_unity(7, 1).try_rational().has_value());
    CycloNumber s;
    for (long k = 1; k <= 6; ++k) s += CycloNumber::root_of_unity(7, k);
    CHECK(s.try_rational() == Rational(-1));
}

TEST_CASE("complex evaluation") {
    auto v = CycloNumber::root_of_unity(8, 1).complex_value(15);
    CHECK(std::abs(v.real() - std::sqrt(2.0) / 2) < 1e-12);
    CHECK(std::abs(v.imag() - std::sqrt(2.0) / 2) < 1e-12);
    auto m1 = CycloNumber(-1L).complex_value(15);
    CHECK(m1.real() == -1.0);
    CHECK(m1.imag() == 0.0);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        unsigned n = 2 + static_cast<unsigned>(rng() % 10);
        CycloNumber a = random_cyclo(rng, n);
        CycloNumber b = random_cyclo(rng, n);
        auto lhs = (a * b).complex_value(15);
        auto rhs = a.complex_value(15) * b.complex_value(15);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("galois action, membership, descent") {
    CycloNumber z = CycloNumber::root_of_unity(12, 1);
    CHECK(z.galois(5) == z.pow(5));
    CHECK(z.conj() * z == CycloNumber(1L));

    // zeta_12^2 + zeta_12^10 generates... lies in Q(zeta_6)? zeta_12^2 = zeta_6.
    CycloNumber in_sub = CycloNumber::root_of_unity(12, 2) + CycloNumber(3L);
    CHECK(in_sub.lies_in(6));
    auto low = in_sub.descend(6);
    REQUIRE(low.has_value());
    CHECK(low->order() == 6);
    CHECK(low->embedded(12) == in_sub);
    CHECK(!z.lies_in(6));
    CHECK(!z.descend(6).has_value());
}

TEST_CASE("the cyclotomic relation holds under the arithmetic") {
    // multiplying out Phi_n at zeta_n gives zero
    for (unsigned n : {2u, 3u, 4u, 6u, 12u, 20u}) {
        // reconstruct Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d as the
        // minimal polynomial by brute force: evaluate prod over primitive
        // roots symbolically via power sums is overkill; instead check
        // zeta_n^n = 1 and that {1, zeta, ..., zeta^{phi-1}} do not satisfy
        // any shorter monic relation produced by the reduction rows.
        CycloNumber z = CycloNumber::root_of_unity(n, 1);
        CHECK(z.pow(static_cast<long>(n)) == CycloNumber(1L));
        // Phi_n(zeta_n) = 0: evaluate via the factorization x^n - 1 =
        // prod_{d | n} Phi_d(x): at x = zeta_n the left side is zero while
        // every proper-divisor factor Phi_d(zeta_n) is invertible, hence a
        // direct check: (zeta^n - 1) = 0 and zeta^d != 1 for proper d | n.
        for (unsigned d = 1; d < n; ++d)
            if (n % d == 0) CHECK(z.pow(static_cast<long>(d)) != CycloNumber(1L));
    }
}

TEST_CASE("exponent count construction") {
    std::vector<long> counts(10, 0);
    counts[3] = 2;
    counts[7] = -1;
    CycloNumber direct = CycloNumber(2L) * CycloNumber::root_of_unity(10, 3) -
                         CycloNumber::root_of_unity(10, 7);
    CHECK(CycloNumber::from_exponent_counts(10, counts) == direct);
}
