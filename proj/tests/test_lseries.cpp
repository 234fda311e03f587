#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffhyp/lseries.hpp"

using namespace ffh;

TEST_CASE("exp series closed forms") {
    // N_r = q^r gives the geometric series of 1/(1-qt)
    std::vector<CycloNumber> ns;
    Rational qk = 1;
    for (int r = 1; r <= 6; ++r) {
        qk *= 5;
        ns.push_back(CycloNumber(qk));
    }
    TruncSeries z = exp_series(ns);
    Rational expect = 1;
    for (int k = 0; k <= 6; ++k) {
        CHECK(z.coeffs[k] == CycloNumber(expect));
        expect *= 5;
    }

    // N_r = 0 gives the constant series 1
    TruncSeries one = exp_series(std::vector<CycloNumber>(5));
    for (int k = 0; k <= 5; ++k)
        CHECK(one.coeffs[k] == CycloNumber(k == 0 ? 1L : 0L));

    // N_r = 2^r + 3^r gives 1/((1-2t)(1-3t))
    std::vector<CycloNumber> ab;
    long p2 = 1, p3 = 1;
    for (int r = 1; r <= 5; ++r) {
        p2 *= 2;
        p3 *= 3;
        ab.push_back(CycloNumber(p2 + p3));
    }
    TruncSeries s = exp_series(ab);
    // coefficients are sum_{i+j=k} 2^i 3^j
    for (int k = 0; k <= 5; ++k) {
        long want = 0, pi = 1;
        for (int i = 0; i <= k; ++i) {
            long pj = 1;
            for (int j = 0; j < k - i; ++j) pj *= 3;
            want += pi * pj;
            pi *= 2;
        }
        CHECK(s.coeffs[k] == CycloNumber(want));
    }
}

TEST_CASE("series inverse and product") {
    std::vector<CycloNumber> ns{CycloNumber(3L), CycloNumber(-2L), CycloNumber(7L),
                                CycloNumber(1L)};
    TruncSeries a = exp_series(ns);
    TruncSeries prod = series_mul(a, series_inverse(a));
    for (unsigned k = 0; k <= prod.order(); ++k)
        CHECK(prod.coeffs[k] == CycloNumber(k == 0 ? 1L : 0L));
}

TEST_CASE("artin L at m = 0") {
    auto k = FqField::make(5, 1);
    VarietySpec V{Family::SD, 2, {1, 1, 1, 1}, {2, 3}, k};
    TruncSeries l = artin_l(V, 0, 3, CountRoute::CharSum);
    Rational expect = 1;
    for (int kk = 0; kk <= 3; ++kk) {
        CHECK(l.coeffs[kk] == CycloNumber(expect));
        expect *= 25;
    }
    CHECK(l == l_from_theorem(V, 0, 3));
}

TEST_CASE("zeta is the product of the artin L-functions and is integral") {
    auto k = FqField::make(5, 1);
    VarietySpec V{Family::CD, 2, {1, 1, 1}, {2}, k};
    TruncSeries z = zeta_series(V, 4, CountRoute::CharSum);
    TruncSeries direct = exp_series([&] {
        std::vector<CycloNumber> ns;
        for (unsigned r = 1; r <= 4; ++r) ns.push_back(CycloNumber(brute_count(V, r)));
        return ns;
    }());
    CHECK(z == direct);
    for (unsigned kk = 0; kk <= 4; ++kk) {
        auto rat = z.coeffs[kk].try_rational();
        REQUIRE(rat.has_value());
        CHECK(rat->get_den() == 1);
        CHECK(*rat > 0);
    }
}

TEST_CASE("zeta product across a surface family") {
    auto k = FqField::make(5, 1);
    VarietySpec V{Family::SD, 2, {1, 1, 1, 1}, {2, 3}, k};
    TruncSeries z = zeta_series(V, 3, CountRoute::CharSum);
    std::vector<CycloNumber> ns;
    for (unsigned r = 1; r <= 3; ++r) ns.push_back(CycloNumber(brute_count(V, r)));
    CHECK(z == exp_series(ns));
}

TEST_CASE("detect_polynomial edge behavior") {
    // 1/(1-qt) never stabilizes
    std::vector<CycloNumber> ns;
    Rational qk = 1;
    for (int r = 1; r <= 8; ++r) {
        qk *= 7;
        ns.push_back(CycloNumber(qk));
    }
    CHECK(!detect_polynomial(exp_series(ns), 3).has_value());
    // the constant series is a degree-0 polynomial
    auto p = detect_polynomial(exp_series(std::vector<CycloNumber>(5)), 2);
    REQUIRE(p.has_value());
    CHECK(p->degree() == 0);
    CHECK_THROWS(detect_polynomial(exp_series(std::vector<CycloNumber>(3)), 2));
}

TEST_CASE("weil check on linear polynomials") {
    LPolynomial lin{{CycloNumber(1L), CycloNumber(-7L)}};     // 1 - 7t
    CHECK(weil_check(lin, 7, 2, 1e-9).pass);                  // |7| = 7^{2/2}
    LPolynomial bad{{CycloNumber(1L), CycloNumber(-14L)}};    // 1 - 14t
    CHECK(!weil_check(bad, 7, 2, 1e-9).pass);
    LPolynomial unit{{CycloNumber(1L)}};
    CHECK(weil_check(unit, 7, 1, 1e-9).pass);
}

TEST_CASE("degree n+1 polynomial for a small smooth superelliptic model") {
    // n = 1, q = 7, d = 3: an elliptic-type curve, L of degree 2
    auto k = FqField::make(7, 1);
    VarietySpec V{Family::XD, 3, {1, 1, 2}, {3}, k};
    for (unsigned m = 1; m < 3; ++m) {
        TruncSeries l = artin_l(V, m, 6, CountRoute::CharSum);
        auto p = detect_polynomial(l, 2);
        REQUIRE(p.has_value());
        CHECK(p->degree() == 2);
        CHECK(!detect_polynomial(l, 1).has_value());   // sharp degree
        WeilReport rep = weil_check(*p, 7, 1, 1e-9);
        CHECK(rep.converged);
        CHECK(rep.pass);
    }
}

TEST_CASE("corollary assembly matches the count route (CD, q=5)") {
    auto k = FqField::make(5, 1);
    VarietySpec V{Family::CD, 2, {1, 1, 1}, {2}, k};
    for (unsigned m = 0; m < 2; ++m)
        CHECK(l_from_theorem(V, m, 4) == artin_l(V, m, 4, CountRoute::CharSum));
}

TEST_CASE("corollary assembly matches the count route (XD)") {
    auto k = FqField::make(7, 1);
    VarietySpec V{Family::XD, 3, {1, 1, 2}, {3}, k};
    for (unsigned m = 0; m < 3; ++m)
        CHECK(l_from_theorem(V, m, 4) == artin_l(V, m, 4, CountRoute::CharSum));
}

TEST_CASE("corollary assembly matches the count route (S4, q=7)") {
    auto k = FqField::make(7, 1);
    VarietySpec V{Family::S4, 3, {1, 1, 3, 3}, {2, 3}, k};
    REQUIRE(V.s4_exponents_nondegenerate());
    for (unsigned m = 0; m < 3; ++m)
        CHECK(l_from_theorem(V, m, 4) == artin_l(V, m, 4, CountRoute::CharSum));
}
