#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffhyp/identities.hpp"

using namespace ffh;

namespace {

int count_hyp_failures(const std::vector<IdentityVerdict>& vs) {
    int bad = 0;
    for (const IdentityVerdict& v : vs)
        if (v.hypotheses_met && !v.equal) ++bad;
    return bad;
}

}  // namespace

TEST_CASE("spot instances from the statements") {
    auto k5 = FqField::make(5, 1);
    auto k7 = FqField::make(7, 1);

    // F_D Euler representation, n = 2, a = phi, b_i = phi^2, c = phi^3
    IdentityInstance fd{k5, {1, 2, 2, 3}, {2, 3}, 2};
    IdentityVerdict v = check("FD_EULER_I", fd);
    CHECK(v.hypotheses_met);
    CHECK(v.equal);

    // Karlsson with q = 7, d = 2, a = phi, b = phi^2, c = phi^3, lambda = 3
    IdentityInstance ka{k7, {1, 2, 3}, {3}, 2};
    v = check("KARLSSON", ka);
    CHECK(v.hypotheses_met);
    CHECK(v.equal);

    // Vandermonde boundary branch {alpha, mu^-1} = {eps, c}: alpha = eps,
    // mu^-1 = c = phi^2
    IdentityInstance vb{k5, {0, 2, 2}, {}, 0};
    v = check("VANDERMONDE_II", vb);
    CHECK(v.hypotheses_met);
    CHECK(v.equal);
    v = check("VANDERMONDE_I", vb);
    CHECK(!v.hypotheses_met);

    // hypothesis gate: EULER_2F1 with beta = c
    IdentityInstance eg{k5, {1, 2, 2}, {3}, 0};
    v = check("EULER_2F1", eg);
    CHECK(!v.hypotheses_met);

    CHECK_THROWS(check("NO_SUCH_IDENTITY", eg));
    CHECK_THROWS(check("EULER_2F1", IdentityInstance{k5, {1, 2}, {3}, 0}));
}

TEST_CASE("gauss reflection sweep is exhaustive over the character group") {
    auto k7 = FqField::make(7, 1);
    auto verdicts = sweep("GAUSS_REFL", k7);
    CHECK(verdicts.size() == 6);   // q - 1 characters
    for (const auto& v : verdicts) {
        CHECK(v.hypotheses_met);
        CHECK(v.equal);
    }
}

TEST_CASE("every identity verifies on hypothesis-satisfying instances over F_5") {
    auto k5 = FqField::make(5, 1);
    SweepOptions opt;
    opt.exhaustive_cap = 3000;
    opt.sample = 120;
    for (const std::string& id : identity_ids()) {
        auto verdicts = sweep(id, k5, opt);
        CHECK_MESSAGE(count_hyp_failures(verdicts) == 0, id);
        CHECK(!verdicts.empty());
    }
}

TEST_CASE("sampled sweeps over F_7") {
    auto k7 = FqField::make(7, 1);
    SweepOptions opt;
    opt.exhaustive_cap = 400;
    opt.sample = 60;
    for (const std::string& id : identity_ids()) {
        auto verdicts = sweep(id, k7, opt);
        CHECK_MESSAGE(count_hyp_failures(verdicts) == 0, id);
    }
}

TEST_CASE("sampled sweeps over the non-prime field F_9") {
    auto k9 = FqField::make(3, 2);
    SweepOptions opt;
    opt.exhaustive_cap = 300;
    opt.sample = 50;
    for (const std::string& id : identity_ids()) {
        auto verdicts = sweep(id, k9, opt);
        CHECK_MESSAGE(count_hyp_failures(verdicts) == 0, id);
    }
}

TEST_CASE("variable-arity identities at n = 1") {
    auto k5 = FqField::make(5, 1);
    SweepOptions opt;
    opt.aux = 1;
    opt.exhaustive_cap = 2000;
    for (const char* id : {"FD_EULER_I", "FD_EULER_II", "FA_EULER", "FB_EULER",
                           "FC_EULER", "REDUCTION", "FB_TO_FA"}) {
        auto verdicts = sweep(id, k5, opt);
        CHECK_MESSAGE(count_hyp_failures(verdicts) == 0, id);
    }
}

TEST_CASE("jacobi triples") {
    auto k5 = FqField::make(5, 1);
    SweepOptions opt;
    opt.aux = 3;
    opt.exhaustive_cap = 100;
    opt.sample = 50;
    auto verdicts = sweep("JACOBI_GAUSS", k5, opt);
    CHECK(count_hyp_failures(verdicts) == 0);
    CHECK(verdicts.size() == 64);   // 4^3 total, below the cap, so exhaustive
}

TEST_CASE("karlsson d = 2 over F_5, all hypothesis-satisfying instances") {
    auto k5 = FqField::make(5, 1);
    SweepOptions opt;
    opt.aux = 2;
    opt.hypotheses_only = true;
    auto verdicts = sweep("KARLSSON", k5, opt);
    CHECK(!verdicts.empty());
    for (const auto& v : verdicts) CHECK_MESSAGE(v.equal, v.witness);
}

TEST_CASE("parallel sweeps keep the enumeration order") {
    auto k5 = FqField::make(5, 1);
    SweepOptions serial, parallel;
    serial.exhaustive_cap = parallel.exhaustive_cap = 2000;
    parallel.workers = 4;
    auto a = sweep("PFAFF", k5, serial);
    auto b = sweep("PFAFF", k5, parallel);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].witness == b[i].witness);
        CHECK(a[i].equal == b[i].equal);
    }
}

TEST_CASE("boundary instances are reported but not failed") {
    auto k5 = FqField::make(5, 1);
    // PFAFF with beta = eps violates the hypothesis; both sides still land
    IdentityInstance inst{k5, {1, 0, 2}, {3}, 0};
    IdentityVerdict v = check("PFAFF", inst);
    CHECK(!v.hypotheses_met);
    CHECK(!v.witness.empty());
}
