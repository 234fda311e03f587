#ifndef FFHYP_CLI_HPP
#define FFHYP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffhyp/lseries.hpp"
#include "ffhyp/identities.hpp"

namespace ffh {

using Json = nlohmann::ordered_json;

// Parsed invocation; round-trips through JSON, and a fixed seed yields
// byte-identical output (the default single-worker mode is deterministic
// regardless).
struct RunConfig {
    std::string command;                  // gauss jacobi hgf verify count lpoly sweep
    uint32_t p = 0;
    uint32_t f = 1;
    std::vector<std::string> chars;       // integers or "phi_d^m"
    uint64_t twist = 1;

    std::string kind;                     // hgf: nFn A B C D F1..F4
    std::vector<std::string> upper, lower;
    std::vector<uint64_t> lambda;

    std::string identity;                 // verify
    bool exhaustive = false;
    uint64_t sample = 500;
    uint64_t seed = 0;
    uint64_t aux = 0;
    uint64_t cap = 20000;

    std::string family;                   // count / lpoly
    unsigned d = 0;
    std::vector<long> exponents;
    long m = -1;                          // -1 = every residue class
    unsigned r = 1;
    unsigned R = 0;
    int weight = 1;
    double tol = 1e-9;
    std::string route = "all";            // fixed charsum formula all

    std::string format = "json";          // json csv
    unsigned workers = 1;
    uint64_t field_bound = FqField::kDefaultBound;
    uint64_t point_budget = 200'000'000;

    Json to_json() const;
    static RunConfig from_json(const Json& j);
};

// character sugar: plain integer k, or phi_d^m resolved to m(q-1)/d
uint64_t parse_char_exponent(const std::string& text, uint64_t q);

Json cyclo_to_json(const CycloNumber& x);
CycloNumber cyclo_from_json(const Json& j);
std::string complex_string(const CycloNumber& x);

// Dispatch; exit code 0 = requested checks pass, 1 = a hypothesis-satisfying
// check failed, 2 = invalid parameters or budget exceeded.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// argv front end (CLI11); exposed for tests.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffh

#endif
