#ifndef FFHYP_IDENTITIES_HPP
#define FFHYP_IDENTITIES_HPP

#include <string>

#include "ffhyp/hgf.hpp"

namespace ffh {

// One concrete test point of a registered identity. char_exps and args
// follow the identity's documented slot layout (see identities.cpp); aux is
// n for the variable-arity identities and d for KARLSSON.
struct IdentityInstance {
    FieldPtr field;
    std::vector<uint64_t> char_exps;
    std::vector<uint64_t> args;
    uint64_t aux = 0;
};

struct IdentityVerdict {
    std::string id;
    bool hypotheses_met = false;
    CycloNumber lhs, rhs;
    bool equal = false;
    std::string witness;
};

struct SweepOptions {
    uint64_t aux = 0;           // 0 = identity default
    uint64_t exhaustive_cap = 20000;
    uint64_t sample = 2000;     // stratified sample size above the cap
    uint64_t seed = 0;          // phase offset of the stride
    bool hypotheses_only = false;
    unsigned workers = 1;       // verdict order stays the enumeration order
};

// Both sides are always computed; hypotheses_met records whether the cited
// statement's hypotheses hold at the instance (only those instances carry a
// pass/fail claim).
IdentityVerdict check(const std::string& id, const IdentityInstance& inst);

std::vector<IdentityVerdict> sweep(const std::string& id, const FieldPtr& field,
                                   const SweepOptions& opt = {});

const std::vector<std::string>& identity_ids();
uint64_t sweep_domain_size(const std::string& id, const FieldPtr& field, uint64_t aux = 0);

}  // namespace ffh

#endif
