#ifndef FFHYP_HGF_HPP
#define FFHYP_HGF_HPP

#include "ffhyp/char_sums.hpp"

namespace ffh {

// Parameters of (n+1)F_n: n+1 numerator characters over one denominator row.
struct HgfParams {
    std::vector<MultChar> a_list;   // size n+1
    std::vector<MultChar> b_list;   // size n
};

enum class LauricellaKind { A, B, C, D };

// Slot layout per kind:
//   A: a | b_1..b_n | c_1..c_n      B: a_1..a_n | b_1..b_n | c
//   C: a | b        | c_1..c_n      D: a | b_1..b_n | c
struct LauricellaParams {
    LauricellaKind kind;
    std::vector<MultChar> a, b, c;
    unsigned n = 0;

    void validate() const;          // arity and shared-field checks
};

// (1/(1-q)) sum_nu prod(a_i)_nu / ((eps)^o_nu prod(b_j)^o_nu) nu(lambda)
CycloNumber hgf(const GaussTable& t, const HgfParams& p, uint64_t lambda_code);

// The kind's defining (q-1)^n-term character-tuple sum. Tuples with n <= 2
// run in odometer order; larger tuple spaces are resummed through cyclic
// convolutions over Z/(q-1), grouping by the total character (a pure
// regrouping of the same exact sum; the two engines are property-tested
// against each other).
CycloNumber lauricella(const GaussTable& t, const LauricellaParams& p,
                       const std::vector<uint64_t>& lambda);
CycloNumber lauricella_odometer(const GaussTable& t, const LauricellaParams& p,
                                const std::vector<uint64_t>& lambda);
CycloNumber lauricella_grouped(const GaussTable& t, const LauricellaParams& p,
                               const std::vector<uint64_t>& lambda);

// F_1..F_4 = F_D^(2), F_A^(2), F_B^(2), F_C^(2).
CycloNumber appell(const GaussTable& t, int which, const std::vector<MultChar>& chars,
                   uint64_t lambda1, uint64_t lambda2);

// Convenience: 2F1(a, b; c; lambda).
CycloNumber hgf_2f1(const GaussTable& t, const MultChar& a, const MultChar& b,
                    const MultChar& c, uint64_t lambda_code);

// Shared constants of the F_4 chain (key proposition, expansion, Euler
// representation, and the S_4 point counts). Jacobi factors are computed by
// the defining sums.
namespace f4 {

struct Chars {
    MultChar a, b, c1, c2;
};

CycloNumber bigJ(const Chars& ch);                                   // j(a,a^-1c1) j(b,b^-1c2)
CycloNumber S0(const Chars& ch, uint64_t x, uint64_t y);
CycloNumber S1(const Chars& ch, uint64_t x, uint64_t y);
CycloNumber S2(const Chars& ch, uint64_t x, uint64_t y);
CycloNumber R1(const Chars& ch, uint64_t x, uint64_t y);
CycloNumber R2(const Chars& ch, uint64_t x, uint64_t y);
CycloNumber C1(const GaussTable& t, const Chars& ch);
CycloNumber C2(const GaussTable& t, const Chars& ch);

}  // namespace f4

}  // namespace ffh

#endif
