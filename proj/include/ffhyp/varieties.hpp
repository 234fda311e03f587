#ifndef FFHYP_VARIETIES_HPP
#define FFHYP_VARIETIES_HPP

#include "ffhyp/hgf.hpp"

namespace ffh {

// The six affine families plus the smooth projective model of CD.
enum class Family { CD, SD, SA, SB, SC, S4, XD };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

// Exponent layout per family:
//   CD/XD/SD : a, b_1..b_n, c          (n + 2 entries)
//   SA       : a, b_1..b_n, c_1..c_n   (2n + 1)
//   SB       : a_1..a_n, b_1..b_n, c   (2n + 1)
//   SC       : a, b, c_1..c_n          (n + 2)
//   S4       : a, b, c1, c2            (4, stored reduced mod d)
struct VarietySpec {
    Family family = Family::CD;
    unsigned d = 2;
    std::vector<long> exps;
    std::vector<uint64_t> lambda;   // base-field codes
    FieldPtr field;

    unsigned n() const;             // number of lambda arguments
    unsigned dim() const;           // affine coordinate dimension
    long e_infty() const;           // |a + sum b_i + c - d| for CD/XD
    void validate() const;          // throws on violated invariants
    bool formula_hypotheses() const;   // the family theorem's gcd package
    // all reduced factor exponents of S4 nonzero mod d (the open-question
    // boundary cases are the ones violating this)
    bool s4_exponents_nondegenerate() const;
};

enum class CountRoute { FixedPoint, CharSum, Formula };

struct ChiCount {
    unsigned m = 0;
    unsigned r = 1;
    CycloNumber value;              // in Q(zeta_d) for the point-count routes
    CountRoute route = CountRoute::CharSum;
};

struct CountBudget {
    uint64_t field_bound = FqField::kDefaultBound;  // largest table the routes may build
    uint64_t point_budget = 200'000'000;            // enumeration steps
    uint64_t formula_tuple_budget = 30'000;         // character tuples in chi_formula
};

// Exact number of points of V(k_r) by full enumeration.
long brute_count(const VarietySpec& V, unsigned r, const CountBudget& budget = {});

// The definitional route: Frobenius-twisted fixed points counted in a
// working extension containing mu_{d(q^r-1)}.
ChiCount chi_fixed_point(const VarietySpec& V, unsigned m, unsigned r,
                         const CountBudget& budget = {});

// sum over affine coordinates of phi_{d,r}^m(f(coords)), bucket-counted in
// Q(zeta_d); returns q^{nr} at m = 0 (plus the point at infinity for XD).
ChiCount chi_char_sum(const VarietySpec& V, unsigned m, unsigned r,
                      const CountBudget& budget = {});

// The family theorem's closed form at level r: Jacobi constants over k_r
// times the Lauricella value over k_r by its defining sum (budget-gated),
// plus the S4/XD additive pieces.
ChiCount chi_formula(const VarietySpec& V, unsigned m, unsigned r,
                     const CountBudget& budget = {});

// --- pieces shared with the L-series assembly ----------------------------

// Lauricella factor of the family theorem over k_r, recovered from the
// theorem's Euler character sum divided by its Jacobi constants; everything
// is bucket arithmetic in Q(zeta_d), so large r stay cheap.
CycloNumber theorem_lauricella_over_ext(const VarietySpec& V, unsigned m, unsigned r,
                                        const CountBudget& budget = {});

// Base-level Jacobi constant of the family's corollary (the value raised to
// the r-th power in the L-function displays).
CycloNumber corollary_constant(const VarietySpec& V, unsigned m);

// S_0, S_1, S_2 of the S4 family over the base field.
std::vector<CycloNumber> s4_linear_constants(const VarietySpec& V, unsigned m);

// Shared tower cache (base field of V -> degree-r extension).
const TowerEmbedding& tower_for(const FieldPtr& base, unsigned r,
                                uint64_t field_bound = FqField::kDefaultBound);

}  // namespace ffh

#endif
