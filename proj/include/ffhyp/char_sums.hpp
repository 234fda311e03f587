#ifndef FFHYP_CHAR_SUMS_HPP
#define FFHYP_CHAR_SUMS_HPP

#include <vector>

#include "ffhyp/chars.hpp"

namespace ffh {

// Gauss sums g(phi^k) for one (field, twist), all of Q(zeta_{p(q-1)}),
// computed once by direct summation and shared by every downstream formula.
// Inverse tables come from the reflection g(eta)g(eta^-1) = eta(-1)q and are
// verified against the direct values at construction, so lookups are exact
// inverses unconditionally.
class GaussTable {
public:
    explicit GaussTable(FieldPtr field, uint64_t twist = 1);

    const FieldPtr& field() const { return field_; }
    uint64_t twist() const { return twist_; }
    unsigned value_order() const { return value_order_; }   // p(q-1)

    const CycloNumber& g(uint64_t k) const { return g_[k % m_]; }
    const CycloNumber& g_circ(uint64_t k) const { return g_circ_[k % m_]; }
    const CycloNumber& inv_g(uint64_t k) const { return inv_g_[k % m_]; }
    const CycloNumber& inv_g_circ(uint64_t k) const { return inv_g_circ_[k % m_]; }

    // zeta_{q-1}^e represented at the table's value order.
    CycloNumber root_qm1(long e) const;
    // chi(x) at the table's value order (0 at x = 0).
    CycloNumber eval(const MultChar& chi, uint64_t code) const;

private:
    FieldPtr field_;
    uint64_t twist_;
    uint64_t m_;                 // q - 1
    unsigned value_order_;
    std::vector<CycloNumber> g_, g_circ_, inv_g_, inv_g_circ_;
};

// Shared per-(field, twist) table cache.
const GaussTable& gauss_table(const FieldPtr& field, uint64_t twist = 1);

// Accumulator for character sums whose terms are the monomials
// zeta_{q-1}^{sum exponent_i * dlog(x_i)}. The common gcd of the exponents
// is divided out so the final value is built in the smallest cyclotomic
// order that can hold it (Q(zeta_d) for order-d characters over large
// extensions rather than Q(zeta_{q^r-1})).
class ExpoBucket {
public:
    ExpoBucket(uint64_t m, const std::vector<uint64_t>& exponents);
    void add(uint64_t expo_mod_m, long weight = 1);
    uint64_t step() const { return step_; }
    CycloNumber value() const;

private:
    uint64_t m_;
    uint64_t step_;
    std::vector<long> counts_;
};

CycloNumber gauss(const GaussTable& t, const MultChar& eta);
CycloNumber gauss_circ(const GaussTable& t, const MultChar& eta);

// (-1)^{n-1} sum over x_i in k^x with x_1+...+x_n = 1, by direct enumeration
// of the n-1 free coordinates; value in Q(zeta_{q-1}).
CycloNumber jacobi_direct(const std::vector<MultChar>& etas);
// Gauss-sum route of the same value, descended into Q(zeta_{q-1}).
CycloNumber jacobi_via_gauss(const GaussTable& t, const std::vector<MultChar>& etas);

CycloNumber poch(const GaussTable& t, const MultChar& a, const MultChar& nu);
CycloNumber poch_circ(const GaussTable& t, const MultChar& a, const MultChar& nu);

}  // namespace ffh

#endif
