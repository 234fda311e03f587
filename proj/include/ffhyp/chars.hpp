#ifndef FFHYP_CHARS_HPP
#define FFHYP_CHARS_HPP

#include "ffhyp/cyclo.hpp"
#include "ffhyp/field.hpp"

namespace ffh {

// Multiplicative character phi^k of k^x, where phi(g^j) = zeta_{q-1}^j for
// the field generator g. Every character vanishes at 0, including the
// trivial one.
struct MultChar {
    FieldPtr field;
    uint64_t exponent = 0;   // k mod (q-1)

    uint64_t modulus() const { return field->q() - 1; }
    bool is_trivial() const { return exponent == 0; }

    MultChar operator*(const MultChar& rhs) const;
    MultChar inverse() const;       // conjugate character
    MultChar pow(long e) const;
    uint64_t order() const;

    friend bool operator==(const MultChar& a, const MultChar& b) {
        return a.exponent == b.exponent && a.field->q() == b.field->q();
    }
    friend bool operator!=(const MultChar& a, const MultChar& b) { return !(a == b); }
};

MultChar trivial_char(const FieldPtr& k);
MultChar gen_char(const FieldPtr& k, long exponent = 1);   // phi^exponent
// phi_d = phi^{(q-1)/d}; requires d | q-1.
MultChar char_of_exact_order(const FieldPtr& k, uint64_t d);

int delta(const MultChar& chi);                 // 1 iff trivial
CycloNumber eval_mult(const MultChar& chi, const FieldElement& x);
CycloNumber eval_mult(const MultChar& chi, uint64_t code);
CycloNumber char_at_minus_one(const MultChar& chi);

// The fixed additive character psi_t(x) = zeta_p^{Tr(t x)}; twist defaults
// to t = 1 and all downstream hypergeometric values are independent of it.
struct AddChar {
    FieldPtr field;
    uint64_t twist = 1;
};

AddChar add_char(const FieldPtr& k, uint64_t twist = 1);
CycloNumber eval_add(const AddChar& psi, const FieldElement& x);
CycloNumber eval_add(const AddChar& psi, uint64_t code);

// chi composed with the norm k_r -> k; evaluation agreement
// (phi o N)(x) = phi(N(x)) is checked at construction for q^r <= 1e4 and
// sampled beyond.
MultChar norm_pullback(const MultChar& chi, const TowerEmbedding& tower);

}  // namespace ffh

#endif
