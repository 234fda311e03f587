#ifndef FFHYP_FIELD_HPP
#define FFHYP_FIELD_HPP

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "ffhyp/cyclo.hpp"

namespace ffh {

// F_{p^f} with full log/antilog tables. Elements are codes
// sum_i c_i p^i for the residue polynomial sum_i c_i x^i; arithmetic is
// table lookups plus digitwise addition. Construction is deterministic:
// the modulus is the first monic irreducible polynomial in lexicographic
// order (constant term varying fastest) and the generator is the first
// primitive element in code order.
class FqField {
public:
    static std::shared_ptr<const FqField> make(uint32_t p, uint32_t f,
                                               uint64_t bound = kDefaultBound);
    static constexpr uint64_t kDefaultBound = 2'000'000;

    uint32_t p() const { return p_; }
    uint32_t f() const { return f_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    uint64_t generator() const { return generator_; }

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;            // throws on zero
    uint64_t pow(uint64_t a, long e) const;
    uint64_t dlog(uint64_t a) const;           // throws on zero
    uint64_t antilog(uint64_t e) const { return antilog_[e % (q_ - 1)]; }
    uint64_t element_from_int(long v) const;   // image of integer (prime field)
    uint32_t trace_to_prime(uint64_t a) const; // Tr_{F_q/F_p}, value in [0, p)

    std::vector<uint32_t> decode(uint64_t code) const;

private:
    FqField() = default;
    uint32_t p_ = 0, f_ = 0;
    uint64_t q_ = 0;
    std::vector<uint32_t> modulus_;     // c0..cf, monic
    uint64_t generator_ = 0;
    std::vector<uint32_t> log_;         // code -> dlog, log_[0] unused
    std::vector<uint32_t> antilog_;     // dlog -> code
    std::vector<uint32_t> trace_basis_; // Tr(x^i) for i < f

    friend class FieldBuilder;
};

using FieldPtr = std::shared_ptr<const FqField>;

struct FieldElement {
    FieldPtr field;
    uint64_t code = 0;

    bool is_zero() const { return code == 0; }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.code == b.code && a.field->p() == b.field->p() && a.field->f() == b.field->f();
    }
};

FieldElement fe(const FieldPtr& k, uint64_t code);
FieldElement fe_int(const FieldPtr& k, long v);
FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, long e);

// Embedding of F_q into F_{q^r}, with the inverse map on the image. The
// base generator goes to the first element (by antilog index) of order q-1
// whose minimal polynomial over F_p matches the base generator's; the map
// is verified additive and multiplicative at construction.
class TowerEmbedding {
public:
    TowerEmbedding(FieldPtr base, uint32_t r, uint64_t bound = FqField::kDefaultBound);

    const FieldPtr& base() const { return base_; }
    const FieldPtr& ext() const { return ext_; }
    uint32_t r() const { return r_; }
    uint64_t generator_image() const { return gen_image_; }

    uint64_t embed(uint64_t base_code) const;
    uint64_t norm(uint64_t ext_code) const;     // N_{k_r/k}, as a base code
    // dlog multiplier: dlog_base(N(x)) == norm_dlog_factor * dlog_ext(x) mod q-1
    uint64_t norm_dlog_factor() const { return norm_dlog_factor_; }

private:
    FieldPtr base_, ext_;
    uint32_t r_;
    uint64_t gen_image_;
    uint64_t norm_dlog_factor_;
    std::vector<uint64_t> embed_table_;                  // base code -> ext code
    std::unordered_map<uint64_t, uint64_t> section_;     // ext code -> base code
};

}  // namespace ffh

#endif
