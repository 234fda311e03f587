#include "ffhyp/chars.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace ffh {

MultChar MultChar::operator*(const MultChar& rhs) const {
    if (field->q() != rhs.field->q()) throw std::invalid_argument("character field mismatch");
    return MultChar{field, (exponent + rhs.exponent) % modulus()};
}

MultChar MultChar::inverse() const {
    return MultChar{field, exponent == 0 ? 0 : modulus() - exponent};
}

MultChar MultChar::pow(long e) const {
    long m = static_cast<long>(modulus());
    long r = static_cast<long>((static_cast<__int128>(exponent) * e) % m);
    if (r < 0) r += m;
    return MultChar{field, static_cast<uint64_t>(r)};
}

uint64_t MultChar::order() const {
    uint64_t m = modulus();
    return m / std::gcd(exponent, m);
}

MultChar trivial_char(const FieldPtr& k) { return MultChar{k, 0}; }

MultChar gen_char(const FieldPtr& k, long exponent) {
    long m = static_cast<long>(k->q() - 1);
    long r = exponent % m;
    if (r < 0) r += m;
    return MultChar{k, static_cast<uint64_t>(r)};
}

MultChar char_of_exact_order(const FieldPtr& k, uint64_t d) {
    if (d == 0 || (k->q() - 1) % d != 0)
        throw std::invalid_argument("character order must divide q-1");
    return MultChar{k, (k->q() - 1) / d % (k->q() - 1)};
}

int delta(const MultChar& chi) { return chi.is_trivial() ? 1 : 0; }

CycloNumber eval_mult(const MultChar& chi, uint64_t code) {
    if (code == 0) return CycloNumber();
    uint64_t m = chi.modulus();
    long e = static_cast<long>(chi.exponent % m * (chi.field->dlog(code) % m) % m);
    return CycloNumber::root_of_unity(static_cast<unsigned>(m), e);
}

CycloNumber eval_mult(const MultChar& chi, const FieldElement& x) {
    if (x.field->q() != chi.field->q()) throw std::invalid_argument("character field mismatch");
    return eval_mult(chi, x.code);
}

CycloNumber char_at_minus_one(const MultChar& chi) {
    return eval_mult(chi, chi.field->element_from_int(-1));
}

AddChar add_char(const FieldPtr& k, uint64_t twist) {
    if (twist == 0 || twist >= k->q()) throw std::invalid_argument("twist must lie in k^x");
    return AddChar{k, twist};
}

CycloNumber eval_add(const AddChar& psi, uint64_t code) {
    uint32_t t = psi.field->trace_to_prime(psi.field->mul(psi.twist, code));
    return CycloNumber::root_of_unity(psi.field->p(), t);
}

CycloNumber eval_add(const AddChar& psi, const FieldElement& x) {
    if (x.field->q() != psi.field->q()) throw std::invalid_argument("character field mismatch");
    return eval_add(psi, x.code);
}

MultChar norm_pullback(const MultChar& chi, const TowerEmbedding& tower) {
    if (chi.field->q() != tower.base()->q())
        throw std::invalid_argument("character lives on the wrong base field");
    const uint64_t q = tower.base()->q();
    const uint64_t Q = tower.ext()->q();
    const uint64_t s = (Q - 1) / (q - 1);
    // dlog_base(N(G^t)) = t * norm_dlog_factor, so the pullback exponent picks
    // up that factor relative to the table generator of the extension.
    uint64_t e = chi.exponent * tower.norm_dlog_factor() % (q - 1);
    MultChar out{tower.ext(), e * s % (Q - 1)};

    // eval agreement check: (chi o N)(x) == chi(N(x))
    auto check_at = [&](uint64_t x) {
        if (eval_mult(out, x) != eval_mult(chi, tower.norm(x)))
            throw std::logic_error("norm pullback evaluation mismatch");
    };
    if (Q <= 10'000) {
        for (uint64_t x = 1; x < Q; ++x) check_at(x);
    } else {
        std::mt19937_64 rng(0x9c2f);
        for (int i = 0; i < 64; ++i) check_at(1 + rng() % (Q - 1));
    }
    return out;
}

}  // namespace ffh
