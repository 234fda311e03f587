#include "ffhyp/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ffh {

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomials over F_p as digit vectors, used only at construction.
using Poly = std::vector<uint32_t>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, uint32_t p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
    }
    // reduce by the monic modulus
    const size_t f = mod.size() - 1;
    for (size_t k = prod.size(); k-- > f;) {
        uint32_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (size_t j = 0; j < f; ++j) {
            uint64_t t = prod[k - f + j] + static_cast<uint64_t>(p - 1) * c % p * mod[j] % p;
            prod[k - f + j] = static_cast<uint32_t>(t % p);
        }
    }
    prod.resize(f);
    return prod;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& mod, uint32_t p) {
    Poly acc{1};
    acc.resize(mod.size() - 1, 0);
    base.resize(mod.size() - 1, 0);
    while (e > 0) {
        if (e & 1) acc = poly_mulmod(acc, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return acc;
}

// Remainder of a by monic b over F_p.
Poly poly_rem(Poly a, const Poly& b, uint32_t p) {
    poly_trim(a);
    while (a.size() >= b.size()) {
        uint32_t c = a.back();
        size_t shift = a.size() - b.size();
        if (c != 0) {
            for (size_t j = 0; j < b.size(); ++j) {
                uint64_t t = a[shift + j] + static_cast<uint64_t>(p - c) * b[j] % p;
                a[shift + j] = static_cast<uint32_t>(t % p);
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.size() < b.size()) break;
    }
    return a;
}

bool is_irreducible(const Poly& m, uint32_t p) {
    const size_t f = m.size() - 1;
    if (f == 1) return true;
    if (m[0] == 0) return false;  // divisible by x
    // trial division by every monic polynomial of degree 1..f/2
    for (size_t deg = 1; deg <= f / 2; ++deg) {
        uint64_t count = 1;
        for (size_t i = 0; i < deg; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            Poly div(deg + 1, 0);
            uint64_t c = code;
            for (size_t i = 0; i < deg; ++i) {
                div[i] = static_cast<uint32_t>(c % p);
                c /= p;
            }
            div[deg] = 1;
            Poly r = poly_rem(m, div, p);
            if (r.empty()) return false;
        }
    }
    return true;
}

uint64_t encode(const Poly& digits, uint32_t p, uint32_t f) {
    uint64_t code = 0, mul = 1;
    for (uint32_t i = 0; i < f; ++i) {
        if (i < digits.size()) code += digits[i] * mul;
        mul *= p;
    }
    return code;
}

std::mutex registry_mutex;
std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const FqField>>& registry() {
    static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const FqField>> reg;
    return reg;
}

}  // namespace

std::shared_ptr<const FqField> FqField::make(uint32_t p, uint32_t f, uint64_t bound) {
    if (!is_prime_u32(p)) throw std::invalid_argument("p is not prime");
    if (f == 0) throw std::invalid_argument("extension degree must be positive");
    uint64_t q = 1;
    for (uint32_t i = 0; i < f; ++i) {
        q *= p;
        if (q > bound) throw std::invalid_argument("field size exceeds bound");
    }
    {
        std::lock_guard<std::mutex> lock(registry_mutex);
        auto it = registry().find({p, f});
        if (it != registry().end()) return it->second;
    }

    auto field = std::shared_ptr<FqField>(new FqField());
    field->p_ = p;
    field->f_ = f;
    field->q_ = q;

    // First monic irreducible in code order (constant term varying fastest).
    Poly modulus;
    for (uint64_t code = 0;; ++code) {
        if (code >= q) throw std::logic_error("no irreducible polynomial found");
        Poly m(f + 1, 0);
        uint64_t c = code;
        for (uint32_t i = 0; i < f; ++i) {
            m[i] = static_cast<uint32_t>(c % p);
            c /= p;
        }
        m[f] = 1;
        if (is_irreducible(m, p)) {
            modulus = m;
            break;
        }
    }
    field->modulus_ = modulus;

    // First primitive element in code order.
    const auto factors = prime_factors(q - 1);
    uint64_t gen_code = 0;
    for (uint64_t code = 2; code < q; ++code) {
        Poly cand(f, 0);
        uint64_t c = code;
        for (uint32_t i = 0; i < f; ++i) {
            cand[i] = static_cast<uint32_t>(c % p);
            c /= p;
        }
        bool primitive = true;
        for (uint64_t ell : factors) {
            Poly t = poly_powmod(cand, (q - 1) / ell, modulus, p);
            poly_trim(t);
            if (t.size() == 1 && t[0] == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen_code = code;
            break;
        }
    }
    if (gen_code == 0) throw std::logic_error("no primitive element found");
    field->generator_ = gen_code;

    // log/antilog tables by iterating generator powers.
    field->antilog_.assign(q - 1, 0);
    field->log_.assign(q, 0);
    {
        Poly g(f, 0);
        uint64_t c = gen_code;
        for (uint32_t i = 0; i < f; ++i) {
            g[i] = static_cast<uint32_t>(c % p);
            c /= p;
        }
        Poly cur{1};
        cur.resize(f, 0);
        for (uint64_t j = 0; j < q - 1; ++j) {
            uint64_t code = encode(cur, p, f);
            field->antilog_[j] = static_cast<uint32_t>(code);
            field->log_[code] = static_cast<uint32_t>(j);
            cur = poly_mulmod(cur, g, modulus, p);
        }
        if (encode(cur, p, f) != 1) throw std::logic_error("generator order mismatch");
    }

    // Tr(x^i) per basis monomial; Tr is F_p-linear.
    field->trace_basis_.assign(f, 0);
    for (uint32_t i = 0; i < f; ++i) {
        Poly xi(f, 0);
        xi[i] = 1;
        Poly acc(f, 0);
        Poly term = xi;
        for (uint32_t j = 0; j < f; ++j) {
            for (uint32_t t = 0; t < f; ++t) acc[t] = (acc[t] + term[t]) % p;
            term = poly_powmod(term, p, modulus, p);
        }
        poly_trim(acc);
        if (acc.size() > 1) throw std::logic_error("trace of basis element not in F_p");
        field->trace_basis_[i] = acc.empty() ? 0 : acc[0];
    }

    std::lock_guard<std::mutex> lock(registry_mutex);
    auto [it, inserted] = registry().emplace(std::make_pair(p, f), field);
    return it->second;
}

uint64_t FqField::add(uint64_t a, uint64_t b) const {
    uint64_t out = 0, mul = 1;
    for (uint32_t i = 0; i < f_; ++i) {
        uint64_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        out += s * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return out;
}

uint64_t FqField::sub(uint64_t a, uint64_t b) const {
    uint64_t out = 0, mul = 1;
    for (uint32_t i = 0; i < f_; ++i) {
        uint64_t s = a % p_ + p_ - b % p_;
        if (s >= p_) s -= p_;
        out += s * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return out;
}

uint64_t FqField::neg(uint64_t a) const { return sub(0, a); }

uint64_t FqField::mul(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    uint64_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return antilog_[e];
}

uint64_t FqField::inv(uint64_t a) const {
    if (a == 0) throw std::domain_error("inversion of zero field element");
    uint64_t e = log_[a];
    return antilog_[e == 0 ? 0 : q_ - 1 - e];
}

uint64_t FqField::pow(uint64_t a, long e) const {
    if (a == 0) {
        if (e > 0) return 0;
        if (e == 0) return 1;
        throw std::domain_error("inversion of zero field element");
    }
    __int128 t = static_cast<__int128>(log_[a]) * e;
    long m = static_cast<long>(q_ - 1);
    long r = static_cast<long>(t % m);
    if (r < 0) r += m;
    return antilog_[static_cast<uint64_t>(r)];
}

uint64_t FqField::dlog(uint64_t a) const {
    if (a == 0) throw std::domain_error("dlog of zero");
    return log_[a];
}

uint64_t FqField::element_from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<uint64_t>(r);
}

uint32_t FqField::trace_to_prime(uint64_t a) const {
    uint64_t out = 0;
    for (uint32_t i = 0; i < f_; ++i) {
        out += a % p_ * trace_basis_[i];
        a /= p_;
    }
    return static_cast<uint32_t>(out % p_);
}

std::vector<uint32_t> FqField::decode(uint64_t code) const {
    std::vector<uint32_t> d(f_);
    for (uint32_t i = 0; i < f_; ++i) {
        d[i] = static_cast<uint32_t>(code % p_);
        code /= p_;
    }
    return d;
}

FieldElement fe(const FieldPtr& k, uint64_t code) {
    if (code >= k->q()) throw std::invalid_argument("element code out of range");
    return FieldElement{k, code};
}

FieldElement fe_int(const FieldPtr& k, long v) { return FieldElement{k, k->element_from_int(v)}; }

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field->p() != b.field->p() || a.field->f() != b.field->f())
        throw std::invalid_argument("field mismatch");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement{a.field, a.field->add(a.code, b.code)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement{a.field, a.field->sub(a.code, b.code)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement{a.field, a.field->mul(a.code, b.code)};
}
FieldElement inv(const FieldElement& a) { return FieldElement{a.field, a.field->inv(a.code)}; }
FieldElement pow(const FieldElement& a, long e) {
    return FieldElement{a.field, a.field->pow(a.code, e)};
}

TowerEmbedding::TowerEmbedding(FieldPtr base, uint32_t r, uint64_t bound)
    : base_(std::move(base)), r_(r) {
    if (r == 0) throw std::invalid_argument("extension degree must be positive");
    ext_ = FqField::make(base_->p(), base_->f() * r, bound);
    const uint64_t q = base_->q();
    const uint64_t Q = ext_->q();
    const uint64_t s = (Q - 1) / (q - 1);

    if (r == 1) {
        gen_image_ = base_->generator();
        norm_dlog_factor_ = 1;
        embed_table_.resize(q);
        for (uint64_t c = 0; c < q; ++c) embed_table_[c] = c;
        return;
    }

    // Minimal polynomial of the base generator over F_p: prod (x - g^{p^i}).
    const uint32_t f = base_->f();
    std::vector<uint64_t> minpoly{1};  // coefficients as base codes
    for (uint32_t i = 0; i < f; ++i) {
        uint64_t conj = base_->pow(base_->generator(), 1);
        for (uint32_t t = 0; t < i; ++t) conj = base_->pow(conj, base_->p());
        std::vector<uint64_t> next(minpoly.size() + 1, 0);
        for (size_t j = 0; j < minpoly.size(); ++j) {
            next[j + 1] = base_->add(next[j + 1], minpoly[j]);
            next[j] = base_->sub(next[j], base_->mul(minpoly[j], conj));
        }
        minpoly = std::move(next);
    }
    for (uint64_t c : minpoly)
        if (c >= base_->p()) throw std::logic_error("generator minimal polynomial not over F_p");

    // Smallest antilog index of order q-1 whose element is a root of minpoly.
    uint64_t k0 = 0;
    for (uint64_t k = 1; k < q - 1 + 1; ++k) {
        uint64_t j = s * k % (Q - 1);
        if (std::gcd(j, Q - 1) != s) continue;
        uint64_t cand = ext_->antilog(j);
        uint64_t acc = 0;
        for (size_t t = minpoly.size(); t-- > 0;)
            acc = ext_->add(ext_->mul(acc, cand), minpoly[t]);  // coeffs lie in F_p
        if (acc == 0) {
            k0 = k;
            gen_image_ = cand;
            break;
        }
    }
    if (k0 == 0) throw std::logic_error("no embedding image for base generator");

    // dlog_base(N(G^t)) = t * k0^{-1} mod (q-1)
    uint64_t k0_inv = 1;
    {
        long long a = static_cast<long long>(k0 % (q - 1)), m = static_cast<long long>(q - 1);
        long long x0 = 1, x1 = 0, b = m;
        while (b != 0) {
            long long qq = a / b;
            a -= qq * b;
            std::swap(a, b);
            x0 -= qq * x1;
            std::swap(x0, x1);
        }
        x0 %= m;
        if (x0 < 0) x0 += m;
        k0_inv = static_cast<uint64_t>(x0);
    }
    norm_dlog_factor_ = k0_inv;

    embed_table_.assign(q, 0);
    for (uint64_t i = 0; i < q - 1; ++i)
        embed_table_[base_->antilog(i)] = ext_->antilog(s * k0 % (Q - 1) * i % (Q - 1));

    // construction-time verification: ring morphism + norm compatibility
    std::mt19937_64 rng(0xffe1d);
    auto check_pair = [&](uint64_t a, uint64_t b) {
        if (embed_table_[base_->add(a, b)] != ext_->add(embed_table_[a], embed_table_[b]))
            throw std::logic_error("embedding is not additive");
        if (embed_table_[base_->mul(a, b)] != ext_->mul(embed_table_[a], embed_table_[b]))
            throw std::logic_error("embedding is not multiplicative");
    };
    if (q <= 100) {
        for (uint64_t a = 0; a < q; ++a)
            for (uint64_t b = 0; b < q; ++b) check_pair(a, b);
    } else {
        for (int t = 0; t < 2000; ++t) check_pair(rng() % q, rng() % q);
    }
    for (int t = 0; t < 200; ++t) {
        uint64_t x = ext_->antilog(rng() % (Q - 1));
        uint64_t via_pow = ext_->pow(x, static_cast<long>(s));
        if (via_pow != embed_table_[norm(x)]) throw std::logic_error("norm map inconsistent");
    }
}

uint64_t TowerEmbedding::embed(uint64_t base_code) const { return embed_table_[base_code]; }

uint64_t TowerEmbedding::norm(uint64_t ext_code) const {
    if (ext_code == 0) return 0;
    const uint64_t q = base_->q();
    uint64_t t = ext_->dlog(ext_code) % (q - 1);
    return base_->antilog(t * norm_dlog_factor_ % (q - 1));
}

}  // namespace ffh
