#include "ffhyp/varieties.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ffh {

namespace {

long mod_pos(long v, long m) {
    long r = v % m;
    return r < 0 ? r + m : r;
}

uint64_t checked_pow(uint64_t base, unsigned e, uint64_t cap) {
    uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (base != 0 && v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

}  // namespace

Family family_from_string(const std::string& s) {
    if (s == "CD") return Family::CD;
    if (s == "SD") return Family::SD;
    if (s == "SA") return Family::SA;
    if (s == "SB") return Family::SB;
    if (s == "SC") return Family::SC;
    if (s == "S4") return Family::S4;
    if (s == "XD") return Family::XD;
    throw std::invalid_argument("unknown family: " + s);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::CD: return "CD";
        case Family::SD: return "SD";
        case Family::SA: return "SA";
        case Family::SB: return "SB";
        case Family::SC: return "SC";
        case Family::S4: return "S4";
        case Family::XD: return "XD";
    }
    return "?";
}

unsigned VarietySpec::n() const {
    switch (family) {
        case Family::CD:
        case Family::XD:
        case Family::SD:
        case Family::SC:
            return static_cast<unsigned>(exps.size()) - 2;
        case Family::SA:
        case Family::SB:
            return static_cast<unsigned>((exps.size() - 1) / 2);
        case Family::S4:
            return 2;
    }
    return 0;
}

unsigned VarietySpec::dim() const {
    switch (family) {
        case Family::CD:
        case Family::XD:
            return 1;
        case Family::S4:
            return 2;
        default:
            return n();
    }
}

long VarietySpec::e_infty() const {
    long sum = 0;
    for (long e : exps) sum += e;
    return std::labs(sum - static_cast<long>(d));
}

void VarietySpec::validate() const {
    if (!field) throw std::invalid_argument("variety needs a base field");
    const uint64_t q = field->q();
    if (d == 0 || (q - 1) % d != 0) throw std::invalid_argument("d must divide q-1");
    size_t want = 0;
    switch (family) {
        case Family::CD:
        case Family::XD:
        case Family::SD:
        case Family::SC: want = lambda.size() + 2; break;
        case Family::SA:
        case Family::SB: want = 2 * lambda.size() + 1; break;
        case Family::S4: want = 4; break;
    }
    if (exps.size() != want || lambda.empty())
        throw std::invalid_argument("exponent/lambda arity mismatch");
    if (family == Family::S4 && lambda.size() != 2)
        throw std::invalid_argument("S4 takes two lambda arguments");
    for (long e : exps)
        if (e < 0) throw std::invalid_argument("exponents must be non-negative");
    for (uint64_t l : lambda)
        if (l == 0 || l >= q) throw std::invalid_argument("lambda must lie in k^x");

    if (family == Family::CD || family == Family::XD) {
        std::set<uint64_t> seen;
        for (uint64_t l : lambda) {
            if (l == 1) throw std::invalid_argument("lambda_i must avoid 0 and 1");
            if (!seen.insert(l).second)
                throw std::invalid_argument("lambda_i must be pairwise distinct");
        }
    }
    if (family == Family::S4 && (lambda[0] == 1 || lambda[1] == 1))
        throw std::invalid_argument("S4 requires lambda_i != 1");
    if (family == Family::XD) {
        if (e_infty() == 0) throw std::invalid_argument("XD requires e > 0");
        if (!formula_hypotheses())
            throw std::invalid_argument("XD requires the coprimality package");
    }
}

bool VarietySpec::formula_hypotheses() const {
    const long dd = static_cast<long>(d);
    auto cop = [&](long v) { return std::gcd(mod_pos(v, dd), dd) == 1; };
    const unsigned nn = n();
    switch (family) {
        case Family::CD: {
            if (!cop(exps.back())) return false;                 // c
            for (unsigned i = 1; i <= nn; ++i)
                if (!cop(exps[i])) return false;                 // b_i
            return true;
        }
        case Family::XD: {
            if (!cop(exps[0]) || !cop(exps.back())) return false;
            for (unsigned i = 1; i <= nn; ++i)
                if (!cop(exps[i])) return false;
            return e_infty() > 0 && cop(e_infty());
        }
        case Family::SD:
            return cop(exps[0]) && cop(exps.back());             // a, c
        case Family::SA: {
            if (!cop(exps[0])) return false;                     // a
            for (unsigned i = 0; i < nn; ++i)
                if (!cop(exps[1 + nn + i])) return false;        // c_i
            return true;
        }
        case Family::SB: {
            for (unsigned i = 0; i < nn; ++i)
                if (!cop(exps[i])) return false;                 // a_i
            return cop(exps.back());                             // c
        }
        case Family::SC:
            return cop(exps[0]) && cop(exps[1]);                 // a, b
        case Family::S4: {
            long a = exps[0], b = exps[1], c1 = exps[2], c2 = exps[3];
            return cop(a) && cop(b) && cop(c1 - a) && cop(c1 - b) && cop(c2 - a) &&
                   cop(c2 - b);
        }
    }
    return false;
}

bool VarietySpec::s4_exponents_nondegenerate() const {
    long a = exps[0], b = exps[1], c1 = exps[2], c2 = exps[3];
    for (long v : {a, b, c1 - a, c2 - b, a - c1 - c2, b - c1 - c2, c1 + c2 - a - b})
        if (mod_pos(v, static_cast<long>(d)) == 0) return false;
    return true;
}

namespace {

std::mutex tower_mutex;
std::map<std::tuple<uint32_t, uint32_t, unsigned>, std::unique_ptr<TowerEmbedding>>&
tower_cache() {
    static std::map<std::tuple<uint32_t, uint32_t, unsigned>,
                    std::unique_ptr<TowerEmbedding>> c;
    return c;
}

// Factor list of the defining polynomial at one coordinate tuple; exponent-0
// factors (possible for S4 after reduction mod d) are omitted since x^0 = 1.
void factors_at(const VarietySpec& V, const FqField& K,
                const std::vector<uint64_t>& lam, const std::vector<uint64_t>& u,
                std::vector<std::pair<uint64_t, long>>& out) {
    out.clear();
    const unsigned nn = V.n();
    switch (V.family) {
        case Family::CD:
        case Family::XD: {
            out.emplace_back(u[0], V.exps[0]);
            out.emplace_back(K.sub(1, u[0]), V.exps.back());
            for (unsigned i = 0; i < nn; ++i)
                out.emplace_back(K.sub(1, K.mul(lam[i], u[0])), V.exps[1 + i]);
            return;
        }
        case Family::SD: {
            uint64_t lam_dot = 0, plain = 0;
            for (unsigned i = 0; i < nn; ++i) {
                lam_dot = K.add(lam_dot, K.mul(lam[i], u[i]));
                plain = K.add(plain, u[i]);
                out.emplace_back(u[i], V.exps[1 + i]);
            }
            out.emplace_back(K.sub(1, lam_dot), V.exps[0]);
            out.emplace_back(K.sub(1, plain), V.exps.back());
            return;
        }
        case Family::SA: {
            uint64_t lam_dot = 0;
            for (unsigned i = 0; i < nn; ++i) {
                lam_dot = K.add(lam_dot, K.mul(lam[i], u[i]));
                out.emplace_back(u[i], V.exps[1 + i]);
                out.emplace_back(K.sub(1, u[i]), V.exps[1 + nn + i]);
            }
            out.emplace_back(K.sub(1, lam_dot), V.exps[0]);
            return;
        }
        case Family::SB: {
            uint64_t plain = 0;
            for (unsigned i = 0; i < nn; ++i) {
                plain = K.add(plain, u[i]);
                out.emplace_back(K.sub(1, K.mul(lam[i], u[i])), V.exps[i]);
                out.emplace_back(u[i], V.exps[nn + i]);
            }
            out.emplace_back(K.sub(1, plain), V.exps.back());
            return;
        }
        case Family::SC: {
            uint64_t plain = 0, prod = 1, mix = 0;
            for (unsigned i = 0; i < nn; ++i) {
                plain = K.add(plain, u[i]);
                prod = K.mul(prod, u[i]);
                out.emplace_back(u[i], V.exps[2 + i]);
            }
            for (unsigned i = 0; i < nn; ++i) {
                uint64_t others = 1;
                for (unsigned j = 0; j < nn; ++j)
                    if (j != i) others = K.mul(others, u[j]);
                mix = K.add(mix, K.mul(lam[i], others));
            }
            out.emplace_back(K.sub(1, plain), V.exps[0]);
            out.emplace_back(K.sub(prod, mix), V.exps[1]);
            return;
        }
        case Family::S4: {
            const long dd = static_cast<long>(V.d);
            long a = V.exps[0], b = V.exps[1], c1 = V.exps[2], c2 = V.exps[3];
            const long red[7] = {mod_pos(a, dd),           mod_pos(b, dd),
                                 mod_pos(c1 - a, dd),      mod_pos(c2 - b, dd),
                                 mod_pos(a - c1 - c2, dd), mod_pos(b - c1 - c2, dd),
                                 mod_pos(c1 + c2 - a - b, dd)};
            uint64_t l1u = K.mul(lam[0], u[0]), l2v = K.mul(lam[1], u[1]);
            const uint64_t fac[7] = {u[0],           u[1],
                                     K.sub(1, u[0]), K.sub(1, u[1]),
                                     K.sub(1, l1u),  K.sub(1, l2v),
                                     K.sub(K.sub(1, l1u), l2v)};
            for (int i = 0; i < 7; ++i)
                if (red[i] != 0) out.emplace_back(fac[i], red[i]);
            return;
        }
    }
}

struct ExtContext {
    const TowerEmbedding* tower;
    FieldPtr K;
    std::vector<uint64_t> lam;     // lambda embedded into k_r
    uint64_t nf;                   // dlog multiplier of the norm map
};

ExtContext ext_context(const VarietySpec& V, unsigned r, uint64_t field_bound) {
    const TowerEmbedding& t = tower_for(V.field, r, field_bound);
    ExtContext cx{&t, t.ext(), {}, t.norm_dlog_factor()};
    for (uint64_t l : V.lambda) cx.lam.push_back(t.embed(l));
    return cx;
}

std::string charsum_key(const VarietySpec& V, unsigned m, unsigned r) {
    std::string key = family_to_string(V.family);
    key += ':' + std::to_string(V.field->p()) + '^' + std::to_string(V.field->f());
    key += ":d" + std::to_string(V.d) + ":m" + std::to_string(m) + ":r" + std::to_string(r);
    for (long e : V.exps) key += ',' + std::to_string(e);
    key += ';';
    for (uint64_t l : V.lambda) key += ',' + std::to_string(l);
    return key;
}

std::mutex charsum_mutex;

// sum over affine coordinates of k_r of phi_{d,r}^m(f(coords)), as a bucket
// count over zeta_d classes; no corrections, no constants. Memoized: the
// count route and the theorem-extraction route both consume the same sums.
CycloNumber raw_char_sum(const VarietySpec& V, unsigned m, unsigned r,
                         const CountBudget& budget) {
    static std::map<std::string, CycloNumber> memo;
    const std::string key = charsum_key(V, m, r);
    {
        std::lock_guard<std::mutex> lock(charsum_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    CycloNumber value = [&] {
    ExtContext cx = ext_context(V, r, budget.field_bound);
    const FqField& K = *cx.K;
    const uint64_t Q = K.q();
    const unsigned dim = V.dim();
    if (checked_pow(Q, dim, budget.point_budget) > budget.point_budget)
        throw std::invalid_argument("point enumeration budget exceeded");
    const uint64_t d = V.d;
    const uint64_t cls = m % d * (cx.nf % d) % d;

    std::vector<long> counts(d, 0);
    std::vector<uint64_t> u(dim, 0);
    std::vector<std::pair<uint64_t, long>> factors;
    factors.reserve(V.exps.size() + 2);
    while (true) {
        factors_at(V, K, cx.lam, u, factors);
        uint64_t e = 0;
        bool dead = false;
        for (const auto& [code, ex] : factors) {
            if (code == 0) {
                dead = true;
                break;
            }
            e += static_cast<uint64_t>(ex) % d * (K.dlog(code) % d) % d;
        }
        if (!dead) counts[e % d * cls % d] += 1;

        unsigned pos = 0;
        while (pos < dim && ++u[pos] == Q) u[pos++] = 0;
        if (pos == dim) break;
    }
    return CycloNumber::from_exponent_counts(static_cast<unsigned>(d), counts);
    }();
    std::lock_guard<std::mutex> lock(charsum_mutex);
    return memo.emplace(key, std::move(value)).first->second;
}

MultChar ext_char_from_class(const FieldPtr& K, unsigned d, long cls) {
    uint64_t m = K->q() - 1;
    return MultChar{
        K, static_cast<uint64_t>(mod_pos(cls, static_cast<long>(d))) * (m / d) % m};
}

CycloNumber eval_class(const FqField& K, unsigned d, long cls, uint64_t code) {
    if (code == 0) return CycloNumber();
    long e = mod_pos(cls, static_cast<long>(d)) *
             static_cast<long>(K.dlog(code) % d) % static_cast<long>(d);
    return CycloNumber::root_of_unity(d, e);
}

// S_0, S_1, S_2 at level r, kept in Q(zeta_d) by class arithmetic.
std::vector<CycloNumber> s4_linear_at_level(const VarietySpec& V, unsigned m, unsigned r,
                                            uint64_t field_bound) {
    ExtContext cx = ext_context(V, r, field_bound);
    const FqField& K = *cx.K;
    const unsigned d = V.d;
    const long dd = static_cast<long>(d);
    const long nf = static_cast<long>(cx.nf % d);
    const long mm = static_cast<long>(m % d);
    long a = mod_pos(mm * V.exps[0] * nf, dd);
    long b = mod_pos(mm * V.exps[1] * nf, dd);
    long c1 = mod_pos(mm * V.exps[2] * nf, dd);
    long c2 = mod_pos(mm * V.exps[3] * nf, dd);
    uint64_t x = cx.lam[0], y = cx.lam[1];
    auto jac = [&](long e1, long e2) {
        return jacobi_direct(
            {ext_char_from_class(cx.K, d, e1), ext_char_from_class(cx.K, d, e2)});
    };
    CycloNumber s0 = eval_class(K, d, a + b, K.element_from_int(-1)) *
                     jac(a - c2, b - c1) * eval_class(K, d, -c1, x) *
                     eval_class(K, d, -c2, y);
    CycloNumber s1 = jac(c1 + c2 - a - b, b) * eval_class(K, d, -c1, x) *
                     eval_class(K, d, c1 - a, K.sub(x, 1)) * eval_class(K, d, -b, y);
    CycloNumber s2 = jac(c1 + c2 - a - b, a) * eval_class(K, d, -c2, y) *
                     eval_class(K, d, c2 - b, K.sub(y, 1)) * eval_class(K, d, -a, x);
    return {s0, s1, s2};
}

CycloNumber qpow_cyclo(uint64_t q, unsigned e) {
    Rational v = 1;
    for (unsigned i = 0; i < e; ++i) v *= Rational(static_cast<long>(q));
    return CycloNumber(v);
}

}  // namespace

const TowerEmbedding& tower_for(const FieldPtr& base, unsigned r, uint64_t field_bound) {
    std::lock_guard<std::mutex> lock(tower_mutex);
    auto key = std::make_tuple(base->p(), base->f(), r);
    auto it = tower_cache().find(key);
    if (it != tower_cache().end()) return *it->second;
    auto t = std::make_unique<TowerEmbedding>(base, r, field_bound);
    return *tower_cache().emplace(key, std::move(t)).first->second;
}

long brute_count(const VarietySpec& V, unsigned r, const CountBudget& budget) {
    V.validate();
    ExtContext cx = ext_context(V, r, budget.field_bound);
    const FqField& K = *cx.K;
    const uint64_t Q = K.q();
    const unsigned dim = V.dim();
    if (checked_pow(Q, dim, budget.point_budget) > budget.point_budget)
        throw std::invalid_argument("point enumeration budget exceeded");
    const uint64_t d = V.d;

    long total = 0;
    std::vector<uint64_t> u(dim, 0);
    std::vector<std::pair<uint64_t, long>> factors;
    factors.reserve(V.exps.size() + 2);
    while (true) {
        factors_at(V, K, cx.lam, u, factors);
        uint64_t f = 1;
        for (const auto& [code, ex] : factors) f = K.mul(f, K.pow(code, ex));
        if (f == 0)
            total += 1;                               // y = 0
        else if (K.dlog(f) % d == 0)
            total += static_cast<long>(d);
        unsigned pos = 0;
        while (pos < dim && ++u[pos] == Q) u[pos++] = 0;
        if (pos == dim) break;
    }
    if (V.family == Family::XD) total += 1;           // the point at infinity
    return total;
}

ChiCount chi_fixed_point(const VarietySpec& V, unsigned m, unsigned r,
                         const CountBudget& budget) {
    V.validate();
    ExtContext cx = ext_context(V, r, budget.field_bound);
    const FqField& K = *cx.K;
    const uint64_t Q = K.q();
    const uint64_t d = V.d;

    // smallest s with d(q^r - 1) | q^{rs} - 1
    const uint64_t modulus = d * (Q - 1);
    unsigned s = 0;
    {
        uint64_t acc = 1;
        for (unsigned cand = 1; cand <= 64; ++cand) {
            acc = static_cast<uint64_t>(
                static_cast<__uint128_t>(acc) * (Q % modulus) % modulus);
            if (acc == 1) {
                s = cand;
                break;
            }
        }
        if (s == 0) throw std::invalid_argument("no working extension for fixed points");
    }
    const TowerEmbedding& up = tower_for(cx.K, s, budget.field_bound);
    const FqField& W = *up.ext();
    const uint64_t Qw = W.q();
    const unsigned dim = V.dim();
    if (checked_pow(Q, dim, budget.point_budget / d) > budget.point_budget / d)
        throw std::invalid_argument("point enumeration budget exceeded");

    // mu_d lives in the base field; locate its image in the working field.
    std::map<uint64_t, unsigned> xi_index;
    for (unsigned t = 0; t < d; ++t) {
        uint64_t xi_base =
            V.field->antilog(static_cast<uint64_t>(t) * (V.field->q() - 1) / d);
        xi_index[up.embed(cx.tower->embed(xi_base))] = t;
    }

    std::vector<long> bucket(d, 0);
    std::vector<uint64_t> u(dim, 0);
    std::vector<std::pair<uint64_t, long>> factors;
    factors.reserve(V.exps.size() + 2);
    while (true) {
        factors_at(V, K, cx.lam, u, factors);
        uint64_t f = 1;
        for (const auto& [code, ex] : factors) f = K.mul(f, K.pow(code, ex));
        if (f == 0) {
            for (unsigned t = 0; t < d; ++t) bucket[t] += 1;   // y = 0, fixed by all xi
        } else {
            uint64_t L = W.dlog(up.embed(f));
            if (L % d == 0) {
                for (uint64_t j = 0; j < d; ++j) {
                    uint64_t ylog = (L / d + j * ((Qw - 1) / d)) % (Qw - 1);
                    uint64_t frob = ylog * ((Q - 1) % (Qw - 1)) % (Qw - 1);
                    auto it = xi_index.find(W.antilog(frob));
                    if (it == xi_index.end())
                        throw std::logic_error("frobenius quotient left mu_d");
                    bucket[it->second] += 1;
                }
            }
        }
        unsigned pos = 0;
        while (pos < dim && ++u[pos] == Q) u[pos++] = 0;
        if (pos == dim) break;
    }

    std::vector<long> counts(d, 0);
    for (unsigned t = 0; t < d; ++t) counts[m % d * t % d] += bucket[t];
    CycloNumber value = CycloNumber::from_exponent_counts(static_cast<unsigned>(d), counts);
    value *= CycloNumber(Rational(1, static_cast<long>(d)));
    if (V.family == Family::XD && m % d == 0) value += CycloNumber(1L);
    return ChiCount{m, r, value, CountRoute::FixedPoint};
}

ChiCount chi_char_sum(const VarietySpec& V, unsigned m, unsigned r,
                      const CountBudget& budget) {
    V.validate();
    if (m % V.d == 0) {
        CycloNumber value =
            qpow_cyclo(tower_for(V.field, r, budget.field_bound).ext()->q(), V.dim());
        if (V.family == Family::XD) value += CycloNumber(1L);
        return ChiCount{m, r, value, CountRoute::CharSum};
    }
    return ChiCount{m, r, raw_char_sum(V, m, r, budget), CountRoute::CharSum};
}

ChiCount chi_formula(const VarietySpec& V, unsigned m, unsigned r,
                     const CountBudget& budget) {
    V.validate();
    if (!V.formula_hypotheses())
        throw std::invalid_argument("family theorem gcd hypotheses violated");
    const uint64_t d = V.d;
    if (m % d == 0) {
        CycloNumber value =
            qpow_cyclo(tower_for(V.field, r, budget.field_bound).ext()->q(), V.dim());
        if (V.family == Family::XD) value += CycloNumber(1L);
        return ChiCount{m, r, value, CountRoute::Formula};
    }

    ExtContext cx = ext_context(V, r, budget.field_bound);
    const FieldPtr& K = cx.K;
    const uint64_t Q = K->q();
    const unsigned nn = V.n();
    unsigned tuple_count = (V.family == Family::S4) ? 2u : nn;
    if (checked_pow(Q - 1, tuple_count, budget.formula_tuple_budget) >
        budget.formula_tuple_budget)
        throw std::invalid_argument("formula route tuple budget exceeded");

    const TowerEmbedding& t = *cx.tower;
    MultChar phid = char_of_exact_order(V.field, d);
    auto up = [&](long e) {
        return norm_pullback(
            phid.pow(mod_pos(static_cast<long>(m) * e, static_cast<long>(d))), t);
    };
    const GaussTable& table = gauss_table(K);
    const long sign_n = (nn % 2 == 0) ? 1L : -1L;

    CycloNumber value;
    switch (V.family) {
        case Family::CD:
        case Family::XD: {
            long a = V.exps[0], c = V.exps.back();
            LauricellaParams p{LauricellaKind::D, {up(a)}, {}, {up(a + c)}, nn};
            for (unsigned i = 0; i < nn; ++i) p.b.push_back(up(-V.exps[1 + i]));
            CycloNumber j = jacobi_direct({up(a), up(c)});
            value = -(j * lauricella(table, p, cx.lam));
            break;
        }
        case Family::SD: {
            long a = V.exps[0], c = V.exps.back();
            long bsum = 0;
            LauricellaParams p{LauricellaKind::D, {up(-a)}, {}, {}, nn};
            std::vector<MultChar> js;
            for (unsigned i = 0; i < nn; ++i) {
                p.b.push_back(up(V.exps[1 + i]));
                js.push_back(up(V.exps[1 + i]));
                bsum += V.exps[1 + i];
            }
            p.c = {up(bsum + c)};
            js.push_back(up(c));
            value = CycloNumber(sign_n) * jacobi_direct(js) * lauricella(table, p, cx.lam);
            break;
        }
        case Family::SA: {
            long a = V.exps[0];
            LauricellaParams p{LauricellaKind::A, {up(-a)}, {}, {}, nn};
            CycloNumber jprod{1L};
            for (unsigned i = 0; i < nn; ++i) {
                long b = V.exps[1 + i], c = V.exps[1 + nn + i];
                p.b.push_back(up(b));
                p.c.push_back(up(b + c));
                jprod *= jacobi_direct({up(b), up(c)});
            }
            value = CycloNumber(sign_n) * jprod * lauricella(table, p, cx.lam);
            break;
        }
        case Family::SB: {
            long c = V.exps.back();
            long bsum = 0;
            LauricellaParams p{LauricellaKind::B, {}, {}, {}, nn};
            std::vector<MultChar> js;
            for (unsigned i = 0; i < nn; ++i) {
                p.a.push_back(up(-V.exps[i]));
                p.b.push_back(up(V.exps[nn + i]));
                js.push_back(up(V.exps[nn + i]));
                bsum += V.exps[nn + i];
            }
            p.c = {up(bsum + c)};
            js.push_back(up(c));
            value = CycloNumber(sign_n) * jacobi_direct(js) * lauricella(table, p, cx.lam);
            break;
        }
        case Family::SC: {
            long a = V.exps[0], b = V.exps[1];
            long csum = 0;
            LauricellaParams p{LauricellaKind::C, {}, {up(-b)}, {}, nn};
            std::vector<MultChar> js{up(a)};
            for (unsigned i = 0; i < nn; ++i) {
                long ci = V.exps[2 + i];
                p.c.push_back(up(-(b + ci)));
                js.push_back(up(b + ci));
                csum += ci;
            }
            p.a = {up(-(a + static_cast<long>(nn) * b + csum))};
            value = CycloNumber(sign_n) * jacobi_direct(js) * lauricella(table, p, cx.lam);
            break;
        }
        case Family::S4: {
            MultChar ca = up(V.exps[0]), cb = up(V.exps[1]);
            MultChar cc1 = up(V.exps[2]), cc2 = up(V.exps[3]);
            uint64_t x = cx.lam[0], y = cx.lam[1];
            uint64_t a1 = K->mul(x, K->sub(1, y));
            uint64_t a2 = K->mul(y, K->sub(1, x));
            f4::Chars ch{ca, cb, cc1, cc2};
            value = f4::bigJ(ch) * appell(table, 4, {ca, cb, cc1, cc2}, a1, a2);
            value += f4::S0(ch, x, y) + f4::S1(ch, x, y) + f4::S2(ch, x, y);
            break;
        }
    }
    return ChiCount{m, r, value, CountRoute::Formula};
}

CycloNumber theorem_lauricella_over_ext(const VarietySpec& V, unsigned m, unsigned r,
                                        const CountBudget& budget) {
    V.validate();
    if (!V.formula_hypotheses())
        throw std::invalid_argument("family theorem gcd hypotheses violated");
    if (m % V.d == 0) throw std::invalid_argument("lauricella factor needs m != 0");
    const unsigned d = V.d;
    ExtContext cx = ext_context(V, r, budget.field_bound);
    const long dd = static_cast<long>(d);
    const long nf = static_cast<long>(cx.nf % d);
    const long mm = static_cast<long>(m % d);
    auto cls_char = [&](long e) {
        return ext_char_from_class(cx.K, d, mod_pos(mm * e * nf, dd));
    };
    const unsigned nn = V.n();
    const long sign_n = (nn % 2 == 0) ? 1L : -1L;
    CycloNumber charsum = raw_char_sum(V, m, r, budget);

    switch (V.family) {
        case Family::CD:
        case Family::XD: {
            CycloNumber j = jacobi_direct({cls_char(V.exps[0]), cls_char(V.exps.back())});
            return -(charsum * j.inverse());
        }
        case Family::SD:
        case Family::SB: {
            std::vector<MultChar> js;
            for (unsigned i = 0; i < nn; ++i)
                js.push_back(cls_char(V.exps[V.family == Family::SD ? 1 + i : nn + i]));
            js.push_back(cls_char(V.exps.back()));
            return CycloNumber(sign_n) * charsum * jacobi_direct(js).inverse();
        }
        case Family::SA: {
            CycloNumber jprod{1L};
            for (unsigned i = 0; i < nn; ++i)
                jprod *=
                    jacobi_direct({cls_char(V.exps[1 + i]), cls_char(V.exps[1 + nn + i])});
            return CycloNumber(sign_n) * charsum * jprod.inverse();
        }
        case Family::SC: {
            std::vector<MultChar> js{cls_char(V.exps[0])};
            for (unsigned i = 0; i < nn; ++i)
                js.push_back(cls_char(V.exps[1] + V.exps[2 + i]));
            return CycloNumber(sign_n) * charsum * jacobi_direct(js).inverse();
        }
        case Family::S4: {
            std::vector<CycloNumber> s = s4_linear_at_level(V, m, r, budget.field_bound);
            CycloNumber J =
                jacobi_direct({cls_char(V.exps[0]), cls_char(V.exps[2] - V.exps[0])}) *
                jacobi_direct({cls_char(V.exps[1]), cls_char(V.exps[3] - V.exps[1])});
            return (charsum - s[0] - s[1] - s[2]) * J.inverse();
        }
    }
    throw std::logic_error("unreachable");
}

CycloNumber corollary_constant(const VarietySpec& V, unsigned m) {
    V.validate();
    MultChar phid = char_of_exact_order(V.field, V.d);
    auto base = [&](long e) {
        return phid.pow(mod_pos(static_cast<long>(m) * e, static_cast<long>(V.d)));
    };
    const unsigned nn = V.n();
    switch (V.family) {
        case Family::CD:
        case Family::XD:
            return jacobi_direct({base(V.exps[0]), base(V.exps.back())});
        case Family::SD:
        case Family::SB: {
            std::vector<MultChar> js;
            for (unsigned i = 0; i < nn; ++i)
                js.push_back(base(V.exps[V.family == Family::SD ? 1 + i : nn + i]));
            js.push_back(base(V.exps.back()));
            return jacobi_direct(js);
        }
        case Family::SA: {
            CycloNumber jprod{1L};
            for (unsigned i = 0; i < nn; ++i)
                jprod *= jacobi_direct({base(V.exps[1 + i]), base(V.exps[1 + nn + i])});
            return jprod;
        }
        case Family::SC: {
            std::vector<MultChar> js{base(V.exps[0])};
            for (unsigned i = 0; i < nn; ++i)
                js.push_back(base(V.exps[1] + V.exps[2 + i]));
            return jacobi_direct(js);
        }
        case Family::S4:
            return jacobi_direct({base(V.exps[0]), base(V.exps[2] - V.exps[0])}) *
                   jacobi_direct({base(V.exps[1]), base(V.exps[3] - V.exps[1])});
    }
    throw std::logic_error("unreachable");
}

std::vector<CycloNumber> s4_linear_constants(const VarietySpec& V, unsigned m) {
    V.validate();
    if (V.family != Family::S4)
        throw std::invalid_argument("linear constants exist only for S4");
    return s4_linear_at_level(V, m, 1, FqField::kDefaultBound);
}

}  // namespace ffh
