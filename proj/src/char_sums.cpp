#include "ffhyp/char_sums.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace ffh {

GaussTable::GaussTable(FieldPtr field, uint64_t twist)
    : field_(std::move(field)), twist_(twist), m_(field_->q() - 1) {
    if (twist_ == 0 || twist_ >= field_->q())
        throw std::invalid_argument("twist must lie in k^x");
    const uint32_t p = field_->p();
    value_order_ = static_cast<unsigned>(p * m_);

    // zeta_p = zeta_N^{q-1}, zeta_{q-1} = zeta_N^p with N = p(q-1).
    // Each summand of g(phi^k) is the monomial zeta_p^{Tr(t g^j)} zeta_{q-1}^{kj}.
    std::vector<uint32_t> trace_of_power(m_);
    for (uint64_t j = 0; j < m_; ++j)
        trace_of_power[j] = field_->trace_to_prime(field_->mul(twist_, field_->antilog(j)));

    g_.reserve(m_);
    std::vector<long> counts(value_order_);
    for (uint64_t k = 0; k < m_; ++k) {
        std::fill(counts.begin(), counts.end(), 0);
        for (uint64_t j = 0; j < m_; ++j) {
            uint64_t e = (static_cast<uint64_t>(trace_of_power[j]) * m_ + p * (k * j % m_)) %
                         value_order_;
            counts[e] -= 1;
        }
        g_.push_back(CycloNumber::from_exponent_counts(value_order_, counts));
    }

    const Rational q_rat(static_cast<long>(field_->q()));
    g_circ_ = g_;
    g_circ_[0] = g_[0] * CycloNumber(q_rat);

    // 1/g(eta) = eta(-1) g(eta^-1) / q for eta != eps; every entry is then
    // verified against the directly summed table.
    const uint64_t dlog_m1 = field_->dlog(field_->element_from_int(-1));
    const CycloNumber inv_q{Rational(1) / q_rat};
    inv_g_.resize(m_);
    inv_g_circ_.resize(m_);
    inv_g_[0] = CycloNumber(1L);
    inv_g_circ_[0] = inv_q;
    for (uint64_t k = 1; k < m_; ++k) {
        inv_g_[k] = root_qm1(static_cast<long>(k * dlog_m1 % m_)) * g_[m_ - k] * inv_q;
        inv_g_circ_[k] = inv_g_[k];
    }
    for (uint64_t k = 0; k < m_; ++k)
        if (g_[k] * inv_g_[k] != CycloNumber(1L))
            throw std::logic_error("inverse Gauss table failed verification");
}

CycloNumber GaussTable::root_qm1(long e) const {
    long m = static_cast<long>(m_);
    long r = e % m;
    if (r < 0) r += m;
    return CycloNumber::root_of_unity(value_order_, static_cast<long>(field_->p()) * r);
}

CycloNumber GaussTable::eval(const MultChar& chi, uint64_t code) const {
    if (code == 0) return CycloNumber();
    return root_qm1(static_cast<long>(chi.exponent * (field_->dlog(code) % m_) % m_));
}

namespace {
std::mutex table_mutex;
std::map<std::tuple<uint32_t, uint32_t, uint64_t>, std::unique_ptr<GaussTable>>& table_cache() {
    static std::map<std::tuple<uint32_t, uint32_t, uint64_t>, std::unique_ptr<GaussTable>> c;
    return c;
}
}  // namespace

const GaussTable& gauss_table(const FieldPtr& field, uint64_t twist) {
    std::lock_guard<std::mutex> lock(table_mutex);
    auto key = std::make_tuple(field->p(), field->f(), twist);
    auto it = table_cache().find(key);
    if (it != table_cache().end()) return *it->second;
    auto tab = std::make_unique<GaussTable>(field, twist);
    return *table_cache().emplace(key, std::move(tab)).first->second;
}

CycloNumber gauss(const GaussTable& t, const MultChar& eta) { return t.g(eta.exponent); }

CycloNumber gauss_circ(const GaussTable& t, const MultChar& eta) {
    return t.g_circ(eta.exponent);
}

ExpoBucket::ExpoBucket(uint64_t m, const std::vector<uint64_t>& exponents) : m_(m) {
    uint64_t g = m;
    for (uint64_t e : exponents) g = std::gcd(g, e);
    step_ = g == 0 ? m : g;
    counts_.assign(m_ / step_, 0);
}

void ExpoBucket::add(uint64_t expo_mod_m, long weight) {
    counts_[expo_mod_m / step_] += weight;
}

CycloNumber ExpoBucket::value() const {
    return CycloNumber::from_exponent_counts(static_cast<unsigned>(m_ / step_), counts_);
}

CycloNumber jacobi_direct(const std::vector<MultChar>& etas) {
    const size_t n = etas.size();
    if (n < 2) throw std::invalid_argument("jacobi sum needs at least two characters");
    const FieldPtr& k = etas[0].field;
    std::vector<uint64_t> exps;
    for (const MultChar& e : etas) {
        if (e.field->q() != k->q()) throw std::invalid_argument("character field mismatch");
        exps.push_back(e.exponent);
    }
    const uint64_t m = k->q() - 1;
    ExpoBucket bucket(m, exps);

    std::vector<uint64_t> idx(n - 1, 0);
    while (true) {
        uint64_t sum = 0, expo = 0;
        for (size_t i = 0; i < n - 1; ++i) {
            sum = k->add(sum, k->antilog(idx[i]));
            expo += exps[i] * idx[i] % m;
        }
        uint64_t last = k->sub(1, sum);
        if (last != 0) {
            expo += exps[n - 1] * (k->dlog(last) % m) % m;
            bucket.add(expo % m);
        }
        size_t pos = 0;
        while (pos < n - 1 && ++idx[pos] == m) idx[pos++] = 0;
        if (pos == n - 1) break;
    }
    CycloNumber out = bucket.value();
    if (n % 2 == 0) out = -out;
    return out;
}

CycloNumber jacobi_via_gauss(const GaussTable& t, const std::vector<MultChar>& etas) {
    const size_t n = etas.size();
    if (n < 2) throw std::invalid_argument("jacobi sum needs at least two characters");
    const uint64_t m = t.field()->q() - 1;
    bool all_trivial = true;
    uint64_t total = 0;
    for (const MultChar& e : etas) {
        if (e.field->q() != t.field()->q()) throw std::invalid_argument("character field mismatch");
        if (!e.is_trivial()) all_trivial = false;
        total = (total + e.exponent) % m;
    }
    if (all_trivial) {
        // (1 - (1-q)^n) / q
        Rational q(static_cast<long>(t.field()->q()));
        Rational pw = 1;
        for (size_t i = 0; i < n; ++i) pw *= 1 - q;
        return CycloNumber((1 - pw) / q);
    }
    CycloNumber out = t.inv_g_circ(total);
    for (const MultChar& e : etas) out *= t.g(e.exponent);
    auto low = out.descend(static_cast<unsigned>(m));
    if (!low) throw std::logic_error("jacobi sum not in Q(zeta_{q-1})");
    return *low;
}

CycloNumber poch(const GaussTable& t, const MultChar& a, const MultChar& nu) {
    return t.g(a.exponent + nu.exponent) * t.inv_g(a.exponent);
}

CycloNumber poch_circ(const GaussTable& t, const MultChar& a, const MultChar& nu) {
    return t.g_circ(a.exponent + nu.exponent) * t.inv_g_circ(a.exponent);
}

}  // namespace ffh
