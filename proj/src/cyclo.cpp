#include "ffhyp/cyclo.hpp"

#include <mpfr.h>

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace ffh {

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

unsigned long lcm_u(unsigned long a, unsigned long b) {
    return a / std::gcd(a, b) * b;
}

namespace {

// Exact division of integer polynomials, quotient known to be integral.
std::vector<Int> poly_divexact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    std::vector<Int> quo(num.size() - den.size() + 1);
    for (size_t i = quo.size(); i-- > 0;) {
        Int c = rem[i + den.size() - 1] / den.back();
        quo[i] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
    }
    for (const Int& c : rem)
        if (c != 0) throw std::logic_error("cyclotomic polynomial division not exact");
    return quo;
}

struct OrderData {
    unsigned n = 1;
    unsigned phi = 1;
    std::vector<Int> min_poly;               // Phi_n, monic, degree phi
    std::vector<std::vector<Int>> power;     // zeta_n^k on the basis, k < max(2*phi-1, n)
};

std::map<unsigned, std::unique_ptr<OrderData>>& order_cache() {
    static std::map<unsigned, std::unique_ptr<OrderData>> cache;
    return cache;
}
std::mutex order_mutex;

// Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x), memoized per order.
const std::vector<Int>& cyclotomic_poly_nolock(unsigned n,
                                               std::map<unsigned, std::vector<Int>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<Int> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) num = poly_divexact(num, cyclotomic_poly_nolock(d, memo));
    return memo.emplace(n, std::move(num)).first->second;
}

const OrderData& order_data(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic order must be positive");
    if (n > 10'000) throw std::invalid_argument("cyclotomic order beyond desk-scale guard");
    std::lock_guard<std::mutex> lock(order_mutex);
    auto& cache = order_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto data = std::make_unique<OrderData>();
    data->n = n;
    data->phi = euler_phi(n);
    {
        static std::map<unsigned, std::vector<Int>> poly_memo;
        data->min_poly = cyclotomic_poly_nolock(n, poly_memo);
    }
    const unsigned phi = data->phi;
    const size_t rows = std::max<size_t>(2 * phi > 0 ? 2 * phi - 1 : 1, n);
    data->power.resize(rows);
    for (unsigned i = 0; i < phi; ++i) {
        data->power[i].assign(phi, 0);
        data->power[i][i] = 1;
    }
    for (size_t k = phi; k < rows; ++k) {
        // zeta^k = zeta * zeta^{k-1}, reducing the overflow coefficient
        // against the monic relation zeta^phi = -sum_i Phi[i] zeta^i.
        const std::vector<Int>& prev = data->power[k - 1];
        std::vector<Int> cur(phi, 0);
        for (unsigned i = 0; i + 1 < phi; ++i) cur[i + 1] = prev[i];
        const Int& top = prev[phi - 1];
        if (top != 0)
            for (unsigned i = 0; i < phi; ++i) cur[i] -= top * data->min_poly[i];
        data->power[k] = std::move(cur);
    }
    return *cache.emplace(n, std::move(data)).first->second;
}

}  // namespace

CycloNumber::CycloNumber() : order_(1), coeffs_(1) {}
CycloNumber::CycloNumber(long v) : order_(1), coeffs_(1) { coeffs_[0] = v; }
CycloNumber::CycloNumber(const Rational& v) : order_(1) {
    // copy-construct, not assign: mpq-level assignment of a non-canonical
    // rational (e.g. built with a negative denominator) over-reads limbs
    Rational w(v);
    w.canonicalize();
    coeffs_.push_back(std::move(w));
}
CycloNumber::CycloNumber(unsigned order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

CycloNumber CycloNumber::root_of_unity(unsigned n, long k) {
    const OrderData& od = order_data(n);
    long r = k % static_cast<long>(n);
    if (r < 0) r += n;
    std::vector<Rational> c(od.phi);
    const std::vector<Int>& row = od.power[static_cast<size_t>(r)];
    for (unsigned i = 0; i < od.phi; ++i) c[i] = row[i];
    return CycloNumber(n, std::move(c));
}

CycloNumber CycloNumber::from_exponent_counts(unsigned n, const std::vector<Int>& counts) {
    if (counts.size() != n) throw std::invalid_argument("counts length must equal order");
    const OrderData& od = order_data(n);
    std::vector<Rational> c(od.phi);
    for (unsigned k = 0; k < n; ++k) {
        if (counts[k] == 0) continue;
        const std::vector<Int>& row = od.power[k];
        for (unsigned i = 0; i < od.phi; ++i)
            if (row[i] != 0) c[i] += counts[k] * row[i];
    }
    return CycloNumber(n, std::move(c));
}

CycloNumber CycloNumber::from_exponent_counts(unsigned n, const std::vector<long>& counts) {
    std::vector<Int> big(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) big[i] = counts[i];
    return from_exponent_counts(n, big);
}

bool CycloNumber::is_zero() const {
    for (const Rational& c : coeffs_)
        if (sgn(c) != 0) return false;
    return true;
}

std::optional<Rational> CycloNumber::try_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0) return std::nullopt;
    return coeffs_[0];
}

CycloNumber CycloNumber::lifted(unsigned n) const {
    if (n == order_) return *this;
    if (n % order_ != 0) throw std::invalid_argument("target order not a multiple of order");
    const OrderData& od = order_data(n);
    const unsigned step = n / order_;
    std::vector<Rational> c(od.phi);
    for (unsigned i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        const std::vector<Int>& row = od.power[static_cast<size_t>(i) * step];
        for (unsigned j = 0; j < od.phi; ++j)
            if (row[j] != 0) c[j] += coeffs_[i] * row[j];
    }
    return CycloNumber(n, std::move(c));
}

CycloNumber CycloNumber::embedded(unsigned n) const { return lifted(n); }

CycloNumber CycloNumber::galois(unsigned long s) const {
    if (std::gcd(s % order_, static_cast<unsigned long>(order_)) != 1)
        throw std::invalid_argument("galois exponent not coprime to order");
    const OrderData& od = order_data(order_);
    std::vector<Rational> c(od.phi);
    for (unsigned i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        const std::vector<Int>& row = od.power[(static_cast<unsigned long>(i) * s) % order_];
        for (unsigned j = 0; j < od.phi; ++j)
            if (row[j] != 0) c[j] += coeffs_[i] * row[j];
    }
    return CycloNumber(order_, std::move(c));
}

CycloNumber CycloNumber::conj() const {
    if (order_ <= 2) return *this;
    return galois(order_ - 1);
}

bool CycloNumber::lies_in(unsigned m) const {
    if (m == 0) throw std::invalid_argument("subfield order must be positive");
    if (order_ % m != 0) return lifted(static_cast<unsigned>(lcm_u(order_, m))).lies_in(m);
    for (unsigned long s = 1; s < order_; ++s) {
        if (s % m != 1 % m) continue;
        if (std::gcd(s, static_cast<unsigned long>(order_)) != 1) continue;
        if (galois(s) != *this) return false;
    }
    return true;
}

std::optional<CycloNumber> CycloNumber::descend(unsigned m) const {
    if (m == 0) throw std::invalid_argument("subfield order must be positive");
    if (order_ % m != 0) return lifted(static_cast<unsigned>(lcm_u(order_, m))).descend(m);
    if (m == order_) return *this;
    const OrderData& od = order_data(order_);
    const unsigned phi_m = euler_phi(m);
    const unsigned step = order_ / m;
    // Solve  sum_j x_j * (zeta_n^{step*j} on basis)  =  coeffs_  by Gaussian
    // elimination over Q; inconsistency means the value is not in Q(zeta_m).
    const unsigned rows = od.phi, cols = phi_m;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
    for (unsigned j = 0; j < cols; ++j) {
        const std::vector<Int>& col = od.power[static_cast<size_t>(j) * step];
        for (unsigned i = 0; i < rows; ++i) a[i][j] = col[i];
    }
    for (unsigned i = 0; i < rows; ++i) a[i][cols] = coeffs_[i];

    std::vector<int> pivot_col_of_row(rows, -1);
    unsigned rank = 0;
    for (unsigned j = 0; j < cols && rank < rows; ++j) {
        unsigned piv = rank;
        while (piv < rows && sgn(a[piv][j]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        Rational inv = 1 / a[rank][j];
        for (unsigned t = j; t <= cols; ++t) a[rank][t] *= inv;
        for (unsigned i = 0; i < rows; ++i) {
            if (i == rank || sgn(a[i][j]) == 0) continue;
            Rational f = a[i][j];
            for (unsigned t = j; t <= cols; ++t) a[i][t] -= f * a[rank][t];
        }
        pivot_col_of_row[rank] = static_cast<int>(j);
        ++rank;
    }
    for (unsigned i = rank; i < rows; ++i)
        if (sgn(a[i][cols]) != 0) return std::nullopt;
    std::vector<Rational> x(cols);
    for (unsigned i = 0; i < rank; ++i) x[static_cast<unsigned>(pivot_col_of_row[i])] = a[i][cols];
    return CycloNumber(m, std::move(x));
}

CycloNumber CycloNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inversion of zero cyclotomic number");
    // Extended Euclid in Q[x] against Phi_n: u*self + v*Phi = 1.
    const OrderData& od = order_data(order_);
    std::vector<Rational> r0(od.min_poly.size());
    for (size_t i = 0; i < od.min_poly.size(); ++i) r0[i] = od.min_poly[i];
    std::vector<Rational> r1 = coeffs_;
    while (!r1.empty() && sgn(r1.back()) == 0) r1.pop_back();
    std::vector<Rational> u0(1), u1(1);
    u0[0] = 0;
    u1[0] = 1;
    auto degree = [](const std::vector<Rational>& p) { return static_cast<long>(p.size()) - 1; };
    while (degree(r1) > 0) {
        // divide r0 by r1
        std::vector<Rational> rem = r0;
        std::vector<Rational> quo(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1);
        for (size_t i = quo.size(); i-- > 0;) {
            if (i + r1.size() - 1 >= rem.size()) continue;
            Rational c = rem[i + r1.size() - 1] / r1.back();
            quo[i] = c;
            if (sgn(c) != 0)
                for (size_t j = 0; j < r1.size(); ++j) rem[i + j] -= c * r1[j];
        }
        while (!rem.empty() && sgn(rem.back()) == 0) rem.pop_back();
        // u2 = u0 - quo*u1
        std::vector<Rational> u2(std::max(u0.size(), quo.size() + u1.size() - 1));
        for (size_t i = 0; i < u0.size(); ++i) u2[i] = u0[i];
        for (size_t i = 0; i < quo.size(); ++i) {
            if (sgn(quo[i]) == 0) continue;
            for (size_t j = 0; j < u1.size(); ++j) u2[i + j] -= quo[i] * u1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
        if (r1.empty()) throw std::logic_error("gcd with cyclotomic polynomial degenerated");
    }
    // r1 is a nonzero constant; u1/r1 is the inverse.
    Rational scale = 1 / r1[0];
    std::vector<Rational> c(od.phi);
    for (size_t i = 0; i < u1.size() && i < od.phi; ++i) c[i] = u1[i] * scale;
    return CycloNumber(order_, std::move(c));
}

CycloNumber CycloNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNumber acc(1L);
    CycloNumber base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& rhs) {
    unsigned n = static_cast<unsigned>(lcm_u(order_, rhs.order_));
    if (order_ != n) *this = lifted(n);
    if (rhs.order_ != n) {
        CycloNumber r = rhs.lifted(n);
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += r.coeffs_[i];
    } else {
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    }
    return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& rhs) {
    unsigned n = static_cast<unsigned>(lcm_u(order_, rhs.order_));
    if (order_ != n) *this = lifted(n);
    if (rhs.order_ != n) {
        CycloNumber r = rhs.lifted(n);
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= r.coeffs_[i];
    } else {
        for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    }
    return *this;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    unsigned n = static_cast<unsigned>(lcm_u(a.order_, b.order_));
    CycloNumber lift_a, lift_b;
    const std::vector<Rational>* pa = &a.coeffs_;
    const std::vector<Rational>* pb = &b.coeffs_;
    if (a.order_ != n) {
        lift_a = a.lifted(n);
        pa = &lift_a.coeffs_;
    }
    if (b.order_ != n) {
        lift_b = b.lifted(n);
        pb = &lift_b.coeffs_;
    }
    const std::vector<Rational>& ca = *pa;
    const std::vector<Rational>& cb = *pb;
    const OrderData& od = order_data(n);
    const unsigned phi = od.phi;
    std::vector<Rational> conv(2 * phi - 1);
    for (unsigned i = 0; i < phi; ++i) {
        if (sgn(ca[i]) == 0) continue;
        for (unsigned j = 0; j < phi; ++j) {
            if (sgn(cb[j]) == 0) continue;
            conv[i + j] += ca[i] * cb[j];
        }
    }
    std::vector<Rational> c(phi);
    for (unsigned i = 0; i < phi; ++i) c[i] = std::move(conv[i]);
    for (unsigned k = phi; k < 2 * phi - 1; ++k) {
        if (sgn(conv[k]) == 0) continue;
        const std::vector<Int>& row = od.power[k];
        for (unsigned i = 0; i < phi; ++i)
            if (row[i] != 0) c[i] += conv[k] * row[i];
    }
    return CycloNumber(n, std::move(c));
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& rhs) {
    *this = *this * rhs;
    return *this;
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber r = *this;
    for (Rational& c : r.coeffs_) c = -c;
    return r;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    unsigned n = static_cast<unsigned>(lcm_u(a.order_, b.order_));
    return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
}

std::complex<double> CycloNumber::complex_value(int digits) const {
    if (digits < 15) throw std::invalid_argument("complex_value requires >= 15 digits");
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33) + 32;
    mpfr_t re, im, angle, c, s, t, tau;
    mpfr_inits2(prec, re, im, angle, c, s, t, tau, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    mpfr_const_pi(tau, MPFR_RNDN);
    mpfr_mul_ui(tau, tau, 2, MPFR_RNDN);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        mpfr_mul_ui(angle, tau, static_cast<unsigned long>(i), MPFR_RNDN);
        mpfr_div_ui(angle, angle, order_, MPFR_RNDN);
        mpfr_sin_cos(s, c, angle, MPFR_RNDN);
        mpfr_set_q(t, coeffs_[i].get_mpq_t(), MPFR_RNDN);
        mpfr_fma(re, t, c, re, MPFR_RNDN);
        mpfr_fma(im, t, s, im, MPFR_RNDN);
    }
    std::complex<double> out(mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN));
    mpfr_clears(re, im, angle, c, s, t, tau, static_cast<mpfr_ptr>(nullptr));
    return out;
}

std::string CycloNumber::to_string() const {
    std::string out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        if (!first) out += " + ";
        first = false;
        out += coeffs_[i].get_str();
        if (i > 0) out += "*z" + std::to_string(order_) + "^" + std::to_string(i);
    }
    return first ? "0" : out;
}

}  // namespace ffh
