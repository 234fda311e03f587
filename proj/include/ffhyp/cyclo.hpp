#ifndef FFHYP_CYCLO_HPP
#define FFHYP_CYCLO_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ffh {

using Int = mpz_class;
using Rational = mpq_class;

// Exact element of the cyclotomic field Q(zeta_n), stored on the canonical
// power basis {zeta_n^i : 0 <= i < phi(n)} after reduction mod the n-th
// cyclotomic polynomial. Two values of equal order are equal iff their
// coefficient vectors are equal; mixed-order arithmetic lifts both operands
// to the lcm of the orders.
class CycloNumber {
public:
    CycloNumber();                     // zero in Q
    CycloNumber(long v);               // NOLINT: rationals embed implicitly
    CycloNumber(const Rational& v);

    static CycloNumber root_of_unity(unsigned n, long k);
    // sum_k counts[k] * zeta_n^k; the workhorse behind bucket-counted
    // character sums.
    static CycloNumber from_exponent_counts(unsigned n, const std::vector<Int>& counts);
    static CycloNumber from_exponent_counts(unsigned n, const std::vector<long>& counts);

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    std::optional<Rational> try_rational() const;

    // Image under zeta_m -> zeta_n^{n/m}; requires order() | n.
    CycloNumber embedded(unsigned n) const;
    // Galois action zeta_n -> zeta_n^s; requires gcd(s, n) = 1.
    CycloNumber galois(unsigned long s) const;
    CycloNumber conj() const;
    // True iff the value is fixed by Gal(Q(zeta_n)/Q(zeta_m)); requires m | order().
    bool lies_in(unsigned m) const;
    // Rewrite on the order-m basis when the value lies in Q(zeta_m).
    std::optional<CycloNumber> descend(unsigned m) const;

    CycloNumber inverse() const;       // throws std::domain_error on zero
    CycloNumber pow(long e) const;

    // Floating approximation at zeta_n = exp(2*pi*i/n), evaluated internally
    // at `digits` decimal digits (>= 15) before rounding to double.
    std::complex<double> complex_value(int digits = 17) const;

    CycloNumber& operator+=(const CycloNumber& rhs);
    CycloNumber& operator-=(const CycloNumber& rhs);
    CycloNumber& operator*=(const CycloNumber& rhs);
    friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
    friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
    CycloNumber operator-() const;
    friend bool operator==(const CycloNumber& a, const CycloNumber& b);
    friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

    std::string to_string() const;     // human-readable, for diagnostics

private:
    unsigned order_;
    std::vector<Rational> coeffs_;     // size phi(order_)

    CycloNumber(unsigned order, std::vector<Rational> coeffs);
    CycloNumber lifted(unsigned n) const;   // = embedded(), internal use
};

unsigned euler_phi(unsigned n);
unsigned long lcm_u(unsigned long a, unsigned long b);

}  // namespace ffh

#endif
