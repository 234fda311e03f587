#ifndef FFHYP_LSERIES_HPP
#define FFHYP_LSERIES_HPP

#include <complex>
#include <optional>

#include "ffhyp/varieties.hpp"

namespace ffh {

// Truncated power series over a cyclotomic field; coeffs[k] multiplies t^k.
struct TruncSeries {
    std::vector<CycloNumber> coeffs;

    unsigned order() const { return static_cast<unsigned>(coeffs.size()) - 1; }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.coeffs == b.coeffs;
    }
};

struct LPolynomial {
    std::vector<CycloNumber> coeffs;   // constant term 1, leading coeff nonzero

    unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }
};

// Coefficients of exp(sum_{r>=1} N_r t^r / r) through t^R, R = n_values.size().
TruncSeries exp_series(const std::vector<CycloNumber>& n_values);

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_inverse(const TruncSeries& a);   // needs constant term 1

// L(V, chi^m; t) through t^R with N_r supplied by the chosen count route.
TruncSeries artin_l(const VarietySpec& V, unsigned m, unsigned R, CountRoute route,
                    const CountBudget& budget = {});

// Z(V, t) through t^R as the product over all m of the Artin L-functions.
TruncSeries zeta_series(const VarietySpec& V, unsigned R, CountRoute route,
                        const CountBudget& budget = {});

// The corollary expression assembled term-by-term: base-field Jacobi
// constants raised to the r-th power against Lauricella values over k_r,
// series exponent signs per family, and the linear factors for S4.
TruncSeries l_from_theorem(const VarietySpec& V, unsigned m, unsigned R,
                           const CountBudget& budget = {});

// Returns the polynomial of degree <= max_deg when every coefficient in
// (max_deg, R] vanishes exactly; requires R >= max_deg + 3.
std::optional<LPolynomial> detect_polynomial(const TruncSeries& s, unsigned max_deg);

struct WeilReport {
    bool pass = false;
    bool converged = false;
    std::vector<std::complex<double>> reciprocal_roots;
    double worst_deviation = 0.0;      // max | |alpha| - q^{w/2} |
};

// All reciprocal roots of p must have modulus q^{w/2} within tol.
WeilReport weil_check(const LPolynomial& p, uint64_t q, int weight, double tol);

}  // namespace ffh

#endif
