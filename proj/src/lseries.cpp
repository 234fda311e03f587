#include "ffhyp/lseries.hpp"

#include <stdexcept>

namespace ffh {

TruncSeries exp_series(const std::vector<CycloNumber>& n_values) {
    const size_t R = n_values.size();
    TruncSeries z;
    z.coeffs.resize(R + 1);
    z.coeffs[0] = CycloNumber(1L);
    // Z' = Z * sum N_r t^{r-1}  =>  k z_k = sum_{r=1}^{k} N_r z_{k-r}
    for (size_t k = 1; k <= R; ++k) {
        CycloNumber acc;
        for (size_t r = 1; r <= k; ++r) acc += n_values[r - 1] * z.coeffs[k - r];
        z.coeffs[k] = acc * CycloNumber(Rational(1, static_cast<long>(k)));
    }
    return z;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
    unsigned R = std::min(a.order(), b.order());
    TruncSeries out;
    out.coeffs.resize(R + 1);
    for (unsigned i = 0; i <= R; ++i)
        for (unsigned j = 0; i + j <= R; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

TruncSeries series_inverse(const TruncSeries& a) {
    if (a.coeffs.empty() || !(a.coeffs[0] == CycloNumber(1L)))
        throw std::invalid_argument("series inverse needs constant term 1");
    TruncSeries out;
    out.coeffs.resize(a.coeffs.size());
    out.coeffs[0] = CycloNumber(1L);
    for (unsigned k = 1; k <= a.order(); ++k) {
        CycloNumber acc;
        for (unsigned j = 1; j <= k; ++j) acc += a.coeffs[j] * out.coeffs[k - j];
        out.coeffs[k] = -acc;
    }
    return out;
}

TruncSeries artin_l(const VarietySpec& V, unsigned m, unsigned R, CountRoute route,
                    const CountBudget& budget) {
    if (R == 0) throw std::invalid_argument("truncation order must be positive");
    std::vector<CycloNumber> ns;
    ns.reserve(R);
    for (unsigned r = 1; r <= R; ++r) {
        switch (route) {
            case CountRoute::FixedPoint: ns.push_back(chi_fixed_point(V, m, r, budget).value); break;
            case CountRoute::CharSum: ns.push_back(chi_char_sum(V, m, r, budget).value); break;
            case CountRoute::Formula: ns.push_back(chi_formula(V, m, r, budget).value); break;
        }
    }
    return exp_series(ns);
}

TruncSeries zeta_series(const VarietySpec& V, unsigned R, CountRoute route,
                        const CountBudget& budget) {
    TruncSeries z;
    z.coeffs.assign(R + 1, CycloNumber());
    z.coeffs[0] = CycloNumber(1L);
    for (unsigned m = 0; m < V.d; ++m) z = series_mul(z, artin_l(V, m, R, route, budget));
    return z;
}

TruncSeries l_from_theorem(const VarietySpec& V, unsigned m, unsigned R,
                           const CountBudget& budget) {
    V.validate();
    if (R == 0) throw std::invalid_argument("truncation order must be positive");
    if (!V.formula_hypotheses())
        throw std::invalid_argument("family theorem gcd hypotheses violated");
    const uint64_t q = V.field->q();
    const unsigned nn = V.n();

    if (m % V.d == 0) {
        // CD: 1/(1-qt); affine families: 1/(1-q^n t); XD: 1/((1-t)(1-qt))
        if (V.family == Family::XD) {
            TruncSeries ones, geo;
            ones.coeffs.resize(R + 1);
            geo.coeffs.resize(R + 1);
            Rational qa = 1;
            for (unsigned k = 0; k <= R; ++k) {
                ones.coeffs[k] = CycloNumber(1L);
                geo.coeffs[k] = CycloNumber(qa);
                qa *= static_cast<long>(q);
            }
            return series_mul(ones, geo);
        }
        TruncSeries out;
        out.coeffs.resize(R + 1);
        Rational step = 1;
        for (unsigned i = 0; i < V.dim(); ++i) step *= static_cast<long>(q);
        Rational acc = 1;
        for (unsigned k = 0; k <= R; ++k) {
            out.coeffs[k] = CycloNumber(acc);
            acc *= step;
        }
        return out;
    }

    CycloNumber constant = corollary_constant(V, m);
    std::vector<CycloNumber> ns;
    ns.reserve(R);
    CycloNumber cpow{1L};
    for (unsigned r = 1; r <= R; ++r) {
        cpow *= constant;
        ns.push_back(cpow * theorem_lauricella_over_ext(V, m, r, budget));
    }
    const bool invert = (V.family == Family::CD) ||
                        ((V.family == Family::SD || V.family == Family::SA ||
                          V.family == Family::SB || V.family == Family::SC) &&
                         nn % 2 == 1);
    if (V.family == Family::XD)
        for (CycloNumber& n : ns) n = -n;
    TruncSeries out = exp_series(ns);
    if (invert) out = series_inverse(out);
    if (V.family == Family::S4) {
        // times prod_i (1 - S_i t)^{-1}: the corollary prints prod (1 - S_i t),
        // but N_r = J^r f_r + sum_i S_i^r forces the inverse (see ledger note)
        for (const CycloNumber& s : s4_linear_constants(V, m)) {
            TruncSeries geo;
            geo.coeffs.resize(R + 1);
            CycloNumber acc{1L};
            for (unsigned k = 0; k <= R; ++k) {
                geo.coeffs[k] = acc;
                acc *= s;
            }
            out = series_mul(out, geo);
        }
    }
    return out;
}

std::optional<LPolynomial> detect_polynomial(const TruncSeries& s, unsigned max_deg) {
    if (s.order() < max_deg + 3)
        throw std::invalid_argument("need at least three guard coefficients");
    for (unsigned k = max_deg + 1; k <= s.order(); ++k)
        if (!s.coeffs[k].is_zero()) return std::nullopt;
    LPolynomial p;
    p.coeffs.assign(s.coeffs.begin(), s.coeffs.begin() + max_deg + 1);
    while (p.coeffs.size() > 1 && p.coeffs.back().is_zero()) p.coeffs.pop_back();
    if (!(p.coeffs[0] == CycloNumber(1L)))
        throw std::logic_error("L-polynomial constant term is not 1");
    return p;
}

WeilReport weil_check(const LPolynomial& p, uint64_t q, int weight, double tol) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    WeilReport rep;
    const unsigned deg = p.degree();
    if (deg == 0) {
        rep.pass = rep.converged = true;
        return rep;
    }
    std::vector<std::complex<double>> c(deg + 1);
    for (unsigned i = 0; i <= deg; ++i) c[i] = p.coeffs[i].complex_value(17);

    // Durand-Kerner on the monic-normalized polynomial
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 0;
        for (unsigned i = deg + 1; i-- > 0;) v = v * z + c[i];
        return v;
    };
    std::vector<std::complex<double>> z(deg);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (unsigned i = 0; i < deg; ++i) {
        w *= seed;
        z[i] = w;
    }
    bool converged = false;
    for (int it = 0; it < 500 && !converged; ++it) {
        double moved = 0.0;
        for (unsigned i = 0; i < deg; ++i) {
            std::complex<double> denom = c[deg];
            for (unsigned j = 0; j < deg; ++j)
                if (j != i) denom *= z[i] - z[j];
            std::complex<double> delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        converged = moved < 1e-14;
    }
    rep.converged = converged;
    double target = std::pow(static_cast<double>(q), weight / 2.0);
    rep.pass = converged;
    for (unsigned i = 0; i < deg; ++i) {
        std::complex<double> alpha = 1.0 / z[i];
        rep.reciprocal_roots.push_back(alpha);
        double dev = std::abs(std::abs(alpha) - target);
        rep.worst_deviation = std::max(rep.worst_deviation, dev);
        if (dev >= tol) rep.pass = false;
    }
    return rep;
}

}  // namespace ffh
