#include "ffhyp/identities.hpp"

#include <atomic>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <map>
#include <sstream>
#include <stdexcept>

// Identity registry. Slot layouts (chars | args | aux):
//   GAUSS_REFL     eta | - | -
//   JACOBI_GAUSS   eta_1..eta_n | - | n (default 2)
//   POCH_CHAIN     alpha, nu, mu | - | -   (POCH_CHAIN_CIRC is the circ row)
//   POCH_REFL      alpha, nu | - | -
//   POCH_SIGN      chi, phi | - | -
//   ONE_F_ZERO     alpha | lambda in k^x | -
//   EULER_2F1      alpha, beta, c | lambda in k^x | -
//   REDUCTION      a_1..a_n, c, b_1..b_{n-1} | lambda in k | n (1 or 2)
//   TWO_F1_EPS     alpha, c | lambda in k^x | -
//   PFAFF          alpha, beta, c | lambda in k minus {1} | -
//   VANDERMONDE_I  alpha, mu, c | - | -
//   VANDERMONDE_II alpha, mu, c | - | -
//   SAALSCHUTZ     alpha, beta, nu, c | - | -
//   FD_EULER_I     a, b_1..b_n, c | lambda_i in k^x | n
//   FD_EULER_II    a, b_1..b_n, c | lambda_i in k^x | n
//   KARLSSON       a, b, c | lambda in k^x | d
//   FA_EULER       a, b_1..b_n, c_1..c_n | lambda_i in k^x | n
//   FB_EULER       a_1..a_n, b_1..b_n, c | lambda_i in k^x | n
//   FC_EULER       a, b, c_1..c_n | lambda_i in k^x | n
//   F4_UNIT_ARG    a, b, c1, c2 | x, y in k minus {1} | -
//   PRODUCT_3F2    a, b, c1, c2, mu, nu | - | -
//   KEY_PROP       a, b, c1, c2 | x, y in k^x minus {1} | -
//   F4_EXPANSION   a, b, c1, c2 | x, y in k minus {1} | -
//   F4_EULER       a, b, c1, c2 | x, y in k^x minus {1} | -
//   F4_BALANCED    a, b, c1, c2 | x, y in k^x minus {1} | -
//   FB_TO_FA       a_1..a_n, b_1..b_n, c | lambda_i in k^x | n
//
// Left sides route through the hypergeometric evaluators; right sides are
// written out from their own defining expressions (point loops, Gauss-sum
// products, closed forms). Neither side is derived from the other.

namespace ffh {

namespace {

enum class ArgDomain { Any, NonZero, NotOne, NonZeroNotOne };

std::vector<uint64_t> domain_codes(ArgDomain d, const FieldPtr& k) {
    std::vector<uint64_t> out;
    for (uint64_t c = 0; c < k->q(); ++c) {
        if (d == ArgDomain::NonZero && c == 0) continue;
        if (d == ArgDomain::NotOne && c == 1) continue;
        if (d == ArgDomain::NonZeroNotOne && (c == 0 || c == 1)) continue;
        out.push_back(c);
    }
    return out;
}

struct Ctx {
    const IdentityInstance& inst;
    const FieldPtr& k;
    const GaussTable& t;
    uint64_t m;   // q - 1
    uint64_t q;

    MultChar chi(size_t i) const { return MultChar{k, inst.char_exps.at(i) % m}; }
    uint64_t arg(size_t i) const { return inst.args.at(i); }
    CycloNumber qpow(int e) const {
        Rational v = 1;
        for (int i = 0; i < e; ++i) v *= Rational(static_cast<long>(q));
        for (int i = 0; i > e; --i) v /= Rational(static_cast<long>(q));
        return CycloNumber(v);
    }
    CycloNumber one_minus_q() const { return CycloNumber(1 - static_cast<long>(q)); }
};

struct Ident {
    uint64_t aux_default = 0;                         // 0 = aux unused
    std::function<unsigned(uint64_t aux)> n_chars;
    std::function<std::vector<ArgDomain>(uint64_t aux)> arg_domains;
    std::function<bool(const Ctx&)> hyp;
    std::function<CycloNumber(const Ctx&)> lhs;
    std::function<CycloNumber(const Ctx&)> rhs;
};

CycloNumber inv_poch(const Ctx& c, const MultChar& a, const MultChar& nu) {
    return c.t.g(a.exponent) * c.t.inv_g(a.exponent + nu.exponent);
}
CycloNumber inv_poch_circ(const Ctx& c, const MultChar& a, const MultChar& nu) {
    return c.t.g_circ(a.exponent) * c.t.inv_g_circ(a.exponent + nu.exponent);
}

// All values 2F1(phi^h1, phi^h2; c; 1) for one lower character, computed
// from the defining sum once and shared across instances (keyed per field
// and lower character).
class Unit2F1Table {
public:
    Unit2F1Table(const Ctx& cx, const MultChar& c) : m_(cx.m), vals_(m_ * m_) {
        const GaussTable& t = cx.t;
        std::vector<CycloNumber> w(m_);
        for (uint64_t j = 0; j < m_; ++j)
            w[j] = cx.qpow(1) * t.inv_g_circ(c.exponent + j) * t.inv_g_circ(j);
        CycloNumber scale =
            t.g_circ(c.exponent) * CycloNumber(-Rational(1, static_cast<long>(cx.q) - 1));
        for (uint64_t h2 = 0; h2 < m_; ++h2) {
            std::vector<CycloNumber> col(m_);
            for (uint64_t j = 0; j < m_; ++j) col[j] = t.g(h2 + j) * w[j];
            for (uint64_t h1 = 0; h1 < m_; ++h1) {
                CycloNumber s;
                for (uint64_t j = 0; j < m_; ++j) s += t.g(h1 + j) * col[j];
                vals_[h1 * m_ + h2] = s * scale * t.inv_g(h1) * t.inv_g(h2);
            }
        }
    }
    const CycloNumber& at(uint64_t up, uint64_t dn) const {
        return vals_[(up % m_) * m_ + (dn % m_)];
    }

private:
    uint64_t m_;
    std::vector<CycloNumber> vals_;
};

std::mutex unit_table_mutex;
const Unit2F1Table& unit_2f1_table(const Ctx& cx, const MultChar& c) {
    static std::map<std::tuple<uint32_t, uint32_t, uint64_t>,
                    std::unique_ptr<Unit2F1Table>> cache;
    std::lock_guard<std::mutex> lock(unit_table_mutex);
    auto key = std::make_tuple(cx.k->p(), cx.k->f(), c.exponent);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto tab = std::make_unique<Unit2F1Table>(cx, c);
    return *cache.emplace(key, std::move(tab)).first->second;
}

std::map<std::string, Ident> build_registry() {
    std::map<std::string, Ident> reg;

    auto fixed_chars = [](unsigned n) {
        return [n](uint64_t) { return n; };
    };
    auto no_args = [](uint64_t) { return std::vector<ArgDomain>{}; };
    auto args1 = [](ArgDomain d) {
        return [d](uint64_t) { return std::vector<ArgDomain>{d}; };
    };
    auto args2 = [](ArgDomain d) {
        return [d](uint64_t) { return std::vector<ArgDomain>{d, d}; };
    };
    auto argsn = [](ArgDomain d) {
        return [d](uint64_t aux) {
            return std::vector<ArgDomain>(static_cast<size_t>(aux), d);
        };
    };
    auto always = [](const Ctx&) { return true; };

    reg["GAUSS_REFL"] = Ident{
        0, fixed_chars(1), no_args, always,
        [](const Ctx& c) {
            return c.t.g(c.chi(0).exponent) * c.t.g_circ(c.chi(0).inverse().exponent);
        },
        [](const Ctx& c) { return char_at_minus_one(c.chi(0)) * c.qpow(1); }};

    reg["JACOBI_GAUSS"] = Ident{
        2, [](uint64_t aux) { return static_cast<unsigned>(aux); }, no_args, always,
        [](const Ctx& c) {
            std::vector<MultChar> etas;
            for (size_t i = 0; i < c.inst.char_exps.size(); ++i) etas.push_back(c.chi(i));
            return jacobi_direct(etas);
        },
        [](const Ctx& c) {
            std::vector<MultChar> etas;
            for (size_t i = 0; i < c.inst.char_exps.size(); ++i) etas.push_back(c.chi(i));
            return jacobi_via_gauss(c.t, etas);
        }};

    reg["POCH_CHAIN"] = Ident{
        0, fixed_chars(3), no_args, always,
        [](const Ctx& c) { return poch(c.t, c.chi(0), c.chi(1) * c.chi(2)); },
        [](const Ctx& c) {
            return poch(c.t, c.chi(0), c.chi(1)) * poch(c.t, c.chi(0) * c.chi(1), c.chi(2));
        }};

    reg["POCH_CHAIN_CIRC"] = Ident{
        0, fixed_chars(3), no_args, always,
        [](const Ctx& c) { return poch_circ(c.t, c.chi(0), c.chi(1) * c.chi(2)); },
        [](const Ctx& c) {
            return poch_circ(c.t, c.chi(0), c.chi(1)) *
                   poch_circ(c.t, c.chi(0) * c.chi(1), c.chi(2));
        }};

    reg["POCH_REFL"] = Ident{
        0, fixed_chars(2), no_args, always,
        [](const Ctx& c) {
            return poch(c.t, c.chi(0), c.chi(1)) *
                   poch_circ(c.t, c.chi(0).inverse(), c.chi(1).inverse());
        },
        [](const Ctx& c) { return char_at_minus_one(c.chi(1)); }};

    reg["POCH_SIGN"] = Ident{
        0, fixed_chars(2), no_args, always,
        [](const Ctx& c) { return poch(c.t, c.chi(0), c.chi(1)); },
        [](const Ctx& c) {
            return char_at_minus_one(c.chi(1)) *
                   poch_circ(c.t, (c.chi(0) * c.chi(1)).inverse(), c.chi(1));
        }};

    reg["ONE_F_ZERO"] = Ident{
        0, fixed_chars(1), args1(ArgDomain::NonZero), always,
        [](const Ctx& c) { return hgf(c.t, HgfParams{{c.chi(0)}, {}}, c.arg(0)); },
        [](const Ctx& c) {
            MultChar a = c.chi(0);
            if (!a.is_trivial() || c.arg(0) != 1)
                return c.t.eval(a.inverse(), c.k->sub(1, c.arg(0)));
            return c.one_minus_q();
        }};

    reg["EULER_2F1"] = Ident{
        0, fixed_chars(3), args1(ArgDomain::NonZero),
        [](const Ctx& c) { return c.chi(1) != c.chi(2); },
        [](const Ctx& c) {
            MultChar b = c.chi(1), cc = c.chi(2);
            CycloNumber j = jacobi_direct({b, b.inverse() * cc});
            return -(j * hgf_2f1(c.t, c.chi(0), b, cc, c.arg(0)));
        },
        [](const Ctx& c) {
            MultChar a = c.chi(0), b = c.chi(1), cc = c.chi(2);
            uint64_t lam = c.arg(0);
            ExpoBucket bucket(c.m,
                              {b.exponent, (b.inverse() * cc).exponent, a.inverse().exponent});
            for (uint64_t j = 0; j < c.m; ++j) {
                uint64_t u = c.k->antilog(j);
                uint64_t f1 = c.k->sub(1, u), f2 = c.k->sub(1, c.k->mul(lam, u));
                if (f1 == 0 || f2 == 0) continue;
                uint64_t e = b.exponent * j % c.m +
                             (b.inverse() * cc).exponent * (c.k->dlog(f1) % c.m) % c.m +
                             a.inverse().exponent * (c.k->dlog(f2) % c.m) % c.m;
                bucket.add(e % c.m);
            }
            CycloNumber rhs = bucket.value();
            if (delta(a)) {
                rhs += c.one_minus_q() * c.t.eval(cc.inverse(), lam) *
                       c.t.eval(b.inverse() * cc, c.k->sub(lam, 1));
            }
            return rhs;
        }};

    reg["REDUCTION"] = Ident{
        1, [](uint64_t aux) { return static_cast<unsigned>(2 * aux); },
        args1(ArgDomain::Any), always,
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            HgfParams p;
            for (unsigned i = 0; i < n; ++i) p.a_list.push_back(c.chi(i));
            p.a_list.push_back(c.chi(n));
            for (unsigned i = 0; i < n - 1; ++i) p.b_list.push_back(c.chi(n + 1 + i));
            p.b_list.push_back(c.chi(n));
            return hgf(c.t, p, c.arg(0));
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar cc = c.chi(n);
            HgfParams inner;
            for (unsigned i = 0; i < n; ++i) inner.a_list.push_back(c.chi(i));
            for (unsigned i = 0; i < n - 1; ++i) inner.b_list.push_back(c.chi(n + 1 + i));
            CycloNumber tail = c.qpow(-1);
            for (unsigned i = 0; i < n; ++i) tail *= poch(c.t, c.chi(i), cc.inverse());
            tail *= inv_poch_circ(c, trivial_char(c.k), cc.inverse());
            for (unsigned i = 0; i < n - 1; ++i)
                tail *= inv_poch_circ(c, c.chi(n + 1 + i), cc.inverse());
            tail *= c.t.eval(cc.inverse(), c.arg(0));
            CycloNumber rhs = hgf(c.t, inner, c.arg(0)) + tail;
            if (delta(cc)) rhs *= c.qpow(1);
            return rhs;
        }};

    reg["TWO_F1_EPS"] = Ident{
        0, fixed_chars(2), args1(ArgDomain::NonZero), always,
        [](const Ctx& c) {
            return hgf_2f1(c.t, c.chi(0), trivial_char(c.k), c.chi(1), c.arg(0));
        },
        [](const Ctx& c) {
            MultChar a = c.chi(0), cc = c.chi(1);
            uint64_t lam = c.arg(0);
            if (lam != 1 || a != cc) {
                CycloNumber v = c.t.g((a * cc.inverse()).exponent) * c.t.g_circ(cc.exponent) *
                                c.t.inv_g(a.exponent);
                v *= c.t.eval(cc.inverse(), lam) *
                     c.t.eval(a.inverse() * cc, c.k->sub(1, lam));
                return v + CycloNumber(1L);
            }
            return CycloNumber(1L) + c.qpow(delta(a)) * c.one_minus_q();
        }};

    reg["PFAFF"] = Ident{
        0, fixed_chars(3), args1(ArgDomain::NotOne),
        [](const Ctx& c) { return !c.chi(1).is_trivial() && c.chi(0) != c.chi(2); },
        [](const Ctx& c) {
            return c.t.eval(c.chi(0), c.k->sub(1, c.arg(0))) *
                   hgf_2f1(c.t, c.chi(0), c.chi(1), c.chi(2), c.arg(0));
        },
        [](const Ctx& c) {
            MultChar a = c.chi(0), b = c.chi(1), cc = c.chi(2);
            uint64_t lam = c.arg(0);
            uint64_t lam_shift =
                lam == 0 ? 0 : c.k->mul(lam, c.k->inv(c.k->sub(lam, 1)));
            CycloNumber rhs = hgf_2f1(c.t, a, b.inverse() * cc, cc, lam_shift);
            if (delta(b.inverse() * cc)) {
                CycloNumber extra = c.one_minus_q() * c.t.g_circ(cc.exponent) *
                                    c.t.inv_g(a.exponent) *
                                    c.t.inv_g((a.inverse() * cc).exponent);
                extra *= c.t.eval(cc.inverse(), lam) * c.t.eval(a, c.k->sub(lam, 1));
                rhs += extra;
            }
            return rhs;
        }};

    auto vandermonde_rhs_main = [](const Ctx& c) {
        MultChar a = c.chi(0), mu = c.chi(1), cc = c.chi(2);
        CycloNumber v = poch(c.t, a.inverse() * cc, mu) * inv_poch_circ(c, cc, mu);
        if (delta(a.inverse() * cc)) v *= c.qpow(-1);
        return v;
    };
    auto vandermonde_lhs = [](const Ctx& c) {
        return hgf_2f1(c.t, c.chi(0), c.chi(1).inverse(), c.chi(2), 1);
    };
    auto vandermonde_boundary = [](const Ctx& c) {
        MultChar a = c.chi(0), mu_inv = c.chi(1).inverse(), cc = c.chi(2);
        return (a.is_trivial() && mu_inv == cc) || (a == cc && mu_inv.is_trivial());
    };

    reg["VANDERMONDE_I"] = Ident{
        0, fixed_chars(3), no_args,
        [vandermonde_boundary](const Ctx& c) { return !vandermonde_boundary(c); },
        vandermonde_lhs, vandermonde_rhs_main};

    reg["VANDERMONDE_II"] = Ident{
        0, fixed_chars(3), no_args, vandermonde_boundary, vandermonde_lhs,
        [vandermonde_rhs_main](const Ctx& c) {
            Rational corr = Rational(1 - static_cast<long>(c.q));
            corr *= corr;
            if (delta(c.chi(2))) corr *= 1 + static_cast<long>(c.q);
            corr /= static_cast<long>(c.q);
            return vandermonde_rhs_main(c) - CycloNumber(corr);
        }};

    reg["SAALSCHUTZ"] = Ident{
        0, fixed_chars(4), no_args,
        [](const Ctx& c) {
            MultChar a = c.chi(0), b = c.chi(1), cc = c.chi(3);
            return !a.is_trivial() && b != cc && !(a * b * cc.inverse()).is_trivial();
        },
        [](const Ctx& c) {
            MultChar a = c.chi(0), b = c.chi(1), nu = c.chi(2), cc = c.chi(3);
            HgfParams p{{a, b, nu.inverse()}, {cc, a * b * (cc * nu).inverse()}};
            return hgf(c.t, p, 1);
        },
        [](const Ctx& c) {
            MultChar a = c.chi(0), b = c.chi(1), nu = c.chi(2), cc = c.chi(3);
            CycloNumber main = poch(c.t, a.inverse() * cc, nu) *
                               poch(c.t, b.inverse() * cc, nu);
            main *= inv_poch_circ(c, cc, nu) * inv_poch(c, (a * b).inverse() * cc, nu);
            if (delta(a.inverse() * cc)) main *= c.qpow(-1);
            CycloNumber second = c.t.g_circ(cc.exponent) *
                                 c.t.g_circ((a * b * (cc * nu).inverse()).exponent) *
                                 c.t.inv_g(a.exponent) * c.t.inv_g(b.exponent) *
                                 c.t.inv_g(nu.inverse().exponent);
            Rational corr = Rational(1 - static_cast<long>(c.q));
            corr = corr * corr / static_cast<long>(c.q);
            long gates = delta(a.inverse() * cc) * delta(nu) + delta(b) * delta(cc * nu);
            return main + second - CycloNumber(corr * gates);
        }};

    reg["FD_EULER_I"] = Ident{
        2, [](uint64_t aux) { return static_cast<unsigned>(aux + 2); },
        argsn(ArgDomain::NonZero),
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            if (c.chi(0) == c.chi(n + 1)) return false;
            for (unsigned i = 1; i <= n; ++i)
                if (c.chi(i).is_trivial()) return false;
            return true;
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar a = c.chi(0), cc = c.chi(n + 1);
            LauricellaParams p{LauricellaKind::D, {a}, {}, {cc}, n};
            for (unsigned i = 1; i <= n; ++i) p.b.push_back(c.chi(i));
            CycloNumber j = jacobi_direct({a, a.inverse() * cc});
            return -(j * lauricella(c.t, p, c.inst.args));
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar a = c.chi(0), cc = c.chi(n + 1);
            std::vector<uint64_t> exps{a.exponent, (a.inverse() * cc).exponent};
            for (unsigned i = 1; i <= n; ++i) exps.push_back(c.chi(i).inverse().exponent);
            ExpoBucket bucket(c.m, exps);
            for (uint64_t j = 0; j < c.m; ++j) {
                uint64_t u = c.k->antilog(j);
                uint64_t one_minus_u = c.k->sub(1, u);
                if (one_minus_u == 0) continue;
                uint64_t e = a.exponent * j % c.m +
                             (a.inverse() * cc).exponent * (c.k->dlog(one_minus_u) % c.m) % c.m;
                bool dead = false;
                for (unsigned i = 1; i <= n && !dead; ++i) {
                    uint64_t f = c.k->sub(1, c.k->mul(c.arg(i - 1), u));
                    if (f == 0)
                        dead = true;
                    else
                        e += c.chi(i).inverse().exponent * (c.k->dlog(f) % c.m) % c.m;
                }
                if (!dead) bucket.add(e % c.m);
            }
            return bucket.value();
        }};

    reg["FD_EULER_II"] = Ident{
        2, [](uint64_t aux) { return static_cast<unsigned>(aux + 2); },
        argsn(ArgDomain::NonZero),
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            if (c.chi(0).is_trivial()) return false;
            MultChar prod = trivial_char(c.k);
            for (unsigned i = 1; i <= n; ++i) prod = prod * c.chi(i);
            return prod != c.chi(n + 1);
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar a = c.chi(0), cc = c.chi(n + 1);
            LauricellaParams p{LauricellaKind::D, {a}, {}, {cc}, n};
            MultChar prod = trivial_char(c.k);
            for (unsigned i = 1; i <= n; ++i) {
                p.b.push_back(c.chi(i));
                prod = prod * c.chi(i);
            }
            CycloNumber factor{(n % 2 == 0) ? 1L : -1L};
            for (unsigned i = 1; i <= n; ++i) factor *= c.t.g(c.chi(i).exponent);
            factor *= c.t.g((prod.inverse() * cc).exponent) * c.t.inv_g_circ(cc.exponent);
            return factor * lauricella(c.t, p, c.inst.args);
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar a = c.chi(0), cc = c.chi(n + 1);
            MultChar prod = trivial_char(c.k);
            for (unsigned i = 1; i <= n; ++i) prod = prod * c.chi(i);
            MultChar tailc = prod.inverse() * cc;
            std::vector<uint64_t> exps{a.inverse().exponent, tailc.exponent};
            for (unsigned i = 1; i <= n; ++i) exps.push_back(c.chi(i).exponent);
            ExpoBucket bucket(c.m, exps);
            std::vector<uint64_t> idx(n, 0);
            while (true) {
                uint64_t lam_dot = 0, plain_sum = 0, e = 0;
                for (unsigned i = 0; i < n; ++i) {
                    uint64_t u = c.k->antilog(idx[i]);
                    lam_dot = c.k->add(lam_dot, c.k->mul(c.arg(i), u));
                    plain_sum = c.k->add(plain_sum, u);
                    e += c.chi(i + 1).exponent * idx[i] % c.m;
                }
                uint64_t f1 = c.k->sub(1, lam_dot), f2 = c.k->sub(1, plain_sum);
                if (f1 != 0 && f2 != 0) {
                    e += a.inverse().exponent * (c.k->dlog(f1) % c.m) % c.m;
                    e += tailc.exponent * (c.k->dlog(f2) % c.m) % c.m;
                    bucket.add(e % c.m);
                }
                unsigned pos = 0;
                while (pos < n && ++idx[pos] == c.m) idx[pos++] = 0;
                if (pos == n) break;
            }
            return bucket.value();
        }};

    reg["KARLSSON"] = Ident{
        2, fixed_chars(3), args1(ArgDomain::NonZero),
        [](const Ctx& c) { return c.chi(0) != c.chi(2) && !c.chi(1).is_trivial(); },
        [](const Ctx& c) {
            const uint64_t d = c.inst.aux;
            if (d == 0 || c.m % d != 0)
                throw std::invalid_argument("KARLSSON requires d | q-1");
            MultChar a = c.chi(0), b = c.chi(1), cc = c.chi(2);
            uint64_t xi = c.k->antilog(c.m / d);    // g^{(q-1)/d}
            LauricellaParams p;
            p.kind = LauricellaKind::D;
            p.n = static_cast<unsigned>(2 * d - 1);
            p.a = {a.pow(static_cast<long>(d))};
            p.c = {a.pow(static_cast<long>(d - 1)) * cc};
            std::vector<uint64_t> lambda;
            for (uint64_t i = 1; i < d; ++i) {
                p.b.push_back(a * cc.inverse());
                lambda.push_back(c.k->pow(xi, static_cast<long>(i)));
            }
            for (uint64_t i = 0; i < d; ++i) {
                p.b.push_back(b);
                lambda.push_back(c.k->mul(c.k->pow(xi, static_cast<long>(i)), c.arg(0)));
            }
            return lauricella(c.t, p, lambda);
        },
        [](const Ctx& c) {
            const uint64_t d = c.inst.aux;
            MultChar a = c.chi(0), b = c.chi(1), cc = c.chi(2);
            MultChar phid = char_of_exact_order(c.k, d);
            uint64_t lam_d = c.k->pow(c.arg(0), static_cast<long>(d));
            CycloNumber total;
            for (uint64_t i = 0; i < d; ++i) {
                MultChar twist = phid.pow(static_cast<long>(i));
                CycloNumber coef =
                    c.t.g((twist * a).exponent) *
                    c.t.g_circ((a.pow(static_cast<long>(d - 1)) * cc).exponent);
                coef *= c.t.inv_g(a.pow(static_cast<long>(d)).exponent) *
                        c.t.inv_g_circ((twist * cc).exponent);
                total += coef * hgf_2f1(c.t, twist * a, b, twist * cc, lam_d);
            }
            return total;
        }};

    reg["FA_EULER"] = Ident{
        2, [](uint64_t aux) { return static_cast<unsigned>(2 * aux + 1); },
        argsn(ArgDomain::NonZero),
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            if (c.chi(0).is_trivial()) return false;
            for (unsigned i = 1; i <= n; ++i)
                if (c.chi(i) == c.chi(n + i)) return false;
            return true;
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            LauricellaParams p{LauricellaKind::A, {c.chi(0)}, {}, {}, n};
            // (-1)^n as in the F_D companion statement; the printed theorem
            // drops it and fails for odd n (see notes at the top of the file)
            CycloNumber factor{(n % 2 == 0) ? 1L : -1L};
            for (unsigned i = 1; i <= n; ++i) {
                p.b.push_back(c.chi(i));
                p.c.push_back(c.chi(n + i));
                factor *= jacobi_direct({c.chi(i), c.chi(i).inverse() * c.chi(n + i)});
            }
            return factor * lauricella(c.t, p, c.inst.args);
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar a = c.chi(0);
            std::vector<uint64_t> exps{a.inverse().exponent};
            for (unsigned i = 1; i <= n; ++i) {
                exps.push_back(c.chi(i).exponent);
                exps.push_back((c.chi(i).inverse() * c.chi(n + i)).exponent);
            }
            ExpoBucket bucket(c.m, exps);
            std::vector<uint64_t> idx(n, 0);
            while (true) {
                uint64_t lam_dot = 0, e = 0;
                bool dead = false;
                for (unsigned i = 0; i < n && !dead; ++i) {
                    uint64_t u = c.k->antilog(idx[i]);
                    lam_dot = c.k->add(lam_dot, c.k->mul(c.arg(i), u));
                    e += c.chi(i + 1).exponent * idx[i] % c.m;
                    uint64_t f = c.k->sub(1, u);
                    if (f == 0)
                        dead = true;
                    else
                        e += (c.chi(i + 1).inverse() * c.chi(n + i + 1)).exponent *
                             (c.k->dlog(f) % c.m) % c.m;
                }
                uint64_t head = c.k->sub(1, lam_dot);
                if (!dead && head != 0) {
                    e += a.inverse().exponent * (c.k->dlog(head) % c.m) % c.m;
                    bucket.add(e % c.m);
                }
                unsigned pos = 0;
                while (pos < n && ++idx[pos] == c.m) idx[pos++] = 0;
                if (pos == n) break;
            }
            return bucket.value();
        }};

    reg["FB_EULER"] = Ident{
        2, [](uint64_t aux) { return static_cast<unsigned>(2 * aux + 1); },
        argsn(ArgDomain::NonZero),
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar prod = trivial_char(c.k);
            for (unsigned i = 0; i < n; ++i) {
                if (c.chi(i).is_trivial()) return false;
                prod = prod * c.chi(n + i);
            }
            return prod != c.chi(2 * n);
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar cc = c.chi(2 * n);
            LauricellaParams p{LauricellaKind::B, {}, {}, {cc}, n};
            MultChar prod = trivial_char(c.k);
            CycloNumber factor{(n % 2 == 0) ? 1L : -1L};   // (-1)^n, as for F_D
            for (unsigned i = 0; i < n; ++i) {
                p.a.push_back(c.chi(i));
                p.b.push_back(c.chi(n + i));
                prod = prod * c.chi(n + i);
                factor *= c.t.g(c.chi(n + i).exponent);
            }
            factor *= c.t.g((prod.inverse() * cc).exponent) * c.t.inv_g_circ(cc.exponent);
            return factor * lauricella(c.t, p, c.inst.args);
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar cc = c.chi(2 * n);
            MultChar prod = trivial_char(c.k);
            for (unsigned i = 0; i < n; ++i) prod = prod * c.chi(n + i);
            MultChar tailc = prod.inverse() * cc;
            std::vector<uint64_t> exps{tailc.exponent};
            for (unsigned i = 0; i < n; ++i) {
                exps.push_back(c.chi(i).inverse().exponent);
                exps.push_back(c.chi(n + i).exponent);
            }
            ExpoBucket bucket(c.m, exps);
            std::vector<uint64_t> idx(n, 0);
            while (true) {
                uint64_t plain_sum = 0, e = 0;
                bool dead = false;
                for (unsigned i = 0; i < n && !dead; ++i) {
                    uint64_t u = c.k->antilog(idx[i]);
                    plain_sum = c.k->add(plain_sum, u);
                    e += c.chi(n + i).exponent * idx[i] % c.m;
                    uint64_t f = c.k->sub(1, c.k->mul(c.arg(i), u));
                    if (f == 0)
                        dead = true;
                    else
                        e += c.chi(i).inverse().exponent * (c.k->dlog(f) % c.m) % c.m;
                }
                uint64_t head = c.k->sub(1, plain_sum);
                if (!dead && head != 0) {
                    e += tailc.exponent * (c.k->dlog(head) % c.m) % c.m;
                    bucket.add(e % c.m);
                }
                unsigned pos = 0;
                while (pos < n && ++idx[pos] == c.m) idx[pos++] = 0;
                if (pos == n) break;
            }
            return bucket.value();
        }};

    reg["FC_EULER"] = Ident{
        2, [](uint64_t aux) { return static_cast<unsigned>(aux + 2); },
        argsn(ArgDomain::NonZero),
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar acc = c.chi(0).inverse();
            for (unsigned i = 0; i < n; ++i) acc = acc * c.chi(2 + i);
            return !acc.is_trivial() && !c.chi(1).is_trivial();
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            LauricellaParams p{LauricellaKind::C, {c.chi(0)}, {c.chi(1)}, {}, n};
            MultChar acc = c.chi(0).inverse();
            CycloNumber factor{(n % 2 == 0) ? 1L : -1L};   // (-1)^n, as for F_D
            for (unsigned i = 0; i < n; ++i) {
                p.c.push_back(c.chi(2 + i));
                acc = acc * c.chi(2 + i);
                factor *= c.t.g(c.chi(2 + i).inverse().exponent);
            }
            factor *= c.t.g(acc.exponent) * c.t.inv_g_circ(c.chi(0).inverse().exponent);
            return factor * lauricella(c.t, p, c.inst.args);
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar b = c.chi(1);
            MultChar acc = c.chi(0).inverse();
            for (unsigned i = 0; i < n; ++i) acc = acc * c.chi(2 + i);
            std::vector<uint64_t> exps{b.inverse().exponent, acc.exponent};
            for (unsigned i = 0; i < n; ++i) exps.push_back(c.chi(2 + i).inverse().exponent);
            ExpoBucket bucket(c.m, exps);
            std::vector<uint64_t> idx(n, 0);
            while (true) {
                uint64_t ratio_sum = 0, plain_sum = 0, e = 0;
                for (unsigned i = 0; i < n; ++i) {
                    uint64_t u = c.k->antilog(idx[i]);
                    plain_sum = c.k->add(plain_sum, u);
                    ratio_sum = c.k->add(ratio_sum, c.k->mul(c.arg(i), c.k->inv(u)));
                    e += c.chi(2 + i).inverse().exponent * idx[i] % c.m;
                }
                uint64_t f1 = c.k->sub(1, ratio_sum), f2 = c.k->sub(1, plain_sum);
                if (f1 != 0 && f2 != 0) {
                    e += b.inverse().exponent * (c.k->dlog(f1) % c.m) % c.m;
                    e += acc.exponent * (c.k->dlog(f2) % c.m) % c.m;
                    bucket.add(e % c.m);
                }
                unsigned pos = 0;
                while (pos < n && ++idx[pos] == c.m) idx[pos++] = 0;
                if (pos == n) break;
            }
            return bucket.value();
        }};

    auto f4_chars = [](const Ctx& c) {
        return f4::Chars{c.chi(0), c.chi(1), c.chi(2), c.chi(3)};
    };
    auto f4_generic_hyp = [](const Ctx& c) {
        MultChar a = c.chi(0), b = c.chi(1), c1 = c.chi(2), c2 = c.chi(3);
        return !a.is_trivial() && !b.is_trivial() && a != c1 && a != c2 && b != c1 &&
               b != c2;
    };
    auto f4_nondeg = [f4_generic_hyp](const Ctx& c) {
        return f4_generic_hyp(c) &&
               !(c.chi(0) * c.chi(1) * (c.chi(2) * c.chi(3)).inverse()).is_trivial();
    };
    auto f4_at_twisted_args = [](const Ctx& c) {
        uint64_t x = c.arg(0), y = c.arg(1);
        uint64_t a1 = c.k->mul(x, c.k->sub(1, y));
        uint64_t a2 = c.k->mul(y, c.k->sub(1, x));
        return appell(c.t, 4, {c.chi(0), c.chi(1), c.chi(2), c.chi(3)}, a1, a2);
    };

    reg["F4_UNIT_ARG"] = Ident{
        0, fixed_chars(4), args2(ArgDomain::NotOne), always,
        [](const Ctx& c) {
            uint64_t x = c.arg(0), y = c.arg(1);
            uint64_t denom = c.k->inv(c.k->mul(c.k->sub(1, x), c.k->sub(1, y)));
            uint64_t a1 = c.k->mul(c.k->neg(x), denom);
            uint64_t a2 = c.k->mul(c.k->neg(y), denom);
            return c.t.eval(c.chi(0).inverse(), c.k->sub(1, x)) *
                   c.t.eval(c.chi(1).inverse(), c.k->sub(1, y)) *
                   appell(c.t, 4, {c.chi(0), c.chi(1), c.chi(2), c.chi(3)}, a1, a2);
        },
        [](const Ctx& c) {
            MultChar a = c.chi(0), b = c.chi(1);
            uint64_t x = c.arg(0), y = c.arg(1);
            if (x == 0 || y == 0) return CycloNumber();
            const Unit2F1Table& u1 = unit_2f1_table(c, c.chi(2));
            const Unit2F1Table& u2 = unit_2f1_table(c, c.chi(3));
            uint64_t dx = c.k->dlog(x) % c.m, dy = c.k->dlog(y) % c.m;
            CycloNumber total;
            for (uint64_t mu = 0; mu < c.m; ++mu) {
                CycloNumber row = c.t.g(a.exponent + mu) * c.t.inv_g(a.exponent) *
                                  c.qpow(1) * c.t.inv_g_circ(mu) *
                                  c.t.root_qm1(static_cast<long>(mu * dx % c.m));
                for (uint64_t nu = 0; nu < c.m; ++nu) {
                    CycloNumber term = row * c.t.g(b.exponent + nu) *
                                       c.t.inv_g(b.exponent) * c.qpow(1) *
                                       c.t.inv_g_circ(nu);
                    term *= u1.at(b.exponent + nu, c.m - mu);
                    term *= u2.at(a.exponent + mu, c.m - nu);
                    term *= c.t.root_qm1(static_cast<long>(nu * dy % c.m));
                    total += term;
                }
            }
            Rational sc = -Rational(1, static_cast<long>(c.q) - 1);
            return total * CycloNumber(sc * sc);
        }};

    reg["PRODUCT_3F2"] = Ident{
        0, fixed_chars(6), no_args, f4_nondeg,
        [](const Ctx& c) {
            MultChar b_nu = c.chi(1) * c.chi(5), a_mu = c.chi(0) * c.chi(4);
            return hgf_2f1(c.t, b_nu, c.chi(4).inverse(), c.chi(2), 1) *
                   hgf_2f1(c.t, a_mu, c.chi(5).inverse(), c.chi(3), 1);
        },
        [](const Ctx& c) {
            MultChar a = c.chi(0), b = c.chi(1), c1 = c.chi(2), c2 = c.chi(3),
                     mu = c.chi(4), nu = c.chi(5);
            MultChar abcc = a * b * (c1 * c2).inverse();
            HgfParams p{{abcc, mu.inverse(), nu.inverse()},
                        {b * (c1 * mu).inverse(), a * (c2 * nu).inverse()}};
            CycloNumber main = poch(c.t, b.inverse() * c1, mu) *
                               poch(c.t, a.inverse() * c2, nu);
            main *= inv_poch_circ(c, c1, mu) * inv_poch_circ(c, c2, nu);
            main *= hgf(c.t, p, 1);
            CycloNumber second = jacobi_direct({a * c2.inverse(), b * c1.inverse()});
            second *= poch_circ(c.t, trivial_char(c.k), mu) *
                      poch_circ(c.t, trivial_char(c.k), nu);
            second *= inv_poch_circ(c, c1, mu) * inv_poch_circ(c, c2, nu);
            Rational w = Rational(1 - static_cast<long>(c.q));
            w = w * w / static_cast<long>(c.q);
            CycloNumber gates;
            if (delta(c1 * mu) && delta(b * nu)) gates += f4::C1(c.t, {a, b, c1, c2});
            if (delta(a * mu) && delta(c2 * nu)) gates += f4::C2(c.t, {a, b, c1, c2});
            return main - second - CycloNumber(w) * gates;
        }};

    reg["KEY_PROP"] = Ident{
        0, fixed_chars(4), args2(ArgDomain::NonZeroNotOne), f4_nondeg,
        [f4_at_twisted_args, f4_chars](const Ctx& c) {
            return f4::bigJ(f4_chars(c)) * f4_at_twisted_args(c);
        },
        [f4_chars](const Ctx& c) {
            f4::Chars ch = f4_chars(c);
            MultChar a = ch.a, b = ch.b, c1 = ch.c1, c2 = ch.c2;
            MultChar abcc = a * b * (c1 * c2).inverse();
            uint64_t x = c.arg(0), y = c.arg(1);
            uint64_t xm1 = c.k->sub(x, 1), ym1 = c.k->sub(y, 1);
            uint64_t arg_eta = c.k->mul(c.k->mul(x, y), c.k->inv(c.k->mul(xm1, ym1)));
            uint64_t arg_x = c.k->mul(x, c.k->inv(xm1));
            uint64_t arg_y = c.k->mul(y, c.k->inv(ym1));
            CycloNumber sum;
            for (uint64_t h = 0; h < c.m; ++h) {
                MultChar eta{c.k, h};
                CycloNumber term = poch(c.t, a, eta) * poch(c.t, b, eta) *
                                   poch(c.t, abcc, eta);
                term *= c.qpow(1) * c.t.inv_g_circ(h);
                term *= inv_poch_circ(c, c1, eta) * inv_poch_circ(c, c2, eta);
                term *= c.t.eval(eta, arg_eta);
                term *= hgf_2f1(c.t, a * eta, b.inverse() * c1, c1 * eta, arg_x);
                term *= hgf_2f1(c.t, b * eta, a.inverse() * c2, c2 * eta, arg_y);
                sum += term;
            }
            CycloNumber rhs = c.t.eval(a.inverse(), c.k->sub(1, x)) *
                              c.t.eval(b.inverse(), c.k->sub(1, y)) * f4::bigJ(ch) * sum *
                              CycloNumber(-Rational(1, static_cast<long>(c.q) - 1));
            rhs -= f4::S0(ch, x, y) + f4::S1(ch, x, y) + f4::S2(ch, x, y);
            return rhs;
        }};

    reg["F4_EXPANSION"] = Ident{
        0, fixed_chars(4), args2(ArgDomain::NotOne), f4_nondeg,
        [f4_at_twisted_args, f4_chars](const Ctx& c) {
            return f4::bigJ(f4_chars(c)) * f4_at_twisted_args(c);
        },
        [f4_chars](const Ctx& c) {
            f4::Chars ch = f4_chars(c);
            MultChar a = ch.a, b = ch.b, c1 = ch.c1, c2 = ch.c2;
            MultChar abcc = a * b * (c1 * c2).inverse();
            uint64_t x = c.arg(0), y = c.arg(1);
            uint64_t xy = c.k->mul(x, y);
            CycloNumber sum;
            if (xy != 0) {
                for (uint64_t h = 0; h < c.m; ++h) {
                    MultChar eta{c.k, h};
                    CycloNumber term = poch(c.t, a, eta) * poch(c.t, b, eta) *
                                       poch(c.t, abcc, eta);
                    term *= c.qpow(1) * c.t.inv_g_circ(h);
                    term *= inv_poch_circ(c, c1, eta) * inv_poch_circ(c, c2, eta);
                    term *= c.t.eval(eta, xy);
                    term *= hgf_2f1(c.t, a * eta, b * eta, c1 * eta, x);
                    term *= hgf_2f1(c.t, a * eta, b * eta, c2 * eta, y);
                    sum += term;
                }
            }
            CycloNumber rhs = f4::bigJ(ch) * sum *
                              CycloNumber(-Rational(1, static_cast<long>(c.q) - 1));
            rhs -= f4::S0(ch, x, y);
            rhs += f4::R1(ch, x, y);
            CycloNumber r2 = f4::R2(ch, x, y);
            if (delta(a * b.inverse())) r2 *= c.qpow(1);
            rhs += r2;
            return rhs;
        }};

    reg["F4_EULER"] = Ident{
        0, fixed_chars(4), args2(ArgDomain::NonZeroNotOne), f4_generic_hyp,
        [f4_at_twisted_args, f4_chars](const Ctx& c) {
            return f4::bigJ(f4_chars(c)) * f4_at_twisted_args(c);
        },
        [f4_chars](const Ctx& c) {
            f4::Chars ch = f4_chars(c);
            MultChar a = ch.a, b = ch.b, c1 = ch.c1, c2 = ch.c2;
            uint64_t x = c.arg(0), y = c.arg(1);
            MultChar e_1mu = a.inverse() * c1, e_1mv = b.inverse() * c2;
            MultChar e_xu = a * (c1 * c2).inverse(), e_yv = b * (c1 * c2).inverse();
            MultChar e_tail = (a * b).inverse() * c1 * c2;
            ExpoBucket bucket(c.m, {a.exponent, b.exponent, e_1mu.exponent, e_1mv.exponent,
                                    e_xu.exponent, e_yv.exponent, e_tail.exponent});
            for (uint64_t ju = 0; ju < c.m; ++ju) {
                uint64_t u = c.k->antilog(ju);
                uint64_t f_1mu = c.k->sub(1, u);
                uint64_t xu = c.k->mul(x, u);
                uint64_t f_xu = c.k->sub(1, xu);
                if (f_1mu == 0 || f_xu == 0) continue;
                uint64_t base = a.exponent * ju % c.m +
                                e_1mu.exponent * (c.k->dlog(f_1mu) % c.m) % c.m +
                                e_xu.exponent * (c.k->dlog(f_xu) % c.m) % c.m;
                for (uint64_t jv = 0; jv < c.m; ++jv) {
                    uint64_t v = c.k->antilog(jv);
                    uint64_t f_1mv = c.k->sub(1, v);
                    uint64_t yv = c.k->mul(y, v);
                    uint64_t f_yv = c.k->sub(1, yv);
                    uint64_t f_tail = c.k->sub(f_xu, yv);
                    if (f_1mv == 0 || f_yv == 0 || f_tail == 0) continue;
                    uint64_t e = base + b.exponent * jv % c.m +
                                 e_1mv.exponent * (c.k->dlog(f_1mv) % c.m) % c.m +
                                 e_yv.exponent * (c.k->dlog(f_yv) % c.m) % c.m +
                                 e_tail.exponent * (c.k->dlog(f_tail) % c.m) % c.m;
                    bucket.add(e % c.m);
                }
            }
            CycloNumber rhs = bucket.value();
            rhs -= f4::S0(ch, x, y) + f4::S1(ch, x, y) + f4::S2(ch, x, y);
            return rhs;
        }};

    reg["F4_BALANCED"] = Ident{
        0, fixed_chars(4), args2(ArgDomain::NonZeroNotOne),
        [f4_generic_hyp](const Ctx& c) {
            return f4_generic_hyp(c) &&
                   (c.chi(0) * c.chi(1) * (c.chi(2) * c.chi(3)).inverse()).is_trivial();
        },
        [f4_at_twisted_args, f4_chars](const Ctx& c) {
            return f4::bigJ(f4_chars(c)) * f4_at_twisted_args(c);
        },
        [f4_chars](const Ctx& c) {
            f4::Chars ch = f4_chars(c);
            uint64_t x = c.arg(0), y = c.arg(1);
            CycloNumber rhs = f4::bigJ(ch) * hgf_2f1(c.t, ch.a, ch.b, ch.c1, x) *
                              hgf_2f1(c.t, ch.a, ch.b, ch.c2, y);
            if (c.k->sub(c.k->sub(1, x), y) == 0) rhs -= c.qpow(1) * f4::S0(ch, x, y);
            return rhs;
        }};

    // Prefactor (c^-1)_{b_1...b_n}: the remark as printed has (b_1...b_n)_{c^-1},
    // which fails numerically; deriving the transformation from the defining
    // sum (nu_i -> b_i^-1 nu_i^-1, then the reflection formula) yields this
    // form, exhaustively verified for n = 1 over F_5.
    reg["FB_TO_FA"] = Ident{
        2, [](uint64_t aux) { return static_cast<unsigned>(2 * aux + 1); },
        argsn(ArgDomain::NonZero), always,
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            LauricellaParams p{LauricellaKind::B, {}, {}, {c.chi(2 * n)}, n};
            for (unsigned i = 0; i < n; ++i) {
                p.a.push_back(c.chi(i));
                p.b.push_back(c.chi(n + i));
            }
            return lauricella(c.t, p, c.inst.args);
        },
        [](const Ctx& c) {
            unsigned n = static_cast<unsigned>(c.inst.aux);
            MultChar cc = c.chi(2 * n);
            MultChar prod_b = trivial_char(c.k);
            std::vector<uint64_t> lam_inv;
            LauricellaParams p{LauricellaKind::A, {}, {}, {}, n};
            CycloNumber factor{1L};
            for (unsigned i = 0; i < n; ++i) {
                prod_b = prod_b * c.chi(n + i);
                p.b.push_back(c.chi(n + i));
                p.c.push_back(c.chi(i).inverse() * c.chi(n + i));
                factor *= poch(c.t, c.chi(i), c.chi(n + i).inverse()) *
                          c.t.eval(c.chi(n + i).inverse(), c.arg(i));
                lam_inv.push_back(c.k->inv(c.arg(i)));
            }
            factor *= poch(c.t, cc.inverse(), prod_b);
            p.a = {prod_b * cc.inverse()};
            return factor * lauricella(c.t, p, lam_inv);
        }};

    return reg;
}

const std::map<std::string, Ident>& registry() {
    static const std::map<std::string, Ident> reg = build_registry();
    return reg;
}

std::string make_witness(const IdentityInstance& inst) {
    std::ostringstream os;
    os << "q=" << inst.field->q() << " chars=[";
    for (size_t i = 0; i < inst.char_exps.size(); ++i)
        os << (i ? "," : "") << inst.char_exps[i];
    os << "] args=[";
    for (size_t i = 0; i < inst.args.size(); ++i) os << (i ? "," : "") << inst.args[i];
    os << "]";
    if (inst.aux) os << " aux=" << inst.aux;
    return os.str();
}

}  // namespace

namespace {

const Ident& ident_for(const std::string& id) {
    auto it = registry().find(id);
    if (it == registry().end()) throw std::invalid_argument("unknown identity: " + id);
    return it->second;
}

IdentityInstance shape_instance(const std::string& id, const Ident& ident,
                                const IdentityInstance& inst) {
    uint64_t aux = inst.aux ? inst.aux : ident.aux_default;
    IdentityInstance shaped = inst;
    shaped.aux = aux;
    if (shaped.char_exps.size() != ident.n_chars(aux))
        throw std::invalid_argument("identity " + id + ": wrong character count");
    if (shaped.args.size() != ident.arg_domains(aux).size())
        throw std::invalid_argument("identity " + id + ": wrong argument count");
    return shaped;
}

}  // namespace

IdentityVerdict check(const std::string& id, const IdentityInstance& inst) {
    const Ident& ident = ident_for(id);
    IdentityInstance shaped = shape_instance(id, ident, inst);
    Ctx cx{shaped, shaped.field, gauss_table(shaped.field), shaped.field->q() - 1,
           shaped.field->q()};
    IdentityVerdict v;
    v.id = id;
    v.hypotheses_met = ident.hyp(cx);
    v.lhs = ident.lhs(cx);
    v.rhs = ident.rhs(cx);
    v.equal = (v.lhs == v.rhs);
    v.witness = make_witness(shaped);
    return v;
}

std::vector<IdentityVerdict> sweep(const std::string& id, const FieldPtr& field,
                                   const SweepOptions& opt) {
    const Ident& ident = ident_for(id);
    uint64_t aux = opt.aux ? opt.aux : ident.aux_default;
    const unsigned nchars = ident.n_chars(aux);
    const std::vector<ArgDomain> domains = ident.arg_domains(aux);
    const uint64_t m = field->q() - 1;

    std::vector<std::vector<uint64_t>> arg_values;
    for (ArgDomain d : domains) arg_values.push_back(domain_codes(d, field));

    uint64_t total = 1;
    for (unsigned i = 0; i < nchars; ++i) total *= m;
    for (const auto& av : arg_values) total *= av.size();

    auto instance_at = [&](uint64_t index) {
        IdentityInstance inst;
        inst.field = field;
        inst.aux = aux;
        uint64_t rest = index;
        for (unsigned i = 0; i < nchars; ++i) {
            inst.char_exps.push_back(rest % m);
            rest /= m;
        }
        for (const auto& av : arg_values) {
            inst.args.push_back(av[rest % av.size()]);
            rest /= av.size();
        }
        return inst;
    };

    std::vector<uint64_t> indices;
    if (total <= opt.exhaustive_cap) {
        indices.reserve(total);
        for (uint64_t i = 0; i < total; ++i) indices.push_back(i);
    } else {
        // deterministic stratified sample: one point per stride window
        uint64_t want = std::min<uint64_t>(opt.sample ? opt.sample : 1, total);
        for (uint64_t s = 0; s < want; ++s) {
            uint64_t lo = s * total / want;
            uint64_t width = (s + 1) * total / want - lo;
            indices.push_back(
                lo + (opt.seed * 0x9e3779b97f4a7c15ull + s * 0x2545f4914f6cdd1dull) % width);
        }
    }

    // with hypotheses_only the filter is applied before evaluating either
    // side, so filtered-out instances cost only the hypothesis predicate
    auto evaluate = [&](uint64_t index, IdentityVerdict& slot, bool& keep) {
        IdentityInstance shaped = shape_instance(id, ident, instance_at(index));
        Ctx cx{shaped, shaped.field, gauss_table(shaped.field), shaped.field->q() - 1,
               shaped.field->q()};
        bool met = ident.hyp(cx);
        if (opt.hypotheses_only && !met) {
            keep = false;
            return;
        }
        keep = true;
        slot.id = id;
        slot.hypotheses_met = met;
        slot.lhs = ident.lhs(cx);
        slot.rhs = ident.rhs(cx);
        slot.equal = (slot.lhs == slot.rhs);
        slot.witness = make_witness(shaped);
    };

    std::vector<IdentityVerdict> all(indices.size());
    std::vector<char> kept(indices.size(), 0);
    unsigned workers = std::max(1u, opt.workers);
    if (workers == 1) {
        for (size_t i = 0; i < indices.size(); ++i) {
            bool keep = false;
            evaluate(indices[i], all[i], keep);
            kept[i] = keep;
        }
    } else {
        std::vector<std::future<void>> tasks;
        std::atomic<size_t> next{0};
        for (unsigned w = 0; w < workers; ++w)
            tasks.push_back(std::async(std::launch::async, [&] {
                for (size_t i = next.fetch_add(1); i < indices.size(); i = next.fetch_add(1)) {
                    bool keep = false;
                    evaluate(indices[i], all[i], keep);
                    kept[i] = keep;
                }
            }));
        for (auto& t : tasks) t.get();
    }
    std::vector<IdentityVerdict> out;
    out.reserve(all.size());
    for (size_t i = 0; i < all.size(); ++i)
        if (kept[i]) out.push_back(std::move(all[i]));
    return out;
}

const std::vector<std::string>& identity_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [key, val] : registry()) v.push_back(key);
        return v;
    }();
    return ids;
}

uint64_t sweep_domain_size(const std::string& id, const FieldPtr& field, uint64_t aux) {
    auto it = registry().find(id);
    if (it == registry().end()) throw std::invalid_argument("unknown identity: " + id);
    const Ident& ident = it->second;
    uint64_t a = aux ? aux : ident.aux_default;
    uint64_t total = 1;
    const uint64_t m = field->q() - 1;
    for (unsigned i = 0; i < ident.n_chars(a); ++i) total *= m;
    for (ArgDomain d : ident.arg_domains(a)) total *= domain_codes(d, field).size();
    return total;
}

}  // namespace ffh
