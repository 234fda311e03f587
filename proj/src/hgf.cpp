#include "ffhyp/hgf.hpp"

#include <stdexcept>

namespace ffh {

namespace {

Rational one_minus_q_power(uint64_t q, unsigned n) {
    Rational v = 1;
    for (unsigned i = 0; i < n; ++i) v *= 1 - Rational(static_cast<long>(q));
    return v;
}

void require_field(const MultChar& chi, const GaussTable& t) {
    if (chi.field->q() != t.field()->q())
        throw std::invalid_argument("character does not live on the table's field");
}

// Per-axis row of a Lauricella sum: V[j] is the nu_i = phi^j factor of one
// coordinate, constants folded in.
std::vector<CycloNumber> axis_row(const GaussTable& t, const LauricellaParams& p,
                                  unsigned axis, uint64_t lambda_code) {
    const uint64_t m = t.field()->q() - 1;
    const uint64_t dl = t.field()->dlog(lambda_code) % m;
    const CycloNumber q_val{Rational(static_cast<long>(t.field()->q()))};
    std::vector<CycloNumber> row(m);
    for (uint64_t j = 0; j < m; ++j) {
        CycloNumber v = q_val * t.inv_g_circ(j);            // 1/(eps)^o_nu
        switch (p.kind) {
            case LauricellaKind::A:
                v *= t.g(p.b[axis].exponent + j) * t.inv_g(p.b[axis].exponent);
                v *= t.g_circ(p.c[axis].exponent) * t.inv_g_circ(p.c[axis].exponent + j);
                break;
            case LauricellaKind::B:
                v *= t.g(p.a[axis].exponent + j) * t.inv_g(p.a[axis].exponent);
                v *= t.g(p.b[axis].exponent + j) * t.inv_g(p.b[axis].exponent);
                break;
            case LauricellaKind::C:
                v *= t.g_circ(p.c[axis].exponent) * t.inv_g_circ(p.c[axis].exponent + j);
                break;
            case LauricellaKind::D:
                v *= t.g(p.b[axis].exponent + j) * t.inv_g(p.b[axis].exponent);
                break;
        }
        v *= t.root_qm1(static_cast<long>(j * dl % m));
        row[j] = std::move(v);
    }
    return row;
}

// Factor indexed by the total character phi^J, J = sum of axis indices.
std::vector<CycloNumber> head_row(const GaussTable& t, const LauricellaParams& p) {
    const uint64_t m = t.field()->q() - 1;
    std::vector<CycloNumber> row(m);
    for (uint64_t j = 0; j < m; ++j) {
        CycloNumber v{1L};
        switch (p.kind) {
            case LauricellaKind::A:
                v = t.g(p.a[0].exponent + j) * t.inv_g(p.a[0].exponent);
                break;
            case LauricellaKind::B:
                v = t.g_circ(p.c[0].exponent) * t.inv_g_circ(p.c[0].exponent + j);
                break;
            case LauricellaKind::C:
                v = t.g(p.a[0].exponent + j) * t.inv_g(p.a[0].exponent);
                v *= t.g(p.b[0].exponent + j) * t.inv_g(p.b[0].exponent);
                break;
            case LauricellaKind::D:
                v = t.g(p.a[0].exponent + j) * t.inv_g(p.a[0].exponent);
                v *= t.g_circ(p.c[0].exponent) * t.inv_g_circ(p.c[0].exponent + j);
                break;
        }
        row[j] = std::move(v);
    }
    return row;
}

}  // namespace

void LauricellaParams::validate() const {
    size_t na = a.size(), nb = b.size(), nc = c.size();
    bool ok = false;
    switch (kind) {
        case LauricellaKind::A: ok = na == 1 && nb == n && nc == n; break;
        case LauricellaKind::B: ok = na == n && nb == n && nc == 1; break;
        case LauricellaKind::C: ok = na == 1 && nb == 1 && nc == n; break;
        case LauricellaKind::D: ok = na == 1 && nb == n && nc == 1; break;
    }
    if (!ok || n == 0) throw std::invalid_argument("lauricella parameter arity mismatch");
    const FieldPtr& k = a[0].field;
    for (const auto* group : {&a, &b, &c})
        for (const MultChar& chi : *group)
            if (chi.field->q() != k->q())
                throw std::invalid_argument("lauricella characters on mixed fields");
}

CycloNumber hgf(const GaussTable& t, const HgfParams& p, uint64_t lambda_code) {
    if (p.a_list.size() != p.b_list.size() + 1)
        throw std::invalid_argument("hgf needs n+1 upper and n lower characters");
    for (const MultChar& chi : p.a_list) require_field(chi, t);
    for (const MultChar& chi : p.b_list) require_field(chi, t);
    if (lambda_code == 0) return CycloNumber();

    const uint64_t m = t.field()->q() - 1;
    const uint64_t dl = t.field()->dlog(lambda_code) % m;
    const CycloNumber q_val{Rational(static_cast<long>(t.field()->q()))};
    CycloNumber total;
    for (uint64_t j = 0; j < m; ++j) {
        CycloNumber term = q_val * t.inv_g_circ(j);
        for (const MultChar& ai : p.a_list)
            term *= t.g(ai.exponent + j) * t.inv_g(ai.exponent);
        for (const MultChar& bk : p.b_list)
            term *= t.g_circ(bk.exponent) * t.inv_g_circ(bk.exponent + j);
        term *= t.root_qm1(static_cast<long>(j * dl % m));
        total += term;
    }
    return total * CycloNumber(1 / one_minus_q_power(t.field()->q(), 1));
}

CycloNumber lauricella_odometer(const GaussTable& t, const LauricellaParams& p,
                                const std::vector<uint64_t>& lambda) {
    p.validate();
    require_field(p.a[0], t);
    if (lambda.size() != p.n) throw std::invalid_argument("lambda arity mismatch");
    for (uint64_t l : lambda)
        if (l == 0) return CycloNumber();
    const uint64_t m = t.field()->q() - 1;

    std::vector<std::vector<CycloNumber>> axes;
    for (unsigned i = 0; i < p.n; ++i) axes.push_back(axis_row(t, p, i, lambda[i]));
    std::vector<CycloNumber> head = head_row(t, p);

    CycloNumber total;
    std::vector<uint64_t> j(p.n, 0);
    while (true) {
        uint64_t sum_j = 0;
        for (unsigned i = 0; i < p.n; ++i) sum_j += j[i];
        CycloNumber term = head[sum_j % m];
        for (unsigned i = 0; i < p.n; ++i) term *= axes[i][j[i]];
        total += term;

        unsigned pos = 0;
        while (pos < p.n && ++j[pos] == m) j[pos++] = 0;
        if (pos == p.n) break;
    }
    return total * CycloNumber(1 / one_minus_q_power(t.field()->q(), p.n));
}

CycloNumber lauricella_grouped(const GaussTable& t, const LauricellaParams& p,
                               const std::vector<uint64_t>& lambda) {
    p.validate();
    require_field(p.a[0], t);
    if (lambda.size() != p.n) throw std::invalid_argument("lambda arity mismatch");
    for (uint64_t l : lambda)
        if (l == 0) return CycloNumber();
    const uint64_t m = t.field()->q() - 1;

    std::vector<CycloNumber> acc = axis_row(t, p, 0, lambda[0]);
    for (unsigned i = 1; i < p.n; ++i) {
        std::vector<CycloNumber> next = axis_row(t, p, i, lambda[i]);
        std::vector<CycloNumber> conv(m);
        for (uint64_t x = 0; x < m; ++x) {
            if (acc[x].is_zero()) continue;
            for (uint64_t y = 0; y < m; ++y) conv[(x + y) % m] += acc[x] * next[y];
        }
        acc = std::move(conv);
    }
    std::vector<CycloNumber> head = head_row(t, p);
    CycloNumber total;
    for (uint64_t jj = 0; jj < m; ++jj) total += head[jj] * acc[jj];
    return total * CycloNumber(1 / one_minus_q_power(t.field()->q(), p.n));
}

CycloNumber lauricella(const GaussTable& t, const LauricellaParams& p,
                       const std::vector<uint64_t>& lambda) {
    if (p.n >= 3) return lauricella_grouped(t, p, lambda);
    return lauricella_odometer(t, p, lambda);
}

CycloNumber appell(const GaussTable& t, int which, const std::vector<MultChar>& chars,
                   uint64_t lambda1, uint64_t lambda2) {
    LauricellaParams p;
    p.n = 2;
    switch (which) {
        case 1:  // F_1(a; b1, b2; c)
            if (chars.size() != 4) throw std::invalid_argument("F1 takes four characters");
            p.kind = LauricellaKind::D;
            p.a = {chars[0]};
            p.b = {chars[1], chars[2]};
            p.c = {chars[3]};
            break;
        case 2:  // F_2(a; b1, b2; c1, c2)
            if (chars.size() != 5) throw std::invalid_argument("F2 takes five characters");
            p.kind = LauricellaKind::A;
            p.a = {chars[0]};
            p.b = {chars[1], chars[2]};
            p.c = {chars[3], chars[4]};
            break;
        case 3:  // F_3(a1, a2; b1, b2; c)
            if (chars.size() != 5) throw std::invalid_argument("F3 takes five characters");
            p.kind = LauricellaKind::B;
            p.a = {chars[0], chars[1]};
            p.b = {chars[2], chars[3]};
            p.c = {chars[4]};
            break;
        case 4:  // F_4(a; b; c1, c2)
            if (chars.size() != 4) throw std::invalid_argument("F4 takes four characters");
            p.kind = LauricellaKind::C;
            p.a = {chars[0]};
            p.b = {chars[1]};
            p.c = {chars[2], chars[3]};
            break;
        default:
            throw std::invalid_argument("appell index must be 1..4");
    }
    return lauricella(t, p, {lambda1, lambda2});
}

CycloNumber hgf_2f1(const GaussTable& t, const MultChar& a, const MultChar& b,
                    const MultChar& c, uint64_t lambda_code) {
    return hgf(t, HgfParams{{a, b}, {c}}, lambda_code);
}

namespace f4 {

CycloNumber bigJ(const Chars& ch) {
    CycloNumber j1 = jacobi_direct({ch.a, ch.a.inverse() * ch.c1});
    CycloNumber j2 = jacobi_direct({ch.b, ch.b.inverse() * ch.c2});
    return j1 * j2;
}

CycloNumber S0(const Chars& ch, uint64_t x, uint64_t y) {
    CycloNumber j = jacobi_direct({ch.a * ch.c2.inverse(), ch.b * ch.c1.inverse()});
    return char_at_minus_one(ch.a * ch.b) * j * eval_mult(ch.c1.inverse(), x) *
           eval_mult(ch.c2.inverse(), y);
}

CycloNumber S1(const Chars& ch, uint64_t x, uint64_t y) {
    const FieldPtr& k = ch.a.field;
    MultChar abc = (ch.a * ch.b).inverse() * ch.c1 * ch.c2;
    CycloNumber j = jacobi_direct({abc, ch.b});
    return j * eval_mult(ch.c1.inverse(), x) *
           eval_mult(ch.a.inverse() * ch.c1, k->sub(x, 1)) * eval_mult(ch.b.inverse(), y);
}

CycloNumber S2(const Chars& ch, uint64_t x, uint64_t y) {
    const FieldPtr& k = ch.a.field;
    MultChar abc = (ch.a * ch.b).inverse() * ch.c1 * ch.c2;
    CycloNumber j = jacobi_direct({abc, ch.a});
    return j * eval_mult(ch.c2.inverse(), y) *
           eval_mult(ch.b.inverse() * ch.c2, k->sub(y, 1)) * eval_mult(ch.a.inverse(), x);
}

CycloNumber R1(const Chars& ch, uint64_t x, uint64_t y) {
    const FieldPtr& k = ch.a.field;
    MultChar abc = (ch.a * ch.b).inverse() * ch.c1 * ch.c2;
    CycloNumber j1 = jacobi_direct({abc, ch.b});
    CycloNumber j2 = jacobi_direct({ch.a * ch.c2.inverse(), ch.b.inverse() * ch.c2});
    return j1 * j2 * eval_mult(ch.a.inverse() * ch.c1, k->sub(x, 1)) *
           eval_mult(ch.a.inverse() * ch.c2, k->sub(1, y)) *
           eval_mult(ch.c1.inverse(), x) * eval_mult(ch.c2.inverse(), y);
}

CycloNumber R2(const Chars& ch, uint64_t x, uint64_t y) {
    const FieldPtr& k = ch.a.field;
    MultChar abc = (ch.a * ch.b).inverse() * ch.c1 * ch.c2;
    CycloNumber j1 = jacobi_direct({abc, ch.a});
    CycloNumber j2 = jacobi_direct({ch.a.inverse() * ch.c1, ch.b * ch.c1.inverse()});
    return j1 * j2 * eval_mult(ch.b.inverse() * ch.c1, k->sub(1, x)) *
           eval_mult(ch.b.inverse() * ch.c2, k->sub(y, 1)) *
           eval_mult(ch.c1.inverse(), x) * eval_mult(ch.c2.inverse(), y);
}

CycloNumber C1(const GaussTable& t, const Chars& ch) {
    MultChar ab_inv_cc = (ch.a * ch.b).inverse() * ch.c1 * ch.c2;
    MultChar a_inv_cc = ch.a.inverse() * ch.c1 * ch.c2;
    MultChar b_inv_c2 = ch.b.inverse() * ch.c2;
    CycloNumber v = t.g(ab_inv_cc.exponent) * t.g_circ(ch.c2.exponent);
    v *= t.inv_g_circ(a_inv_cc.exponent) * t.inv_g(b_inv_c2.exponent);
    if (delta(ch.c1)) v *= CycloNumber(static_cast<long>(t.field()->q()));
    return v;
}

CycloNumber C2(const GaussTable& t, const Chars& ch) {
    MultChar ab_inv_cc = (ch.a * ch.b).inverse() * ch.c1 * ch.c2;
    MultChar b_inv_cc = ch.b.inverse() * ch.c1 * ch.c2;
    MultChar a_inv_c1 = ch.a.inverse() * ch.c1;
    CycloNumber v = t.g(ab_inv_cc.exponent) * t.g_circ(ch.c1.exponent);
    v *= t.inv_g_circ(b_inv_cc.exponent) * t.inv_g(a_inv_c1.exponent);
    if (delta(ch.c2)) v *= CycloNumber(static_cast<long>(t.field()->q()));
    return v;
}

}  // namespace f4

}  // namespace ffh
