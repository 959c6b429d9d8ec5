#include "k3e/igusa.hpp"

#include <cmath>

namespace k3e {

namespace {

// generalized binomial coefficient C(c, j) for integer c (c may be negative)
Rat gen_binom(long c, long j) {
    Rat acc(1);
    for (long i = 0; i < j; ++i) acc *= Rat(Int(c - i), Int(i + 1));
    return acc;
}

// multiply S in place by (1 - p^k q^h qt^d)^c on the box; h, d >= 0, h+d > 0
void mul_factor(SiegelSeries& S, long k, long h, long d, long c) {
    if (c == 0) return;
    long qt_val = S.val(), qt_tr = S.trunc();
    long q_tr = 0;
    for (long dp = qt_val; dp < qt_tr; ++dp)
        if (!S.at(dp).universal_zero()) q_tr = std::max(q_tr, S.at(dp).trunc());
    // j bounded by the box in both exponents
    long jmax = TRUNC_INF;
    if (d > 0) jmax = std::min(jmax, (qt_tr - 1 - qt_val) / d);
    if (h > 0) jmax = std::min(jmax, q_tr / h + 1);
    if (jmax >= TRUNC_INF) throw std::logic_error("mul_factor: unbounded expansion");
    std::vector<Rat> B(size_t(jmax + 1));
    for (long j = 0; j <= jmax; ++j) {
        B[size_t(j)] = gen_binom(c, j);
        if (j % 2 == 1) B[size_t(j)] = -B[size_t(j)];
    }
    SiegelSeries out(Var::qt, qt_val, qt_tr);
    for (long dp = qt_val; dp < qt_tr; ++dp) {
        JSeries acc;  // universal zero
        for (long j = 0; j <= jmax; ++j) {
            long src_d = dp - j * d;
            if (src_d < qt_val) break;
            if (B[size_t(j)].is_zero()) continue;
            const JSeries& src = S.at(src_d);
            if (src.universal_zero() || src.is_zero()) continue;
            if (src.val() + j * h >= src.trunc()) continue;
            JSeries term(src.var(), src.val() + j * h, src.trunc());
            HalfLaurent tshift = HalfLaurent::term(2 * j * k, B[size_t(j)]);
            for (long e = src.val(); e + j * h < src.trunc(); ++e)
                term.set(e + j * h, src.at(e) * tshift);
            acc = acc + term;
        }
        out.set(dp, acc);
    }
    S = out;
}

}  // namespace

SiegelSeries chi10_product(long Nq, long Nqt) {
    // c-table must cover 4 h d - k^2 up to 4 Nq Nqt
    long need = Nq * Nqt + 2;
    CoefficientTable ctab = c_table(need);
    // prefactor p q qt (1 - p^{-1})^2 = q qt (p - 2 + p^{-1})
    SiegelSeries S(Var::qt, 1, Nqt + 1);
    {
        JSeries pre(Var::q, 1, Nq + 1);
        pre.set(1, HalfLaurent::term(2, Rat(1)) + HalfLaurent::term(0, Rat(-2)) +
                       HalfLaurent::term(-2, Rat(1)));
        S.set(1, pre);
    }
    for (long h = 0; h <= Nq; ++h) {
        for (long d = 0; d <= Nqt; ++d) {
            if (h + d == 0) continue;
            long kk = (long)std::sqrt((double)(4 * h * d + 1)) + 2;
            while (kk * kk > 4 * h * d + 1) --kk;
            for (long k = -kk; k <= kk; ++k) {
                long m = 4 * h * d - k * k;
                Rat cv = ctab.at(m);
                if (!cv.is_integer())
                    throw std::logic_error("chi10_product: non-integer c(m)");
                long c = (long)cv.num().get_si();
                mul_factor(S, k, h, d, c);
            }
        }
    }
    return S;
}

SiegelSeries chi10_exp_hecke(long Nq, long Nqt) {
    const FormsContext& fc = FormsContext::get(Nq);
    // -qt F^2 Delta exp(- sum_{l>=1} qt^l (Z|_{0,1} V_l))
    SiegelSeries arg = SiegelSeries::zero(Var::qt, Nqt + 1);
    for (long l = 1; l <= Nqt; ++l) {
        JacobiSeries Zl(z_function(Nq * l + 2).s.restrict_trunc(Nq * l + 1), 0, 2);
        JacobiSeries ZVl = hecke_V(Zl, l);
        arg.set(l, -ZVl.s.restrict_trunc(Nq + 1));
    }
    SiegelSeries e = arg.exp();
    JSeries lead = -(fc.Ksq * lift_scalar_series(fc.Delta)).restrict_trunc(Nq + 1);
    // lead = F^2 Delta ; chi10 = -qt * lead * e
    SiegelSeries out(Var::qt, 1, Nqt + 1);
    for (long d = 1; d <= Nqt; ++d) {
        JSeries c = e.at(d - 1) * (-lead);
        out.set(d, c);
    }
    return out;
}

SiegelSeries chi10_additive_lift(long Nq, long Nqt) {
    SiegelSeries out(Var::qt, 1, Nqt + 1);
    for (long l = 1; l <= Nqt; ++l) {
        long srcN = Nq * l + 2;
        const FormsContext& fc = FormsContext::get(srcN);
        JSeries FFD = -(fc.Ksq * lift_scalar_series(fc.Delta)).restrict_trunc(srcN);
        JacobiSeries lift = hecke_V(JacobiSeries(FFD, 10, 2), l);
        out.set(l, -lift.s.restrict_trunc(Nq + 1));
    }
    return out;
}

SiegelSeries chi10(long Nq, long Nqt, Chi10Method method) {
    switch (method) {
        case Chi10Method::product: return chi10_product(Nq, Nqt);
        case Chi10Method::exp_hecke: return chi10_exp_hecke(Nq, Nqt);
        case Chi10Method::additive_lift: return chi10_additive_lift(Nq, Nqt);
    }
    throw std::logic_error("chi10: bad method");
}

SiegelSeries swap_q_qt(const SiegelSeries& s) {
    long qlo = TRUNC_INF, qhi = -TRUNC_INF;
    for (long d = s.val(); d < s.trunc(); ++d) {
        const JSeries& c = s.at(d);
        if (c.universal_zero()) continue;
        qlo = std::min(qlo, c.val());
        qhi = std::max(qhi, c.trunc());
    }
    if (qlo > qhi) return s;
    SiegelSeries out(Var::qt, qlo, qhi);
    for (long h = qlo; h < qhi; ++h) {
        JSeries col(Var::q, s.val(), s.trunc());
        for (long d = s.val(); d < s.trunc(); ++d) {
            const JSeries& c = s.at(d);
            if (c.universal_zero() || h < c.val() || h >= c.trunc()) continue;
            col.set(d, c.at(h));
        }
        out.set(h, col);
    }
    return out;
}

WSeries inverse_Fsq(long Nq, long seed_hi_t) {
    // -1/K^2 in the region: seed p/(1-p)^2 = sum k p^k, then
    // prod_m (1-q^m)^4 (1-p q^m)^{-2} (1-p^{-1} q^m)^{-2}, then negate.
    WSeries acc(Var::q, 0, Nq);
    {
        WindowPoly seed = WindowPoly::windowed(2, seed_hi_t);
        for (long e = 2; e <= seed_hi_t; e += 2) seed.set(e, Rat(e / 2));
        acc.set(0, seed);
        for (long n = 1; n < Nq; ++n) acc.set(n, WindowPoly());
    }
    for (long m = 1; m < Nq; ++m) {
        JSeries f = JSeries::one(Var::q, Nq);  // (1-q^m)^4 part collected on t^0
        {
            QSeries g = QSeries::one(Var::q, Nq);
            g.set(m, Rat(-1));
            f = lift_scalar_series(g.pow(4));
        }
        JSeries gp(Var::q, 0, Nq);  // (1 - p q^m)^{-2} = sum (j+1) p^j q^{mj}
        JSeries gm(Var::q, 0, Nq);  // (1 - p^{-1} q^m)^{-2}
        for (long j = 0; m * j < Nq; ++j) {
            gp.set(m * j, HalfLaurent::term(2 * j, Rat(j + 1)));
            gm.set(m * j, HalfLaurent::term(-2 * j, Rat(j + 1)));
        }
        acc = acc * to_windowed(f * gp * gm);
    }
    return -acc;
}

WSeries inverse_FsqDelta(long Nq, long seed_hi_t) {
    const FormsContext& fc = FormsContext::get(Nq + 1);
    WSeries r = inverse_Fsq(Nq, seed_hi_t) * to_windowed(lift_scalar_series(fc.DeltaInv.restrict_trunc(Nq)));
    return r;
}

PsiFamily inverse_chi10(long Nq, long Dmax, long win_lo, long win_hi) {
    // slack so every psi_d stays certified on [2*win_lo, 2*win_hi]
    long tguess = 2 * ((long)std::sqrt((double)(4 * (Nq + 1) * (Dmax + 2) + 1)) + 2);
    long slack = 2 * (Nq + 2) + (Dmax + 2) * tguess + 8;
    long seed_hi = 2 * win_hi + slack;
    long NqI = Nq + 2;

    SiegelSeries C = chi10_product(NqI, Dmax + 2);
    WSeries W0;  // 1/C_1 = -1/(F^2 Delta)
    {
        const FormsContext& fc = FormsContext::get(NqI + 1);
        W0 = -(inverse_Fsq(NqI, seed_hi) *
               to_windowed(lift_scalar_series(fc.DeltaInv.restrict_trunc(NqI))));
    }
    PsiFamily fam;
    fam.win_lo = win_lo;
    fam.win_hi = win_hi;
    std::vector<WSeries> W(size_t(Dmax + 2));
    W[0] = W0;
    for (long j = 1; j <= Dmax + 1; ++j) {
        WSeries s;  // sum_{i=1..j} C_{i+1} W_{j-i}
        for (long i = 1; i <= j; ++i) {
            if (1 + i >= C.trunc()) break;
            const JSeries& Ci = C.at(1 + i);
            if (Ci.universal_zero() || Ci.is_zero()) continue;
            WSeries t = to_windowed(Ci) * W[size_t(j - i)];
            s = s.universal_zero() ? t : s + t;
        }
        W[size_t(j)] = s.universal_zero() ? WSeries::zero(Var::q, W0.trunc()) : -(W0 * s);
    }
    for (long d = -1; d <= Dmax; ++d) fam.psi[d] = W[size_t(d + 1)];

    // certification: each psi_d must cover the requested window at all
    // computed q-orders
    for (long d = -1; d <= Dmax; ++d) {
        const WSeries& s = fam.psi.at(d);
        for (long e = s.val(); e < std::min(s.trunc(), Nq); ++e) {
            const WindowPoly& wp = s.at(e);
            if (!wp.is_exact() && wp.hi() < 2 * win_hi)
                throw std::domain_error("inverse_chi10: window certification failed");
        }
    }
    return fam;
}

WSeries polar_part(long d, long Nq, long win_lo, long win_hi) {
    if (d < -1) throw std::invalid_argument("polar_part: d >= -1 required");
    const FormsContext& fc = FormsContext::get(Nq + 2);
    long slack = 2 * (Nq + 2) + 4 * (d + 2) + 8;
    WSeries invFD = inverse_FsqDelta(Nq + 1, 2 * win_hi + slack);
    JSeries Gd = fc.G.restrict_trunc(Nq + 1).pow(d + 1);
    Rat a = fc.atab.at(d);
    (void)win_lo;
    return (invFD * to_windowed(Gd)).scaled(a);
}

WSeries psi_closed_form(long d, long Nq, long win_lo, long win_hi) {
    const FormsContext& fc = FormsContext::get(Nq + 2);
    long slack = 2 * (Nq + 2) + 24;
    long hi = 2 * win_hi + slack;
    (void)win_lo;
    QSeries dinv = fc.DeltaInv.restrict_trunc(Nq + 1);
    WSeries invF2 = inverse_Fsq(Nq + 1, hi);
    WSeries wp = weierstrass_p(Nq + 1, win_lo - 2, win_hi + slack / 2);
    auto lift = [&](const QSeries& s) { return to_windowed(lift_scalar_series(s)); };
    auto liftJ = [&](const JSeries& s) { return to_windowed(s.restrict_trunc(Nq + 1)); };
    switch (d) {
        case -1:
            // -1/(F^2 Delta)
            return -(invF2 * lift(dinv));
        case 0:
            // 24 wp / Delta
            return wp.scaled(Rat(24)) * lift(dinv);
        case 1: {
            // -(324 wp^2 + 3/4 E4) F^2 / Delta ; wp^2 F^2 = (wp F^2) wp
            JSeries wpF2 = -fc.P2;  // wp F^2 = -(wp K^2)
            WSeries t1 = (liftJ(wpF2) * wp).scaled(Rat(-324));
            WSeries t2 = liftJ(-fc.Ksq).scaled(Rat(-3, 4)) * lift(fc.E4.restrict_trunc(Nq + 1));
            return (t1 + t2) * lift(dinv);
        }
        case 2: {
            // (3200 wp^3 + 64/3 E4 wp + 10/27 E6) F^4 / Delta
            JSeries F2 = -fc.Ksq;
            JSeries wpF2 = -fc.P2;
            WSeries t1 = (liftJ(wpF2 * wpF2) * wp).scaled(Rat(3200));
            WSeries t2 = (liftJ(wpF2 * F2) * lift(fc.E4.restrict_trunc(Nq + 1))).scaled(Rat(64, 3));
            WSeries t3 = (liftJ(F2 * F2) * lift(fc.E6.restrict_trunc(Nq + 1))).scaled(Rat(10, 27));
            return (t1 + t2 + t3) * lift(dinv);
        }
        default:
            throw std::invalid_argument("psi_closed_form: closed forms known for d <= 2 only");
    }
}

JSeries hilb_H(long d, long Nq, long win_lo, long win_hi, long margin_slots) {
    if (d < 0) throw std::invalid_argument("hilb_H: d >= 0 required");
    PsiFamily fam = inverse_chi10(Nq, d - 1 >= 0 ? d - 1 : 0, win_lo, win_hi);
    WSeries psi = fam.psi.at(d - 1);
    WSeries phi = polar_part(d - 1, Nq, win_lo, win_hi);
    WSeries H = -(psi + phi);
    JSeries out(Var::q, H.val(), std::min(H.trunc(), Nq));
    for (long e = out.val(); e < out.trunc(); ++e)
        out.set(e, H.at(e).trim_finite(margin_slots));
    return out;
}

}  // namespace k3e
