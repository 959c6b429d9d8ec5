#include "k3e/verify.hpp"

#include <chrono>

#include "k3e/enumerative.hpp"
#include "k3e/phi_solver.hpp"

namespace k3e {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point t0 = Clock::now();
    double secs() const {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }
};

CheckResult run_one(const std::string& name, const std::function<bool(std::string&)>& fn) {
    CheckResult r;
    r.name = name;
    Timer t;
    try {
        std::string detail;
        r.pass = fn(detail);
        r.detail = detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = t.secs();
    return r;
}

// windowed J1 = dz(log F) = dz(K)/K in the region |p| < 1
WSeries windowed_J1(long Nq, long hi) {
    const FormsContext& fc = FormsContext::get(Nq + 2);
    JSeries K = fc.K.restrict_trunc(Nq);
    HalfLaurent tt = HalfLaurent::term(1, Rat(1)) - HalfLaurent::term(-1, Rat(1));
    JSeries P(Var::q, 0, Nq);
    for (long e = 0; e < Nq; ++e) P.set(e, K.at(e).divide_exact(tt));
    JSeries Pinv = P.inverse();
    WindowPoly seed = WindowPoly::windowed(1, hi);
    for (long e = 1; e <= hi; e += 2) seed.set(e, Rat(-1));  // 1/(t - 1/t) = -sum t^{2k+1}
    WSeries invTT(Var::q, 0, Nq);
    invTT.set(0, seed);
    for (long n = 1; n < Nq; ++n) invTT.set(n, WindowPoly());
    WSeries invK = invTT * to_windowed(Pinv);
    return to_windowed(dz(K)) * invK;
}

}  // namespace

WSeries expand_localized(const LocJ<Rat>& c, long Nq, long hi) {
    WSeries acc = to_windowed(c.num.restrict_trunc(std::min(c.num.trunc(), Nq)));
    if (c.pow > 0) {
        WSeries invD = inverse_FsqDelta(Nq + 2, hi);
        for (int i = 0; i < c.pow; ++i) acc = acc * invD;
    }
    return acc;
}

JSeries twenty_two_two_product(long Nq) {
    JSeries acc = JSeries::one(Var::q, Nq);
    for (long m = 1; m < Nq; ++m) {
        JSeries gp(Var::q, 0, Nq), gm(Var::q, 0, Nq);
        QSeries g0 = QSeries::one(Var::q, Nq);
        g0.set(m, Rat(-1));
        for (long j = 0; m * j < Nq; ++j) {
            gp.set(m * j, HalfLaurent::term(2 * j, Rat(j + 1)));
            gm.set(m * j, HalfLaurent::term(-2 * j, Rat(j + 1)));
        }
        acc = acc * gp * gm * lift_scalar_series(g0.pow(-20));
    }
    return acc;
}

namespace {

// ---- check 1: both classical expansions of wp agree + the dz^2 log F
// relation, q-order 8, window [-10,10] ----------------------------------
bool crit_weierstrass(std::string& detail, long Nq = 8, long W = 10) {
    const FormsContext& fc = FormsContext::get(Nq + 2);
    long hi = 2 * W + 2 * Nq + 8;
    WSeries wp = weierstrass_p(Nq, -W, hi / 2);
    // (a) u-form: wp = -1/u^2 - sum_{k>=2} (-1)^k (2k-1) 2k C_{2k} u^{2k-2};
    // exact route: u-substitute the finite wp*F^2, divide by F(u)^2
    long Nu = 10;
    JSeries wpF2 = -fc.P2.restrict_trunc(Nq);
    JSeries Ks = fc.K.restrict_trunc(Nq);
    auto usub = [&](const JSeries& s, long NuT) {
        TruncSeries<TruncSeries<GaussRat>> out(Var::u, 0, NuT);
        for (long j = 0; j < NuT; ++j) {
            TruncSeries<GaussRat> row(Var::q, s.val(), s.trunc());
            for (long e = s.val(); e < s.trunc(); ++e) {
                GaussRat acc;
                for (auto& [te, v] : s.at(e).coeffs()) {
                    GaussRat wgt(Rat(1));
                    GaussRat step(Rat(0), Rat(te, 2));
                    for (long t = 0; t < j; ++t) wgt = wgt * step / GaussRat(Rat(t + 1));
                    acc += wgt * GaussRat(v);
                }
                row.set(e, acc);
            }
            out.set(j, row);
        }
        return out;
    };
    auto wpF2u = usub(wpF2, Nu + 4);
    auto Fu = usub(Ks, Nu + 4);  // K(u); F = -iK so F^2 = -K^2
    auto F2u = -(Fu * Fu);
    auto wpu = wpF2u * F2u.inverse();
    // expected u-form with exact rational coefficients (equality against the
    // real expected rows also certifies the imaginary parts vanish)
    {
        TruncSeries<TruncSeries<GaussRat>> expect(Var::u, -2, Nu);
        {
            TruncSeries<GaussRat> row(Var::q, 0, Nq);
            row.set(0, GaussRat(Rat(-1)));
            expect.set(-2, row);
        }
        for (long k = 2; 2 * k - 2 < Nu; ++k) {
            QSeries c2k = renorm_eisenstein(int(2 * k), Nq);
            Rat sgn = (k % 2 == 0) ? Rat(-1) : Rat(1);  // -(-1)^k
            QSeries term = c2k.scaled(sgn * Rat((2 * k - 1) * 2 * k));
            TruncSeries<GaussRat> row(Var::q, 0, Nq);
            for (long e = 0; e < Nq; ++e) row.set(e, GaussRat(term.at(e)));
            expect.set(2 * k - 2, row);
        }
        for (long j = -2; j < std::min(wpu.trunc(), Nu); ++j) {
            TruncSeries<GaussRat> got = (j >= wpu.val()) ? wpu.at(j) : TruncSeries<GaussRat>();
            TruncSeries<GaussRat> exp_row =
                (j >= expect.val() && j < expect.trunc()) ? expect.at(j)
                                                          : TruncSeries<GaussRat>();
            if (!(got == exp_row)) {
                detail = "u-expansion mismatch at u^" + std::to_string(j);
                return false;
            }
        }
    }
    // (b) wp == -G/F^2 + E2/12 on the window
    {
        WSeries invF2 = inverse_Fsq(Nq, hi);
        WSeries rhs = to_windowed(fc.G.restrict_trunc(Nq)).scaled(Rat(-1)) * invF2 +
                      to_windowed(lift_scalar_series(fc.E2.restrict_trunc(Nq).scaled(Rat(1, 12))));
        if (!(wp == rhs)) { detail = "wp != -G/F^2 + E2/12 on window"; return false; }
    }
    // (c) wp + dz^2 log F + 2 C2 == 0 on the window
    {
        WSeries J1 = windowed_J1(Nq, hi);
        WSeries rel = wp + dz(J1) +
                      to_windowed(lift_scalar_series(
                          renorm_eisenstein(2, Nq).scaled(Rat(2))));
        bool zero = true;
        for (long e = rel.val(); e < rel.trunc(); ++e)
            if (!rel.at(e).ring_is_zero()) zero = false;
        if (!zero) { detail = "wp + dz^2 log F + 2 C2 != 0"; return false; }
    }
    return true;
}

// ---- check 2: three-way chi10 + symmetry --------------------------
bool crit_chi10(std::string& detail, long Nq = 5, long Nqt = 5) {
    SiegelSeries P = chi10_product(Nq, Nqt);
    SiegelSeries H = chi10_exp_hecke(Nq, Nqt);
    SiegelSeries L = chi10_additive_lift(Nq, Nqt);
    if (!(P == H)) { detail = "product vs exponential-Hecke mismatch"; return false; }
    if (!(P == L)) { detail = "product vs additive lift mismatch"; return false; }
    if (!(P == swap_q_qt(P))) { detail = "q <-> qt symmetry broken"; return false; }
    return true;
}

// ---- check 3: psi closed forms ------------------------------------
bool crit_psi(std::string& detail, long Nq = 5, long W = 10) {
    PsiFamily fam = inverse_chi10(Nq, 2, -W, W);
    for (long d = -1; d <= 2; ++d) {
        if (!(fam.psi.at(d) == psi_closed_form(d, Nq, -W, W))) {
            detail = "psi_" + std::to_string(d) + " closed form mismatch";
            return false;
        }
    }
    return true;
}

// ---- check 4: splitting: H_d finite with margin, H_1 = -2E2/Delta --
bool crit_split(std::string& detail, long Nq = 5, long W = 10) {
    for (long d = 1; d <= 3; ++d) {
        JSeries H = hilb_H(d, Nq, -W, W, 6);  // margin 6 t-slots = 3 y-slots
        if (d == 1) {
            QSeries target = eisenstein(2, Nq) * delta(Nq + 2).inverse();
            JSeries t = lift_scalar_series(target.scaled(Rat(-2)));
            if (!(H == t.restrict_trunc(H.trunc()))) {
                detail = "H_1 != -2 E2 / Delta";
                return false;
            }
        }
    }
    return true;
}

// ---- check 5: correction identity at qt^0 --------------------------
bool crit_correction(std::string& detail, long Nq = 5, long W = 10) {
    const FormsContext& fc = FormsContext::get(Nq + 2);
    long hi = 2 * W + 2 * Nq + 16;
    WSeries invFD = inverse_FsqDelta(Nq, hi);
    QSeries dinv = fc.DeltaInv.restrict_trunc(Nq);
    WSeries lhs = to_windowed(lift_scalar_series((fc.E2.restrict_trunc(Nq) * dinv)
                                                     .scaled(Rat(-2)))) +
                  (invFD * to_windowed(fc.G.restrict_trunc(Nq))).scaled(Rat(24));
    WSeries wp = weierstrass_p(Nq, -W, hi / 2);
    WSeries rhs = (wp * to_windowed(lift_scalar_series(dinv))).scaled(Rat(-24));
    if (!(lhs == rhs)) { detail = "-2E2/Delta + 24G/(F^2 Delta) != -24wp/Delta"; return false; }
    return true;
}

// ---- check 6: fock examples (i)-(iii), d <= 4 ----------------------
bool crit_fock_examples(std::string& detail, long Nq = 5, long dmax = 4) {
    FockEngine<Rat> eng(Nq, phi_seeds(Nq));
    const FormsContext& fc = FormsContext::get(Nq + 2);
    const LocRing<Rat>& ring = eng.ring();
    for (long d = 1; d <= dmax; ++d) {
        // (i)  <p_{-1}(F)^d | E0 p_{-1}(F)^d> = F^{2d-2}/Delta
        FockState sF(size_t(d), {1, 2});
        JSeries num = JSeries::one(Var::q, Nq);
        for (long i = 0; i < d; ++i) num = num * (-fc.Ksq.restrict_trunc(Nq));
        if (!ring.eq(eng.pair_eval(sF, 0, sF), {num, 1})) {
            detail = "example (i) fails at d=" + std::to_string(d);
            return false;
        }
        // (ii) W-states give dtau^{2d} of the same
        FockState sW(size_t(d), {1, 1});
        LocJ<Rat> expW{num, 1};
        for (long i = 0; i < 2 * d; ++i) expW = ring.dq(expW);
        if (!ring.eq(eng.pair_eval(sW, 0, sW), expW)) {
            detail = "example (ii) fails at d=" + std::to_string(d);
            return false;
        }
        // (iii) <C(F)>_q = G^{d-1}/Delta
        FockState mu{{1, 2}}, nu{{1, 2}};
        for (long i = 1; i < d; ++i) {
            mu.push_back({1, IDX_PT});
            nu.push_back({1, IDX_ONE});
        }
        std::sort(mu.begin(), mu.end());
        std::sort(nu.begin(), nu.end());
        LocJ<Rat> val = ring.scale(eng.pair_eval(mu, 0, nu),
                                   factorial_rat(unsigned(d - 1)).inv());
        JSeries numG = -fc.Ksq.restrict_trunc(Nq);
        for (long i = 1; i < d; ++i) numG = numG * fc.G.restrict_trunc(Nq);
        if (!ring.eq(val, {numG, 1})) {
            detail = "example (iii) fails at d=" + std::to_string(d);
            return false;
        }
    }
    return true;
}

// ---- check 7: trace identity vs module igusa ------------------------
bool crit_trace(std::string& detail, long Nq = 5, long W = 10, long dmax = 2) {
    FockEngine<Rat> eng(Nq, phi_seeds(Nq));
    PsiFamily fam = inverse_chi10(Nq, dmax - 1, -W, W);
    long hi = 2 * W + 160;
    for (long d = 0; d <= dmax; ++d) {
        LocJ<Rat> tr = eng.trace_e0(d);
        WSeries lhs = expand_localized(tr, Nq, hi);
        if (!(lhs == -fam.psi.at(d - 1))) {
            detail = "trace on energy " + std::to_string(d) + " != -psi_" +
                     std::to_string(d - 1);
            return false;
        }
    }
    return true;
}

// ---- check 8: WDVV residuals + negative control --------------------
bool crit_wdvv(std::string& detail, long Nq = 4, long dmax = 2) {
    const KLattice& lat = KLattice::get();
    FockEngine<Rat> eng(Nq, phi_seeds(Nq));
    for (long d = 1; d <= dmax; ++d) {
        for (const FockState& s : fock_basis(d)) {
            if (!eng.vec_is_zero(eng.wdvv_residual_1(lat.B(), lat.F(), s))) {
                detail = "residual 1 (B,F) nonzero at d=" + std::to_string(d);
                return false;
            }
            if (!eng.vec_is_zero(eng.wdvv_residual_1(lat.B(), lat.W(), s))) {
                detail = "residual 1 (B,B+F) nonzero at d=" + std::to_string(d);
                return false;
            }
            if (!eng.vec_is_zero(eng.wdvv_residual_2(lat.B(), s))) {
                detail = "residual 2 (B) nonzero at d=" + std::to_string(d);
                return false;
            }
        }
    }
    // negative controls: corrupt phi_{1,1} (and phi_{2,1}) by +q
    for (auto key : {std::pair<long, long>{1, 1}, std::pair<long, long>{2, 1}}) {
        PhiTable<Rat> bad = phi_seeds(Nq);
        JSeries p = bad.get(key.first, key.second);
        p.set(1, p.at(1) + HalfLaurent(Rat(1)));
        bad.set(key.first, key.second, p);
        FockEngine<Rat> engbad(Nq, std::move(bad));
        bool broke = false;
        for (const FockState& s : fock_basis(2)) {
            if (!engbad.vec_is_zero(engbad.wdvv_residual_1(lat.B(), lat.F(), s)) ||
                !engbad.vec_is_zero(engbad.wdvv_residual_2(lat.B(), s))) {
                broke = true;
                break;
            }
        }
        if (!broke) {
            detail = "mutated phi(" + std::to_string(key.first) + "," +
                     std::to_string(key.second) + ") left residuals zero";
            return false;
        }
    }
    return true;
}

// ---- check 9: A1 resolution ----------------------------------------
bool crit_eb(std::string& detail, long Nq = 5, long W = 10) {
    long hi = 2 * W + 40;
    // (a) vacuum element: y/(1+y)^2 window equals [q^{-1}] of 1/(F^2 Delta)
    WindowPoly S = s_factor_window(hi);
    WSeries invD = inverse_FsqDelta(Nq, hi + 2 * Nq + 8);
    if (!(S == invD.at(-1).clipped(2, hi))) {
        detail = "y/(1+y)^2 != [q^{-1}] 1/(F^2 Delta)";
        return false;
    }
    // (b) [q^0] of phi_{m,0} = (-y)^{-m/2} - (-y)^{m/2} for m = 1, 2
    PhiTable<Rat> seeds = phi_seeds(Nq);
    for (long m = 1; m <= 2; ++m) {
        HalfLaurent expect = HalfLaurent::term(-m, Rat(1)) - HalfLaurent::term(m, Rat(1));
        if (!(seeds.get(m, 0).at(0) == expect)) {
            detail = "[q^0] phi_{" + std::to_string(m) + ",0} mismatch";
            return false;
        }
    }
    // (c) trace over energy <= 2 vs the 20-2-2 product
    EBEngine eb;
    JSeries prod = twenty_two_two_product(3);
    for (long d = 0; d <= 2; ++d) {
        WindowPoly lhs = S * WindowPoly::exact(eb.trace(d));
        WindowPoly rhs = S * WindowPoly::exact(prod.at(d));
        if (!(lhs == rhs)) {
            detail = "E_B trace mismatch at energy " + std::to_string(d);
            return false;
        }
    }
    return true;
}

// ---- check 10: KKV / Yau-Zaslow -------------------------------------
bool crit_kkv(std::string& detail, long Nu = 9, long Nq = 5, long Nqt = 3) {
    GWSeries N = gw_disconnected(Nu, Nq, Nqt);
    // qt^{-1} column vs (1/u^2 Delta) exp( sum u^{2k} |B2k|/(k(2k)!) E2k )
    TruncSeries<QSeries> arg(Var::u, 0, Nu + 2);
    for (long j = 0; j < Nu + 2; ++j) arg.set(j, QSeries::zero(Var::q, Nq));
    for (long k = 1; 2 * k < Nu + 2; ++k) {
        Rat b = bernoulli(unsigned(2 * k));
        if (b < Rat(0)) b = -b;
        arg.set(2 * k, eisenstein(2 * k, Nq).scaled(b / (Rat(k) * factorial_rat(unsigned(2 * k)))));
    }
    TruncSeries<QSeries> ex = arg.exp();
    QSeries dinv = delta(Nq + 1).inverse();
    for (long j = N.s.val(); j < N.s.trunc(); ++j) {
        const BivarQQt& cj = N.s.at(j);
        QSeries lhs = (cj.universal_zero() || -1 < cj.val() || -1 >= cj.trunc())
                          ? QSeries()
                          : cj.at(-1);
        QSeries rhs = (j + 2 >= 0 && j + 2 < ex.trunc()) ? ex.at(j + 2) * dinv : QSeries();
        if (!(lhs == rhs)) {
            detail = "KKV column mismatch at u^" + std::to_string(j);
            return false;
        }
    }
    // genus-0 row: 1, 24, 324, 3200
    const QSeries& yz = N.s.at(-2).at(-1);
    const long expect[4] = {1, 24, 324, 3200};
    for (long i = 0; i < 4; ++i)
        if (!(yz.at(-1 + i) == Rat(expect[i]))) {
            detail = "Yau-Zaslow coefficient mismatch";
            return false;
        }
    return true;
}

// ---- check 11: multiple cover ---------------------------------------
bool crit_cover(std::string& detail) {
    // C2 with one point insertion: sum_{k|m} k, checked against the cover
    // oracle for m <= 6
    std::map<long, Rat> prim1{{1, Rat(1)}};
    for (long m = 1; m <= 6; ++m) {
        Rat lhs = descendent_reduction(m, 1, 1, {2}, prim1);
        Rat rhs = Rat(m) * elliptic_cover_count(m);
        if (!(lhs == rhs)) { detail = "sum_{k|m} k mismatch at m=" + std::to_string(m); return false; }
    }
    // genus 2: 8728 + 2^5 = 8760, and as 6312 + 1800 + 648
    std::map<long, Rat> prim2{{5, Rat(8728)}, {2, Rat(1)}};
    if (!(descendent_reduction(2, 2, 2, {2, 2}, prim2) == Rat(8760))) {
        detail = "8728 + 32 != 8760";
        return false;
    }
    if (!(Rat(6312) + Rat(1800) + Rat(648) == Rat(8760))) {
        detail = "geometric fixture sum broken";
        return false;
    }
    // the multiple-cover rule at g = 1 for m <= 4: [u^0] N_{m beta_1} =
    // cover_count(m) * [u^0] N_1
    GWSeries N = gw_disconnected(5, 5, 3);
    GWSeries C = connect(N);
    PrimitiveTable tab = primitive_table(C, 4);
    for (long m = 1; m <= 4; ++m) {
        auto res = multiple_cover_series(m, 1, tab);
        QSeries lhs = (0 >= res.val() && 0 < res.trunc()) ? res.at(0) : QSeries();
        QSeries rhs = tab.N.at(1).at(0).scaled(elliptic_cover_count(m));
        if (!(lhs == rhs)) { detail = "multiple-cover g=1 mismatch at m=" + std::to_string(m); return false; }
    }
    // m = 1 identity
    if (!(multiple_cover_series(1, 2, tab) == tab.N.at(2))) { detail = "multiple-cover rule at m=1 not identity"; return false; }
    return true;
}

// ---- check 12: motivic constraints ----------------------------------
bool crit_motivic(std::string& detail, long Nq = 5) {
    // w = -1 specialization equals -q psi_{-1} = S (prod)^{-1}
    long W = 10, hi = 2 * W + 2 * Nq + 24;
    WSeries ky1 = kawai_yoshioka_w_minus1(Nq, hi);
    PsiFamily fam = inverse_chi10(Nq, 0, -W, W);
    WSeries target = -fam.psi.at(-1).shifted(1);  // -q psi_{-1}
    if (!(ky1 == target)) { detail = "w=-1 specialization != -q psi_{-1}"; return false; }
    // lowest-coefficient symmetry for h, d <= 3: the y^{1-h+d} q^{h-1}
    // w-polynomial of the refined product is (h,d)-symmetric
    long Nw = 9;
    KYSeries f = kawai_yoshioka(Nw, 10, Nq);
    auto coeff = [&](long h, long d) {
        // y-power 1-h+d at q^{h-1}; q-index shifted: our series starts at q^0
        // for q-exponent h-1 use position h-1... the refined series carries
        // q^{n}; the constraint's q^{h-1} means position h-1 >= 0
        TruncSeries<HalfLaurent> row = f.at(h - 1);
        long ypow = 1 - h + d;
        TruncSeries<Rat> out(Var::w, row.val(), row.trunc());
        for (long e = row.val(); e < row.trunc(); ++e) out.set(e, row.at(e).at(2 * ypow));
        return out;
    };
    for (long h = 1; h <= 3; ++h)
        for (long d = 1; d <= 3; ++d) {
            TruncSeries<Rat> a = coeff(h, d), b = coeff(d, h);
            long lo = std::max(a.val(), b.val());
            long hi2 = std::min(a.trunc(), b.trunc());
            for (long e = lo; e < hi2; ++e)
                if (!(a.at(e) == b.at(e))) {
                    detail = "(iv) symmetry fails at (h,d)=(" + std::to_string(h) + "," +
                             std::to_string(d) + ")";
                    return false;
                }
        }
    // (h,d) = (1,0): the y^0 q^0 row against a direct low-order expansion of
    // the displayed product (the prefactor has y-valuation 1 in this region,
    // so the row vanishes; adjacent rows pin the expansion)
    {
        TruncSeries<Rat> a = coeff(1, 0);
        for (long e = a.val(); e < std::min(a.trunc(), 6L); ++e)
            if (!(a.at(e) == Rat(0))) { detail = "(1,0) lowest coefficient mismatch"; return false; }
        auto oracle_q0 = [&](long wexp, long yexp) {
            long i2 = yexp - 1 + wexp, k2 = yexp - 1 - wexp;
            bool hit = i2 >= 0 && k2 >= 0 && i2 % 2 == 0 && k2 % 2 == 0;
            return Rat(hit ? 1 : 0);
        };
        const auto& q0row = f.at(0);
        for (long wexp = -3; wexp <= 3; ++wexp)
            for (long yexp = 1; yexp <= 4; ++yexp)
                if (!(q0row.at(wexp).at(2 * yexp) == oracle_q0(wexp, yexp))) {
                    detail = "direct-expansion oracle mismatch at q^0";
                    return false;
                }
    }
    return true;
}

// ---- solver extension (full level) --------------------------------------
bool crit_solver_d3(std::string& detail, long Nq = 4) {
    PhiTable<Rat> m1 = phi_seeds_m1(Nq);
    PhiSolveReport r2 = phi_solve({{2, 0}, {2, 1}, {2, 2}}, Nq, m1, 2);
    if (!r2.success) { detail = "d=2 solve failed: " + r2.message; return false; }
    PhiTable<Rat> full = phi_seeds(Nq);
    for (long l = 0; l <= 2; ++l)
        if (!(r2.table.get(2, l).restrict_trunc(Nq) == full.get(2, l).restrict_trunc(Nq))) {
            detail = "solver does not reproduce phi(2," + std::to_string(l) + ")";
            return false;
        }
    // d=3 extension: solve (2,-1) and the (3,*) keys, then check the WDVV
    // residuals on a documented probe set with the extended table
    PhiTable<Rat> base;
    for (auto& [k, s] : full.entries())
        if (!(k.first == 2 && k.second == -1)) base.set(k.first, k.second, s);
    PhiSolveReport r3 = phi_solve({{2, -1}, {3, 0}, {3, 1}, {3, 2}, {3, 3}}, Nq, base, 3);
    if (!r3.success) { detail = "d=3 solve failed: " + r3.message; return false; }
    const KLattice& lat = KLattice::get();
    FockEngine<Rat> eng(Nq, r3.table);
    for (const FockState& s : fock_basis_restricted(3, {IDX_ONE, 1, 2, IDX_PT})) {
        if (!eng.vec_is_zero(eng.wdvv_residual_1(lat.B(), lat.F(), s)) ||
            !eng.vec_is_zero(eng.wdvv_residual_2(lat.B(), s))) {
            detail = "d=3 residual nonzero with solver-extended table";
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<CheckResult> run_acceptance() {
    std::vector<CheckResult> out;
    out.push_back(run_one("weierstrass dual expansions + dz^2 log F relation",
                          [](std::string& d) { return crit_weierstrass(d); }));
    out.push_back(run_one("three-way chi10 agreement and q<->qt symmetry",
                          [](std::string& d) { return crit_chi10(d); }));
    out.push_back(run_one("windowed 1/chi10 reproduces the classical psi_{-1..2}",
                          [](std::string& d) { return crit_psi(d); }));
    out.push_back(run_one("splitting into finite + polar parts, H_1 = -2E2/Delta",
                          [](std::string& d) { return crit_split(d); }));
    out.push_back(run_one("correction identity -2E2/D + 24G/(F^2 D) = -24wp/D",
                          [](std::string& d) { return crit_correction(d); }));
    out.push_back(run_one("fock matrix elements: theta-power family, dtau^2d, G-power family",
                          [](std::string& d) { return crit_fock_examples(d); }));
    out.push_back(run_one("trace of E0 equals -psi_{d-1} for d <= 2",
                          [](std::string& d) { return crit_trace(d); }));
    out.push_back(run_one("WDVV residuals vanish (d <= 2) and mutation breaks them",
                          [](std::string& d) { return crit_wdvv(d); }));
    out.push_back(run_one("A1 resolution: vacuum window, leading phi rows, 20-2-2 trace",
                          [](std::string& d) { return crit_eb(d); }));
    out.push_back(run_one("KKV column and Yau-Zaslow genus-0 row",
                          [](std::string& d) { return crit_kkv(d); }));
    out.push_back(run_one("multiple cover: divisor sums, 8760 both ways, g=1 covers",
                          [](std::string& d) { return crit_cover(d); }));
    out.push_back(run_one("refined product: w=-1 specialization and lowest-row symmetry",
                          [](std::string& d) { return crit_motivic(d); }));
    return out;
}

std::vector<CheckResult> run_verify(const VerifyConfig& cfg) {
    std::vector<CheckResult> out;
    long Nq = cfg.Nq, Nqt = cfg.Nqt, W = cfg.win_hi;
    out.push_back(run_one("weierstrass relations", [&](std::string& d) {
        return crit_weierstrass(d, std::min(Nq + 2, 8L), W);
    }));
    out.push_back(run_one("three-way chi10", [&](std::string& d) {
        return crit_chi10(d, Nq, Nqt);
    }));
    out.push_back(run_one("psi closed forms", [&](std::string& d) { return crit_psi(d, Nq, W); }));
    out.push_back(run_one("finite/polar splitting", [&](std::string& d) {
        return crit_split(d, Nq, W);
    }));
    out.push_back(run_one("correction identity", [&](std::string& d) {
        return crit_correction(d, Nq, W);
    }));
    out.push_back(run_one("fock matrix elements", [&](std::string& d) {
        return crit_fock_examples(d, Nq, 3);
    }));
    out.push_back(run_one("trace identity", [&](std::string& d) {
        return crit_trace(d, Nq, W, cfg.dmax);
    }));
    out.push_back(run_one("WDVV residuals", [&](std::string& d) {
        return crit_wdvv(d, std::min(Nq, 4L), cfg.dmax);
    }));
    out.push_back(run_one("A1 resolution", [&](std::string& d) { return crit_eb(d, Nq, W); }));
    out.push_back(run_one("KKV / Yau-Zaslow", [&](std::string& d) {
        return crit_kkv(d, 9, Nq, 3);
    }));
    out.push_back(run_one("multiple cover", [&](std::string& d) { return crit_cover(d); }));
    out.push_back(run_one("refined product constraints", [&](std::string& d) {
        return crit_motivic(d, Nq);
    }));
    if (cfg.solver_d3)
        out.push_back(run_one("order-by-order solver + d=3 WDVV", [&](std::string& d) {
            return crit_solver_d3(d, 4);
        }));
    return out;
}

}  // namespace k3e
