#include "k3e/enumerative.hpp"

#include "k3e/fock.hpp"

namespace k3e {

namespace {

using QSer = TruncSeries<Rat>;
using GQSer = TruncSeries<GaussRat>;

// exp(i e u / 2) to u-truncation N
GQSer half_exp(long e, long N) {
    GQSer r(Var::u, 0, N);
    GaussRat x(Rat(1));
    GaussRat step = GaussRat(Rat(0), Rat(e, 2));  // i e / 2
    for (long n = 0; n < N; ++n) {
        r.set(n, x);
        x = x * step / GaussRat(Rat(n + 1));
    }
    return r;
}

}  // namespace

GWSeries gw_disconnected(long Nu, long Nq, long Nqt) {
    long NuS = Nu + 5;  // source u-orders (inversion costs the u^2 valuation)
    SiegelSeries chi = chi10_product(Nq + 1, Nqt + 1);

    // substitute t^e -> exp(i e u / 2); organize as u-series of (qt, q)
    using BivarG = TruncSeries<TruncSeries<GaussRat>>;
    TruncSeries<BivarG> sub(Var::u, 0, NuS);
    for (long j = 0; j < NuS; ++j) {
        BivarG cj(Var::qt, chi.val(), chi.trunc());
        for (long d = chi.val(); d < chi.trunc(); ++d) {
            const JSeries& col = chi.at(d);
            if (col.universal_zero()) continue;
            TruncSeries<GaussRat> qrow(Var::q, col.val(), col.trunc());
            bool any = false;
            for (long h = col.val(); h < col.trunc(); ++h) {
                GaussRat acc;
                for (auto& [e, v] : col.at(h).coeffs()) {
                    // u^j coefficient of exp(i e u / 2) = (i e / 2)^j / j!
                    GaussRat w(Rat(1));
                    GaussRat step(Rat(0), Rat(e, 2));
                    for (long t = 0; t < j; ++t) w = w * step / GaussRat(Rat(t + 1));
                    acc += w * GaussRat(v);
                }
                if (!acc.is_zero()) any = true;
                qrow.set(h, acc);
            }
            if (any) cj.set(d, qrow);
        }
        sub.set(j, cj);
    }
    // invert and negate: N = -1 / chi10(sub)
    TruncSeries<BivarG> inv = sub.inverse();
    GWSeries out;
    out.connected = false;
    TruncSeries<BivarQQt> r(Var::u, inv.val(), std::min(inv.trunc(), Nu));
    for (long j = r.val(); j < r.trunc(); ++j) {
        const BivarG& cj = inv.at(j);
        if (cj.universal_zero() || cj.is_zero()) continue;
        BivarQQt cr(Var::qt, cj.val(), cj.trunc());
        for (long d = cj.val(); d < cj.trunc(); ++d) {
            const auto& qrow = cj.at(d);
            if (qrow.universal_zero()) continue;
            QSer rr(Var::q, qrow.val(), qrow.trunc());
            for (long h = qrow.val(); h < qrow.trunc(); ++h) {
                const GaussRat& v = qrow.at(h);
                if (!v.is_real())
                    throw std::logic_error("gw_disconnected: imaginary residue survived");
                rr.set(h, -v.re);
            }
            cr.set(d, rr);
        }
        r.set(j, cr);
    }
    out.s = std::move(r);
    return out;
}

namespace {

BivarQQt qt_product_pow(long Nqt, long e) {
    // prod (1 - qt^n)^{24 e} lifted to constants in q
    QSer acc = QSer::one(Var::qt, Nqt);
    for (long n = 1; n < Nqt; ++n) {
        QSer f = QSer::one(Var::qt, Nqt);
        f.set(n, Rat(-1));
        acc = acc * f.pow(24 * e);
    }
    BivarQQt out(Var::qt, acc.val(), acc.trunc());
    for (long d = acc.val(); d < acc.trunc(); ++d)
        out.set(d, QSer::ring_one().with_var(Var::q).scaled(acc.at(d)));
    return out;
}

}  // namespace

GWSeries connect(const GWSeries& v) {
    if (v.connected) throw std::invalid_argument("connect: already connected");
    long Nqt = 2;
    for (long j = v.s.val(); j < v.s.trunc(); ++j)
        if (!v.s.at(j).universal_zero()) Nqt = std::max(Nqt, v.s.at(j).trunc());
    BivarQQt P = qt_product_pow(Nqt + 2, 1);
    GWSeries out;
    out.connected = true;
    out.s = v.s;
    for (long j = v.s.val(); j < v.s.trunc(); ++j)
        out.s.set(j, v.s.at(j) * P);
    return out;
}

GWSeries disconnect(const GWSeries& v) {
    if (!v.connected) throw std::invalid_argument("disconnect: not connected");
    long Nqt = 2;
    for (long j = v.s.val(); j < v.s.trunc(); ++j)
        if (!v.s.at(j).universal_zero()) Nqt = std::max(Nqt, v.s.at(j).trunc());
    BivarQQt P = qt_product_pow(Nqt + 2, -1);
    GWSeries out;
    out.connected = false;
    out.s = v.s;
    for (long j = v.s.val(); j < v.s.trunc(); ++j)
        out.s.set(j, v.s.at(j) * P);
    return out;
}

PrimitiveTable primitive_table(const GWSeries& conn, long hmax) {
    if (!conn.connected) throw std::invalid_argument("primitive_table: need connected series");
    PrimitiveTable tab;
    tab.Nu = conn.s.trunc();
    long Nqt = TRUNC_INF;
    for (long j = conn.s.val(); j < conn.s.trunc(); ++j) {
        const BivarQQt& cj = conn.s.at(j);
        if (!cj.universal_zero()) Nqt = std::min(Nqt, cj.trunc());
    }
    tab.Nqt = Nqt;
    for (long h = 0; h <= hmax; ++h) {
        TruncSeries<QSer> Nh(Var::u, conn.s.val(), conn.s.trunc());
        for (long j = conn.s.val(); j < conn.s.trunc(); ++j) {
            const BivarQQt& cj = conn.s.at(j);
            if (cj.universal_zero()) continue;
            QSer row(Var::qt, cj.val(), cj.trunc());
            for (long d = cj.val(); d < cj.trunc(); ++d) {
                const QSer& qr = cj.at(d);
                if (qr.universal_zero() || h - 1 < qr.val() || h - 1 >= qr.trunc()) continue;
                row.set(d, qr.at(h - 1));
            }
            Nh.set(j, row);
        }
        tab.N[h] = std::move(Nh);
    }
    return tab;
}

TruncSeries<TruncSeries<Rat>> multiple_cover_series(long m, long h, const PrimitiveTable& tab) {
    if (m <= 0) throw std::invalid_argument("multiple_cover_series: m > 0 required");
    TruncSeries<QSer> acc;
    for (long k = 1; k <= m; ++k) {
        if (m % k != 0) continue;
        if (h == 0 && k != m) continue;  // those primitive contributions vanish
        long hk = (m / k) * (m / k) * (h - 1) + 1;
        auto it = tab.N.find(hk);
        if (it == tab.N.end())
            throw std::out_of_range("multiple_cover_series: primitive table misses h = " +
                                    std::to_string(hk));
        TruncSeries<QSer> term = scale_u(it->second, k).scaled(Rat(1, k));
        acc = acc.universal_zero() ? term : acc + term;
    }
    return acc;
}

Rat descendent_reduction(long m, long h, long g, const std::vector<long>& deltas,
                  const std::map<long, Rat>& primitive) {
    if (m <= 0) throw std::invalid_argument("descendent_reduction: m > 0 required");
    long dsum = 0;
    for (long d : deltas) dsum += d;
    Rat acc(0);
    for (long k = 1; k <= m; ++k) {
        if (m % k != 0) continue;
        if (h == 0 && k != m) continue;
        long hk = (m / k) * (m / k) * (h - 1) + 1;
        auto it = primitive.find(hk);
        if (it == primitive.end())
            throw std::out_of_range("descendent_reduction: fixture misses h = " + std::to_string(hk));
        acc += Rat(Int(k)).pow(2 * g - 3 + dsum) * it->second;
    }
    return acc;
}

Rat elliptic_cover_count(long m) {
    // connected covers of a torus <-> index-m sublattices of Z^2 (Hermite
    // forms), each weighted by 1/|deck| = 1/m
    long count = 0;
    for (long a = 1; a <= m; ++a) {
        if (m % a != 0) continue;
        long d = m / a;
        count += d;  // b = 0..d-1
    }
    return Rat(count, m);
}

KYSeries kawai_yoshioka(long Nw, long Ny, long Nq) {
    long WB = Nw + Nq + 2;
    using WRow = TruncSeries<HalfLaurent>;  // w-series of y-Laurent (y^k at slot 2k)
    KYSeries acc(Var::q, 0, Nq);
    {
        // prefactor 1/((wy-1)(w^{-1}-y^{-1})) in the region |wy| < 1, |y| < |w|:
        // sum_{i,k>=0} w^{i-k} y^{i+k+1}, a q-constant; y-powers are clipped
        // at the box bound (the w-window keeps reads honest)
        long ymax = Ny + Nq + 2;
        WRow pre(Var::w, -(WB - 1), WB);
        for (long i = 0; i < WB + ymax; ++i)
            for (long k = 0; k < WB + ymax; ++k) {
                long wexp = i - k, yexp = i + k + 1;
                if (wexp <= -(WB - 1) || wexp >= WB || yexp > ymax) continue;
                HalfLaurent cur = pre.at(wexp);
                pre.set(wexp, cur + HalfLaurent::term(2 * yexp, Rat(1)));
            }
        acc.set(0, pre);
        for (long n = 1; n < Nq; ++n) acc.set(n, WRow::zero(Var::w, WB));
    }
    for (long n = 1; n < Nq; ++n) {
        // the four w-charged factors at level n, each a geometric series in
        // its own monomial (exact, unbounded w-truncation)
        struct Fac { long wexp, yexp; };
        const Fac facs[4] = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
        for (auto& f : facs) {
            KYSeries g(Var::q, 0, Nq);
            for (long jj = 0; n * jj < Nq; ++jj)
                g.set(n * jj, WRow::laurent_monomial(Var::w, f.wexp * jj,
                                                     HalfLaurent::term(2 * f.yexp * jj, Rat(1))));
            acc = acc * g;
        }
        // (1-q^n)^{-20}
        QSer q0 = QSer::one(Var::q, Nq);
        q0.set(n, Rat(-1));
        QSer qp = q0.pow(-20);
        KYSeries g(Var::q, 0, Nq);
        for (long e = 0; e < Nq; ++e) {
            if (qp.at(e).is_zero() && e > 0) { g.set(e, WRow()); continue; }
            g.set(e, WRow::laurent_monomial(Var::w, 0, HalfLaurent(qp.at(e))));
        }
        acc = acc * g;
    }
    return acc;
}

WSeries kawai_yoshioka_w_minus1(long Nq, long hi) {
    // prefactor at w = -1 is y/(1+y)^2; each product factor specializes to
    // (1 + y^{+-1} q^n)^{-1} (1-q^n)^{-20}-type pieces
    WSeries acc(Var::q, 0, Nq);
    acc.set(0, s_factor_window(hi));
    for (long n = 1; n < Nq; ++n) acc.set(n, WindowPoly());
    for (long n = 1; n < Nq; ++n) {
        JSeries gp(Var::q, 0, Nq), gm(Var::q, 0, Nq);
        for (long j = 0; n * j < Nq; ++j) {
            // 1/(1 + y q^n) = 1/(1 - t^2 q^n), squared across the two
            // w-conjugate factors
            gp.set(n * j, HalfLaurent::term(2 * j, Rat(j + 1)));
            gm.set(n * j, HalfLaurent::term(-2 * j, Rat(j + 1)));
        }
        QSer q0 = QSer::one(Var::q, Nq);
        q0.set(n, Rat(-1));
        acc = acc * to_windowed(gp) * to_windowed(gm) *
              to_windowed(lift_scalar_series(q0.pow(-20)));
    }
    return acc;
}

}  // namespace k3e
