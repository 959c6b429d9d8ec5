#include "k3e/forms.hpp"

#include <memory>
#include <mutex>
#include <numeric>

namespace k3e {

namespace {

// sigma_e(n), brute force
Rat sigma(long n, int e) {
    Rat acc(0);
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) acc += Rat(Int(d)).pow(e);
    return acc;
}

}  // namespace

QSeries eisenstein(int k, long N) {
    if (k <= 0 || k % 2 != 0) throw std::invalid_argument("eisenstein: k must be even >= 2");
    // E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n
    Rat factor = Rat(2 * k) / bernoulli(unsigned(k));
    QSeries r(Var::q, 0, N);
    r.set(0, Rat(1));
    for (long n = 1; n < N; ++n) r.set(n, -factor * sigma(n, k - 1));
    return r;
}

QSeries renorm_eisenstein(int two_k, long N) {
    Rat pref = -bernoulli(unsigned(two_k)) / (Rat(two_k) * factorial_rat(unsigned(two_k)));
    return eisenstein(two_k, N).scaled(pref);
}

QSeries delta(long N) {
    // q prod (1-q^n)^24
    QSeries acc = QSeries::one(Var::q, N);
    for (long n = 1; n < N; ++n) {
        QSeries f = QSeries::one(Var::q, N);
        f.set(n, Rat(-1));
        acc = acc * f.pow(24);
    }
    return acc.shifted(1).restrict_trunc(N);
}

JacobiSeries theta_K(long Nq) {
    JSeries acc(Var::q, 0, Nq);
    acc.set(0, HalfLaurent::term(1, Rat(1)) - HalfLaurent::term(-1, Rat(1)));
    QSeries etasq_inv = [&] {
        QSeries e = QSeries::one(Var::q, Nq);
        for (long n = 1; n < Nq; ++n) {
            QSeries f = QSeries::one(Var::q, Nq);
            f.set(n, Rat(-1));
            e = e * f * f;
        }
        return e.inverse();
    }();
    for (long m = 1; m < Nq; ++m) {
        JSeries f = JSeries::one(Var::q, Nq);  // 1 - p q^m and 1 - p^{-1} q^m
        f.set(m, HalfLaurent::term(2, Rat(-1)));
        JSeries g = JSeries::one(Var::q, Nq);
        g.set(m, HalfLaurent::term(-2, Rat(-1)));
        acc = acc * f * g;
    }
    acc = acc * lift_scalar_series(etasq_inv);
    return JacobiSeries(acc, -1, 1);
}

WSeries weierstrass_p(long Nq, long win_lo, long win_hi) {
    // windows are p-exponents; internally t-exponents are twice that
    if (2 * win_hi < 2) throw std::invalid_argument("weierstrass_p: window too small for p/(1-p)^2");
    WSeries r(Var::q, 0, Nq);
    WindowPoly q0 = WindowPoly::windowed(0, 2 * win_hi);
    q0.set(0, Rat(1, 12));
    for (long k = 1; k <= win_hi; ++k) q0.set(2 * k, Rat(k));  // p/(1-p)^2 = sum k p^k
    r.set(0, q0);
    for (long n = 1; n < Nq; ++n) {
        HalfLaurent c;
        for (long k = 1; k <= n; ++k) {
            if (n % k != 0) continue;
            c = c + HalfLaurent::term(2 * k, Rat(k)) + HalfLaurent::term(-2 * k, Rat(k)) +
                HalfLaurent::term(0, Rat(-2 * k));
        }
        r.set(n, WindowPoly::exact(c));
    }
    (void)win_lo;
    return r;
}

JacobiSeries g_function(long Nq) {
    JSeries K = theta_K(Nq).s;
    JSeries K1 = dz(K), K2 = dz(K1);
    return JacobiSeries(K1 * K1 - K * K2, 0, 2);
}

JSeries weierstrass_K2(long Nq) {
    // wp = -G/F^2 + E2/12 and F^2 = -K^2, so wp*K^2 = G + (E2/12) K^2
    JSeries K = theta_K(Nq).s;
    JSeries G = g_function(Nq).s;
    return G + (K * K) * lift_scalar_series(eisenstein(2, Nq).scaled(Rat(1, 12)));
}

JacobiSeries z_function(long Nq) {
    // Z = -24 wp F^2 = 24 G - 2 E2 F^2 = 24 G + 2 E2 K^2
    JSeries K = theta_K(Nq).s;
    JSeries G = g_function(Nq).s;
    JSeries Z = G.scaled(Rat(24)) + (K * K) * lift_scalar_series(eisenstein(2, Nq).scaled(Rat(2)));
    return JacobiSeries(Z, 0, 2);
}

CoefficientTable c_table(long Nq) {
    JSeries Z = z_function(Nq).s;
    CoefficientTable tab;
    for (long n = 0; n < Nq; ++n) {
        const auto& row = Z.at(n);
        long kmax = row.ring_is_zero() ? 0 : row.max_exp() / 2;
        for (long k = -kmax; k <= kmax; ++k) {
            Rat v = row.at(2 * k);
            long m = 4 * n - k * k;
            auto it = tab.c.find(m);
            if (it == tab.c.end()) tab.c.emplace(m, v);
            else if (!(it->second == v))
                throw std::logic_error("c-table: coefficient at equal 4n-k^2 disagrees");
        }
        // positions with |k| beyond support must give c = 0 at this n; record
        // the zero values for small m so lookups have full coverage
        for (long k = kmax + 1; 4 * n - k * k >= -1; ++k) {
            for (long s : {-k, k}) {
                long m = 4 * n - s * s;
                auto it = tab.c.find(m);
                if (it == tab.c.end()) tab.c.emplace(m, Rat(0));
                else if (!(it->second == Rat(0)))
                    throw std::logic_error("c-table: zero position disagrees");
            }
        }
    }
    return tab;
}

std::map<long, Rat> a_table(long N) {
    QSeries dinv = delta(N + 2).inverse();
    std::map<long, Rat> tab;
    for (long d = -1; d < dinv.trunc(); ++d) tab[d] = dinv.at(d);
    return tab;
}

JacobiSeries hecke_V(const JacobiSeries& phi, long l) {
    if (!phi.meta.weight || !phi.meta.index2)
        throw std::invalid_argument("hecke_V: weight/index metadata required");
    if (*phi.meta.index2 % 2 != 0)
        throw std::invalid_argument("hecke_V: integer index required");
    if (l <= 0) throw std::invalid_argument("hecke_V: l must be positive");
    int k = *phi.meta.weight;
    int m = *phi.meta.index2 / 2;
    const JSeries& f = phi.s;
    long Nq = f.trunc();
    // truncation: coefficients of the result at n use c(n*l / a^2) with
    // n*l/a^2 < Nq needed; honest output truncation is ceil(Nq / l) unless
    // all the deeper reads exist. Keep N_out = Nq for l = 1, else the safe
    // bound floor((Nq - 1) / l) + 1.
    long Nout = l == 1 ? Nq : (Nq - 1) / l + 1;
    JSeries out(Var::q, 0, Nout);
    for (long n = 0; n < Nout; ++n) {
        HalfLaurent row;
        // r-support: |r| <= index*l ... grow with n; scan generously
        long rmax = 2 * m * l + 2 * n * l + 2;
        for (long r = -rmax; r <= rmax; ++r) {
            Rat acc(0);
            long g = std::gcd(std::gcd(std::abs(n), std::abs(r)), l);
            if (n == 0 && r == 0) g = l;
            for (long a = 1; a <= g; ++a) {
                if (g % a != 0) continue;
                long nn = n * l / (a * a);
                long rr = r / a;
                if ((n * l) % (a * a) != 0) continue;
                if (nn >= f.trunc()) throw std::out_of_range("hecke_V: source truncation too small");
                if (nn < f.val()) continue;
                Rat cc = f.at(nn).at(2 * rr);
                if (cc.is_zero()) continue;
                acc += Rat(Int(a)).pow(k - 1) * cc;
            }
            if (!acc.is_zero()) row = row + HalfLaurent::term(2 * r, acc);
        }
        out.set(n, row);
    }
    return JacobiSeries(out, k, 2 * m * int(l));
}

TruncSeries<Rat> gottsche_product(long Nqt) {
    QSeries acc = QSeries::one(Var::qt, Nqt);
    for (long n = 1; n < Nqt; ++n) {
        QSeries f = QSeries::one(Var::qt, Nqt);
        f.set(n, Rat(-1));
        acc = acc * f.pow(-24);
    }
    return acc;
}

const FormsContext& FormsContext::get(long Nq) {
    static std::mutex mu;
    static std::map<long, std::unique_ptr<FormsContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(Nq);
    if (it != cache.end()) return *it->second;
    auto ctx = std::make_unique<FormsContext>();
    ctx->Nq = Nq;
    ctx->E2 = eisenstein(2, Nq + 2);
    ctx->E4 = eisenstein(4, Nq + 2);
    ctx->E6 = eisenstein(6, Nq + 2);
    ctx->Delta = delta(Nq + 2);
    ctx->DeltaInv = ctx->Delta.inverse();
    ctx->K = theta_K(Nq + 2).s;
    ctx->Ksq = ctx->K * ctx->K;
    ctx->G = g_function(Nq + 2).s;
    ctx->Z = z_function(Nq + 2).s;
    ctx->D = -(ctx->Ksq * lift_scalar_series(ctx->Delta));
    ctx->P2 = weierstrass_K2(Nq + 2);
    ctx->ctab = c_table(Nq + 2);
    ctx->atab = a_table(Nq + 2);
    auto& ref = *ctx;
    cache.emplace(Nq, std::move(ctx));
    return ref;
}

}  // namespace k3e
