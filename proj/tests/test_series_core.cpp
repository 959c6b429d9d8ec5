#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k3e/forms.hpp"
#include "k3e/enumerative.hpp"
#include "k3e/igusa.hpp"

using namespace k3e;

namespace {

std::mt19937 rng(20230517);

Rat rand_rat() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    return Rat(num(rng), den(rng));
}

QSeries rand_series(long val, long trunc) {
    QSeries s(Var::q, val, trunc);
    for (long e = val; e < trunc; ++e) s.set(e, rand_rat());
    return s;
}

HalfLaurent rand_even_laurent() {
    HalfLaurent p;
    std::uniform_int_distribution<int> ex(-4, 4);
    for (int i = 0; i < 5; ++i) p = p + HalfLaurent::term(2 * ex(rng), rand_rat());
    return p;
}

// independent divisor-sum evaluation used as the oracle for Eisenstein rows
Rat sigma_oracle(long n, int e) {
    Rat acc(0);
    for (long a = 1; a * a <= n; ++a) {
        if (n % a != 0) continue;
        acc += Rat(Int(a)).pow(e);
        long b = n / a;
        if (b != a) acc += Rat(Int(b)).pow(e);
    }
    return acc;
}

}  // namespace

TEST_CASE("addition: cancellation and truncation bookkeeping") {
    QSeries a(Var::q, -1, 3);
    a.set(-1, Rat(1));
    a.set(0, Rat(1));
    QSeries b(Var::q, -1, 3);
    b.set(-1, Rat(-1));
    QSeries c = a + b;
    CHECK(c.at(-1) == Rat(0));
    CHECK(c.at(0) == Rat(1));

    QSeries D = delta(6);
    QSeries z = D + (-D);
    CHECK(z.is_zero());
    CHECK(z.trunc() == D.trunc());  // N preserved

    // E4 + E6 coefficientwise against the divisor-sum oracle
    QSeries s = eisenstein(4, 6) + eisenstein(6, 6);
    for (long n = 1; n < 6; ++n)
        CHECK(s.at(n) == Rat(240) * sigma_oracle(n, 3) - Rat(504) * sigma_oracle(n, 5));
    CHECK(s.at(0) == Rat(2));
}

TEST_CASE("multiplication basics and truncation safety rule") {
    QSeries a = QSeries::one(Var::q, 3);
    a.set(1, Rat(1));  // 1 + q
    QSeries b = QSeries::one(Var::q, 3);
    b.set(1, Rat(-1));  // 1 - q
    QSeries p = a * b;
    CHECK(p.at(0) == Rat(1));
    CHECK(p.at(1) == Rat(0));
    CHECK(p.at(2) == Rat(-1));

    QSeries D = delta(11);
    QSeries one = D * D.inverse();
    CHECK(one.at(0) == Rat(1));
    for (long e = 1; e < one.trunc(); ++e) CHECK(one.at(e) == Rat(0));

    // variable-tag mismatch is an error
    QSeries qt = QSeries::one(Var::qt, 3);
    CHECK_THROWS(a + qt);
    CHECK_THROWS(a * qt);

    // mul never reads beyond truncation: N_result = min(N1 + v2, N2 + v1)
    QSeries f = rand_series(1, 5), g = rand_series(-1, 4);
    QSeries h = f * g;
    CHECK(h.trunc() == std::min(5L + (-1L), 4L + 1L));
    CHECK(h.val() == 0);
}

TEST_CASE("ring axioms on randomized truncated series") {
    for (int it = 0; it < 60; ++it) {
        QSeries a = rand_series(-2, 4), b = rand_series(0, 5), c = rand_series(-1, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("invert_unit: examples and 200 randomized two-sided inverses") {
    // invert Delta: a(-1)=1, a(0)=24, a(1)=324, a(2)=3200
    QSeries dinv = delta(6).inverse();
    CHECK(dinv.at(-1) == Rat(1));
    CHECK(dinv.at(0) == Rat(24));
    CHECK(dinv.at(1) == Rat(324));
    CHECK(dinv.at(2) == Rat(3200));
    // invert 1 -> 1
    CHECK(QSeries::one(Var::q, 4).inverse() == QSeries::one(Var::q, 4));
    // invert (1-q)^2 -> sum (k+1) q^k
    QSeries f = QSeries::one(Var::q, 6);
    f.set(1, Rat(-1));
    QSeries g = (f * f).inverse();
    for (long k = 0; k < g.trunc(); ++k) CHECK(g.at(k) == Rat(k + 1));
    // non-invertible leading coefficient
    QSeries z = QSeries::zero(Var::q, 4);
    CHECK_THROWS(z.inverse());

    for (int it = 0; it < 200; ++it) {
        QSeries a = rand_series(-1, 4);
        if (a.at(-1).is_zero()) a.set(-1, Rat(1 + it % 5));
        QSeries inv = a.inverse();
        QSeries l = a * inv, r = inv * a;
        CHECK(l.at(0) == Rat(1));
        CHECK(r.at(0) == Rat(1));
        for (long e = 1; e < l.trunc(); ++e) CHECK(l.at(e) == Rat(0));
    }
}

TEST_CASE("derivative_q is a derivation and satisfies the named examples") {
    // q d/dq (q^h) = h q^h
    QSeries m = QSeries::monomial(Var::q, 3, Rat(1), 6);
    CHECK(m.xdx().at(3) == Rat(3));
    // derivative of a constant is zero
    CHECK(QSeries::one(Var::q, 4).xdx().is_zero());
    // 2 q d/dq (1/Delta) = -2 E2/Delta
    QSeries dinv = delta(8).inverse();
    QSeries lhs = dinv.xdx().scaled(Rat(2));
    QSeries rhs = (eisenstein(2, 8) * dinv).scaled(Rat(-2));
    CHECK(lhs == rhs);

    for (int it = 0; it < 40; ++it) {
        QSeries a = rand_series(-1, 4), b = rand_series(0, 4);
        CHECK((a * b).xdx() == a.xdx() * b + a * b.xdx());
    }
}

TEST_CASE("derivative_z on t-Laurent coefficients") {
    HalfLaurent p = HalfLaurent::term(1, Rat(1)) - HalfLaurent::term(-1, Rat(1));
    HalfLaurent d = p.dz();
    CHECK(d.at(1) == Rat(1, 2));
    CHECK(d.at(-1) == Rat(1, 2));  // (t + 1/t)/2
    // dz(p) = p with p = t^2
    HalfLaurent t2 = HalfLaurent::term(2, Rat(1));
    CHECK(t2.dz() == t2);
}

TEST_CASE("exp_series") {
    CHECK(QSeries::zero(Var::q, 5).exp() == QSeries::one(Var::q, 5));
    QSeries q = QSeries::monomial(Var::q, 1, Rat(1), 4);
    QSeries e = q.exp();
    CHECK(e.at(0) == Rat(1));
    CHECK(e.at(1) == Rat(1));
    CHECK(e.at(2) == Rat(1, 2));
    CHECK(e.at(3) == Rat(1, 6));
    // exp(log(1+q)) = 1 + q, with the log series as the oracle
    QSeries logq(Var::q, 1, 6);
    for (long k = 1; k < 6; ++k) logq.set(k, Rat(k % 2 == 1 ? 1 : -1, k));
    QSeries back = logq.exp();
    CHECK(back.at(0) == Rat(1));
    CHECK(back.at(1) == Rat(1));
    for (long k = 2; k < 6; ++k) CHECK(back.at(k) == Rat(0));
    // nonzero constant term rejected
    CHECK_THROWS(QSeries::one(Var::q, 4).exp());
}

TEST_CASE("substitute_y_to_u") {
    // p - 2 + p^{-1} -> 2cos(u) - 2 = -u^2 + u^4/12 - ...
    HalfLaurent p = HalfLaurent::term(2, Rat(1)) + HalfLaurent::term(0, Rat(-2)) +
                    HalfLaurent::term(-2, Rat(1));
    auto s = take_real(substitute_y_to_u(p, 7));
    CHECK(s.at(0) == Rat(0));
    CHECK(s.at(2) == Rat(-1));
    CHECK(s.at(4) == Rat(1, 12));
    CHECK(s.at(6) == Rat(-1, 360));
    // substitute into 1 -> 1
    auto one = take_real(substitute_y_to_u(HalfLaurent::ring_one(), 5));
    CHECK(one.at(0) == Rat(1));
    for (long e = 1; e < 5; ++e) CHECK(one.at(e) == Rat(0));

    // homomorphism on parity-even inputs
    for (int it = 0; it < 30; ++it) {
        HalfLaurent a = rand_even_laurent(), b = rand_even_laurent();
        auto sa = substitute_y_to_u(a, 6), sb = substitute_y_to_u(b, 6);
        auto sab = substitute_y_to_u(a * b, 6);
        CHECK(sab == sa * sb);
    }
}

TEST_CASE("F squared under the u substitution matches its exponential normal form") {
    long Nq = 5, Nu = 9;
    const FormsContext& fc = FormsContext::get(Nq);
    // F^2 = -K^2; substitute each q-row
    JSeries F2 = -fc.Ksq.restrict_trunc(Nq);
    // expected: u^2 exp(-2 sum_{k>=1} (-1)^k C_{2k}(q) u^{2k}), coefficients
    // are q-series
    TruncSeries<QSeries> arg(Var::u, 0, Nu);
    for (long j = 0; j < Nu; ++j) arg.set(j, QSeries::zero(Var::q, Nq));
    for (long k = 1; 2 * k < Nu; ++k) {
        Rat sgn = (k % 2 == 0) ? Rat(-2) : Rat(2);  // -2 (-1)^k
        arg.set(2 * k, renorm_eisenstein(int(2 * k), Nq).scaled(sgn));
    }
    TruncSeries<QSeries> expect = arg.exp();
    for (long j = 0; j + 2 < Nu; ++j) {
        QSeries row(Var::q, 0, Nq);
        for (long e = 0; e < Nq; ++e) {
            GaussRat acc;
            for (auto& [te, v] : F2.at(e).coeffs()) {
                GaussRat w(Rat(1));
                GaussRat step(Rat(0), Rat(te, 2));
                for (long t = 0; t < j + 2; ++t) w = w * step / GaussRat(Rat(t + 1));
                acc += w * GaussRat(v);
            }
            REQUIRE(acc.is_real());
            row.set(e, acc.re);
        }
        CHECK(row == expect.at(j));
    }
}

TEST_CASE("scale_u") {
    TruncSeries<QSeries> s(Var::u, -2, 3);
    s.set(2, QSeries::one(Var::q, 2));
    s.set(-2, QSeries::one(Var::q, 2));
    auto t = scale_u(s, 2);
    CHECK(t.at(2).at(0) == Rat(4));
    CHECK(t.at(-2).at(0) == Rat(1, 4));
    auto t3 = scale_u(s, 3);
    CHECK(t3.at(-2).at(0) == Rat(1, 9));
}

TEST_CASE("window arithmetic shrinks honestly and reads beyond error out") {
    WindowPoly w = WindowPoly::windowed(0, 6);
    for (long e = 0; e <= 6; ++e) w.set(e, Rat(e + 1));
    CHECK_THROWS(w.at(7));
    CHECK(w.at(-3) == Rat(0));  // certified zero below lo
    HalfLaurent f = HalfLaurent::term(-2, Rat(1)) + HalfLaurent::term(1, Rat(2));
    WindowPoly p = w * WindowPoly::exact(f);
    CHECK(p.lo() == -2);
    CHECK(p.hi() == 6 + (-2));  // width preserved by an exact factor
    WindowPoly p2 = w * w;
    CHECK(p2.hi() == 6);  // min(6+0, 6+0)

    // F^2 times the windowed 1/F^2 is 1 on the certified window
    long Nq = 4;
    const FormsContext& fc = FormsContext::get(Nq);
    WSeries invF2 = inverse_Fsq(Nq, 40);
    WSeries prod = to_windowed(-fc.Ksq.restrict_trunc(Nq)) * invF2;
    WSeries one(Var::q, 0, Nq);
    one.set(0, WindowPoly::exact(HalfLaurent::ring_one()));
    for (long n = 1; n < Nq; ++n) one.set(n, WindowPoly());
    CHECK(prod == one);
}

TEST_CASE("truncation safety: higher-N pipeline restricts to the lower-N run") {
    auto pipeline = [](long N) {
        QSeries d = delta(N);
        QSeries e2 = eisenstein(2, N);
        return (d.inverse() * e2).xdx() * e2;
    };
    QSeries lo = pipeline(6), hi = pipeline(10);
    CHECK(lo == hi.restrict_trunc(lo.trunc()));
}

TEST_CASE("parity tracking") {
    HalfLaurent even = HalfLaurent::term(2, Rat(1)) + HalfLaurent::term(-4, Rat(2));
    HalfLaurent odd = HalfLaurent::term(1, Rat(1));
    CHECK(even.parity() == Parity::even);
    CHECK(odd.parity() == Parity::odd);
    CHECK((even * odd).parity() == Parity::odd);   // XOR parity
    CHECK((odd * odd).parity() == Parity::even);
    CHECK((even + odd).parity() == Parity::mixed);
    CHECK(HalfLaurent().parity() == Parity::zero);
}

TEST_CASE("unknown coefficient reads are hard errors") {
    QSeries a = rand_series(0, 3);
    CHECK_THROWS(a.at(3));
    CHECK_THROWS(a.at(10));
}
