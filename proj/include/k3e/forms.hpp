#pragma once

// Scalar special functions: Eisenstein series and their renormalized
// variants, the discriminant, the Jacobi theta function (stored as
// K = i*F so coefficients stay rational), the Weierstrass function in both
// of its expansions, G, Z and its coefficient table c(m), the Hecke
// operator on Jacobi-form Fourier coefficients, and the point-count
// product.

#include <map>

#include "k3e/jacobi.hpp"

namespace k3e {

using QSeries = TruncSeries<Rat>;

// E_k for even k >= 2, to exclusive q-truncation N
QSeries eisenstein(int k, long N);

// renormalized variant C_{2k} = -B_{2k} / (2k * (2k)!) * E_{2k}
QSeries renorm_eisenstein(int two_k, long N);

// Delta = q prod (1-q^n)^24
QSeries delta(long N);

// K = i*F = (t - t^{-1}) prod (1-p q^m)(1-p^{-1} q^m)/(1-q^m)^2,
// weight -1, index 1/2 (F = -i*K; the imaginary-unit flag lives in the
// JSON layer).
JacobiSeries theta_K(long Nq);

// Weierstrass function on an explicit p-window [k_min, k_max]; the q^0
// coefficient is the windowed p/(1-p)^2 + 1/12, higher coefficients are
// finite.
WSeries weierstrass_p(long Nq, long win_lo, long win_hi);

// the finite combination P2 = wp * K^2  (= G + E2/12 * K^2)
JSeries weierstrass_K2(long Nq);

// G = (dz K)^2 - K dz^2 K = F^2 dz^2 log F ; weight 0, index 1... G-1 is
// the actual Jacobi form, G itself carries the +1.
JacobiSeries g_function(long Nq);

// Z = -24 wp F^2 = 24 G - 2 E2 F^2 ; weight 0, index 1
JacobiSeries z_function(long Nq);

struct CoefficientTable {
    std::map<long, Rat> c;  // m -> c(m), from Z
    Rat at(long m) const {
        if (m < -1) return Rat(0);
        auto it = c.find(m);
        if (it == c.end()) throw std::out_of_range("c-table: m out of computed range");
        return it->second;
    }
};

// reads c(4n - k^2) off Z, checking the coefficient depends only on 4n-k^2
CoefficientTable c_table(long Nq);

// a(d) = q^d coefficient of 1/Delta, for -1 <= d < N-1
std::map<long, Rat> a_table(long N);

// Hecke operator V_l on a Jacobi form of integer weight and index.
// c'(n,r) = sum_{a | gcd(n,r,l)} a^{k-1} c(n l / a^2, r / a), gcd(0,0,l)=l.
JacobiSeries hecke_V(const JacobiSeries& phi, long l);

// sum_d chi(S^[d]) qt^d = prod (1 - qt^n)^{-24}
TruncSeries<Rat> gottsche_product(long Nqt);

// Shared bundle of everything at one truncation; immutable after build.
struct FormsContext {
    long Nq;
    QSeries E2, E4, E6, Delta, DeltaInv;
    JSeries K;       // i*F
    JSeries Ksq;     // K^2 = -F^2
    JSeries G;       // g_function
    JSeries Z;       // 24G - 2 E2 F^2
    JSeries D;       // F^2 Delta = -K^2 Delta (denominator of the engine)
    JSeries P2;      // wp * K^2
    CoefficientTable ctab;
    std::map<long, Rat> atab;

    static const FormsContext& get(long Nq);  // memoized per truncation
};

}  // namespace k3e
