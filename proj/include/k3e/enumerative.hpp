#pragma once

// Generating-series combinators on the curve-counting side: the u-parameter
// partition function obtained from chi10 by the substitution y = -exp(iu),
// connected/disconnected conversion, the multiple-cover rules, and the
// refined product with its specializations.

#include "k3e/igusa.hpp"

namespace k3e {

// coefficients of the u-series: series in qt whose coefficients are series
// in q (exact rationals after the imaginary parts cancel)
using BivarQQt = TruncSeries<TruncSeries<Rat>>;

struct GWSeries {
    TruncSeries<BivarQQt> s;  // u-Laurent, valuation >= -2
    bool connected = false;
};

// -1/chi10 under y = -exp(iu): u-orders < Nu, q-orders -1..Nq-1,
// qt-orders -1..Nqt-1; disconnected
GWSeries gw_disconnected(long Nu, long Nq, long Nqt);

// multiply by prod (1 - qt^n)^{24}: disconnected -> connected
GWSeries connect(const GWSeries& v);
GWSeries disconnect(const GWSeries& v);

// connected primitive series, map h -> N_h(u, qt)
struct PrimitiveTable {
    std::map<long, TruncSeries<TruncSeries<Rat>>> N;  // h -> u-series of qt-series
    long Nu = 0, Nqt = 0;
};

PrimitiveTable primitive_table(const GWSeries& connected, long hmax);

// scale_u: coefficient at u^n multiplied by k^n
template <class R>
TruncSeries<R> scale_u(const TruncSeries<R>& a, long k) {
    if (a.var() != Var::u) throw std::invalid_argument("scale_u: variable must be u");
    TruncSeries<R> r = a;
    for (long e = a.val(); e < a.trunc(); ++e)
        r.set(e, a.at(e).scaled(Rat(Int(k)).pow(e)));
    return r;
}

// N_{m beta_h}(u, qt) = sum_{k|m} (1/k) N_{(m/k)^2 (h-1) + 1}(k u, qt);
// for h = 0 only the k = m term contributes
TruncSeries<TruncSeries<Rat>> multiple_cover_series(long m, long h, const PrimitiveTable& tab);

// sum_{k|m} k^{2g-3+sum deltas} primitive[(m/k)^2 (h-1) + 1], h = 0 keeps
// only k = m
Rat descendent_reduction(long m, long h, long g, const std::vector<long>& deltas,
                  const std::map<long, Rat>& primitive);

// number of connected unramified degree-m covers of a torus by a torus,
// weighted by automorphisms: brute-force sublattice enumeration
Rat elliptic_cover_count(long m);

// the refined series: prefactor 1/((w y - 1)(w^{-1} - y^{-1})) expanded in
// the region |wy| < 1, |y| < |w| (so it reads sum_{i,k>=0} w^{i-k} y^{i+k+1},
// y-powers bounded below by 1), times
// prod 1/((1-w^{-1}y^{-1}q^n)(1-w^{-1}y q^n)(1-q^n)^{20}(1-w y^{-1}q^n)(1-w y q^n));
// outer variable q, then w, innermost a y-Laurent (integer powers of y
// stored at even t-slots)
using KYSeries = TruncSeries<TruncSeries<HalfLaurent>>;

KYSeries kawai_yoshioka(long Nw, long Ny, long Nq);

// w = -1 specialization computed directly (factor-by-factor), windowed in y
WSeries kawai_yoshioka_w_minus1(long Nq, long hi);

}  // namespace k3e
