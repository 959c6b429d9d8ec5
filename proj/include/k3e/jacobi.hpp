#pragma once

// q-truncated series with Laurent coefficients in t (t^2 = p = -y), plus
// optional weight/index metadata, and the windowed variant whose
// coefficients carry certified two-sided windows.

#include <optional>

#include "k3e/half_laurent.hpp"
#include "k3e/trunc_series.hpp"
#include "k3e/window_poly.hpp"

namespace k3e {

template <class F> using JSeriesT = TruncSeries<HalfLaurentT<F>>;
using JSeries = JSeriesT<Rat>;
using WSeries = TruncSeries<WindowPoly>;

struct JacobiMeta {
    std::optional<int> weight;
    std::optional<int> index2;  // twice the index, so 1/2 is exact
};

// Jacobi-style series: q-series whose coefficients are finite t-Laurent.
struct JacobiSeries {
    JSeries s;
    JacobiMeta meta;

    JacobiSeries() = default;
    JacobiSeries(JSeries x) : s(std::move(x)) {}
    JacobiSeries(JSeries x, int weight, int index2) : s(std::move(x)) {
        meta.weight = weight;
        meta.index2 = index2;
    }
};

// coefficientwise p d/dp on a q-series of t-Laurent coefficients
template <class F>
JSeriesT<F> dz(const JSeriesT<F>& a) {
    JSeriesT<F> r = a;
    for (long e = a.val(); e < a.trunc(); ++e) r.set(e, a.at(e).dz());
    return r;
}

template <class F>
JSeriesT<F> ydy(const JSeriesT<F>& a) {
    return dz(a);
}

inline WSeries dz(const WSeries& a) {
    WSeries r = a;
    for (long e = a.val(); e < a.trunc(); ++e) r.set(e, a.at(e).dz());
    return r;
}

// q-series of exact windows from finite data
template <class F>
TruncSeries<WindowPolyT<F>> to_windowed(const JSeriesT<F>& a) {
    TruncSeries<WindowPolyT<F>> r(a.var(), a.val(), a.trunc());
    for (long e = a.val(); e < a.trunc(); ++e)
        r.set(e, WindowPolyT<F>::exact(a.at(e)));
    return r;
}

// embeds a plain scalar q-series (e.g. 1/Delta) as t-degree-0 coefficients
template <class F>
JSeriesT<F> lift_scalar_series(const TruncSeries<F>& a) {
    JSeriesT<F> r(a.var(), a.val(), a.trunc());
    for (long e = a.val(); e < a.trunc(); ++e)
        r.set(e, HalfLaurentT<F>(a.at(e)));
    return r;
}

// the t-degree-0 part, erroring if anything else is present
template <class F>
TruncSeries<F> drop_to_scalar(const JSeriesT<F>& a) {
    TruncSeries<F> r(a.var(), a.val(), a.trunc());
    for (long e = a.val(); e < a.trunc(); ++e) {
        const auto& c = a.at(e);
        for (auto& [te, v] : c.coeffs())
            if (te != 0) throw std::domain_error("drop_to_scalar: t-dependence present");
        r.set(e, c.at(0));
    }
    return r;
}

template <class F>
JSeriesT<F> field_lift(const JSeries& a) {
    JSeriesT<F> r(a.var(), a.val(), a.trunc());
    for (long e = a.val(); e < a.trunc(); ++e) {
        HalfLaurentT<F> c;
        for (auto& [te, v] : a.at(e).coeffs())
            c = c + HalfLaurentT<F>::term(te, FieldTraits<F>::from_rat(v));
        r.set(e, c);
    }
    return r;
}

// t^e -> exp(i e u / 2), expanded to u-truncation uOrder; exact Gaussian
// rational coefficients
inline TruncSeries<GaussRat> substitute_y_to_u(const HalfLaurent& a, long uOrder) {
    TruncSeries<GaussRat> r(Var::u, 0, uOrder);
    for (auto& [e, v] : a.coeffs()) {
        GaussRat w(Rat(1));
        GaussRat step(Rat(0), Rat(e, 2));  // i e / 2
        for (long n = 0; n < uOrder; ++n) {
            r.set(n, r.at(n) + w * GaussRat(v));
            w = w * step / GaussRat(Rat(n + 1));
        }
    }
    return r;
}

// real part after checking the imaginary part vanished
inline TruncSeries<Rat> take_real(const TruncSeries<GaussRat>& a) {
    TruncSeries<Rat> r(a.var(), a.val(), a.trunc());
    for (long e = a.val(); e < a.trunc(); ++e) {
        const GaussRat& v = a.at(e);
        if (!v.is_real())
            throw std::domain_error("take_real: imaginary residue present");
        r.set(e, v.re);
    }
    return r;
}

// per-q-order support bound |t-exp| <= 2*index + 2n + slack for metadata checks
inline bool support_bounded(const JSeries& a, int index2, long slack = 0) {
    for (long e = std::max(a.val(), 0L); e < a.trunc(); ++e) {
        const auto& c = a.at(e);
        if (c.ring_is_zero()) continue;
        long bound = index2 + 2 * e + slack;
        if (c.max_exp() > bound || -c.min_exp() > bound) return false;
    }
    return true;
}

}  // namespace k3e
