#pragma once

// Dense two-sided coefficient window over t-exponents, the carrier for the
// Fourier expansions that are one-sided infinite in the region
// 0 < |q| < |p| < 1 (e.g. 1/F^2 and the psi_d).
//
// Semantics: the true object is exactly zero below lo(); coefficients in
// [lo(), hi()] are stored and certified; coefficients above hi() are
// unknown and reading them is a hard error. An "exact" window additionally
// certifies zero above hi() (finite Laurent data embeds this way).
//
// Window arithmetic shrinks certified ranges honestly:
//   mul: lo = lo_a + lo_b, hi = min(hi_a + lo_b, hi_b + lo_a)
// with an exact operand contributing no shrink beyond its support shift.

#include <vector>

#include "k3e/half_laurent.hpp"
#include "k3e/rational.hpp"
#include "k3e/trunc_series.hpp"

namespace k3e {

template <class F = Rat>
class WindowPolyT {
public:
    using Field = F;

    WindowPolyT() : lo_(0), hi_(-1), exact_(true) {}  // exact zero

    static WindowPolyT windowed(long lo, long hi) {
        WindowPolyT w;
        w.lo_ = lo;
        w.hi_ = hi;
        w.exact_ = false;
        w.c_.assign(hi >= lo ? size_t(hi - lo + 1) : 0, FieldTraits<F>::zero());
        return w;
    }

    static WindowPolyT exact(const HalfLaurentT<F>& p) {
        WindowPolyT w;
        if (p.ring_is_zero()) return w;
        w.lo_ = p.min_exp();
        w.hi_ = p.max_exp();
        w.exact_ = true;
        w.c_.assign(size_t(w.hi_ - w.lo_ + 1), FieldTraits<F>::zero());
        for (auto& [e, v] : p.coeffs()) w.c_[size_t(e - w.lo_)] = v;
        return w;
    }

    static WindowPolyT ring_zero() { return WindowPolyT(); }
    static WindowPolyT ring_one() { return exact(HalfLaurentT<F>::ring_one()); }

    long lo() const { return lo_; }
    long hi() const { return hi_; }
    bool is_exact() const { return exact_; }
    bool empty_window() const { return hi_ < lo_; }

    bool ring_is_zero() const {
        for (auto& v : c_)
            if (!FieldTraits<F>::is_zero(v)) return false;
        return true;
    }

    // Reads above the certified bound are errors, never silent zeros.
    F at(long e) const {
        if (e < lo_) return FieldTraits<F>::zero();
        if (e > hi_) {
            if (exact_) return FieldTraits<F>::zero();
            throw std::out_of_range("WindowPoly: read above certified window");
        }
        return c_[size_t(e - lo_)];
    }

    void set(long e, F v) {
        if (e < lo_ || e > hi_) throw std::out_of_range("WindowPoly: write outside window");
        c_[size_t(e - lo_)] = std::move(v);
    }

    WindowPolyT operator-() const {
        WindowPolyT r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend WindowPolyT operator+(const WindowPolyT& a, const WindowPolyT& b) {
        if (a.empty_window() && a.exact_) return b;
        if (b.empty_window() && b.exact_) return a;
        long lo = std::min(a.lo_, b.lo_);
        long hi;
        bool exact = a.exact_ && b.exact_;
        if (exact) hi = std::max(a.hi_, b.hi_);
        else if (a.exact_) hi = b.hi_;
        else if (b.exact_) hi = a.hi_;
        else hi = std::min(a.hi_, b.hi_);
        WindowPolyT r = windowed(lo, hi);
        r.exact_ = exact;
        for (long e = lo; e <= hi; ++e) r.c_[size_t(e - lo)] = a.safe_at(e) + b.safe_at(e);
        return r;
    }

    friend WindowPolyT operator-(const WindowPolyT& a, const WindowPolyT& b) {
        return a + (-b);
    }

    friend WindowPolyT operator*(const WindowPolyT& a, const WindowPolyT& b) {
        if ((a.empty_window() && a.exact_) || (b.empty_window() && b.exact_))
            return WindowPolyT();
        long lo = a.lo_ + b.lo_;
        long hi;
        bool exact = a.exact_ && b.exact_;
        if (exact) hi = a.hi_ + b.hi_;
        else if (a.exact_) hi = b.hi_ + a.lo_;
        else if (b.exact_) hi = a.hi_ + b.lo_;
        else hi = std::min(a.hi_ + b.lo_, b.hi_ + a.lo_);
        if (hi < lo) {
            WindowPolyT r = windowed(lo, hi);
            r.exact_ = false;
            return r;
        }
        WindowPolyT r = windowed(lo, hi);
        r.exact_ = exact;
        for (long i = a.lo_; i <= a.hi_; ++i) {
            const F& ai = a.c_[size_t(i - a.lo_)];
            if (FieldTraits<F>::is_zero(ai)) continue;
            long jhi = std::min(b.hi_, hi - i);
            for (long j = b.lo_; j <= jhi; ++j) {
                const F& bj = b.c_[size_t(j - b.lo_)];
                if (FieldTraits<F>::is_zero(bj)) continue;
                r.c_[size_t(i + j - lo)] += ai * bj;
            }
        }
        return r;
    }

    // Equality over the common certified range.
    friend bool operator==(const WindowPolyT& a, const WindowPolyT& b) {
        long lo = std::min(a.lo_, b.lo_);
        long hi;
        if (a.exact_ && b.exact_) hi = std::max(a.hi_, b.hi_);
        else if (a.exact_) hi = b.hi_;
        else if (b.exact_) hi = a.hi_;
        else hi = std::min(a.hi_, b.hi_);
        for (long e = lo; e <= hi; ++e)
            if (!FieldTraits<F>::is_zero(a.safe_at(e) - b.safe_at(e))) return false;
        return true;
    }

    template <class S>
    WindowPolyT scaled(const S& k) const {
        WindowPolyT r = *this;
        F kf = field_cast(k);
        for (auto& v : r.c_) v = v * kf;
        return r;
    }

    WindowPolyT inv() const {
        throw std::domain_error("WindowPoly: no generic inverse; build from region expansion");
    }

    // (1/2) t d/dt, as on HalfLaurent.
    WindowPolyT dz() const {
        WindowPolyT r = *this;
        for (long e = lo_; e <= hi_; ++e)
            r.c_[size_t(e - lo_)] = r.c_[size_t(e - lo_)] * FieldTraits<F>::from_rat(Rat(e, 2));
        return r;
    }

    // Restrict the certified window (drops exactness above new hi).
    WindowPolyT clipped(long lo, long hi) const {
        if (!exact_ && hi > hi_) throw std::out_of_range("WindowPoly: clip beyond window");
        WindowPolyT r = windowed(std::max(lo, lo_), hi);
        r.exact_ = false;
        for (long e = r.lo_; e <= r.hi_; ++e) r.c_[size_t(e - r.lo_)] = safe_at(e);
        return r;
    }

    // True finite support data; only valid for exact windows.
    HalfLaurentT<F> to_laurent() const {
        if (!exact_) throw std::domain_error("WindowPoly: not exact");
        HalfLaurentT<F> r;
        for (long e = lo_; e <= hi_; ++e) {
            if (!FieldTraits<F>::is_zero(c_[size_t(e - lo_)]))
                r = r + HalfLaurentT<F>::term(e, c_[size_t(e - lo_)]);
        }
        return r;
    }

    // Checks the top `slots` certified coefficients vanish, then returns the
    // finite Laurent content. Errors when the margin is dirty.
    HalfLaurentT<F> trim_finite(long slots) const {
        if (exact_) return to_laurent();
        for (long e = hi_ - slots + 1; e <= hi_; ++e)
            if (!FieldTraits<F>::is_zero(safe_at(e)))
                throw std::domain_error("WindowPoly: nonvanishing margin, window too small");
        HalfLaurentT<F> r;
        for (long e = lo_; e <= hi_ - slots; ++e)
            if (!FieldTraits<F>::is_zero(safe_at(e)))
                r = r + HalfLaurentT<F>::term(e, safe_at(e));
        return r;
    }

private:
    template <class S> static F field_cast(const S& k) {
        if constexpr (std::is_same_v<S, F>) return k;
        else return FieldTraits<F>::from_rat(Rat(k));
    }
    F safe_at(long e) const {
        if (e < lo_ || e > hi_) return FieldTraits<F>::zero();
        return c_[size_t(e - lo_)];
    }

    long lo_, hi_;
    bool exact_;
    std::vector<F> c_;
};

using WindowPoly = WindowPolyT<Rat>;

template <class F> struct RingTraits<WindowPolyT<F>> {
    static WindowPolyT<F> zero() { return WindowPolyT<F>(); }
    static bool is_zero(const WindowPolyT<F>& x) { return x.ring_is_zero(); }
};

}  // namespace k3e
