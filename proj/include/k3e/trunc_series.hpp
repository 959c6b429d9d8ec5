#pragma once

// Truncated Laurent series in one formal variable over a pluggable
// coefficient ring.
//
// A series knows its variable tag, a valuation bound `val` (coefficients
// below it are exactly zero), and an exclusive truncation order `trunc`
// (coefficients at exponents >= trunc are unknown, never read). Binary
// operations take the minimum compatible truncation and record the honest
// truncation of the result; multiplication never reads unknown
// coefficients: trunc(a*b) = min(trunc_a + val_b, trunc_b + val_a).
//
// A default-constructed series is the "universal zero": zero with
// unbounded truncation, compatible with any variable.

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3e/rational.hpp"

namespace k3e {

enum class Var : uint8_t { q, qt, u, w, y, t };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::q: return "q";
        case Var::qt: return "qt";
        case Var::u: return "u";
        case Var::w: return "w";
        case Var::y: return "y";
        case Var::t: return "t";
    }
    return "?";
}

constexpr long TRUNC_INF = std::numeric_limits<long>::max() / 4;

// Ring operations used by TruncSeries on its coefficients. Specialized for
// scalars here; nested series and Laurent coefficients specialize as well.
template <class R> struct RingTraits {
    static R zero() { return R::ring_zero(); }
    static bool is_zero(const R& x) { return x.ring_is_zero(); }
};
template <> struct RingTraits<Rat> {
    static Rat zero() { return Rat(0); }
    static bool is_zero(const Rat& x) { return x.is_zero(); }
};
template <> struct RingTraits<GaussRat> {
    static GaussRat zero() { return GaussRat(Rat(0)); }
    static bool is_zero(const GaussRat& x) { return x.is_zero(); }
};

template <class R>
class TruncSeries {
public:
    TruncSeries() : var_(Var::q), val_(0), trunc_(TRUNC_INF) {}  // universal zero

    TruncSeries(Var v, long val, long trunc) : var_(v), val_(val), trunc_(trunc) {
        if (trunc_ < val_) trunc_ = val_;
        if (trunc_ - val_ > (1L << 24))
            throw std::length_error("TruncSeries: absurd truncation span");
        c_.assign(size_t(trunc_ - val_), RingTraits<R>::zero());
    }

    static TruncSeries zero(Var v, long trunc) { return TruncSeries(v, trunc, trunc); }

    static TruncSeries monomial(Var v, long e, R coeff, long trunc) {
        TruncSeries s(v, e, trunc);
        if (e < trunc) s.c_[0] = std::move(coeff);
        return s;
    }

    static TruncSeries one(Var v, long trunc) { return monomial(v, 0, scalar_one(), trunc); }

    // Constant 1 with unbounded truncation; reads beyond the stored
    // coefficient fall back to zero, so this composes like a scalar.
    static TruncSeries ring_one() {
        TruncSeries s;
        s.c_.push_back(scalar_one());
        return s;
    }

    // Exact single term with unbounded truncation (everything else zero).
    static TruncSeries laurent_monomial(Var v, long e, R c) {
        TruncSeries s;
        s.var_ = v;
        s.val_ = e;
        s.c_.push_back(std::move(c));
        return s;
    }

    Var var() const { return var_; }
    long val() const { return val_; }
    long trunc() const { return trunc_; }
    // exclusive end of the stored range (beyond it, below trunc(), all zero)
    long stored_end() const { return val_ + (long)c_.size(); }
    bool universal_zero() const { return trunc_ == TRUNC_INF && c_.empty() && val_ == 0; }

    // Coefficient at exponent e. Reads at e >= trunc are hard errors.
    const R& at(long e) const {
        if (e >= trunc_) throw std::out_of_range("TruncSeries: read beyond truncation");
        if (e < val_ || size_t(e - val_) >= c_.size()) return zero_ref();
        return c_[size_t(e - val_)];
    }

    void set(long e, R x) {
        if (e >= trunc_)
            throw std::out_of_range("TruncSeries: write beyond truncation");
        if (e < val_) {
            // grow downward
            std::vector<R> nc(size_t(trunc_ - e), RingTraits<R>::zero());
            std::copy(c_.begin(), c_.end(), nc.begin() + size_t(val_ - e));
            c_ = std::move(nc);
            val_ = e;
        }
        c_[size_t(e - val_)] = std::move(x);
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!RingTraits<R>::is_zero(x)) return false;
        return true;
    }

    // Tightest valuation with a nonzero stored coefficient; trunc if zero.
    long lead_exp() const {
        long hi = std::min(trunc_, val_ + (long)c_.size());
        for (long e = val_; e < hi; ++e)
            if (!RingTraits<R>::is_zero(c_[size_t(e - val_)])) return e;
        return trunc_;
    }

    TruncSeries restrict_trunc(long ntrunc) const {
        if (ntrunc >= trunc_) return *this;
        TruncSeries r(var_, val_, ntrunc);
        for (long e = val_; e < ntrunc; ++e) r.c_[size_t(e - val_)] = at(e);
        return r;
    }

    // Drops leading stored zeros (valuation bound tightened; value unchanged).
    TruncSeries normalized() const {
        long le = lead_exp();
        if (le == val_) return *this;
        TruncSeries r(var_, le, trunc_);
        for (long e = le; e < trunc_; ++e) r.c_[size_t(e - le)] = at(e);
        return r;
    }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& x : r.c_) x = neg(x);
        return r;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        if (a.universal_zero()) return b;
        if (b.universal_zero()) return a;
        check_var(a, b);
        long val = std::min(a.val_, b.val_);
        long tr = std::min(a.trunc_, b.trunc_);
        bool unbounded = tr >= TRUNC_INF;  // both are exact constants
        long fill = unbounded ? std::max(a.val_ + (long)a.c_.size(),
                                         b.val_ + (long)b.c_.size())
                              : tr;
        TruncSeries r(a.var_, std::min(val, fill), fill);
        for (long e = r.val_; e < fill; ++e) {
            R x = e >= a.val_ && e < a.trunc_ ? a.at(e) : RingTraits<R>::zero();
            if (e >= b.val_ && e < b.trunc_) x = add(x, b.at(e));
            r.c_[size_t(e - r.val_)] = std::move(x);
        }
        if (unbounded) r.trunc_ = TRUNC_INF;
        return r;
    }

    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        return a + (-b);
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        if (a.universal_zero() || b.universal_zero()) return TruncSeries();
        check_var(a, b);
        long tr = std::min(a.trunc_ + b.val_, b.trunc_ + a.val_);
        long val = a.val_ + b.val_;
        if (tr < val) tr = val;
        bool unbounded = tr >= TRUNC_INF;  // both exact constants
        if (unbounded) tr = val + (long)a.c_.size() + (long)b.c_.size();
        TruncSeries r(a.var_, val, tr);
        if (unbounded) {
            for (long i = a.val_; i < a.val_ + (long)a.c_.size(); ++i) {
                const R& ai = a.c_[size_t(i - a.val_)];
                if (RingTraits<R>::is_zero(ai)) continue;
                for (long j = b.val_; j < b.val_ + (long)b.c_.size(); ++j) {
                    const R& bj = b.c_[size_t(j - b.val_)];
                    if (RingTraits<R>::is_zero(bj)) continue;
                    R& tgt = r.c_[size_t(i + j - val)];
                    tgt = add(tgt, mul(ai, bj));
                }
            }
            r.trunc_ = TRUNC_INF;
            return r;
        }
        long ihi = std::min(a.trunc_, a.val_ + (long)a.c_.size());
        long jhiall = std::min(b.trunc_, b.val_ + (long)b.c_.size());
        for (long i = a.val_; i < ihi; ++i) {
            const R& ai = a.c_[size_t(i - a.val_)];
            if (RingTraits<R>::is_zero(ai)) continue;
            long jmax = std::min(jhiall, tr - i);
            for (long j = b.val_; j < jmax; ++j) {
                const R& bj = b.c_[size_t(j - b.val_)];
                if (RingTraits<R>::is_zero(bj)) continue;
                R& tgt = r.c_[size_t(i + j - val)];
                tgt = add(tgt, mul(ai, bj));
            }
        }
        return r;
    }

    template <class S>
    TruncSeries scaled(const S& k) const {
        TruncSeries r = *this;
        for (auto& x : r.c_) x = mul_scalar(x, k);
        return r;
    }

    // Multiplicative inverse assuming the coefficient at `val` is a unit.
    // The caller must have val() equal to the true valuation.
    TruncSeries inverse() const {
        long lv = lead_exp();
        if (lv >= trunc_)
            throw std::domain_error("TruncSeries: inverse of (truncation-)zero series");
        long n = trunc_ - lv;  // relative orders available
        R lead_inv = inv(at(lv));
        // b with (a * b) = 1: b_k = -lead_inv * sum_{i=1..k} a_{lv+i} b_{k-i}
        TruncSeries r(var_, -lv, -lv + n);
        r.c_[0] = lead_inv;
        for (long k = 1; k < n; ++k) {
            R acc = RingTraits<R>::zero();
            for (long i = 1; i <= k; ++i) {
                const R& ai = at(lv + i);
                if (RingTraits<R>::is_zero(ai)) continue;
                acc = add(acc, mul(ai, r.c_[size_t(k - i)]));
            }
            r.c_[size_t(k)] = neg(mul(lead_inv, acc));
        }
        return r;
    }

    // x d/dx: coefficient at exponent n multiplied by n.
    TruncSeries xdx() const {
        TruncSeries r = *this;
        long hi = std::min(trunc_, val_ + (long)c_.size());
        for (long e = val_; e < hi; ++e)
            r.c_[size_t(e - val_)] = mul_scalar(r.c_[size_t(e - val_)], Rat(e));
        return r;
    }

    // exp of a series with strictly positive valuation.
    TruncSeries exp() const {
        if (universal_zero()) throw std::domain_error("TruncSeries: exp of universal zero");
        long lv = lead_exp();
        if (lv <= 0 && lv < trunc_)
            throw std::domain_error("TruncSeries: exp needs positive valuation");
        TruncSeries acc = one(var_, trunc_);
        TruncSeries term = one(var_, trunc_);
        long kmax = lv > 0 ? trunc_ / lv + 1 : 1;
        for (long k = 1; k <= kmax; ++k) {
            term = term * *this;
            term = term.scaled(Rat(1, k));
            if (term.lead_exp() >= term.trunc()) break;
            acc = acc + term;
        }
        return acc.restrict_trunc(trunc_);
    }

    // Two-sided inverse up to truncation (alias used by nested coefficients).
    TruncSeries inv() const { return inverse(); }

    TruncSeries pow(long e) const {
        if (universal_zero()) {
            if (e > 0) return TruncSeries();
            throw std::domain_error("TruncSeries: pow of universal zero");
        }
        if (e < 0) return inverse().pow(-e);
        TruncSeries acc = one(var_, trunc_);
        TruncSeries base = *this;
        unsigned long k = (unsigned long)e;
        while (k) {
            if (k & 1) acc = acc * base;
            base = k > 1 ? base * base : base;
            k >>= 1;
        }
        return acc;
    }

    TruncSeries shifted(long d) const {
        TruncSeries r = *this;
        r.val_ += d;
        if (r.trunc_ != TRUNC_INF) r.trunc_ += d;
        return r;
    }

    TruncSeries with_var(Var v) const {
        TruncSeries r = *this;
        r.var_ = v;
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        if (a.universal_zero()) return b.is_zero();
        if (b.universal_zero()) return a.is_zero();
        if (a.var_ != b.var_) return false;
        long tr = std::min(a.trunc_, b.trunc_);
        if (tr >= TRUNC_INF)  // two unbounded constants: stored extent decides
            tr = std::max(a.val_ + (long)a.c_.size(), b.val_ + (long)b.c_.size());
        long lo = std::min(a.val_, b.val_);
        for (long e = lo; e < tr; ++e) {
            R x = (e >= a.val_) ? a.at(e) : RingTraits<R>::zero();
            R y = (e >= b.val_) ? b.at(e) : RingTraits<R>::zero();
            if (!RingTraits<R>::is_zero(sub(x, y))) return false;
        }
        return true;
    }

private:
    static void check_var(const TruncSeries& a, const TruncSeries& b) {
        if (a.var_ != b.var_)
            throw std::invalid_argument(std::string("TruncSeries: variable mismatch ") +
                                        var_name(a.var_) + " vs " + var_name(b.var_));
    }

    static const R& zero_ref() {
        static const R z = RingTraits<R>::zero();
        return z;
    }

    // coefficient-ring helpers (ADL-friendly free functions or members)
    static R add(const R& a, const R& b) { return a + b; }
    static R sub(const R& a, const R& b) { return a - b; }
    static R mul(const R& a, const R& b) { return a * b; }
    static R neg(const R& a) { return -a; }
    static R inv(const R& a) { return a.inv(); }
    template <class S> static R mul_scalar(const R& a, const S& k);
    static R scalar_one();

    Var var_;
    long val_;
    long trunc_;
    std::vector<R> c_;
};

template <class R>
template <class S>
R TruncSeries<R>::mul_scalar(const R& a, const S& k) {
    if constexpr (std::is_same_v<R, Rat> || std::is_same_v<R, GaussRat>) {
        return a * R(k);
    } else {
        return a.scaled(k);
    }
}

template <class R>
R TruncSeries<R>::scalar_one() {
    if constexpr (std::is_same_v<R, Rat>) {
        return Rat(1);
    } else if constexpr (std::is_same_v<R, GaussRat>) {
        return GaussRat(Rat(1));
    } else {
        return R::ring_one();
    }
}

// Nested series are rings too.
template <class R> struct RingTraits<TruncSeries<R>> {
    static TruncSeries<R> zero() { return TruncSeries<R>(); }
    static bool is_zero(const TruncSeries<R>& x) { return x.is_zero(); }
};

}  // namespace k3e
