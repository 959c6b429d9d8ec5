#pragma once

// Finite Laurent polynomial in the internal variable t, where t^2 = p and
// y = -p. A t-exponent e represents the p-power e/2, so half-integer
// p-powers (index-1/2 objects like the theta function) are exact. Parity
// of the support is tracked: even support = integer p-powers.

#include <map>

#include "k3e/rational.hpp"
#include "k3e/trunc_series.hpp"

namespace k3e {

enum class Parity : uint8_t { zero, even, odd, mixed };

template <class F = Rat>
class HalfLaurentT {
public:
    using Field = F;

    HalfLaurentT() = default;
    explicit HalfLaurentT(F c) {
        if (!FieldTraits<F>::is_zero(c)) c_[0] = std::move(c);
    }
    static HalfLaurentT term(long e, F c) {
        HalfLaurentT r;
        if (!FieldTraits<F>::is_zero(c)) r.c_[e] = std::move(c);
        return r;
    }
    static HalfLaurentT ring_zero() { return HalfLaurentT(); }
    static HalfLaurentT ring_one() { return HalfLaurentT(FieldTraits<F>::one()); }

    bool ring_is_zero() const { return c_.empty(); }
    const std::map<long, F>& coeffs() const { return c_; }

    F at(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? FieldTraits<F>::zero() : it->second;
    }

    long min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    long max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    Parity parity() const {
        if (c_.empty()) return Parity::zero;
        bool even = true, odd = true;
        for (auto& [e, v] : c_) ((e % 2 + 2) % 2 == 0 ? odd : even) = false;
        if (even) return Parity::even;
        if (odd) return Parity::odd;
        return Parity::mixed;
    }

    HalfLaurentT operator-() const {
        HalfLaurentT r = *this;
        for (auto& [e, v] : r.c_) v = -v;
        return r;
    }

    friend HalfLaurentT operator+(const HalfLaurentT& a, const HalfLaurentT& b) {
        HalfLaurentT r = a;
        for (auto& [e, v] : b.c_) r.bump(e, v);
        return r;
    }
    friend HalfLaurentT operator-(const HalfLaurentT& a, const HalfLaurentT& b) {
        HalfLaurentT r = a;
        for (auto& [e, v] : b.c_) r.bump(e, -v);
        return r;
    }
    friend HalfLaurentT operator*(const HalfLaurentT& a, const HalfLaurentT& b) {
        HalfLaurentT r;
        for (auto& [ea, va] : a.c_)
            for (auto& [eb, vb] : b.c_) r.bump(ea + eb, va * vb);
        return r;
    }
    friend bool operator==(const HalfLaurentT& a, const HalfLaurentT& b) {
        return (a - b).ring_is_zero();
    }

    template <class S>
    HalfLaurentT scaled(const S& k) const {
        HalfLaurentT r;
        F kf = field_cast(k);
        if (FieldTraits<F>::is_zero(kf)) return r;
        for (auto& [e, v] : c_) {
            F x = v * kf;
            if (!FieldTraits<F>::is_zero(x)) r.c_[e] = std::move(x);
        }
        return r;
    }

    // Inverse exists in the Laurent ring only for monomials.
    HalfLaurentT inv() const {
        if (c_.size() != 1)
            throw std::domain_error("HalfLaurent: only monomials are invertible");
        auto& [e, v] = *c_.begin();
        return term(-e, v.inv());
    }

    // p d/dp = (1/2) t d/dt : entry at t-exponent e multiplied by e/2.
    HalfLaurentT dz() const {
        HalfLaurentT r;
        for (auto& [e, v] : c_) {
            F x = v * FieldTraits<F>::from_rat(Rat(e, 2));
            if (!FieldTraits<F>::is_zero(x)) r.c_[e] = std::move(x);
        }
        return r;
    }

    // y d/dy = (1/2) t d/dt, same weights as dz (y = -t^2).
    HalfLaurentT ydy() const { return dz(); }

    // t -> -t (equivalently p^{1/2} -> -p^{1/2}).
    HalfLaurentT t_flip() const {
        HalfLaurentT r;
        for (auto& [e, v] : c_) r.c_[e] = (e % 2 != 0) ? -v : v;
        return r;
    }

    // t -> 1/t (p -> 1/p).
    HalfLaurentT t_invert() const {
        HalfLaurentT r;
        for (auto& [e, v] : c_) r.c_[-e] = v;
        return r;
    }

    // Exact Laurent division, error when not divisible.
    HalfLaurentT divide_exact(const HalfLaurentT& d) const {
        if (ring_is_zero()) return HalfLaurentT();
        if (d.ring_is_zero()) throw std::domain_error("HalfLaurent: divide by zero");
        HalfLaurentT rem = *this, quot;
        long de = d.max_exp();
        long floor_exp = min_exp() - d.min_exp();
        const F dl = d.at(de);
        while (!rem.ring_is_zero()) {
            long re = rem.max_exp();
            if (re - de < floor_exp)
                throw std::domain_error("HalfLaurent: not divisible");
            F q = rem.at(re) / dl;
            HalfLaurentT m = term(re - de, q);
            quot = quot + m;
            rem = rem - m * d;
        }
        return quot;
    }

private:
    template <class S> static F field_cast(const S& k) {
        if constexpr (std::is_same_v<S, F>) return k;
        else return FieldTraits<F>::from_rat(Rat(k));
    }
    void bump(long e, F v) {
        if (FieldTraits<F>::is_zero(v)) return;
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, std::move(v));
        } else {
            it->second += v;
            if (FieldTraits<F>::is_zero(it->second)) c_.erase(it);
        }
    }
    std::map<long, F> c_;
};

using HalfLaurent = HalfLaurentT<Rat>;

template <class F> struct RingTraits<HalfLaurentT<F>> {
    static HalfLaurentT<F> zero() { return HalfLaurentT<F>(); }
    static bool is_zero(const HalfLaurentT<F>& x) { return x.ring_is_zero(); }
};

}  // namespace k3e
