#pragma once

// Exact scalar types: arbitrary-precision rationals (GMP-backed) and
// Gaussian rationals. Everything downstream assumes these are always in
// lowest terms with positive denominator, which mpq_class guarantees
// after canonicalization.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3e {

using Int = mpz_class;

class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) { canon(); }
    Rat(const Int& n) : v_(n) {}
    Rat(const Int& n, const Int& d) : v_(n, d) { canon(); }
    explicit Rat(const mpq_class& q) : v_(q) { canon(); }

    // Parses "n" or "n/d" with arbitrary-precision decimal integers.
    static Rat parse(const std::string& s) {
        auto pos = s.find('/');
        if (pos == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, pos)), Int(s.substr(pos + 1)));
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }

    const Int num() const { return v_.get_num(); }
    const Int den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    Rat operator-() const { return Rat(mpq_class(-v_), NoCanon{}); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1 / v_), NoCanon{});
    }

    // integer power, negative exponents allowed for nonzero values
    Rat pow(long e) const {
        if (e == 0) return Rat(1);
        Rat base = e > 0 ? *this : inv();
        unsigned long k = e > 0 ? (unsigned long)e : (unsigned long)(-e);
        Rat acc(1);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    std::string str() const { return v_.get_str(); }

private:
    struct NoCanon {};
    Rat(const mpq_class& q, NoCanon) : v_(q) {}
    void canon() { v_.canonicalize(); }
    mpq_class v_;
};

inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }

// Gaussian rational a + b*i. Used only where the u = 2*pi*z substitution
// demands an imaginary unit; the bulk of the engine stays in Rat.
struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = r; im = i;
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        Rat n = o.re * o.re + o.im * o.im;
        if (n.is_zero()) throw std::domain_error("GaussRat: division by zero");
        Rat r = (re * o.re + im * o.im) / n;
        Rat i = (im * o.re - re * o.im) / n;
        re = r; im = i;
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { a += b; return a; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { a -= b; return a; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { a *= b; return a; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { a /= b; return a; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat inv() const { GaussRat one(Rat(1)); one /= *this; return one; }

    std::string str() const { return re.str() + (im.is_zero() ? "" : ("+i*" + im.str())); }
};

// Field concept hooks used by the series templates.
template <class F> struct FieldTraits;

template <> struct FieldTraits<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static bool is_zero(const Rat& x) { return x.is_zero(); }
    static Rat from_rat(const Rat& x) { return x; }
};

template <> struct FieldTraits<GaussRat> {
    static GaussRat zero() { return GaussRat(Rat(0)); }
    static GaussRat one() { return GaussRat(Rat(1)); }
    static bool is_zero(const GaussRat& x) { return x.is_zero(); }
    static GaussRat from_rat(const Rat& x) { return GaussRat(x); }
};

// n-th Bernoulli number B_n (B_1 = -1/2), exact.
inline Rat bernoulli(unsigned n) {
    // recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0
    static thread_local std::vector<Rat> cache;
    if (cache.empty()) cache.push_back(Rat(1));
    while (cache.size() <= n) {
        unsigned m = (unsigned)cache.size();
        Rat acc(0);
        Int binom = 1;  // C(m+1, 0)
        for (unsigned j = 0; j < m; ++j) {
            acc += Rat(binom) * cache[j];
            binom = binom * Int(m + 1 - j) / Int(j + 1);
        }
        cache.push_back(-acc / Rat(Int(m + 1)));
    }
    return cache[n];
}

inline Rat factorial_rat(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

}  // namespace k3e
