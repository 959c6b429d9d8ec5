#pragma once

// Affine-linear forms over the rationals: c + sum a_i x_i with formal
// unknowns x_i. The order-by-order solver runs the whole operator engine
// over this field; products of two genuinely symbolic values never occur
// there (lower orders are substituted before each pass), so multiplication
// guards against them instead of supporting them.

#include <map>

#include "k3e/rational.hpp"

namespace k3e {

struct LinRat {
    Rat c;
    std::map<int, Rat> terms;

    LinRat() : c(0) {}
    LinRat(Rat x) : c(std::move(x)) {}
    LinRat(long x) : c(x) {}
    static LinRat symbol(int id) {
        LinRat x;
        x.terms[id] = Rat(1);
        return x;
    }

    bool symbolic() const { return !terms.empty(); }
    bool is_zero() const { return c.is_zero() && terms.empty(); }

    LinRat operator-() const {
        LinRat r;
        r.c = -c;
        for (auto& [i, v] : terms) r.terms[i] = -v;
        return r;
    }
    LinRat& operator+=(const LinRat& o) {
        c += o.c;
        for (auto& [i, v] : o.terms) {
            auto it = terms.find(i);
            if (it == terms.end()) terms[i] = v;
            else {
                it->second += v;
                if (it->second.is_zero()) terms.erase(it);
            }
        }
        return *this;
    }
    LinRat& operator-=(const LinRat& o) { return *this += -o; }
    friend LinRat operator+(LinRat a, const LinRat& b) { a += b; return a; }
    friend LinRat operator-(LinRat a, const LinRat& b) { a -= b; return a; }
    friend LinRat operator*(const LinRat& a, const LinRat& b) {
        if (a.symbolic() && b.symbolic())
            throw std::logic_error("LinRat: product of two symbolic values");
        const LinRat& sym = a.symbolic() ? a : b;
        const Rat& k = a.symbolic() ? b.c : a.c;
        LinRat r;
        r.c = sym.c * k;
        if (!k.is_zero())
            for (auto& [i, v] : sym.terms) r.terms[i] = v * k;
        return r;
    }
    friend LinRat operator/(const LinRat& a, const LinRat& b) {
        if (b.symbolic()) throw std::logic_error("LinRat: division by symbolic value");
        LinRat r;
        Rat k = b.c.inv();
        r.c = a.c * k;
        for (auto& [i, v] : a.terms) r.terms[i] = v * k;
        return r;
    }
    friend bool operator==(const LinRat& a, const LinRat& b) {
        return a.c == b.c && a.terms == b.terms;
    }
    LinRat inv() const {
        if (symbolic()) throw std::logic_error("LinRat: inverse of symbolic value");
        return LinRat(c.inv());
    }
};

template <> struct FieldTraits<LinRat> {
    static LinRat zero() { return LinRat(); }
    static LinRat one() { return LinRat(Rat(1)); }
    static bool is_zero(const LinRat& x) { return x.is_zero(); }
    static LinRat from_rat(const Rat& x) { return LinRat(x); }
};

}  // namespace k3e
