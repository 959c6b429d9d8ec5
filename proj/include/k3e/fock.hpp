#pragma once

// Fock space of the surface with Nakajima operators, the degree-zero
// Virasoro operator, the diagonal operator, the degree-0 operator p0, the
// recursively defined operator family E^(r) with a pluggable phi table,
// and the A1-resolution family E_B^(r).
//
// Matrix elements of E^(r) all carry a single overall factor 1/(F^2 Delta)
// raised to some power; coefficients are therefore kept in the localized
// form num / D^pow with D = F^2 Delta. Because E^(r) is y-linear but not
// q-linear (the degree-0 operator differentiates in q), intermediate
// results are operator-valued: polynomials in d/d(log q) with localized
// coefficients, composed along the recursion and evaluated at the constant
// series 1 at the very end.

#include <functional>
#include <map>
#include <vector>

#include "k3e/forms.hpp"
#include "k3e/lattice.hpp"
#include "k3e/phi_table.hpp"

namespace k3e {

// a creation operator: energy m >= 1 and a basis class index
using FockOp = std::pair<int, int>;
// canonically sorted multiset of creation operators applied to the vacuum
using FockState = std::vector<FockOp>;

template <class T> using FockVec = std::map<FockState, T>;

inline long energy(const FockState& s) {
    long e = 0;
    for (auto& [m, c] : s) e += m;
    return e;
}

long state_kdeg(const FockState& s);

// all basis states of given energy (classes over the 24-element basis)
std::vector<FockState> fock_basis(long d);

// basis states of energy d using only classes from the given index set
std::vector<FockState> fock_basis_restricted(long d, const std::vector<int>& classes);

// Nakajima operator p_m(gamma) on a rational-coefficient vector: m < 0
// prepends a creation pair, m > 0 annihilates via the commutator
// [p_m(a), p_{m'}(a')] = -m delta_{m+m'} <a,a'> id, multiplicity-aware.
FockVec<Rat> nakajima_apply(int m, const KClass& gamma, const FockVec<Rat>& v);

// scalar Poincare pairing of two basis states (adjoint of a creation
// operator of energy m carries the sign (-1)^m)
Rat pair_states(const FockState& a, const FockState& b);

// dual vector: pair_states(x, dual(s)) = delta_{x,s} over the basis
FockVec<Rat> dual_state(const FockState& s);

// ---------------------------------------------------------------------
// localized coefficients num / D^pow
// ---------------------------------------------------------------------

template <class F>
struct LocJ {
    JSeriesT<F> num;  // universal zero by default
    int pow = 0;
    bool is_zero() const { return num.universal_zero() || num.is_zero(); }
};

// operator polynomial sum_j c_j (q d/dq)^j acting on series from the left
template <class F>
using OpPoly = std::vector<LocJ<F>>;

template <class F>
struct LocRing {
    JSeriesT<F> D;     // F^2 Delta
    JSeriesT<F> dqD;   // q d/dq of D
    JSeriesT<F> ydyD;  // y d/dy of D

    explicit LocRing(long Nq) {
        const FormsContext& fc = FormsContext::get(Nq + 6);
        JSeries d = fc.D.restrict_trunc(Nq + 6);
        D = field_lift<F>(d);
        dqD = field_lift<F>(d.xdx());
        ydyD = field_lift<F>(dz(d));
    }

    LocJ<F> make(JSeriesT<F> num, int pow) const { return {std::move(num), pow}; }

    LocJ<F> add(const LocJ<F>& a, const LocJ<F>& b) const {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int p = std::max(a.pow, b.pow);
        JSeriesT<F> na = a.num, nb = b.num;
        for (int i = a.pow; i < p; ++i) na = na * D;
        for (int i = b.pow; i < p; ++i) nb = nb * D;
        return {na + nb, p};
    }
    LocJ<F> mul(const LocJ<F>& a, const LocJ<F>& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        return {a.num * b.num, a.pow + b.pow};
    }
    LocJ<F> neg(const LocJ<F>& a) const { return {-a.num, a.pow}; }
    LocJ<F> scale(const LocJ<F>& a, const Rat& k) const {
        if (k.is_zero()) return {};
        return {a.num.scaled(k), a.pow};
    }
    // q d/dq on num/D^pow
    LocJ<F> dq(const LocJ<F>& a) const {
        if (a.is_zero()) return {};
        if (a.pow == 0) return {a.num.xdx(), 0};
        return {a.num.xdx() * D - (a.num * dqD).scaled(Rat(a.pow)), a.pow + 1};
    }
    // y d/dy on num/D^pow (D depends on y through F^2)
    LocJ<F> ydy(const LocJ<F>& a) const {
        if (a.is_zero()) return {};
        if (a.pow == 0) return {dz(a.num), 0};
        return {dz(a.num) * D - (a.num * ydyD).scaled(Rat(a.pow)), a.pow + 1};
    }
    bool eq(const LocJ<F>& a, const LocJ<F>& b) const {
        if (a.is_zero()) return b.is_zero();
        if (b.is_zero()) return a.is_zero();
        JSeriesT<F> lhs = a.num, rhs = b.num;
        for (int i = a.pow; i < std::max(a.pow, b.pow); ++i) lhs = lhs * D;
        for (int i = b.pow; i < std::max(a.pow, b.pow); ++i) rhs = rhs * D;
        return lhs == rhs;
    }

    // operator-polynomial helpers ------------------------------------
    OpPoly<F> op_zero() const { return {}; }
    OpPoly<F> op_const(LocJ<F> c) const { return {std::move(c)}; }
    bool op_is_zero(const OpPoly<F>& a) const {
        for (auto& c : a)
            if (!c.is_zero()) return false;
        return true;
    }
    OpPoly<F> op_add(const OpPoly<F>& a, const OpPoly<F>& b) const {
        OpPoly<F> r(std::max(a.size(), b.size()));
        for (size_t j = 0; j < r.size(); ++j) {
            if (j < a.size() && j < b.size()) r[j] = add(a[j], b[j]);
            else if (j < a.size()) r[j] = a[j];
            else r[j] = b[j];
        }
        return r;
    }
    OpPoly<F> op_scale(const OpPoly<F>& a, const Rat& k) const {
        OpPoly<F> r = a;
        for (auto& c : r) c = scale(c, k);
        return r;
    }
    // d/d(log q) composed from the left: D o A
    OpPoly<F> op_dq_compose(const OpPoly<F>& a) const {
        OpPoly<F> r(a.size() + 1);
        for (size_t j = 0; j < a.size(); ++j) {
            r[j] = add(r[j], dq(a[j]));      // (dq c_j) d^j
            r[j + 1] = add(r[j + 1], a[j]);  // c_j d^{j+1}
        }
        return r;
    }
    // A o B (apply B first)
    OpPoly<F> op_compose(const OpPoly<F>& a, const OpPoly<F>& b) const {
        OpPoly<F> r;
        OpPoly<F> cur = b;  // d^j o B, built iteratively
        for (size_t j = 0; j < a.size(); ++j) {
            if (!a[j].is_zero()) {
                OpPoly<F> t = cur;
                for (auto& c : t) c = mul(a[j], c);
                r = op_add(r, t);
            }
            if (j + 1 < a.size()) cur = op_dq_compose(cur);
        }
        return r;
    }
    // evaluation at the constant series 1
    LocJ<F> op_apply_one(const OpPoly<F>& a) const { return a.empty() ? LocJ<F>{} : a[0]; }
    // application to a general localized series
    LocJ<F> op_apply(const OpPoly<F>& a, const LocJ<F>& g) const {
        LocJ<F> acc;
        LocJ<F> cur = g;
        for (size_t j = 0; j < a.size(); ++j) {
            acc = add(acc, mul(a[j], cur));
            cur = dq(cur);
        }
        return acc;
    }
};

// ---------------------------------------------------------------------
// the operator engine
// ---------------------------------------------------------------------

template <class F = Rat>
class FockEngine {
public:
    using VecOp = FockVec<OpPoly<F>>;
    using VecLoc = FockVec<LocJ<F>>;

    FockEngine(long Nq, PhiTable<F> phi, bool reduce_last = false)
        : Nq_(Nq), ring_(Nq), phi_(std::move(phi)), lat_(KLattice::get()),
          reduce_last_(reduce_last) {}

    long nq() const { return Nq_; }
    const LocRing<F>& ring() const { return ring_; }
    const PhiTable<F>& phi() const { return phi_; }

    // E^(r) applied to a basis state, operator-valued coefficients
    const VecOp& e_op(long r, const FockState& s);

    // E^(r) applied to g * state for the constant g = 1
    VecLoc e_apply(long r, const FockState& s);
    VecLoc e_apply(long r, const VecLoc& v);

    // <mu | E^(r) (g nu)> as an operator in g, computed without ever
    // building full vectors (phi factors are only consulted when the
    // operator content is nonzero)
    OpPoly<F> pair_op(const FockState& mu, long r, const FockState& nu);
    LocJ<F> pair_eval(const FockState& mu, long r, const FockState& nu);

    // trace of E^(0) over energy-d states
    LocJ<F> trace_e0(long d);

    // linear operators on evaluated vectors
    VecLoc l0_apply(const KClass& g, const VecLoc& v) const;
    VecLoc lehn_apply(const VecLoc& v) const;
    VecLoc p0_apply(const KClass& g, const VecLoc& v) const;
    VecLoc ydy_apply(const VecLoc& v) const;

    VecLoc add(const VecLoc& a, const VecLoc& b) const;
    VecLoc scale(const VecLoc& a, const Rat& k) const;
    bool vec_eq(const VecLoc& a, const VecLoc& b) const;
    bool vec_is_zero(const VecLoc& a) const;

    // WDVV residuals on a basis state
    VecLoc wdvv_residual_1(const KClass& g1, const KClass& g2, const FockState& s);
    VecLoc wdvv_residual_2(const KClass& g1, const FockState& s);

private:
    VecOp e_op_uncached(long r, const FockState& s);
    const VecOp& e_vac(long r);
    const OpPoly<F>& pair_vac(const FockState& mu, long r);
    OpPoly<F> pair_vac_uncached(const FockState& mu, long r);
    OpPoly<F> pair_op_uncached(const FockState& mu, long r, const FockState& nu);

    static void vecop_accum(VecOp& into, const FockState& s, const OpPoly<F>& op,
                            const LocRing<F>& ring);

    Rat p0_w(const KClass& g) const { return lat_.pair(g, lat_.W()); }
    Rat p0_f(const KClass& g) const { return lat_.pair(g, lat_.F()); }

    long Nq_;
    LocRing<F> ring_;
    PhiTable<F> phi_;
    const KLattice& lat_;
    bool reduce_last_;
    std::map<std::pair<long, FockState>, VecOp> memo_eop_;
    std::map<long, VecOp> memo_evac_;
    std::map<std::pair<long, FockState>, OpPoly<F>> memo_pvac_;
    std::map<std::tuple<FockState, long, FockState>, OpPoly<F>> memo_pop_;
};

// ---------------------------------------------------------------------
// the A1-resolution operators E_B^(r): commutator coefficients are plain
// t-Laurent scalars and every matrix element carries one global factor
// S = y/(1+y)^2, kept implicit.
// ---------------------------------------------------------------------

class EBEngine {
public:
    EBEngine() : lat_(KLattice::get()) {}

    // E_B^(r) state, coefficients are t-Laurent polynomials times the
    // implicit global S
    const FockVec<HalfLaurent>& eb_op(long r, const FockState& s);

    // trace over energy-d states (times implicit S)
    HalfLaurent trace(long d);

private:
    HalfLaurent pair_vac(const FockState& mu, long r) const;
    const FockVec<HalfLaurent>& eb_vac(long r);

    const KLattice& lat_;
    std::map<std::pair<long, FockState>, FockVec<HalfLaurent>> memo_;
    std::map<long, FockVec<HalfLaurent>> memo_vac_;
};

// windowed y/(1+y)^2 = -sum_{k>=1} k t^{2k}, certified to t-exponent hi
WindowPoly s_factor_window(long hi);

}  // namespace k3e

#include "k3e/fock_engine_impl.hpp"
