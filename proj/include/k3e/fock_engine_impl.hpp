#pragma once

// Implementation of the templated operator recursion. Included from
// fock.hpp; kept separate so the declarations stay readable.

#include <algorithm>

#include "k3e/fock.hpp"

namespace k3e {

namespace detail {

inline void insert_op(FockState& s, FockOp op) {
    s.insert(std::upper_bound(s.begin(), s.end(), op), op);
}

}  // namespace detail

template <class F>
void FockEngine<F>::vecop_accum(VecOp& into, const FockState& s, const OpPoly<F>& op,
                                const LocRing<F>& ring) {
    if (op.empty()) return;
    auto it = into.find(s);
    if (it == into.end()) into.emplace(s, op);
    else it->second = ring.op_add(it->second, op);
}

template <class F>
const typename FockEngine<F>::VecOp& FockEngine<F>::e_op(long r, const FockState& s) {
    auto key = std::make_pair(r, s);
    auto it = memo_eop_.find(key);
    if (it != memo_eop_.end()) return it->second;
    VecOp v = e_op_uncached(r, s);
    return memo_eop_.emplace(std::move(key), std::move(v)).first->second;
}

template <class F>
typename FockEngine<F>::VecOp FockEngine<F>::e_op_uncached(long r, const FockState& s) {
    const LocRing<F>& ring = ring_;
    if (s.empty()) return e_vac(r);

    size_t pos = reduce_last_ ? s.size() - 1 : 0;
    auto [m, cls] = s[pos];
    FockState w = s;
    w.erase(w.begin() + long(pos));
    int kg = lat_.kdeg(cls);
    long wE = energy(w);

    VecOp out;
    // pass-through: p_{-m}(c) E^(r) w
    for (auto& [st, op] : e_op(r, w)) {
        FockState ns = st;
        detail::insert_op(ns, {m, cls});
        vecop_accum(out, ns, op, ring);
    }

    for (long l = r - m - wE; l <= std::max(wE, 0L); ++l) {
        if (l > 0 && l > wE) break;
        if (l == 0 && kg != 0) continue;  // p0 vanishes off degree 0
        Rat fac(1);
        if (kg == 1) {
            if (l == 0) continue;
            fac = Rat(l, -m);
        } else if (kg == -1) {
            if (l == 0) continue;
            fac = Rat(-m, l);
        }
        long k2 = r - m - l;
        VecOp term;
        if (l > 0) {
            for (size_t i = 0; i < w.size(); ++i) {
                if (w[i].first != l) continue;
                Rat sc = Rat(-l) * lat_.pair(cls, w[i].second);
                if (sc.is_zero()) continue;
                FockState w2 = w;
                w2.erase(w2.begin() + long(i));
                for (auto& [st, op] : e_op(k2, w2))
                    vecop_accum(term, st, ring.op_scale(op, sc), ring);
            }
        } else if (l == 0) {
            Rat aW = lat_.pair(cls, 1);  // pairing with W = B + F = e1
            Rat aF = lat_.pair(cls, 2);  // pairing with F = f1
            if (aW.is_zero() && aF.is_zero()) continue;
            for (auto& [st, op] : e_op(k2, w)) {
                OpPoly<F> comp = ring.op_scale(op, aW);
                if (!aF.is_zero())
                    comp = ring.op_add(comp, ring.op_scale(ring.op_dq_compose(op), aF));
                vecop_accum(term, st, comp, ring);
            }
        } else {  // l < 0: creation applied after the inner operator
            for (auto& [st, op] : e_op(k2, w)) {
                FockState ns = st;
                detail::insert_op(ns, {int(-l), cls});
                vecop_accum(term, ns, op, ring);
            }
        }
        bool nonzero = false;
        for (auto& [st, op] : term)
            if (!ring.op_is_zero(op)) { nonzero = true; break; }
        if (!nonzero) continue;
        JSeriesT<F> phiv = phi_.get(-m, l);  // throws PhiUnknown when needed & absent
        if (phiv.is_zero()) continue;
        OpPoly<F> Mphi = ring.op_const(ring.make(std::move(phiv), 0));
        for (auto& [st, op] : term) {
            if (ring.op_is_zero(op)) continue;
            OpPoly<F> t = ring.op_scale(ring.op_compose(op, Mphi), -fac);
            vecop_accum(out, st, t, ring);
        }
    }
    // prune zero entries
    for (auto it2 = out.begin(); it2 != out.end();) {
        if (ring.op_is_zero(it2->second)) it2 = out.erase(it2);
        else ++it2;
    }
    return out;
}

template <class F>
const typename FockEngine<F>::VecOp& FockEngine<F>::e_vac(long r) {
    auto it = memo_evac_.find(r);
    if (it != memo_evac_.end()) return it->second;
    VecOp out;
    if (r == 0) {
        out.emplace(FockState{},
                    ring_.op_const(ring_.make(JSeriesT<F>::ring_one(), 1)));
    } else if (r < 0) {
        for (const FockState& sigma : fock_basis(-r)) {
            if (state_kdeg(sigma) != 0) continue;
            OpPoly<F> coef;
            for (auto& [tau, wt] : dual_state(sigma)) {
                const OpPoly<F>& p = pair_vac(tau, r);
                if (!ring_.op_is_zero(p)) coef = ring_.op_add(coef, ring_.op_scale(p, wt));
            }
            if (!ring_.op_is_zero(coef)) out.emplace(sigma, std::move(coef));
        }
    }
    return memo_evac_.emplace(r, std::move(out)).first->second;
}

template <class F>
const OpPoly<F>& FockEngine<F>::pair_vac(const FockState& mu, long r) {
    auto key = std::make_pair(r, mu);
    auto it = memo_pvac_.find(key);
    if (it != memo_pvac_.end()) return it->second;
    OpPoly<F> v = pair_vac_uncached(mu, r);
    return memo_pvac_.emplace(std::move(key), std::move(v)).first->second;
}

template <class F>
OpPoly<F> FockEngine<F>::pair_vac_uncached(const FockState& mu, long r) {
    const LocRing<F>& ring = ring_;
    if (mu.empty()) {
        if (r != 0) return {};
        return ring.op_const(ring.make(JSeriesT<F>::ring_one(), 1));
    }
    auto [m, cls] = mu[0];
    FockState mu2 = mu;
    mu2.erase(mu2.begin());
    int kg = lat_.kdeg(cls);
    Rat sgn = (m % 2 == 0) ? Rat(1) : Rat(-1);  // adjoint of p_{-m} is (-1)^m p_m

    OpPoly<F> acc;
    // l = 0 term
    if (kg == 0) {
        const OpPoly<F>& sub = pair_vac(mu2, r + m);
        if (!ring.op_is_zero(sub)) {
            JSeriesT<F> phiv = phi_.get(m, 0);
            if (!phiv.is_zero()) {
                OpPoly<F> t = ring.op_compose(sub, ring.op_const(ring.make(std::move(phiv), 0)));
                Rat aW = lat_.pair(cls, 1), aF = lat_.pair(cls, 2);
                OpPoly<F> comp = ring.op_scale(t, aW);
                if (!aF.is_zero())
                    comp = ring.op_add(comp, ring.op_scale(ring.op_dq_compose(t), aF));
                acc = ring.op_add(acc, comp);
            }
        }
    }
    // l = -j < 0 terms: the created operator annihilates into mu2
    for (size_t i = 0; i < mu2.size(); ++i) {
        long j = mu2[i].first;
        Rat fac(1);
        if (kg == 1) fac = Rat(-j, m);
        else if (kg == -1) fac = Rat(m, -j);
        Rat contract = Rat(-j) * lat_.pair(cls, mu2[i].second);
        if (contract.is_zero()) continue;
        Rat adj = (j % 2 == 0) ? Rat(1) : Rat(-1);
        FockState mu3 = mu2;
        mu3.erase(mu3.begin() + long(i));
        const OpPoly<F>& sub = pair_vac(mu3, r + m + j);
        if (ring.op_is_zero(sub)) continue;
        JSeriesT<F> phiv = phi_.get(m, -j);
        if (phiv.is_zero()) continue;
        OpPoly<F> t = ring.op_compose(sub, ring.op_const(ring.make(std::move(phiv), 0)));
        acc = ring.op_add(acc, ring.op_scale(t, fac * adj * contract));
    }
    return ring.op_scale(acc, sgn);
}

template <class F>
OpPoly<F> FockEngine<F>::pair_op(const FockState& mu, long r, const FockState& nu) {
    auto key = std::make_tuple(mu, r, nu);
    auto it = memo_pop_.find(key);
    if (it != memo_pop_.end()) return it->second;
    OpPoly<F> v = pair_op_uncached(mu, r, nu);
    memo_pop_.emplace(std::move(key), v);
    return v;
}

template <class F>
OpPoly<F> FockEngine<F>::pair_op_uncached(const FockState& mu, long r, const FockState& nu) {
    const LocRing<F>& ring = ring_;
    if (nu.empty()) return pair_vac(mu, r);
    auto [m, cls] = nu[0];
    FockState w = nu;
    w.erase(w.begin());
    int kg = lat_.kdeg(cls);
    long wE = energy(w);
    OpPoly<F> acc;

    // pass-through: <mu| p_{-m}(c) X> = (-1)^m <p_m(c) mu | X>
    {
        Rat adj = (m % 2 == 0) ? Rat(1) : Rat(-1);
        for (size_t i = 0; i < mu.size(); ++i) {
            if (mu[i].first != m) continue;
            Rat sc = Rat(-m) * lat_.pair(cls, mu[i].second);
            if (sc.is_zero()) continue;
            FockState mu2 = mu;
            mu2.erase(mu2.begin() + long(i));
            OpPoly<F> sub = pair_op(mu2, r, w);
            if (!ring.op_is_zero(sub)) acc = ring.op_add(acc, ring.op_scale(sub, adj * sc));
        }
    }

    for (long l = r - m - wE; l <= std::max(wE, 0L); ++l) {
        if (l > 0 && l > wE) break;
        if (l == 0 && kg != 0) continue;
        Rat fac(1);
        if (kg == 1) {
            if (l == 0) continue;
            fac = Rat(l, -m);
        } else if (kg == -1) {
            if (l == 0) continue;
            fac = Rat(-m, l);
        }
        long k2 = r - m - l;
        OpPoly<F> term;
        if (l > 0) {
            for (size_t i = 0; i < w.size(); ++i) {
                if (w[i].first != l) continue;
                Rat sc = Rat(-l) * lat_.pair(cls, w[i].second);
                if (sc.is_zero()) continue;
                FockState w2 = w;
                w2.erase(w2.begin() + long(i));
                OpPoly<F> sub = pair_op(mu, k2, w2);
                if (!ring.op_is_zero(sub)) term = ring.op_add(term, ring.op_scale(sub, sc));
            }
        } else if (l == 0) {
            OpPoly<F> sub = pair_op(mu, k2, w);
            if (!ring.op_is_zero(sub)) {
                Rat aW = lat_.pair(cls, 1), aF = lat_.pair(cls, 2);
                OpPoly<F> comp = ring.op_scale(sub, aW);
                if (!aF.is_zero())
                    comp = ring.op_add(comp, ring.op_scale(ring.op_dq_compose(sub), aF));
                term = comp;
            }
        } else {
            long j = -l;
            Rat adj = (j % 2 == 0) ? Rat(1) : Rat(-1);
            for (size_t i = 0; i < mu.size(); ++i) {
                if (mu[i].first != j) continue;
                Rat sc = Rat(-j) * lat_.pair(cls, mu[i].second);
                if (sc.is_zero()) continue;
                FockState mu2 = mu;
                mu2.erase(mu2.begin() + long(i));
                OpPoly<F> sub = pair_op(mu2, k2, w);
                if (!ring.op_is_zero(sub)) term = ring.op_add(term, ring.op_scale(sub, adj * sc));
            }
        }
        if (ring.op_is_zero(term)) continue;
        JSeriesT<F> phiv = phi_.get(-m, l);
        if (phiv.is_zero()) continue;
        OpPoly<F> t = ring.op_compose(term, ring.op_const(ring.make(std::move(phiv), 0)));
        acc = ring.op_add(acc, ring.op_scale(t, -fac));
    }
    return acc;
}

template <class F>
LocJ<F> FockEngine<F>::pair_eval(const FockState& mu, long r, const FockState& nu) {
    return ring_.op_apply_one(pair_op(mu, r, nu));
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::e_apply(long r, const FockState& s) {
    VecLoc out;
    for (auto& [st, op] : e_op(r, s)) {
        LocJ<F> c = ring_.op_apply_one(op);
        if (!c.is_zero()) out.emplace(st, std::move(c));
    }
    return out;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::e_apply(long r, const VecLoc& v) {
    VecLoc out;
    for (auto& [s, g] : v) {
        if (g.is_zero()) continue;
        for (auto& [st, op] : e_op(r, s)) {
            LocJ<F> c = ring_.op_apply(op, g);
            if (c.is_zero()) continue;
            auto it = out.find(st);
            if (it == out.end()) out.emplace(st, std::move(c));
            else it->second = ring_.add(it->second, c);
        }
    }
    return out;
}

template <class F>
LocJ<F> FockEngine<F>::trace_e0(long d) {
    LocJ<F> acc;
    for (const FockState& s : fock_basis(d)) {
        const VecOp& v = e_op(0, s);
        auto it = v.find(s);
        if (it == v.end()) continue;
        acc = ring_.add(acc, ring_.op_apply_one(it->second));
    }
    return acc;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::l0_apply(const KClass& g, const VecLoc& v) const {
    VecLoc out;
    for (auto& [s, c] : v) {
        for (size_t i = 0; i < s.size(); ++i) {
            auto [m, x] = s[i];
            KClass cup = lat_.cup(KClass{{x, Rat(1)}}, g);
            for (auto& [y, wy] : cup) {
                Rat sc = Rat(m) * wy;
                if (sc.is_zero()) continue;
                FockState ns = s;
                ns.erase(ns.begin() + long(i));
                detail::insert_op(ns, {m, y});
                LocJ<F> t = ring_.scale(c, sc);
                auto it = out.find(ns);
                if (it == out.end()) out.emplace(ns, std::move(t));
                else it->second = ring_.add(it->second, t);
            }
        }
    }
    return out;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::lehn_apply(const VecLoc& v) const {
    VecLoc out;
    auto accum = [&](const FockState& s, const LocJ<F>& c) {
        if (c.is_zero()) return;
        auto it = out.find(s);
        if (it == out.end()) out.emplace(s, c);
        else it->second = ring_.add(it->second, c);
    };
    for (auto& [s, c] : v) {
        long maxm = 0;
        for (auto& [m, x] : s) maxm = std::max(maxm, (long)m);
        for (auto& [a, b, cc, w3] : lat_.tau3()) {
            // term 1: p_{-r}(a) p_{-s}(b) p_{r+s}(c)
            for (size_t i = 0; i < s.size(); ++i) {
                long M = s[i].first;
                if (M < 2) continue;
                Rat contract = Rat(-M) * lat_.pair(cc, s[i].second);
                if (contract.is_zero()) continue;
                for (long rr = 1; rr < M; ++rr) {
                    long ss = M - rr;
                    FockState ns = s;
                    ns.erase(ns.begin() + long(i));
                    detail::insert_op(ns, {int(ss), b});
                    detail::insert_op(ns, {int(rr), a});
                    accum(ns, ring_.scale(c, Rat(-1, 2) * w3 * contract));
                }
            }
            // term 2: p_r(a) p_s(b) p_{-(r+s)}(c); the two annihilators hit
            // distinct operators of s
            for (size_t i = 0; i < s.size(); ++i) {
                long ss = s[i].first;
                Rat cb = Rat(-ss) * lat_.pair(b, s[i].second);
                if (cb.is_zero()) continue;
                for (size_t j = 0; j < s.size(); ++j) {
                    if (j == i) continue;
                    long rr = s[j].first;
                    Rat ca = Rat(-rr) * lat_.pair(a, s[j].second);
                    if (ca.is_zero()) continue;
                    FockState ns = s;
                    ns.erase(ns.begin() + long(std::max(i, j)));
                    ns.erase(ns.begin() + long(std::min(i, j)));
                    detail::insert_op(ns, {int(rr + ss), cc});
                    accum(ns, ring_.scale(c, Rat(-1, 2) * w3 * cb * ca));
                }
            }
        }
    }
    return out;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::p0_apply(const KClass& g, const VecLoc& v) const {
    Rat aW = p0_w(g), aF = p0_f(g);
    VecLoc out;
    for (auto& [s, c] : v) {
        LocJ<F> t = ring_.scale(c, aW);
        if (!aF.is_zero()) t = ring_.add(t, ring_.scale(ring_.dq(c), aF));
        if (!t.is_zero()) out.emplace(s, std::move(t));
    }
    return out;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::ydy_apply(const VecLoc& v) const {
    VecLoc out;
    for (auto& [s, c] : v) {
        LocJ<F> t = ring_.ydy(c);
        if (!t.is_zero()) out.emplace(s, std::move(t));
    }
    return out;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::add(const VecLoc& a, const VecLoc& b) const {
    VecLoc out = a;
    for (auto& [s, c] : b) {
        auto it = out.find(s);
        if (it == out.end()) out.emplace(s, c);
        else it->second = ring_.add(it->second, c);
    }
    return out;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::scale(const VecLoc& a, const Rat& k) const {
    VecLoc out;
    for (auto& [s, c] : a) {
        LocJ<F> t = ring_.scale(c, k);
        if (!t.is_zero()) out.emplace(s, std::move(t));
    }
    return out;
}

template <class F>
bool FockEngine<F>::vec_eq(const VecLoc& a, const VecLoc& b) const {
    for (auto& [s, c] : a) {
        auto it = b.find(s);
        if (it == b.end()) {
            if (!c.is_zero()) return false;
        } else if (!ring_.eq(c, it->second)) {
            return false;
        }
    }
    for (auto& [s, c] : b)
        if (!a.count(s) && !c.is_zero()) return false;
    return true;
}

template <class F>
bool FockEngine<F>::vec_is_zero(const VecLoc& a) const {
    for (auto& [s, c] : a)
        if (!c.is_zero()) return false;
    return true;
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::wdvv_residual_1(const KClass& g1, const KClass& g2,
                                                              const FockState& s) {
    LocJ<F> one{JSeriesT<F>::ring_one(), 0};
    VecLoc base{{s, one}};
    VecLoc Es = e_apply(0, s);
    auto comm = [&](const KClass& g) {
        VecLoc Lv = l0_apply(g, base);
        VecLoc ELv = e_apply(0, Lv);
        VecLoc LEv = l0_apply(g, Es);
        return add(ELv, scale(LEv, Rat(-1)));
    };
    VecLoc c2 = comm(g2), c1 = comm(g1);
    return add(p0_apply(g1, c2), scale(p0_apply(g2, c1), Rat(-1)));
}

template <class F>
typename FockEngine<F>::VecLoc FockEngine<F>::wdvv_residual_2(const KClass& g1,
                                                              const FockState& s) {
    LocJ<F> one{JSeriesT<F>::ring_one(), 0};
    VecLoc base{{s, one}};
    VecLoc Es = e_apply(0, s);
    VecLoc Dv = lehn_apply(base);
    VecLoc EDv = e_apply(0, Dv);
    VecLoc DEv = lehn_apply(Es);
    VecLoc commD = add(EDv, scale(DEv, Rat(-1)));
    VecLoc Lv = l0_apply(g1, base);
    VecLoc ELv = e_apply(0, Lv);
    VecLoc LEv = l0_apply(g1, Es);
    VecLoc commL = add(ELv, scale(LEv, Rat(-1)));
    return add(p0_apply(g1, commD), scale(ydy_apply(commL), Rat(-1)));
}

}  // namespace k3e
