#include "k3e/fock.hpp"

namespace k3e {

long state_kdeg(const FockState& s) {
    const KLattice& lat = KLattice::get();
    long k = 0;
    for (auto& [m, c] : s) k += lat.kdeg(c);
    return k;
}

namespace {

void enumerate_states(long d, FockOp minop, FockState& cur, std::vector<FockState>& out) {
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    for (int m = minop.first; m <= d; ++m) {
        int cstart = (m == minop.first) ? minop.second : 0;
        for (int c = cstart; c < KBASIS; ++c) {
            cur.push_back({m, c});
            enumerate_states(d - m, {m, c}, cur, out);
            cur.pop_back();
        }
    }
}

}  // namespace

std::vector<FockState> fock_basis(long d) {
    std::vector<FockState> out;
    FockState cur;
    enumerate_states(d, {1, 0}, cur, out);
    return out;
}

std::vector<FockState> fock_basis_restricted(long d, const std::vector<int>& classes) {
    std::vector<FockState> all = fock_basis(d);
    std::vector<FockState> out;
    for (auto& s : all) {
        bool ok = true;
        for (auto& [m, c] : s) {
            bool found = false;
            for (int x : classes)
                if (x == c) { found = true; break; }
            if (!found) { ok = false; break; }
        }
        if (ok) out.push_back(s);
    }
    return out;
}

FockVec<Rat> nakajima_apply(int m, const KClass& gamma, const FockVec<Rat>& v) {
    if (m == 0) throw std::invalid_argument("nakajima_apply: use the degree-0 operator for m = 0");
    const KLattice& lat = KLattice::get();
    FockVec<Rat> out;
    auto bump = [&](const FockState& s, Rat w) {
        if (w.is_zero()) return;
        auto it = out.find(s);
        if (it == out.end()) out.emplace(s, std::move(w));
        else {
            it->second += w;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    for (auto& [s, w] : v) {
        if (m < 0) {
            for (auto& [c, x] : gamma) {
                FockState ns = s;
                detail::insert_op(ns, {-m, c});
                bump(ns, w * x);
            }
        } else {
            for (size_t i = 0; i < s.size(); ++i) {
                if (s[i].first != m) continue;
                Rat sc = Rat(-m) * lat.pair(gamma, KClass{{s[i].second, Rat(1)}});
                if (sc.is_zero()) continue;
                FockState ns = s;
                ns.erase(ns.begin() + long(i));
                bump(ns, w * sc);
            }
        }
    }
    return out;
}

Rat pair_states(const FockState& a, const FockState& b) {
    if (a.empty()) return b.empty() ? Rat(1) : Rat(0);
    const KLattice& lat = KLattice::get();
    auto [m, c] = a[0];
    FockState a2 = a;
    a2.erase(a2.begin());
    Rat adj = (m % 2 == 0) ? Rat(1) : Rat(-1);
    Rat acc(0);
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i].first != m) continue;
        Rat sc = Rat(-m) * lat.pair(c, b[i].second);
        if (sc.is_zero()) continue;
        FockState b2 = b;
        b2.erase(b2.begin() + long(i));
        acc += sc * pair_states(a2, b2);
    }
    return adj * acc;
}

FockVec<Rat> dual_state(const FockState& s) {
    const KLattice& lat = KLattice::get();
    FockVec<Rat> cand{{FockState{}, Rat(1)}};
    for (auto& [m, c] : s) {
        FockVec<Rat> next;
        for (auto& [st, w] : cand) {
            for (auto& [y, wy] : lat.dual(c)) {
                FockState ns = st;
                detail::insert_op(ns, {m, int(y)});
                Rat v = w * wy;
                auto it = next.find(ns);
                if (it == next.end()) next.emplace(std::move(ns), v);
                else it->second += v;
            }
        }
        cand = std::move(next);
    }
    Rat norm(0);
    for (auto& [st, w] : cand) norm += w * pair_states(s, st);
    if (norm.is_zero()) throw std::logic_error("dual_state: degenerate norm");
    Rat ninv = norm.inv();
    for (auto& [st, w] : cand) w *= ninv;
    return cand;
}

// -------------------------------------------------------------------
// phi seeds
// -------------------------------------------------------------------

PhiTable<Rat> phi_seeds_m1(long Nq) {
    const FormsContext& fc = FormsContext::get(Nq + 2);
    JSeries K = fc.K.restrict_trunc(Nq);
    JSeries G = fc.G.restrict_trunc(Nq);
    PhiTable<Rat> tab;
    tab.set(1, 1, G - JSeries::one(Var::q, Nq));
    tab.set(1, 0, -K);
    tab.set(1, -1, (K * K).xdx().scaled(Rat(1, 2)));
    return tab;
}

PhiTable<Rat> phi_seeds(long Nq) {
    PhiTable<Rat> tab = phi_seeds_m1(Nq);
    const FormsContext& fc = FormsContext::get(Nq + 2);
    JSeries K = fc.K.restrict_trunc(Nq);
    JSeries Kp = dz(K);                      // dz of the theta function
    JSeries Ksq = fc.Ksq.restrict_trunc(Nq);
    JSeries P2 = fc.P2.restrict_trunc(Nq);   // wp K^2
    JSeries dP2 = dz(P2);
    QSeries E2 = fc.E2.restrict_trunc(Nq);
    QSeries E4 = fc.E4.restrict_trunc(Nq);
    auto L = [&](const QSeries& s) { return lift_scalar_series(s); };
    JSeries one = JSeries::one(Var::q, Nq);

    // the m = 2 entries, with all wp and J1 = dz log F content multiplied
    // through by the theta powers so everything is finite:
    //   phi_{2,2} + 1 = 2 [ -K'^2 P2 - (E2/12) K'^2 K^2 + (3/2) P2^2
    //                       + K K' dz(P2) - (E4/96) K^4 ]
    JSeries p22 = ((-(Kp * Kp * P2)) - (Kp * Kp * Ksq * L(E2)).scaled(Rat(1, 12)) +
                   (P2 * P2).scaled(Rat(3, 2)) + K * Kp * dP2 -
                   (Ksq * Ksq * L(E4)).scaled(Rat(1, 96)))
                      .scaled(Rat(2)) -
                  one;
    //   phi_{2,1} = K dz(P2) - (E2/6) K' K^2
    JSeries p21 = K * dP2 - (Kp * Ksq * L(E2)).scaled(Rat(1, 6));
    //   phi_{2,0} = -2 K' K
    JSeries p20 = (Kp * K).scaled(Rat(-2));
    //   phi_{2,-1} = -(4/3) K'^3 + (4/3) K' P2 + (E2/6) K' K^2 + (1/3) K dz(P2)
    JSeries p2m1 = (Kp * Kp * Kp).scaled(Rat(-4, 3)) + (Kp * P2).scaled(Rat(4, 3)) +
                   (Kp * Ksq * L(E2)).scaled(Rat(1, 6)) + (K * dP2).scaled(Rat(1, 3));
    //   phi_{2,-2} = 2 K'^4 - 2 K'^2 P2 - (E2/6) K'^2 K^2 - K K' dz(P2)
    JSeries p2m2 = (Kp * Kp * Kp * Kp).scaled(Rat(2)) - (Kp * Kp * P2).scaled(Rat(2)) -
                   (Kp * Kp * Ksq * L(E2)).scaled(Rat(1, 6)) - (K * Kp * dP2);

    tab.set(2, 2, p22);
    tab.set(2, 1, p21);
    tab.set(2, 0, p20);
    tab.set(2, -1, p2m1);
    tab.set(2, -2, p2m2);
    return tab;
}

// -------------------------------------------------------------------
// E_B engine
// -------------------------------------------------------------------

HalfLaurent EBEngine::pair_vac(const FockState& mu, long r) const {
    if (mu.empty())
        return r == 0 ? HalfLaurent::ring_one() : HalfLaurent();
    auto [m, c] = mu[0];
    FockState mu2 = mu;
    mu2.erase(mu2.begin());
    Rat gB = lat_.pair(KClass{{c, Rat(1)}}, lat_.B());
    if (gB.is_zero()) return HalfLaurent();
    HalfLaurent coef =
        (HalfLaurent::term(-m, Rat(1)) - HalfLaurent::term(m, Rat(1))).scaled(gB);
    Rat adj = (m % 2 == 0) ? Rat(1) : Rat(-1);
    return pair_vac(mu2, r + m) * coef.scaled(adj);
}

const FockVec<HalfLaurent>& EBEngine::eb_vac(long r) {
    auto it = memo_vac_.find(r);
    if (it != memo_vac_.end()) return it->second;
    FockVec<HalfLaurent> out;
    if (r == 0) {
        out.emplace(FockState{}, HalfLaurent::ring_one());
    } else if (r < 0) {
        for (const FockState& sigma : fock_basis(-r)) {
            if (state_kdeg(sigma) != 0) continue;
            HalfLaurent coef;
            for (auto& [tau, wt] : dual_state(sigma)) {
                HalfLaurent p = pair_vac(tau, r);
                if (!p.ring_is_zero()) coef = coef + p.scaled(wt);
            }
            if (!coef.ring_is_zero()) out.emplace(sigma, std::move(coef));
        }
    }
    return memo_vac_.emplace(r, std::move(out)).first->second;
}

const FockVec<HalfLaurent>& EBEngine::eb_op(long r, const FockState& s) {
    auto key = std::make_pair(r, s);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    FockVec<HalfLaurent> out;
    if (s.empty()) {
        out = eb_vac(r);
    } else {
        auto [m, c] = s[0];
        FockState w = s;
        w.erase(w.begin());
        for (auto& [st, v] : eb_op(r, w)) {
            FockState ns = st;
            detail::insert_op(ns, {m, c});
            auto it2 = out.find(ns);
            if (it2 == out.end()) out.emplace(ns, v);
            else it2->second = it2->second + v;
        }
        Rat gB = lat_.pair(KClass{{c, Rat(1)}}, lat_.B());
        if (!gB.is_zero()) {
            HalfLaurent coef =
                (HalfLaurent::term(m, Rat(1)) - HalfLaurent::term(-m, Rat(1))).scaled(gB);
            for (auto& [st, v] : eb_op(r - m, w)) {
                HalfLaurent t = v * coef;
                t = -t;
                auto it2 = out.find(st);
                if (it2 == out.end()) out.emplace(st, std::move(t));
                else it2->second = it2->second + t;
            }
        }
    }
    for (auto it2 = out.begin(); it2 != out.end();) {
        if (it2->second.ring_is_zero()) it2 = out.erase(it2);
        else ++it2;
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
}

HalfLaurent EBEngine::trace(long d) {
    HalfLaurent acc;
    for (const FockState& s : fock_basis(d)) {
        const auto& v = eb_op(0, s);
        auto it = v.find(s);
        if (it != v.end()) acc = acc + it->second;
    }
    return acc;
}

WindowPoly s_factor_window(long hi) {
    WindowPoly w = WindowPoly::windowed(2, hi);
    for (long e = 2; e <= hi; e += 2) w.set(e, Rat(-(e / 2)));
    return w;
}

}  // namespace k3e
