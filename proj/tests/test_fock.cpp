#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "k3e/phi_solver.hpp"
#include "k3e/verify.hpp"

using namespace k3e;

namespace {

std::mt19937 rng(987123);

FockState rand_state(long dmax) {
    std::uniform_int_distribution<int> de(1, int(dmax));
    std::uniform_int_distribution<int> dc(0, KBASIS - 1);
    FockState s;
    long left = de(rng);
    while (left > 0) {
        int m = std::uniform_int_distribution<int>(1, int(left))(rng);
        s.push_back({m, dc(rng)});
        left -= m;
    }
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("lattice sanity") {
    const KLattice& lat = KLattice::get();
    CHECK(lat.pair(lat.B(), lat.B()) == Rat(-2));
    CHECK(lat.pair(lat.B(), lat.F()) == Rat(1));
    CHECK(lat.pair(lat.F(), lat.F()) == Rat(0));
    // <B + F, B + hF> = h - 1
    for (long h = 0; h <= 4; ++h) {
        KClass bh = lat.B();
        for (auto& [i, v] : lat.F()) bh[i] += Rat(h) * v;
        CHECK(lat.pair(lat.W(), bh) == Rat(h - 1));
    }
    // unit pairs with point
    CHECK(lat.pair(lat.unit(), lat.point()) == Rat(1));
    CHECK(lat.pair(lat.unit(), lat.unit()) == Rat(0));
    // middle cup middle = gram * point
    KClass e1{{1, Rat(1)}}, f1{{2, Rat(1)}};
    KClass c = lat.cup(e1, f1);
    CHECK(c == lat.point());
    CHECK(lat.cup(lat.point(), lat.point()).empty());
    CHECK(lat.kdeg(IDX_ONE) == -1);
    CHECK(lat.kdeg(IDX_PT) == 1);
}

TEST_CASE("nakajima commutator on randomized states") {
    // [p_m(a), p_{m'}(a')] = -m delta_{m+m'} <a,a'> id, checked through the
    // scalar pairing by comparing both composition orders
    const KLattice& lat = KLattice::get();
    for (int it = 0; it < 300; ++it) {
        FockState s = rand_state(3);
        int m = std::uniform_int_distribution<int>(1, 3)(rng);
        int a = std::uniform_int_distribution<int>(0, KBASIS - 1)(rng);
        int b = std::uniform_int_distribution<int>(0, KBASIS - 1)(rng);
        // p_m(a) p_{-m}(b) s  vs  p_{-m}(b) p_m(a) s - m <a,b> s
        auto annihilate = [&](int mm, int cls, const FockVec<Rat>& v) {
            FockVec<Rat> out;
            for (auto& [st, w] : v)
                for (size_t i = 0; i < st.size(); ++i) {
                    if (st[i].first != mm) continue;
                    Rat sc = Rat(-mm) * lat.pair(cls, st[i].second) * w;
                    if (sc.is_zero()) continue;
                    FockState ns = st;
                    ns.erase(ns.begin() + long(i));
                    out[ns] += sc;
                }
            return out;
        };
        auto create = [&](int mm, int cls, const FockVec<Rat>& v) {
            FockVec<Rat> out;
            for (auto& [st, w] : v) {
                FockState ns = st;
                detail::insert_op(ns, {mm, cls});
                out[ns] += w;
            }
            return out;
        };
        FockVec<Rat> base{{s, Rat(1)}};
        FockVec<Rat> lhs = annihilate(m, a, create(m, b, base));
        FockVec<Rat> rhs = create(m, b, annihilate(m, a, base));
        rhs[s] += Rat(-m) * lat.pair(KClass{{a, Rat(1)}}, KClass{{b, Rat(1)}});
        for (auto& [st, w] : lhs) CHECK(w == rhs[st]);
        for (auto& [st, w] : rhs) CHECK(w == lhs[st]);
    }
}

TEST_CASE("nakajima_apply worked examples") {
    const KLattice& lat = KLattice::get();
    FockVec<Rat> vac{{FockState{}, Rat(1)}};
    // p_1(F) p_{-1}(B) 1 = -<F,B> 1 = -vacuum
    auto r1 = nakajima_apply(1, lat.F(), nakajima_apply(-1, lat.B(), vac));
    CHECK(r1.size() == 1);
    CHECK(r1.at(FockState{}) == Rat(-1));
    // p_1(F) p_{-1}(F) 1 = 0
    auto r2 = nakajima_apply(1, lat.F(), nakajima_apply(-1, lat.F(), vac));
    CHECK(r2.empty());
    // p_2(pt) p_{-2}(one) p_{-1}(pt) 1 = -2 p_{-1}(pt) 1
    auto r3 = nakajima_apply(
        2, lat.point(),
        nakajima_apply(-2, lat.unit(), nakajima_apply(-1, lat.point(), vac)));
    CHECK(r3.size() == 1);
    CHECK(r3.at(FockState{{1, IDX_PT}}) == Rat(-2));
}

TEST_CASE("scalar pairing: geometric values") {
    // <p_{-1}(B)1 | p_{-1}(F)1> = <B,F> = +1: the signed adjoint makes the
    // pairing the geometric one
    FockState sB{{1, 1}}, sF{{1, 2}};
    Rat v = pair_states(sB, sF) - pair_states(FockState{{1, 2}}, FockState{{1, 2}});
    // B = e1 - f1 expands over basis states; assemble by linearity
    Rat pBF = pair_states(FockState{{1, 1}}, sF) - pair_states(FockState{{1, 2}}, sF);
    CHECK(pBF == Rat(1));
    (void)v;
    // energy mismatch
    CHECK(pair_states(FockState{{1, 0}}, FockState{{2, 0}}) == Rat(0));
    // <p_{-1}(pt)^d | p_{-1}(one)^d> = d!
    for (long d = 1; d <= 4; ++d) {
        FockState a(size_t(d), {1, IDX_PT}), b(size_t(d), {1, IDX_ONE});
        CHECK(pair_states(a, b) == factorial_rat(unsigned(d)));
    }
    // p_2(pt) p_{-2}(one) p_{-1}(pt) 1 = -2 p_{-1}(pt) 1: via pairing with
    // the dual of p_{-1}(pt)1
    FockState st{{1, IDX_PT}, {2, IDX_ONE}};
    FockVec<Rat> dual = dual_state(FockState{{1, IDX_PT}});
    Rat acc(0);
    const KLattice& lat = KLattice::get();
    for (auto& [tau, w] : dual) {
        // annihilate p_2(pt) against st then pair
        for (size_t i = 0; i < st.size(); ++i) {
            if (st[i].first != 2) continue;
            Rat sc = Rat(-2) * lat.pair(IDX_PT, st[i].second);
            FockState ns = st;
            ns.erase(ns.begin() + long(i));
            acc += w * sc * pair_states(tau, ns);
        }
    }
    CHECK(acc == Rat(-2));
}

TEST_CASE("dual states invert the pairing") {
    for (const FockState& s : fock_basis(2)) {
        FockVec<Rat> d = dual_state(s);
        for (const FockState& t : fock_basis(2)) {
            Rat acc(0);
            for (auto& [tau, w] : d) acc += w * pair_states(t, tau);
            CHECK(acc == Rat(t == s ? 1 : 0));
        }
        if (s.size() > 1) break;  // spot-check a few, the full loop is slow
    }
}

TEST_CASE("p0 action") {
    long Nq = 4;
    FockEngine<Rat> eng(Nq, phi_seeds(Nq));
    const KLattice& lat = KLattice::get();
    LocJ<Rat> one{JSeriesT<Rat>::ring_one(), 0};
    FockVec<LocJ<Rat>> v{{FockState{{1, 2}}, one}};
    // gamma = F multiplies by <F, beta_h> = 1
    auto r = eng.p0_apply(lat.F(), v);
    CHECK(eng.ring().eq(r.at(FockState{{1, 2}}), one));
    // gamma = W acts as q d/dq: on the constant coefficient it vanishes
    auto rw = eng.p0_apply(lat.W(), v);
    CHECK(eng.vec_is_zero(rw));
    // gamma = unit gives zero
    auto ru = eng.p0_apply(lat.unit(), v);
    CHECK(eng.vec_is_zero(ru));
    // on q^{h-1} rows: p0(W) multiplies by h - 1
    LocJ<Rat> qrow{JSeriesT<Rat>::monomial(Var::q, 2, HalfLaurent::ring_one(), Nq), 0};
    FockVec<LocJ<Rat>> v2{{FockState{{1, 2}}, qrow}};
    auto rw2 = eng.p0_apply(lat.W(), v2);
    CHECK(eng.ring().eq(rw2.at(FockState{{1, 2}}), eng.ring().scale(qrow, Rat(2))));
}

TEST_CASE("L0 and the diagonal operator") {
    long Nq = 3;
    FockEngine<Rat> eng(Nq, phi_seeds(Nq));
    const KLattice& lat = KLattice::get();
    LocJ<Rat> one{JSeriesT<Rat>::ring_one(), 0};
    // L0(unit) is the energy operator
    for (const FockState& s : fock_basis(2)) {
        FockVec<LocJ<Rat>> v{{s, one}};
        auto r = eng.l0_apply(lat.unit(), v);
        CHECK(eng.ring().eq(r.at(s), eng.ring().scale(one, Rat(energy(s)))));
    }
    // the diagonal operator vanishes on energy 1
    FockVec<LocJ<Rat>> v1{{FockState{{1, 5}}, one}};
    CHECK(eng.vec_is_zero(eng.lehn_apply(v1)));
    // L0(gamma) and the diagonal operator are self-adjoint for the pairing
    for (const FockState& a : fock_basis(2)) {
        for (const FockState& b : fock_basis(2)) {
            FockVec<LocJ<Rat>> va{{a, one}}, vb{{b, one}};
            auto La = eng.l0_apply(lat.B(), va), Lb = eng.l0_apply(lat.B(), vb);
            auto pairing = [&](const FockVec<LocJ<Rat>>& x, const FockState& t) {
                Rat acc(0);
                for (auto& [st, c] : x) {
                    if (c.is_zero()) continue;
                    // constant rational coefficients only in this test
                    acc += c.num.at(0).at(0) * pair_states(st, t);
                }
                return acc;
            };
            CHECK(pairing(La, b) == pairing(Lb, a));
            auto Da = eng.lehn_apply(va), Db = eng.lehn_apply(vb);
            CHECK(pairing(Da, b) == pairing(Db, a));
            if (b.size() > 1) break;
        }
        if (a.size() > 1) break;
    }
}

TEST_CASE("operator family: worked matrix elements at low energy") {
    long Nq = 4;
    FockEngine<Rat> eng(Nq, phi_seeds(Nq));
    const FormsContext& fc = FormsContext::get(Nq + 2);
    const LocRing<Rat>& ring = eng.ring();
    // d = 1 matrix element: F-state diagonal = 1/Delta
    FockState sF{{1, 2}};
    JSeries num = -fc.Ksq.restrict_trunc(Nq);
    CHECK(ring.eq(eng.pair_eval(sF, 0, sF), {num, 1}));
    // bidegree: E^(r) sends energy d to d - r with k-degree preserved
    for (long r = -1; r <= 1; ++r) {
        for (auto& [st, op] : eng.e_op(r, sF)) {
            CHECK(energy(st) == 1 - r);
            CHECK(state_kdeg(st) == state_kdeg(sF));
        }
    }
    // E^(r) on the vacuum for r > 0 vanishes
    CHECK(eng.e_apply(1, FockState{}).empty());
}

TEST_CASE("well-definedness: reduction order does not matter") {
    long Nq = 3;
    FockEngine<Rat> first(Nq, phi_seeds(Nq), false);
    FockEngine<Rat> last(Nq, phi_seeds(Nq), true);
    for (const FockState& s : fock_basis_restricted(2, {IDX_ONE, 1, 2, IDX_PT})) {
        auto a = first.e_apply(0, s);
        auto b = last.e_apply(0, s);
        CHECK(first.vec_eq(a, b));
    }
}

TEST_CASE("self-adjointness of the degree-zero operator") {
    long Nq = 3;
    FockEngine<Rat> eng(Nq, phi_seeds(Nq));
    auto basis = fock_basis_restricted(2, {IDX_ONE, 1, 2, 3, IDX_PT});
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i; j < basis.size(); ++j) {
            LocJ<Rat> ab = eng.pair_eval(basis[i], 0, basis[j]);
            LocJ<Rat> ba = eng.pair_eval(basis[j], 0, basis[i]);
            CHECK(eng.ring().eq(ab, ba));
        }
}

TEST_CASE("memoization transparency") {
    long Nq = 3;
    FockEngine<Rat> warm(Nq, phi_seeds(Nq));
    FockState s{{1, 1}, {1, 2}};
    auto first = warm.e_apply(0, s);
    auto second = warm.e_apply(0, s);  // fully memoized path
    CHECK(warm.vec_eq(first, second));
    FockEngine<Rat> cold(Nq, phi_seeds(Nq));
    CHECK(cold.vec_eq(cold.e_apply(0, s), first));
}

TEST_CASE("phi table closure and unknown semantics") {
    long Nq = 4;
    PhiTable<Rat> tab = phi_seeds(Nq);
    // sign rule
    CHECK(tab.get(-1, 0) == -tab.get(1, 0));
    CHECK(tab.get(-2, -2) == -tab.get(2, 2));
    // scaling rule l phi_{m,l} = m phi_{l,m}
    CHECK(tab.get(1, 2).scaled(Rat(2)) == tab.get(2, 1));
    CHECK(tab.get(1, -2).scaled(Rat(-2)) == tab.get(-2, 1));
    // both paths to the same key agree: phi_{-1,-2} via sign then scale
    CHECK(tab.get(-1, -2) == -tab.get(1, 2));
    CHECK(tab.get(-1, -2) == tab.get(-2, -1).scaled(Rat(1, 2)));
    // unknown is an error carrying the key, never zero
    try {
        tab.get(3, 1);
        CHECK(false);
    } catch (const PhiUnknown& e) {
        CHECK(e.m == 3);
        CHECK(e.l == 1);
    }
    CHECK_THROWS(tab.get(0, 1));
    // seeds have the expected leading rows
    CHECK(tab.get(1, 1).at(0).ring_is_zero());     // G - 1 = O(q)
    CHECK(tab.get(2, 1).at(0).ring_is_zero());
    CHECK(tab.get(2, -1).at(0).ring_is_zero());
    CHECK(tab.get(2, -2).at(0).ring_is_zero());
}

TEST_CASE("A1 resolution engine") {
    EBEngine eb;
    // vacuum element: the implicit factor is exactly y/(1+y)^2
    CHECK(eb.trace(0) == HalfLaurent::ring_one());
    // first two trace levels against the 20-2-2 product rows
    JSeries prod = twenty_two_two_product(3);
    WindowPoly S = s_factor_window(40);
    for (long d = 0; d <= 2; ++d)
        CHECK(S * WindowPoly::exact(eb.trace(d)) == S * WindowPoly::exact(prod.at(d)));
    // commutator coefficient matches [q^0] phi_{m,0}
    PhiTable<Rat> seeds = phi_seeds(3);
    for (long m = 1; m <= 2; ++m) {
        HalfLaurent row = HalfLaurent::term(-m, Rat(1)) - HalfLaurent::term(m, Rat(1));
        CHECK(seeds.get(m, 0).at(0) == row);
    }
}

TEST_CASE("solver re-derives the seeded m=2 entries reachable at energy 2") {
    long Nq = 3;
    PhiSolveReport rep = phi_solve({{2, 0}, {2, 1}, {2, 2}}, Nq, phi_seeds_m1(Nq), 2);
    REQUIRE(rep.success);
    PhiTable<Rat> full = phi_seeds(Nq);
    for (long l = 0; l <= 2; ++l)
        CHECK(rep.table.get(2, l).restrict_trunc(Nq) == full.get(2, l).restrict_trunc(Nq));
    // keys out of reach at this level are reported, not guessed
    PhiSolveReport bad = phi_solve({{2, -2}}, Nq, phi_seeds_m1(Nq), 2);
    CHECK(!bad.success);
}

TEST_CASE("canonical keys") {
    CHECK(phi_canonical_key(1, 3) == std::make_pair(3L, 1L));
    CHECK(phi_canonical_key(-3, -1) == std::make_pair(3L, 1L));
    CHECK(phi_canonical_key(1, -3) == std::make_pair(3L, -1L));
    CHECK(phi_canonical_key(2, -2) == std::make_pair(2L, -2L));
    CHECK(phi_canonical_key(3, 0) == std::make_pair(3L, 0L));
    CHECK_THROWS(phi_canonical_key(0, 2));
}
