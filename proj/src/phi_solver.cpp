#include "k3e/phi_solver.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace k3e {

std::pair<long, long> phi_canonical_key(long m, long l) {
    if (m == 0) throw std::invalid_argument("phi key: m = 0");
    std::pair<long, long> best{0, 0};
    auto consider = [&](long a, long b) {
        if (a > 0 && a >= std::labs(b)) best = {a, b};
    };
    consider(m, l);
    consider(l, m);
    consider(-m, -l);
    consider(-l, -m);
    if (best.first == 0) throw std::logic_error("phi key: no canonical representative");
    return best;
}

namespace {

struct LinSystem {
    // rows: sparse map symbol -> coeff, plus constant; meaning row = 0
    std::vector<std::pair<std::map<int, Rat>, Rat>> rows;
    bool contradiction = false;

    void add(const LinRat& x) {
        if (x.is_zero()) return;
        if (!x.symbolic()) {
            contradiction = true;
            return;
        }
        rows.push_back({x.terms, x.c});
    }

    // returns (solved values, ok, message)
    bool solve(std::map<int, Rat>& out, std::string& msg, const std::set<int>& want) {
        // Gaussian elimination on the sparse rows
        std::map<int, std::pair<std::map<int, Rat>, Rat>> pivots;  // leading symbol -> row
        for (auto row : rows) {
            for (;;) {
                if (row.first.empty()) {
                    if (!row.second.is_zero()) {
                        msg = "inconsistent linear system";
                        return false;
                    }
                    break;
                }
                int lead = row.first.begin()->first;
                auto it = pivots.find(lead);
                if (it == pivots.end()) {
                    Rat inv = row.first.begin()->second.inv();
                    for (auto& [i, v] : row.first) v *= inv;
                    row.second *= inv;
                    pivots.emplace(lead, std::move(row));
                    break;
                }
                // eliminate lead
                Rat f = row.first.begin()->second;
                for (auto& [i, v] : it->second.first) {
                    auto jt = row.first.find(i);
                    Rat nv = (jt == row.first.end() ? Rat(0) : jt->second) - f * v;
                    if (nv.is_zero()) {
                        if (jt != row.first.end()) row.first.erase(jt);
                    } else {
                        row.first[i] = nv;
                    }
                }
                row.second -= f * it->second.second;
            }
        }
        // back-substitute (rows are reduced against earlier pivots only, so
        // iterate from the largest symbol down)
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            Rat val = -it->second.second;
            for (auto& [i, v] : it->second.first) {
                if (i == it->first) continue;
                auto jt = out.find(i);
                if (jt == out.end()) {
                    msg = "underdetermined system (free symbol in pivot row)";
                    return false;
                }
                val -= v * jt->second;
            }
            out[it->first] = val;
        }
        for (int s : want) {
            if (!out.count(s)) {
                msg = "underdetermined system (symbol never constrained)";
                return false;
            }
        }
        return true;
    }
};

}  // namespace

PhiSolveReport phi_solve(const std::vector<std::pair<long, long>>& targets, long qOrder,
                         const PhiTable<Rat>& base, long d) {
    PhiSolveReport rep;
    rep.table = base;

    // canonical target keys not already known
    std::set<std::pair<long, long>> keys;
    for (auto& [m, l] : targets) {
        auto k = phi_canonical_key(m, l);
        if (!base.known(k.first, k.second)) keys.insert(k);
    }
    if (keys.empty()) {
        rep.success = true;
        rep.message = "all targets already known";
        return rep;
    }

    // q^0 rows from the expected leading behavior
    std::map<std::pair<long, long>, std::map<long, HalfLaurent>> solved;  // key -> order -> row
    for (auto& k : keys) {
        HalfLaurent row0;
        if (k.second == 0)
            row0 = HalfLaurent::term(-k.first, Rat(1)) - HalfLaurent::term(k.first, Rat(1));
        solved[k][0] = row0;
    }

    // support bound per key and order: |t/2|^2 <= mu^2 + 4 mu n with
    // mu = (m + |l|)/2, parity of t matching m + l
    auto slot_span = [](const std::pair<long, long>& k, long n) {
        double mu = double(k.first + std::labs(k.second)) / 2.0;
        long t = (long)std::floor(2.0 * std::sqrt(mu * mu + 4.0 * mu * double(n)) + 1e-9);
        long par = ((k.first + k.second) % 2 + 2) % 2;
        while (((t % 2) + 2) % 2 != par) --t;
        return t;
    };

    const KLattice& lat = KLattice::get();
    std::vector<FockState> probes = fock_basis_restricted(d, {IDX_ONE, 1, 2, IDX_PT});
    std::vector<std::pair<KClass, KClass>> gammas = {{lat.B(), lat.F()},
                                                     {lat.B(), lat.W()}};

    for (long n = 1; n < qOrder; ++n) {
        // symbols for the order-n coefficients of each key, one per t-slot
        std::map<int, std::tuple<long, long, long>> sym_meta;
        std::map<std::tuple<long, long, long>, int> sym_id;
        int next_id = 0;
        // all entries at the common truncation n+1: paths with fewer phi
        // factors must not retain orders the unknowns cannot reach
        PhiTable<LinRat> tab;
        for (auto& [key, s] : rep.table.entries())
            tab.set(key.first, key.second, field_lift<LinRat>(s.restrict_trunc(n + 1)));
        for (auto& k : keys) {
            JSeriesT<LinRat> s(Var::q, 0, n + 1);
            for (long e = 0; e < n; ++e) {
                HalfLaurentT<LinRat> row;
                auto it = solved[k].find(e);
                if (it != solved[k].end())
                    for (auto& [te, v] : it->second.coeffs())
                        row = row + HalfLaurentT<LinRat>::term(te, LinRat(v));
                s.set(e, row);
            }
            HalfLaurentT<LinRat> rown;
            long span = slot_span(k, n);
            for (long te = -span; te <= span; te += 2) {
                int id = next_id++;
                sym_meta[id] = {k.first, k.second, te};
                sym_id[{k.first, k.second, te}] = id;
                rown = rown + HalfLaurentT<LinRat>::term(te, LinRat::symbol(id));
            }
            s.set(n, rown);
            tab.set(k.first, k.second, s);
        }

        FockEngine<LinRat> eng(n + 1, std::move(tab));
        LinSystem sys;
        std::set<int> seen;
        auto harvest = [&](const FockVec<LocJ<LinRat>>& v) {
            for (auto& [st, c] : v) {
                if (c.is_zero()) continue;
                const auto& num = c.num;
                for (long e = num.val(); e < num.trunc(); ++e)
                    for (auto& [te, x] : num.at(e).coeffs()) {
                        for (auto& [id, w] : x.terms) seen.insert(id);
                        sys.add(x);
                    }
            }
        };
        try {
            for (const FockState& s : probes) {
                for (auto& [g1, g2] : gammas) harvest(eng.wdvv_residual_1(g1, g2, s));
                harvest(eng.wdvv_residual_2(lat.B(), s));
                harvest(eng.wdvv_residual_2(lat.F(), s));
            }
        } catch (const PhiUnknown& e) {
            rep.message = std::string("recursion needs a key outside the target set: ") +
                          e.what();
            return rep;
        }
        if (sys.contradiction) {
            rep.message = "residual has a nonzero constant row at order " + std::to_string(n) +
                          " (falsifies the system at this order)";
            return rep;
        }
        // symbols never consulted by any residual are not determined at
        // this level; report which keys need a larger d
        for (auto& [id, meta] : sym_meta) {
            if (!seen.count(id)) {
                rep.message = "order " + std::to_string(n) + ": key (" +
                              std::to_string(std::get<0>(meta)) + "," +
                              std::to_string(std::get<1>(meta)) +
                              ") slot t^" + std::to_string(std::get<2>(meta)) +
                              " unconstrained at d = " + std::to_string(d) +
                              " (enlarge d and retry)";
                return rep;
            }
        }
        std::map<int, Rat> sol;
        std::string msg;
        if (!sys.solve(sol, msg, seen)) {
            rep.message = "order " + std::to_string(n) + ": " + msg;
            return rep;
        }
        for (auto& k : keys) {
            HalfLaurent row;
            long span = slot_span(k, n);
            for (long te = -span; te <= span; te += 2) {
                auto it = sym_id.find({k.first, k.second, te});
                if (it == sym_id.end()) continue;
                const Rat& v = sol.at(it->second);
                if (!v.is_zero()) row = row + HalfLaurent::term(te, v);
            }
            solved[k][n] = row;
        }
        // refresh the rational table with everything solved so far
        for (auto& k : keys) {
            JSeries s(Var::q, 0, n + 1);
            for (long e = 0; e <= n; ++e) s.set(e, solved[k][e]);
            rep.table.set(k.first, k.second, s);
        }
        rep.orders_solved = n + 1;
    }
    rep.success = true;
    std::ostringstream os;
    os << "solved " << keys.size() << " canonical keys to q-order " << (qOrder - 1);
    rep.message = os.str();
    return rep;
}

}  // namespace k3e
