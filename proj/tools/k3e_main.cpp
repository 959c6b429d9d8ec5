// Command-line entry point: every computation and verification suite,
// with reproducible run manifests. All payloads go to standard output,
// diagnostics to standard error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "k3e/json_io.hpp"
#include "k3e/phi_solver.hpp"
#include "k3e/verify.hpp"

using namespace k3e;

namespace {

using Clock = std::chrono::steady_clock;

int emit(const std::string& sub, const json& limits, const json& payload,
         Clock::time_point t0) {
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    json out{{"manifest", make_manifest(sub, limits, payload, ms)}, {"payload", payload}};
    std::cout << out.dump(1) << "\n";
    return 0;
}

json forms_object(const std::string& name, long Nq, long wlo, long whi) {
    if (name == "E2") return to_json(eisenstein(2, Nq));
    if (name == "E4") return to_json(eisenstein(4, Nq));
    if (name == "E6") return to_json(eisenstein(6, Nq));
    if (name == "C2") return to_json(renorm_eisenstein(2, Nq));
    if (name == "C4") return to_json(renorm_eisenstein(4, Nq));
    if (name == "delta") return to_json(delta(Nq));
    if (name == "delta-inv") return to_json(delta(Nq + 2).inverse().restrict_trunc(Nq));
    if (name == "K") return to_json(theta_K(Nq).s);
    if (name == "F") {
        json j = to_json(theta_K(Nq).s);
        return json{{"imag_factor", "-i"}, {"series", j}};  // F = -i K
    }
    if (name == "G") return to_json(g_function(Nq).s);
    if (name == "Z") return to_json(z_function(Nq).s);
    if (name == "P" || name == "wp") return to_json(weierstrass_p(Nq, wlo, whi));
    if (name == "gottsche") return to_json(gottsche_product(Nq));
    if (name == "c-table") {
        json t = json::object();
        for (auto& [m, v] : c_table(Nq).c) t[std::to_string(m)] = v.str();
        return t;
    }
    if (name == "a-table") {
        json t = json::object();
        for (auto& [d, v] : a_table(Nq)) t[std::to_string(d)] = v.str();
        return t;
    }
    throw CLI::ValidationError("unknown forms object: " + name);
}

std::pair<long, long> parse_window(const std::string& s) {
    auto pos = s.find(',');
    if (pos == std::string::npos) throw CLI::ValidationError("window must be a,b");
    return {std::stol(s.substr(0, pos)), std::stol(s.substr(pos + 1))};
}

KClass parse_gamma(const std::string& g) {
    const KLattice& lat = KLattice::get();
    if (g == "B") return lat.B();
    if (g == "F") return lat.F();
    if (g == "W" || g == "B+F") return lat.W();
    if (g == "1" || g == "one") return lat.unit();
    if (g == "p" || g == "pt") return lat.point();
    throw CLI::ValidationError("unknown class name: " + g);
}

json vec_to_json(const FockVec<LocJ<Rat>>& v) {
    json out = json::array();
    for (auto& [s, c] : v) {
        json st = json::array();
        for (auto& [m, cls] : s) st.push_back({m, cls});
        out.push_back({{"state", st}, {"pow", c.pow},
                       {"num", to_json(c.num.restrict_trunc(c.num.trunc()))}});
    }
    return out;
}

int run_verify_cmd(const std::string& level) {
    VerifyConfig cfg;
    if (level == "quick") {
        cfg = {4, 4, -8, 8, 2, false};
    } else if (level == "full") {
        cfg = {6, 6, -12, 12, 2, true};
    } else {
        std::cerr << "verify: level must be quick or full\n";
        return 2;
    }
    auto results = run_verify(cfg);
    bool all = true;
    for (auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
        char buf[32];
        snprintf(buf, sizeof buf, "  (%.2fs)", r.seconds);
        std::cout << buf << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "verify: all identities hold\n" : "verify: MISMATCH\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for the weight-10 cusp form, its inverse, and the "
                 "operator recursion on the Fock space"};
    app.require_subcommand(1);
    auto t0 = Clock::now();

    // ---- forms ----
    auto* forms = app.add_subcommand("forms", "scalar special functions");
    auto* fdump = forms->add_subcommand("dump", "emit a named series as JSON");
    std::string fname, fwin = "-8,8";
    long fqmax = 8;
    fdump->add_option("name", fname)->required();
    fdump->add_option("--qmax", fqmax);
    fdump->add_option("--window", fwin);

    // ---- igusa ----
    auto* igusa = app.add_subcommand("igusa", "cusp form constructions and inverse");
    auto* ichi = igusa->add_subcommand("chi10", "the cusp form on a box");
    long iqmax = 4, iqtmax = 4, idd = 0;
    std::string imethod = "product", iwin = "-8,8";
    ichi->add_option("--qmax", iqmax);
    ichi->add_option("--qtmax", iqtmax);
    ichi->add_option("--method", imethod)->check(CLI::IsMember({"product", "hecke", "lift"}));
    auto* ipsi = igusa->add_subcommand("psi", "windowed inverse coefficient");
    ipsi->add_option("-d", idd)->required();
    ipsi->add_option("--qmax", iqmax);
    ipsi->add_option("--window", iwin);
    auto* isplit = igusa->add_subcommand("split", "psi_d, polar part, finite part");
    isplit->add_option("-d", idd)->required();
    isplit->add_option("--qmax", iqmax);
    isplit->add_option("--window", iwin);

    // ---- fock ----
    auto* fock = app.add_subcommand("fock", "operator recursion");
    auto* fex = fock->add_subcommand("example", "the worked matrix elements");
    std::string which = "i";
    long fd = 1, fqm = 4, fdmax = 2;
    fex->add_option("which", which)->check(CLI::IsMember({"i", "ii", "iii"}));
    fex->add_option("-d", fd);
    fex->add_option("--qmax", fqm);
    auto* ftr = fock->add_subcommand("trace", "trace of E0 per energy level");
    ftr->add_option("--dmax", fdmax);
    ftr->add_option("--qmax", fqm);
    auto* fw = fock->add_subcommand("wdvv", "WDVV residuals on a basis");
    std::string g1 = "B", g2 = "F";
    fw->add_option("-d", fd);
    fw->add_option("--gamma", g1);
    fw->add_option("--gamma2", g2);
    fw->add_option("--qmax", fqm);
    auto* fs = fock->add_subcommand("solve", "order-by-order determination of phi entries");
    std::string keys = "3,0;3,1;3,2;3,3;2,-1";
    long sd = 3;
    fs->add_option("--keys", keys);
    fs->add_option("--qmax", fqm);
    fs->add_option("-d", sd);
    auto* fmat = fock->add_subcommand("matrix", "matrix of E^(r) on an energy level");
    long fr = 0;
    fmat->add_option("-d", fd);
    fmat->add_option("-r", fr);
    fmat->add_option("--qmax", fqm);

    // ---- enum ----
    auto* en = app.add_subcommand("enum", "curve-counting combinators");
    auto* egw = en->add_subcommand("gw", "partition function under y = -exp(iu)");
    long umax = 5, eq = 3, eqt = 3;
    bool conn = false;
    egw->add_option("--umax", umax);
    egw->add_option("--qmax", eq);
    egw->add_option("--qtmax", eqt);
    egw->add_flag("--connected", conn);
    auto* emc = en->add_subcommand("multiple-cover", "imprimitive series from primitive data");
    long mm = 2, mh = 1;
    emc->add_option("-m", mm)->required();
    emc->add_option("--class-square-half", mh)->description("h with <b,b> = 2h-2");
    emc->add_option("--umax", umax);
    emc->add_option("--qmax", eq);
    emc->add_option("--qtmax", eqt);
    auto* ec2 = en->add_subcommand("c2", "descendent reduction from a fixtures file");
    std::string fixtures;
    ec2->add_option("--fixtures", fixtures)->required()->check(CLI::ExistingFile);
    auto* eky = en->add_subcommand("ky", "refined product series");
    long wmax = 6, ymax = 0;
    eky->add_option("--wmax", wmax);
    eky->add_option("--ymax", ymax)->description("clip reported y-powers (0 = no clip)");
    eky->add_option("--qmax", eq);

    // ---- verify / dump ----
    auto* ver = app.add_subcommand("verify", "run the identity suites");
    std::string level = "quick";
    ver->add_option("level", level);
    auto* dump = app.add_subcommand("dump", "generic dump of a registered object");
    std::string obj;
    long dq = 4, dqt = 4, du = 5, ddd = 0;
    std::string dwin = "-8,8";
    dump->add_option("object", obj)->required();
    dump->add_option("--qmax", dq);
    dump->add_option("--qtmax", dqt);
    dump->add_option("--umax", du);
    dump->add_option("-d", ddd);
    dump->add_option("--window", dwin);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fdump->parsed()) {
            auto [a, b] = parse_window(fwin);
            json payload = forms_object(fname, fqmax, a, b);
            return emit("forms dump " + fname,
                        {{"qmax", fqmax}, {"window", {a, b}}}, payload, t0);
        }
        if (ichi->parsed()) {
            Chi10Method m = imethod == "product" ? Chi10Method::product
                          : imethod == "hecke" ? Chi10Method::exp_hecke
                                               : Chi10Method::additive_lift;
            json payload = to_json(chi10(iqmax, iqtmax, m));
            return emit("igusa chi10", {{"qmax", iqmax}, {"qtmax", iqtmax}, {"method", imethod}},
                        payload, t0);
        }
        if (ipsi->parsed()) {
            auto [a, b] = parse_window(iwin);
            PsiFamily fam = inverse_chi10(iqmax, std::max(idd, 0L), a, b);
            json payload = to_json(fam.psi.at(idd));
            return emit("igusa psi", {{"d", idd}, {"qmax", iqmax}, {"window", {a, b}}}, payload,
                        t0);
        }
        if (isplit->parsed()) {
            auto [a, b] = parse_window(iwin);
            PsiFamily fam = inverse_chi10(iqmax, std::max(idd, 0L), a, b);
            WSeries phi = polar_part(idd, iqmax, a, b);
            JSeries H = hilb_H(idd + 1, iqmax, a, b, 6);
            json payload{{"psi", to_json(fam.psi.at(idd))},
                         {"polar", to_json(phi)},
                         {"finite", to_json(H)}};
            return emit("igusa split", {{"d", idd}, {"qmax", iqmax}, {"window", {a, b}}},
                        payload, t0);
        }
        if (fex->parsed()) {
            FockEngine<Rat> eng(fqm, phi_seeds(fqm));
            FockState mu, nu;
            if (which == "i") {
                mu.assign(size_t(fd), {1, 2});
                nu = mu;
            } else if (which == "ii") {
                mu.assign(size_t(fd), {1, 1});
                nu = mu;
            } else {
                mu = {{1, 2}};
                nu = {{1, 2}};
                for (long i = 1; i < fd; ++i) {
                    mu.push_back({1, IDX_PT});
                    nu.push_back({1, IDX_ONE});
                }
                std::sort(mu.begin(), mu.end());
                std::sort(nu.begin(), nu.end());
            }
            LocJ<Rat> val = eng.pair_eval(mu, 0, nu);
            if (which == "iii")
                val = eng.ring().scale(val, factorial_rat(unsigned(fd - 1)).inv());
            json payload{{"pow", val.pow}, {"num", to_json(val.num)}};
            return emit("fock example " + which, {{"d", fd}, {"qmax", fqm}}, payload, t0);
        }
        if (ftr->parsed()) {
            FockEngine<Rat> eng(fqm, phi_seeds(fqm));
            json payload = json::array();
            for (long d = 0; d <= fdmax; ++d) {
                LocJ<Rat> tr = eng.trace_e0(d);
                payload.push_back({{"energy", d}, {"pow", tr.pow}, {"num", to_json(tr.num)}});
            }
            return emit("fock trace", {{"dmax", fdmax}, {"qmax", fqm}}, payload, t0);
        }
        if (fw->parsed()) {
            FockEngine<Rat> eng(fqm, phi_seeds(fqm));
            KClass c1 = parse_gamma(g1), c2 = parse_gamma(g2);
            bool zero = true;
            long states = 0;
            for (const FockState& s : fock_basis(fd)) {
                ++states;
                if (!eng.vec_is_zero(eng.wdvv_residual_1(c1, c2, s)) ||
                    !eng.vec_is_zero(eng.wdvv_residual_2(c1, s)))
                    zero = false;
            }
            json payload{{"states", states}, {"residuals_vanish", zero}};
            std::cerr << (zero ? "wdvv: residuals vanish\n" : "wdvv: NONZERO residual\n");
            int rc = emit("fock wdvv", {{"d", fd}, {"gamma", g1}, {"gamma2", g2}, {"qmax", fqm}},
                          payload, t0);
            return zero ? rc : 1;
        }
        if (fs->parsed()) {
            std::vector<std::pair<long, long>> targets;
            std::stringstream ss(keys);
            std::string tok;
            while (std::getline(ss, tok, ';')) {
                auto pos = tok.find(',');
                targets.push_back({std::stol(tok.substr(0, pos)), std::stol(tok.substr(pos + 1))});
            }
            PhiTable<Rat> base = phi_seeds(fqm);
            PhiSolveReport rep = phi_solve(targets, fqm, base, sd);
            json payload{{"success", rep.success}, {"message", rep.message}};
            if (rep.success) {
                json tab = json::array();
                for (auto& [m, l] : targets) {
                    auto k = phi_canonical_key(m, l);
                    tab.push_back({{"m", k.first}, {"l", k.second},
                                   {"series", to_json(rep.table.get(k.first, k.second))}});
                }
                payload["solved"] = tab;
            }
            int rc = emit("fock solve", {{"keys", keys}, {"qmax", fqm}, {"d", sd}}, payload, t0);
            return rep.success ? rc : 1;
        }
        if (fmat->parsed()) {
            FockEngine<Rat> eng(fqm, phi_seeds(fqm));
            json payload = json::array();
            for (const FockState& s : fock_basis(fd)) {
                json col{{"state", json::array()}, {"image", vec_to_json(eng.e_apply(fr, s))}};
                for (auto& [m, cls] : s) col["state"].push_back({m, cls});
                payload.push_back(col);
            }
            return emit("fock matrix", {{"d", fd}, {"r", fr}, {"qmax", fqm}}, payload, t0);
        }
        if (egw->parsed()) {
            GWSeries N = gw_disconnected(umax, eq, eqt);
            if (conn) N = connect(N);
            json payload = to_json(N.s);
            payload = json{{"connected", N.connected}, {"series", payload}};
            return emit("enum gw", {{"umax", umax}, {"qmax", eq}, {"qtmax", eqt},
                                    {"connected", conn}}, payload, t0);
        }
        if (emc->parsed()) {
            GWSeries N = connect(gw_disconnected(umax, eq, eqt));
            long hneed = (mm) * (mm) * (mh - 1) + 1;
            PrimitiveTable tab = primitive_table(N, std::max(hneed, mh) + 1);
            auto res = multiple_cover_series(mm, mh, tab);
            return emit("enum multiple-cover", {{"m", mm}, {"h", mh}, {"umax", umax},
                                                {"qmax", eq}, {"qtmax", eqt}},
                        to_json(res), t0);
        }
        if (ec2->parsed()) {
            std::ifstream in(fixtures);
            json fx = json::parse(in);
            std::map<long, Rat> prim;
            for (auto& [k, v] : fx.at("primitive").items())
                prim[std::stol(k)] = Rat::parse(v.get<std::string>());
            std::vector<long> deltas = fx.at("deltas").get<std::vector<long>>();
            Rat val = descendent_reduction(fx.at("m").get<long>(), fx.at("h").get<long>(),
                                    fx.at("g").get<long>(), deltas, prim);
            json payload{{"value", val.str()}};
            return emit("enum c2", {{"fixtures", fixtures}}, payload, t0);
        }
        if (eky->parsed()) {
            KYSeries f = kawai_yoshioka(wmax, ymax > 0 ? ymax : 8, eq);
            json payload{{"region", "|wy| < 1, |y| < |w|: prefactor sum w^{i-k} y^{i+k+1}"},
                         {"series", to_json(f)}};
            return emit("enum ky", {{"wmax", wmax}, {"ymax", ymax}, {"qmax", eq}}, payload, t0);
        }
        if (ver->parsed()) return run_verify_cmd(level);
        if (dump->parsed()) {
            auto [a, b] = parse_window(dwin);
            json payload;
            if (obj == "chi10") payload = to_json(chi10(dq, dqt, Chi10Method::product));
            else if (obj == "psi") payload = to_json(inverse_chi10(dq, std::max(ddd, 0L), a, b).psi.at(ddd));
            else if (obj == "H") payload = to_json(hilb_H(ddd, dq, a, b, 6));
            else if (obj == "phi-table") {
                payload = json::array();
                for (auto& [k, s] : phi_seeds(dq).entries())
                    payload.push_back({{"m", k.first}, {"l", k.second}, {"series", to_json(s)}});
            } else if (obj == "gw") {
                payload = to_json(gw_disconnected(du, dq, dqt).s);
            } else if (obj == "ky") {
                payload = to_json(kawai_yoshioka(du, 8, dq));
            } else {
                std::cerr << "dump: unknown object " << obj << "\n";
                return 2;
            }
            return emit("dump " + obj, {{"qmax", dq}, {"qtmax", dqt}, {"umax", du}, {"d", ddd},
                                        {"window", {a, b}}}, payload, t0);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help() << "\n";
    return 2;
}
