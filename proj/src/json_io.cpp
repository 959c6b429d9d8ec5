#include "k3e/json_io.hpp"

namespace k3e {

const char* const ENGINE_VERSION = "1.0.0";

json to_json(const Rat& x) { return x.str(); }

json to_json(const HalfLaurent& p) {
    json t = json::array();
    for (auto& [e, v] : p.coeffs()) t.push_back({e, v.str()});
    return json{{"t_poly", t}};
}

json to_json(const WindowPoly& w) {
    json t = json::array();
    for (long e = w.lo(); e <= w.hi(); ++e) {
        Rat v = w.at(e);
        if (!v.is_zero()) t.push_back({e, v.str()});
    }
    json out{{"t_poly", t}};
    out["window"] = {w.lo(), w.hi()};
    out["exact"] = w.is_exact();
    return out;
}

namespace {

template <class R, class Fn>
json series_json(const TruncSeries<R>& s, Fn&& coeff_fn) {
    json coeffs = json::array();
    long hi = std::min(s.trunc(), s.stored_end());
    for (long e = s.val(); e < hi; ++e) {
        const R& c = s.at(e);
        if (RingTraits<R>::is_zero(c)) continue;
        coeffs.push_back({e, coeff_fn(c)});
    }
    return json{{"var", var_name(s.var())},
                {"val", s.val()},
                {"trunc", s.trunc() >= TRUNC_INF ? json(nullptr) : json(s.trunc())},
                {"coeffs", coeffs}};
}

}  // namespace

json to_json(const QSeries& s) {
    return series_json(s, [](const Rat& c) {
        return json{{"t_poly", json::array({json::array({0, c.str()})})}};
    });
}

json to_json(const JSeries& s) {
    return series_json(s, [](const HalfLaurent& c) { return to_json(c); });
}

json to_json(const WSeries& s) {
    return series_json(s, [](const WindowPoly& c) { return to_json(c); });
}

json to_json(const SiegelSeries& s) {
    return series_json(s, [](const JSeries& c) { return json{{"series", to_json(c)}}; });
}

json to_json(const TruncSeries<TruncSeries<Rat>>& s) {
    return series_json(s, [](const TruncSeries<Rat>& c) { return json{{"series", to_json(c)}}; });
}

json to_json(const TruncSeries<BivarQQt>& s) {
    return series_json(s, [](const BivarQQt& c) { return json{{"series", to_json(c)}}; });
}

namespace {

Var var_from_name(const std::string& n) {
    for (Var v : {Var::q, Var::qt, Var::u, Var::w, Var::y, Var::t})
        if (n == var_name(v)) return v;
    throw std::invalid_argument("unknown variable tag: " + n);
}

HalfLaurent tpoly_from_json(const json& j) {
    HalfLaurent p;
    for (auto& pair : j.at("t_poly"))
        p = p + HalfLaurent::term(pair.at(0).get<long>(),
                                  Rat::parse(pair.at(1).get<std::string>()));
    return p;
}

}  // namespace

QSeries qseries_from_json(const json& j) {
    QSeries s(var_from_name(j.at("var").get<std::string>()), j.at("val").get<long>(),
              j.at("trunc").get<long>());
    for (auto& pair : j.at("coeffs")) {
        HalfLaurent p = tpoly_from_json(pair.at(1));
        if (p.ring_is_zero()) continue;
        if (p.min_exp() != 0 || p.max_exp() != 0)
            throw std::invalid_argument("qseries_from_json: t-dependence present");
        s.set(pair.at(0).get<long>(), p.at(0));
    }
    return s;
}

JSeries jseries_from_json(const json& j) {
    JSeries s(var_from_name(j.at("var").get<std::string>()), j.at("val").get<long>(),
              j.at("trunc").get<long>());
    for (auto& pair : j.at("coeffs"))
        s.set(pair.at(0).get<long>(), tpoly_from_json(pair.at(1)));
    return s;
}

WSeries wseries_from_json(const json& j) {
    WSeries s(var_from_name(j.at("var").get<std::string>()), j.at("val").get<long>(),
              j.at("trunc").get<long>());
    for (auto& pair : j.at("coeffs")) {
        const json& cj = pair.at(1);
        long lo = cj.at("window").at(0).get<long>();
        long hi = cj.at("window").at(1).get<long>();
        bool exact = cj.at("exact").get<bool>();
        if (exact) {
            s.set(pair.at(0).get<long>(), WindowPoly::exact(tpoly_from_json(cj)));
        } else {
            WindowPoly w = WindowPoly::windowed(lo, hi);
            for (auto& t : cj.at("t_poly"))
                w.set(t.at(0).get<long>(), Rat::parse(t.at(1).get<std::string>()));
            s.set(pair.at(0).get<long>(), w);
        }
    }
    return s;
}

std::string payload_digest(const json& payload) {
    std::string dump = payload.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf);
}

json make_manifest(const std::string& subcommand, const json& limits, const json& payload,
                   double wall_ms) {
    return json{{"tool", "k3e"},
                {"version", ENGINE_VERSION},
                {"subcommand", subcommand},
                {"limits", limits},
                {"wall_ms", wall_ms},
                {"digest", payload_digest(payload)}};
}

}  // namespace k3e
