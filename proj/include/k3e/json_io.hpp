#pragma once

// Canonical JSON series format:
//   {"var": "q", "val": -1, "trunc": 6,
//    "coeffs": [[exponent, {"t_poly": [[t_exp, "num/den"], ...]}], ...]}
// All integers are decimal strings inside coefficient payloads. Windowed
// coefficients add "window": [lo, hi]; nested series appear as
// {"series": {...}}. Keys are emitted in a fixed order so equal values
// serialize byte-identically.

#include <json.hpp>

#include "k3e/enumerative.hpp"
#include "k3e/fock.hpp"
#include "k3e/igusa.hpp"

namespace k3e {

using json = nlohmann::ordered_json;

json to_json(const Rat& x);
json to_json(const HalfLaurent& p);
json to_json(const WindowPoly& w);
json to_json(const QSeries& s);
json to_json(const JSeries& s);
json to_json(const WSeries& s);
json to_json(const SiegelSeries& s);  // also covers the refined product series
json to_json(const TruncSeries<TruncSeries<Rat>>& s);     // bivariate
json to_json(const TruncSeries<BivarQQt>& s);             // trivariate (gw)

// parse back (exact round trip for the flat formats)
QSeries qseries_from_json(const json& j);
JSeries jseries_from_json(const json& j);
WSeries wseries_from_json(const json& j);

// run manifest: subcommand, numeric limits, engine version, wall time and
// an exact digest of the payload (FNV-1a over the compact serialization)
json make_manifest(const std::string& subcommand, const json& limits, const json& payload,
                   double wall_ms);

std::string payload_digest(const json& payload);

extern const char* const ENGINE_VERSION;

}  // namespace k3e
