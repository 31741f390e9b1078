#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "valcone/baryalg.hpp"
#include "valcone/convex.hpp"
#include "valcone/finspace.hpp"
#include "valcone/free_cone.hpp"
#include "valcone/smyth.hpp"
#include "valcone/valuation.hpp"

namespace valcone {

using nlohmann::json;

/// {"elements": [...], "leq": [["a","b"], ...]} (covering or full relation)
SpacePtr space_from_json(const json& j);
json space_to_json(const FinPoset& space);

/// {"space": {...}?, "masses": {"a": "1/2", ...}}
SimpleValuation valuation_from_json(const json& j, SpacePtr default_space = nullptr);
json valuation_to_json(const SimpleValuation& nu);

/// Instance descriptors: {"kind": "semilattice"|"rational_convex"|"kp"|
/// "bminus"|"valuations", ...}
InstancePtr instance_from_json(const json& j);

/// List of opens, each an array of point names (validated upsets).
std::vector<Mask> opens_from_json(const FinPoset& space, const json& j);
json open_to_json(const FinPoset& space, Mask members);

/// Carrier subsets of an instance, as element arrays.
Mask carrier_set_from_json(const AlgebraInstance& inst, const json& j);
json carrier_set_to_json(const AlgebraInstance& inst, Mask members);

/// {"values": {"a": "1/2", ...}} per carrier element (finite instances).
CarrierMap carrier_map_from_json(const AlgebraInstance& inst, const json& j);
RatMap rat_map_from_json(const AlgebraInstance& inst, const json& j);

/// Weighted element lists: [{"a": "1/3", "x": <elem>}, ...]
Weighted weighted_from_json(const AlgebraInstance& inst, const json& j);

/// {"zero": true} | {"r": "3/4", "x": <elem>}
ConifyElem conify_from_json(const AlgebraInstance& inst, const json& j);
json conify_to_json(const AlgebraInstance& inst, const ConifyElem& u);

/// {"n": 2, "x": <elem>}
TelescopeElem telescope_from_json(const AlgebraInstance& inst, const json& j);
json telescope_to_json(const AlgebraInstance& inst, const TelescopeElem& u);

json transport_to_json(const FinPoset& space, const TransportMatrix& t);
json report_to_json(const Report& rep);

/// Full table over all upsets: [{"set": [...], "value": "1/2"}, ...]
std::map<Mask, Rat> table_from_json(const FinPoset& space, const json& j);

}  // namespace valcone
