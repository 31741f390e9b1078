#include "valcone/json_io.hpp"

namespace valcone {

namespace {
void expect(bool cond, const std::string& msg) {
  if (!cond) throw domain_error(msg);
}
}  // namespace

SpacePtr space_from_json(const json& j) {
  expect(j.is_object() && j.contains("elements"), "space needs an \"elements\" array");
  std::vector<std::string> elems;
  for (const auto& e : j.at("elements")) elems.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("leq"))
    for (const auto& p : j.at("leq")) {
      expect(p.is_array() && p.size() == 2, "leq entries are pairs");
      pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  return std::make_shared<FinPoset>(std::move(elems), pairs);
}

json space_to_json(const FinPoset& space) {
  json elems = json::array();
  for (const auto& n : space.names()) elems.push_back(n);
  json leq = json::array();
  for (std::size_t a = 0; a < space.size(); ++a)
    for (std::size_t b = 0; b < space.size(); ++b)
      if (a != b && space.leq(static_cast<int>(a), static_cast<int>(b)))
        leq.push_back(json::array({space.name(static_cast<int>(a)),
                                   space.name(static_cast<int>(b))}));
  return json{{"elements", elems}, {"leq", leq}};
}

SimpleValuation valuation_from_json(const json& j, SpacePtr default_space) {
  expect(j.is_object() && j.contains("masses"), "valuation needs a \"masses\" object");
  SpacePtr space = default_space;
  if (j.contains("space")) space = space_from_json(j.at("space"));
  expect(space != nullptr, "valuation needs a space (inline or from context)");
  std::vector<std::pair<std::string, Rat>> masses;
  for (const auto& [name, val] : j.at("masses").items())
    masses.emplace_back(name, Rat::parse(val.get<std::string>()));
  return SimpleValuation(space, masses);
}

json valuation_to_json(const SimpleValuation& nu) {
  json masses = json::object();
  for (const auto& [p, r] : nu.masses()) masses[nu.space()->name(p)] = r.str();
  return json{{"masses", masses}};
}

InstancePtr instance_from_json(const json& j) {
  expect(j.is_object() && j.contains("kind"), "instance needs a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "semilattice") {
    SpacePtr poset;
    if (j.contains("join")) {
      // explicit join table over the element list; order derived from it
      std::vector<std::string> elems;
      for (const auto& e : j.at("elements")) elems.push_back(e.get<std::string>());
      const auto& tab = j.at("join");
      expect(tab.is_array() && tab.size() == elems.size(), "join table shape mismatch");
      std::vector<std::pair<std::string, std::string>> pairs;
      for (std::size_t a = 0; a < elems.size(); ++a) {
        expect(tab[a].is_array() && tab[a].size() == elems.size(), "join table shape mismatch");
        for (std::size_t b = 0; b < elems.size(); ++b) {
          std::string ab = tab[a][b].get<std::string>();
          if (ab == elems[b]) pairs.emplace_back(elems[a], elems[b]);  // a v b = b means a <= b
        }
      }
      poset = std::make_shared<FinPoset>(elems, pairs);
    } else {
      poset = space_from_json(j);
    }
    return std::make_shared<SemilatticeInstance>(poset);
  }
  if (kind == "rational_convex")
    return std::make_shared<RationalConvexInstance>(j.at("dim").get<std::size_t>());
  if (kind == "kp") return std::make_shared<KpInstance>();
  if (kind == "bminus") return std::make_shared<BMinusInstance>();
  if (kind == "valuations") {
    std::string mode = j.value("mode", "prob");
    expect(mode == "prob" || mode == "subprob", "valuation mode must be prob or subprob");
    return std::make_shared<ValuationAlgebraInstance>(
        space_from_json(j.at("space")),
        mode == "prob" ? ValuationMode::Prob : ValuationMode::SubProb);
  }
  throw domain_error("unknown instance kind '" + kind + "'");
}

std::vector<Mask> opens_from_json(const FinPoset& space, const json& j) {
  expect(j.is_array(), "opens must be an array of point-name arrays");
  std::vector<Mask> out;
  for (const auto& entry : j) {
    Mask m = 0;
    for (const auto& name : entry) m |= Mask(1) << space.index(name.get<std::string>());
    expect(space.is_upset(m), "a listed open is not upward-closed");
    out.push_back(m);
  }
  return out;
}

json open_to_json(const FinPoset& space, Mask members) {
  json arr = json::array();
  for (int p : mask_points(members)) arr.push_back(space.name(p));
  return arr;
}

Mask carrier_set_from_json(const AlgebraInstance& inst, const json& j) {
  expect(j.is_array(), "carrier set must be an element array");
  Mask m = 0;
  for (const auto& e : j) m |= Mask(1) << inst.carrier_index(inst.elem_from_json(e));
  return m;
}

json carrier_set_to_json(const AlgebraInstance& inst, Mask members) {
  json arr = json::array();
  for (int i : mask_points(members))
    arr.push_back(inst.elem_to_json(inst.carrier()[static_cast<std::size_t>(i)]));
  return arr;
}

CarrierMap carrier_map_from_json(const AlgebraInstance& inst, const json& j) {
  expect(j.is_object() && j.contains("values"), "map needs a \"values\" object");
  const auto& C = inst.carrier();
  CarrierMap out(C.size());
  std::vector<bool> have(C.size(), false);
  for (const auto& [name, val] : j.at("values").items()) {
    auto i = static_cast<std::size_t>(inst.carrier_index(inst.elem_from_json(json(name))));
    out[i] = XRat::parse(val.get<std::string>());
    have[i] = true;
  }
  for (std::size_t i = 0; i < C.size(); ++i)
    expect(have[i], "map is missing a value for " + elem_str(C[i]));
  return out;
}

RatMap rat_map_from_json(const AlgebraInstance& inst, const json& j) {
  CarrierMap xm = carrier_map_from_json(inst, j);
  RatMap out;
  for (const auto& v : xm) out.push_back(v.finite());
  return out;
}

Weighted weighted_from_json(const AlgebraInstance& inst, const json& j) {
  expect(j.is_array(), "weighted list must be an array of {a, x}");
  Weighted out;
  for (const auto& entry : j) {
    expect(entry.is_object() && entry.contains("a") && entry.contains("x"),
           "weighted entries are {\"a\": ..., \"x\": ...}");
    out.emplace_back(Rat::parse(entry.at("a").get<std::string>()),
                     inst.elem_from_json(entry.at("x")));
  }
  return out;
}

ConifyElem conify_from_json(const AlgebraInstance& inst, const json& j) {
  expect(j.is_object(), "cone element must be an object");
  if (j.value("zero", false)) return ConifyElem::make_zero();
  expect(j.contains("r") && j.contains("x"), "cone element needs r and x");
  return ConifyElem::pair(Rat::parse(j.at("r").get<std::string>()),
                          inst.elem_from_json(j.at("x")));
}

json conify_to_json(const AlgebraInstance& inst, const ConifyElem& u) {
  if (u.zero) return json{{"zero", true}};
  return json{{"r", u.r.str()}, {"x", inst.elem_to_json(u.x)}};
}

TelescopeElem telescope_from_json(const AlgebraInstance& inst, const json& j) {
  expect(j.is_object() && j.contains("n") && j.contains("x"),
         "telescope element needs n and x");
  return TelescopeElem{j.at("n").get<int>(), inst.elem_from_json(j.at("x"))};
}

json telescope_to_json(const AlgebraInstance& inst, const TelescopeElem& u) {
  return json{{"n", u.n}, {"x", inst.elem_to_json(u.x)}};
}

json transport_to_json(const FinPoset& space, const TransportMatrix& t) {
  json entries = json::array();
  for (const auto& [pc, r] : t.entries)
    entries.push_back(json{{"from", space.name(pc.first)},
                           {"to", space.name(pc.second)},
                           {"mass", r.str()}});
  return json{{"entries", entries}};
}

json report_to_json(const Report& rep) {
  json v = json::array();
  for (const auto& viol : rep.violations)
    v.push_back(json{{"law", viol.law}, {"witness", viol.witness}});
  return json{{"pass", rep.pass}, {"violations", v}, {"cases", rep.cases_checked}};
}

std::map<Mask, Rat> table_from_json(const FinPoset& space, const json& j) {
  expect(j.is_array(), "table must be an array of {set, value}");
  std::map<Mask, Rat> out;
  for (const auto& entry : j) {
    Mask m = 0;
    for (const auto& name : entry.at("set")) m |= Mask(1) << space.index(name.get<std::string>());
    out[m] = Rat::parse(entry.at("value").get<std::string>());
  }
  return out;
}

}  // namespace valcone
