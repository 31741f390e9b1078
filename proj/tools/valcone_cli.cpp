// Command-line front end: parse instance/valuation JSON, dispatch the
// library operations, emit JSON results on stdout.
//
// Exit codes: 0 success, 1 domain error ({"error": ...} on stdout),
// 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "valcone/convex.hpp"
#include "valcone/free_cone.hpp"
#include "valcone/json_io.hpp"
#include "valcone/smyth.hpp"

namespace {

using namespace valcone;
using nlohmann::json;

bool g_decimal = false;

// Values may be given inline (starting with '{' or '[') or as file paths.
json load(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[' || arg[0] == '"')) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw domain_error("cannot open '" + arg + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return json::parse(buf.str());
}

void attach_approx(json& obj, const char* key, double v) {
  if (g_decimal) obj[std::string(key) + "_approx_nonauthoritative"] = v;
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

struct SpaceArgs {
  std::string space, mu, nu, pi, opens;
};

SpacePtr the_space(const SpaceArgs& a) { return space_from_json(load(a.space)); }

// ---------------------------------------------------------------------------

int run_order(const SpaceArgs& a, const std::string& op, const std::string& map_arg,
              const std::string& table_arg, const std::string& points_arg) {
  auto sp = the_space(a);
  if (op == "le") {
    auto mu = valuation_from_json(load(a.mu), sp);
    auto nu = valuation_from_json(load(a.nu), sp);
    auto res = stochastic_le(mu, nu);
    json out{{"related", res.related}};
    out["transport"] = res.witness ? transport_to_json(*sp, *res.witness) : json(nullptr);
    emit(out);
    return 0;
  }
  if (op == "eval") {
    auto mu = valuation_from_json(load(a.mu), sp);
    Mask m = 0;
    for (const auto& n : load(points_arg)) m |= Mask(1) << sp->index(n.get<std::string>());
    Rat v = mu.eval(OpenSet(sp, m));
    json out{{"value", v.str()}};
    attach_approx(out, "value", v.approx());
    emit(out);
    return 0;
  }
  if (op == "integrate") {
    auto mu = valuation_from_json(load(a.mu), sp);
    json mj = load(map_arg);
    std::map<int, XRat> h;
    for (const auto& [name, val] : mj.at("values").items())
      h[sp->index(name)] = XRat::parse(val.get<std::string>());
    for (std::size_t i = 0; i < sp->size(); ++i)
      if (!h.count(static_cast<int>(i)))
        throw domain_error("map is missing " + sp->name(static_cast<int>(i)));
    XRat v = mu.integrate([&](int p) { return h.at(p); });
    emit(json{{"value", v.str()}});
    return 0;
  }
  if (op == "constrict") {
    auto mu = valuation_from_json(load(a.mu), sp);
    Mask m = 0;
    for (const auto& n : load(points_arg)) m |= Mask(1) << sp->index(n.get<std::string>());
    emit(json{{"valuation", valuation_to_json(constrict(mu, m))}});
    return 0;
  }
  if (op == "masses-from-table") {
    auto table = table_from_json(*sp, load(table_arg));
    emit(json{{"valuation", valuation_to_json(masses_from_table(sp, table))}});
    return 0;
  }
  if (op == "image") {
    // map: {"target": <space>, "points": {"a": "x", ...}}
    auto mu = valuation_from_json(load(a.mu), sp);
    json mj = load(map_arg);
    auto target = space_from_json(mj.at("target"));
    std::vector<int> f(sp->size(), -1);
    for (const auto& [from, to] : mj.at("points").items())
      f[static_cast<std::size_t>(sp->index(from))] = target->index(to.get<std::string>());
    for (std::size_t i = 0; i < sp->size(); ++i)
      if (f[i] < 0) throw domain_error("point map is missing " + sp->name(static_cast<int>(i)));
    emit(json{{"valuation", valuation_to_json(image_valuation(mu, target, f))}});
    return 0;
  }
  if (op == "edalat-sub") {
    auto mu = valuation_from_json(load(a.mu), sp);
    auto sub = sp->without_least();
    auto res = edalat_to_sub(mu, sub);
    emit(json{{"space", space_to_json(*sub)}, {"valuation", valuation_to_json(res)}});
    return 0;
  }
  if (op == "edalat-prob") {
    // mu lives on an inline subspace; the pointed target is --space
    auto subj = load(a.mu);
    auto sub = space_from_json(subj.at("space"));
    auto muv = valuation_from_json(subj, sub);
    emit(json{{"valuation", valuation_to_json(edalat_to_prob(muv, sp))}});
    return 0;
  }
  throw domain_error("unknown order op '" + op + "'");
}

int run_split(const SpaceArgs& a) {
  auto sp = the_space(a);
  auto mu = valuation_from_json(load(a.mu), sp);
  auto nu = valuation_from_json(load(a.nu), sp);
  auto lat = generate_lattice(*sp, opens_from_json(*sp, load(a.opens)));
  auto [n1, n2] = schroder_simpson_split(mu, nu, lat);
  emit(json{{"nu1", valuation_to_json(n1)}, {"nu2", valuation_to_json(n2)}});
  return 0;
}

int run_split2(const SpaceArgs& a) {
  auto sp = the_space(a);
  auto mu = valuation_from_json(load(a.mu), sp);
  auto nu = valuation_from_json(load(a.nu), sp);
  auto pi = valuation_from_json(load(a.pi), sp);
  auto lat = generate_lattice(*sp, opens_from_json(*sp, load(a.opens)));
  auto [m1, n1] = second_split(mu, nu, pi, lat);
  emit(json{{"mu1", valuation_to_json(m1)}, {"nu1", valuation_to_json(n1)}});
  return 0;
}

int run_witness(const SpaceArgs& a, const std::string& a_coef, const std::string& c_coef) {
  auto sp = the_space(a);
  auto mu = valuation_from_json(load(a.mu), sp);
  auto nu = valuation_from_json(load(a.nu), sp);
  auto pi = valuation_from_json(load(a.pi), sp);
  auto lat = generate_lattice(*sp, opens_from_json(*sp, load(a.opens)));
  auto [mw, nw] = consistency_witness(mu, nu, pi, UnitRat(Rat::parse(a_coef)),
                                      UnitRat(Rat::parse(c_coef)), lat);
  emit(json{{"mu_w", valuation_to_json(mw)}, {"nu_w", valuation_to_json(nw)}});
  return 0;
}

int run_barycenter(const std::string& inst_arg, const std::string& weights,
                   const std::string& scalar_coef, const std::string& x_arg, bool sub) {
  auto inst = instance_from_json(load(inst_arg));
  if (!scalar_coef.empty()) {
    Elem x = inst->elem_from_json(load(x_arg));
    Elem r = scalar(*inst, UnitRat(Rat::parse(scalar_coef)), x);
    emit(json{{"point", inst->elem_to_json(r)}});
    return 0;
  }
  Weighted ws = weighted_from_json(*inst, load(weights));
  Elem r = sub ? barycenter_sub(*inst, ws) : barycenter(*inst, ws);
  emit(json{{"point", inst->elem_to_json(r)}});
  return 0;
}

int run_choquet_verify(const std::string& inst_arg, const std::string& weights,
                       const std::string& point) {
  auto inst = instance_from_json(load(inst_arg));
  Weighted ws = weighted_from_json(*inst, load(weights));
  Elem x0 = inst->elem_from_json(load(point));
  emit(json{{"barycenter", verify_barycenter_choquet(*inst, ws, x0)}});
  return 0;
}

int run_conify(const std::string& inst_arg, const std::string& op, const std::string& u_arg,
               const std::string& v_arg, const std::string& a_arg, const std::string& map_arg) {
  auto inst = instance_from_json(load(inst_arg));
  auto u = [&] { return conify_from_json(*inst, load(u_arg)); };
  auto v = [&] { return conify_from_json(*inst, load(v_arg)); };
  if (op == "add") {
    emit(json{{"result", conify_to_json(*inst, conify_add(*inst, u(), v()))}});
  } else if (op == "smul") {
    emit(json{{"result", conify_to_json(*inst, conify_smul(*inst, Rat::parse(a_arg), u()))}});
  } else if (op == "le") {
    emit(json{{"le", conify_le(*inst, u(), v())}});
  } else if (op == "level") {
    Rat l = level(u());
    json out{{"level", l.str()}};
    attach_approx(out, "level", l.approx());
    emit(out);
  } else if (op == "member1") {
    emit(json{{"member", conify_le1_member(u())}});
  } else if (op == "mix1") {
    emit(json{{"result", conify_to_json(*inst, conify_le1_mix(*inst, u(),
                                                              UnitRat(Rat::parse(a_arg)), v()))}});
  } else if (op == "minkowski") {
    auto h = carrier_map_from_json(*inst, load(map_arg));
    emit(json{{"value", minkowski_of_semiconcave(*inst, h, u()).str()}});
  } else if (op == "extend") {
    // finite map into the extended half-line cone; f^cext(u) = r f(x)
    auto h = carrier_map_from_json(*inst, load(map_arg));
    auto f = [&](const Elem& x) {
      return h[static_cast<std::size_t>(inst->carrier_index(x))];
    };
    emit(json{{"value", conify_extend<XRat>(xrat_cone(), f, u()).str()}});
  } else {
    throw domain_error("unknown conify op '" + op + "'");
  }
  return 0;
}

int run_telescope(const std::string& inst_arg, const std::string& op, const std::string& alpha,
                  const std::string& u_arg, const std::string& v_arg, const std::string& a_arg,
                  const std::string& map_arg) {
  auto inst = instance_from_json(load(inst_arg));
  TeleParams tp{UnitRat(Rat::parse(alpha))};
  auto parse_tele = [&](const std::string& arg) {
    json j = load(arg);
    if (j.contains("alpha") &&
        Rat::parse(j.at("alpha").get<std::string>()) != tp.alpha.value())
      throw domain_error("telescope element alpha differs from --alpha");
    return telescope_from_json(*inst, j);
  };
  auto render = [&](const TelescopeElem& t) {
    json j = telescope_to_json(*inst, t);
    j["alpha"] = tp.alpha.value().str();
    return j;
  };
  auto u = [&] { return parse_tele(u_arg); };
  auto v = [&] { return parse_tele(v_arg); };
  if (op == "equiv") {
    auto uu = u(), vv = v();
    emit(json{{"equiv", tele_equiv(*inst, tp, uu.n, uu.x, vv.n, vv.x)}});
  } else if (op == "canon") {
    auto uu = u();
    emit(json{{"result", render(tele_canonicalize(*inst, tp, uu.n, uu.x))}});
  } else if (op == "mix") {
    emit(json{{"result", render(tele_mix(*inst, tp, u(), UnitRat(Rat::parse(a_arg)), v()))}});
  } else if (op == "smul") {
    emit(json{{"result", render(tele_smul(*inst, tp, Rat::parse(a_arg), u()))}});
  } else if (op == "le") {
    emit(json{{"le", tele_le(*inst, tp, u(), v())}});
  } else if (op == "extend") {
    auto h = carrier_map_from_json(*inst, load(map_arg));
    auto f = [&](const Elem& x) {
      return h[static_cast<std::size_t>(inst->carrier_index(x))];
    };
    auto ext = tele_extend<XRat>(*inst, tp, xrat_cone(), f, inst->check_elems());
    emit(json{{"value", ext(u()).str()}});
  } else {
    throw domain_error("unknown telescope op '" + op + "'");
  }
  return 0;
}

int run_axioms(const std::string& inst_arg, bool entropic, bool pointed) {
  auto inst = instance_from_json(load(inst_arg));
  auto schedule = CheckSchedule::standard(*inst);
  Report rep;
  if (pointed)
    rep = check_pointed_laws(*inst, schedule);
  else if (entropic)
    rep = check_entropic(*inst, schedule);
  else
    rep = check_axioms(*inst, schedule);
  emit(report_to_json(rep));
  return 0;
}

int run_sandwich(const std::string& inst_arg, const std::string& op, const std::string& q_arg,
                 const std::string& p_arg, const std::string& set_arg,
                 const std::string& set2_arg, const std::string& a_arg,
                 const std::string& map_arg) {
  auto inst = instance_from_json(load(inst_arg));
  if (op == "sandwich") {
    auto q = rat_map_from_json(*inst, load(q_arg));
    auto p = rat_map_from_json(*inst, load(p_arg));
    auto h = sandwich(*inst, q, p);
    if (!h) {
      emit(json{{"feasible", false}});
      return 0;
    }
    json values = json::object();
    for (std::size_t i = 0; i < h->size(); ++i)
      values[elem_str(inst->carrier()[i])] = (*h)[i].str();
    emit(json{{"feasible", true}, {"h", json{{"values", values}}}});
    return 0;
  }
  if (op == "separated") {
    auto res = is_linearly_separated(*inst);
    json out{{"separated", res.separated}};
    if (res.counterexample)
      out["counterexample"] = json::array({inst->elem_to_json(res.counterexample->first),
                                           inst->elem_to_json(res.counterexample->second)});
    emit(out);
    return 0;
  }
  if (op == "semiconcave") {
    auto h = carrier_map_from_json(*inst, load(map_arg));
    emit(json{{"semiconcave", is_semiconcave(*inst, h)}});
    return 0;
  }
  if (op == "conv" || op == "upconv" || op == "closed-conv") {
    std::vector<Elem> pts;
    for (const auto& e : load(set_arg)) pts.push_back(inst->elem_from_json(e));
    ConvexSet s = op == "conv" ? conv(*inst, pts)
               : op == "upconv" ? upconv(*inst, pts)
                                : closed_conv(*inst, pts);
    json arr = json::array();
    for (int i : s.members)
      arr.push_back(inst->elem_to_json(inst->carrier()[static_cast<std::size_t>(i)]));
    emit(json{{"members", arr}});
    return 0;
  }
  if (op == "member") {
    // rational-convex hull membership by exact LP
    const auto* rc = dynamic_cast<const RationalConvexInstance*>(inst.get());
    if (!rc) throw domain_error("hull membership needs a rational_convex instance");
    std::vector<Vec> gens;
    for (const auto& e : load(set_arg)) gens.push_back(std::get<Vec>(rc->elem_from_json(e)));
    Vec pt = std::get<Vec>(rc->elem_from_json(load(set2_arg)));
    emit(json{{"member", conv_contains(*rc, gens, pt)}});
    return 0;
  }
  if (op == "convex" || op == "halfspace") {
    std::vector<int> members;
    for (const auto& e : load(set_arg))
      members.push_back(inst->carrier_index(inst->elem_from_json(e)));
    bool res = op == "convex" ? is_convex(*inst, members) : is_halfspace(*inst, members);
    emit(json{{op, res}});
    return 0;
  }
  if (op == "consistency") {
    Mask u = carrier_set_from_json(*inst, load(set_arg));
    Mask v = carrier_set_from_json(*inst, load(set2_arg));
    auto res = check_strong_consistency(*inst, u, v, UnitRat(Rat::parse(a_arg)));
    emit(json{{"open", res.open},
              {"saturation", carrier_set_to_json(*inst, res.saturation)}});
    return 0;
  }
  throw domain_error("unknown sandwich op '" + op + "'");
}

int run_smyth(const std::string& inst_arg, const std::string& op, const std::string& q_arg,
              const std::string& q2_arg, const std::string& a_arg, const std::string& x_arg,
              const std::string& map_arg, const std::string& weights) {
  auto inst = instance_from_json(load(inst_arg));
  auto upset_of = [&](const std::string& arg) {
    json j = load(arg);
    return make_convex_upset(
        *inst, carrier_set_from_json(*inst, j.contains("members") ? j.at("members") : j));
  };
  if (op == "mix") {
    auto r = smyth_mix(*inst, upset_of(q_arg), UnitRat(Rat::parse(a_arg)), upset_of(q2_arg));
    emit(json{{"members", carrier_set_to_json(*inst, r.members)}});
    return 0;
  }
  if (op == "eta") {
    auto r = smyth_eta(*inst, inst->elem_from_json(load(x_arg)));
    emit(json{{"members", carrier_set_to_json(*inst, r.members)}});
    return 0;
  }
  if (op == "order") {
    emit(json{{"le", smyth_order(upset_of(q_arg), upset_of(q2_arg))}});
    return 0;
  }
  if (op == "min") {
    auto lam = carrier_map_from_json(*inst, load(map_arg));
    emit(json{{"value", min_affine(*inst, upset_of(q_arg), lam).str()}});
    return 0;
  }
  if (op == "barycenter") {
    auto res = smyth_barycenter(*inst, weighted_from_json(*inst, load(weights)));
    json out;
    out["principal"] = res.point.has_value();
    if (res.point) out["point"] = inst->elem_to_json(*res.point);
    out["q"] = carrier_set_to_json(*inst, res.q.members);
    json mins = json::array();
    for (const auto& m : res.minimal) mins.push_back(inst->elem_to_json(m));
    out["minimal"] = mins;
    emit(out);
    return 0;
  }
  throw domain_error("unknown smyth op '" + op + "'");
}

int run_lattice(const SpaceArgs& a, const std::string& op, const std::string& points_arg) {
  auto sp = the_space(a);
  if (op == "generate") {
    auto lat = generate_lattice(*sp, opens_from_json(*sp, load(a.opens)));
    json arr = json::array();
    for (Mask m : lat) arr.push_back(open_to_json(*sp, m));
    emit(json{{"lattice", arr}});
    return 0;
  }
  if (op == "saturate") {
    std::vector<std::string> pts;
    for (const auto& n : load(points_arg)) pts.push_back(n.get<std::string>());
    emit(json{{"open", open_to_json(*sp, saturate(sp, pts).members)}});
    return 0;
  }
  if (op == "crescents") {
    auto parts = crescent_partition(*sp, opens_from_json(*sp, load(a.opens)));
    json arr = json::array();
    for (const auto& c : parts) {
      json labels = json::array();
      for (int i : mask_points(c.label)) labels.push_back(i);
      arr.push_back(json{{"label", labels}, {"members", open_to_json(*sp, c.members)}});
    }
    emit(json{{"crescents", arr}});
    return 0;
  }
  throw domain_error("unknown lattice op '" + op + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact valuations, barycentric algebras and cone constructions"};
  app.require_subcommand(1);
  app.add_flag("--decimal", g_decimal,
               "attach approximate decimal fields (display only, non-authoritative)");

  SpaceArgs sa;
  std::string op, inst_arg, weights, point, u_arg, v_arg, a_arg, c_arg, map_arg, table_arg;
  std::string order_op = "le", sandwich_op = "sandwich", lattice_op = "generate";
  std::string alpha = "1/2", x_arg, set_arg, set2_arg, q_arg, p_arg, points_arg;
  bool entropic = false, pointed = false, sub = false;

  auto* order = app.add_subcommand("order", "stochastic order and valuation operations");
  order->add_option("--space", sa.space)->required();
  order->add_option("--mu", sa.mu);
  order->add_option("--nu", sa.nu);
  order->add_option("--op", order_op);
  order->add_option("--map", map_arg);
  order->add_option("--table", table_arg);
  order->add_option("--points", points_arg);

  auto* split = app.add_subcommand("split", "Schroeder-Simpson decomposition");
  split->add_option("--space", sa.space)->required();
  split->add_option("--mu", sa.mu)->required();
  split->add_option("--nu", sa.nu)->required();
  split->add_option("--opens", sa.opens)->required();

  auto* split2 = app.add_subcommand("split2", "second decomposition");
  split2->add_option("--space", sa.space)->required();
  split2->add_option("--mu", sa.mu)->required();
  split2->add_option("--nu", sa.nu)->required();
  split2->add_option("--pi", sa.pi)->required();
  split2->add_option("--opens", sa.opens)->required();

  auto* witness = app.add_subcommand("witness", "consistency witness construction");
  witness->add_option("--space", sa.space)->required();
  witness->add_option("--mu", sa.mu)->required();
  witness->add_option("--nu", sa.nu)->required();
  witness->add_option("--pi", sa.pi)->required();
  witness->add_option("--a", a_arg)->required();
  witness->add_option("--c", c_arg)->required();
  witness->add_option("--opens", sa.opens)->required();

  auto* bary = app.add_subcommand("barycenter", "barycenters and pointed scalars");
  bary->add_option("--instance", inst_arg)->required();
  bary->add_option("--weights", weights);
  bary->add_option("--scalar", a_arg);
  bary->add_option("--x", x_arg);
  bary->add_flag("--sub", sub);

  auto* choquet = app.add_subcommand("choquet-verify", "Choquet barycenter verification");
  choquet->add_option("--instance", inst_arg)->required();
  choquet->add_option("--weights", weights)->required();
  choquet->add_option("--point", point)->required();

  auto* conify = app.add_subcommand("conify", "free cone operations");
  conify->add_option("--instance", inst_arg)->required();
  conify->add_option("--op", op)->required();
  conify->add_option("--u", u_arg);
  conify->add_option("--v", v_arg);
  conify->add_option("--a", a_arg);
  conify->add_option("--map", map_arg);

  auto* tele = app.add_subcommand("telescope", "telescope operations");
  tele->add_option("--instance", inst_arg)->required();
  tele->add_option("--op", op)->required();
  tele->add_option("--alpha", alpha);
  tele->add_option("--u", u_arg);
  tele->add_option("--v", v_arg);
  tele->add_option("--a", a_arg);
  tele->add_option("--map", map_arg);

  auto* axioms = app.add_subcommand("axioms", "barycentric-algebra law checkers");
  axioms->add_option("--instance", inst_arg)->required();
  axioms->add_flag("--entropic", entropic);
  axioms->add_flag("--pointed", pointed);

  auto* sand = app.add_subcommand("sandwich", "sandwich solver and convexity checks");
  sand->add_option("--instance", inst_arg)->required();
  sand->add_option("--op", sandwich_op);
  sand->add_option("--q", q_arg);
  sand->add_option("--p", p_arg);
  sand->add_option("--set", set_arg);
  sand->add_option("--set2", set2_arg);
  sand->add_option("--a", a_arg);
  sand->add_option("--map", map_arg);

  auto* smyth = app.add_subcommand("smyth", "Smyth poweralgebra operations");
  smyth->add_option("--instance", inst_arg)->required();
  smyth->add_option("--op", op)->required();
  smyth->add_option("--q", q_arg);
  smyth->add_option("--q2", set2_arg);
  smyth->add_option("--a", a_arg);
  smyth->add_option("--x", x_arg);
  smyth->add_option("--map", map_arg);
  smyth->add_option("--weights", weights);

  auto* lattice = app.add_subcommand("lattice", "finite-space operations");
  lattice->add_option("--space", sa.space)->required();
  lattice->add_option("--opens", sa.opens);
  lattice->add_option("--op", lattice_op);
  lattice->add_option("--points", points_arg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (order->parsed()) return run_order(sa, order_op, map_arg, table_arg, points_arg);
    if (split->parsed()) return run_split(sa);
    if (split2->parsed()) return run_split2(sa);
    if (witness->parsed()) return run_witness(sa, a_arg, c_arg);
    if (bary->parsed()) return run_barycenter(inst_arg, weights, a_arg, x_arg, sub);
    if (choquet->parsed()) return run_choquet_verify(inst_arg, weights, point);
    if (conify->parsed()) return run_conify(inst_arg, op, u_arg, v_arg, a_arg, map_arg);
    if (tele->parsed())
      return run_telescope(inst_arg, op, alpha, u_arg, v_arg, a_arg, map_arg);
    if (axioms->parsed()) return run_axioms(inst_arg, entropic, pointed);
    if (sand->parsed())
      return run_sandwich(inst_arg, sandwich_op, q_arg, p_arg, set_arg, set2_arg, a_arg, map_arg);
    if (smyth->parsed())
      return run_smyth(inst_arg, op, q_arg, set2_arg, a_arg, x_arg, map_arg, weights);
    if (lattice->parsed()) return run_lattice(sa, lattice_op, points_arg);
    std::cerr << "no subcommand" << std::endl;
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << std::endl;
    return 2;
  } catch (const domain_error& e) {
    emit(json{{"error", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    emit(json{{"error", e.what()}});
    return 1;
  }
}
