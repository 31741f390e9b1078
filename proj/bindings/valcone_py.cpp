// Python bindings: thin JSON-string wrappers over the main operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "valcone/convex.hpp"
#include "valcone/free_cone.hpp"
#include "valcone/json_io.hpp"
#include "valcone/smyth.hpp"

namespace py = pybind11;
using namespace valcone;
using nlohmann::json;

namespace {

std::string order_le(const std::string& space_j, const std::string& mu_j,
                     const std::string& nu_j) {
  auto sp = space_from_json(json::parse(space_j));
  auto mu = valuation_from_json(json::parse(mu_j), sp);
  auto nu = valuation_from_json(json::parse(nu_j), sp);
  auto res = stochastic_le(mu, nu);
  json out{{"related", res.related}};
  out["transport"] = res.witness ? transport_to_json(*sp, *res.witness) : json(nullptr);
  return out.dump();
}

std::string split(const std::string& space_j, const std::string& mu_j, const std::string& nu_j,
                  const std::string& opens_j) {
  auto sp = space_from_json(json::parse(space_j));
  auto mu = valuation_from_json(json::parse(mu_j), sp);
  auto nu = valuation_from_json(json::parse(nu_j), sp);
  auto lat = generate_lattice(*sp, opens_from_json(*sp, json::parse(opens_j)));
  auto [n1, n2] = schroder_simpson_split(mu, nu, lat);
  return json{{"nu1", valuation_to_json(n1)}, {"nu2", valuation_to_json(n2)}}.dump();
}

std::string split2(const std::string& space_j, const std::string& mu_j, const std::string& nu_j,
                   const std::string& pi_j, const std::string& opens_j) {
  auto sp = space_from_json(json::parse(space_j));
  auto mu = valuation_from_json(json::parse(mu_j), sp);
  auto nu = valuation_from_json(json::parse(nu_j), sp);
  auto pi = valuation_from_json(json::parse(pi_j), sp);
  auto lat = generate_lattice(*sp, opens_from_json(*sp, json::parse(opens_j)));
  auto [m1, n1] = second_split(mu, nu, pi, lat);
  return json{{"mu1", valuation_to_json(m1)}, {"nu1", valuation_to_json(n1)}}.dump();
}

std::string bary(const std::string& inst_j, const std::string& weights_j, bool sub) {
  auto inst = instance_from_json(json::parse(inst_j));
  Weighted ws = weighted_from_json(*inst, json::parse(weights_j));
  Elem r = sub ? barycenter_sub(*inst, ws) : barycenter(*inst, ws);
  return json{{"point", inst->elem_to_json(r)}}.dump();
}

bool choquet_verify(const std::string& inst_j, const std::string& weights_j,
                    const std::string& point_j) {
  auto inst = instance_from_json(json::parse(inst_j));
  return verify_barycenter_choquet(*inst, weighted_from_json(*inst, json::parse(weights_j)),
                                   inst->elem_from_json(json::parse(point_j)));
}

std::string axioms(const std::string& inst_j, const std::string& which) {
  auto inst = instance_from_json(json::parse(inst_j));
  auto schedule = CheckSchedule::standard(*inst);
  Report rep = which == "entropic"  ? check_entropic(*inst, schedule)
               : which == "pointed" ? check_pointed_laws(*inst, schedule)
                                    : check_axioms(*inst, schedule);
  return report_to_json(rep).dump();
}

std::string sandwich_solve(const std::string& inst_j, const std::string& q_j,
                           const std::string& p_j) {
  auto inst = instance_from_json(json::parse(inst_j));
  auto q = rat_map_from_json(*inst, json::parse(q_j));
  auto p = rat_map_from_json(*inst, json::parse(p_j));
  auto h = sandwich(*inst, q, p);
  if (!h) return json{{"feasible", false}}.dump();
  json values = json::object();
  for (std::size_t i = 0; i < h->size(); ++i)
    values[elem_str(inst->carrier()[i])] = (*h)[i].str();
  return json{{"feasible", true}, {"h", json{{"values", values}}}}.dump();
}

std::string smyth_bary(const std::string& inst_j, const std::string& weights_j) {
  auto inst = instance_from_json(json::parse(inst_j));
  auto res = smyth_barycenter(*inst, weighted_from_json(*inst, json::parse(weights_j)));
  json out{{"principal", res.point.has_value()}};
  if (res.point) out["point"] = inst->elem_to_json(*res.point);
  out["q"] = carrier_set_to_json(*inst, res.q.members);
  return out.dump();
}

std::string tele_canon(const std::string& inst_j, const std::string& alpha, int n,
                       const std::string& x_j) {
  auto inst = instance_from_json(json::parse(inst_j));
  TeleParams tp{UnitRat(Rat::parse(alpha))};
  auto c = tele_canonicalize(*inst, tp, n, inst->elem_from_json(json::parse(x_j)));
  return telescope_to_json(*inst, c).dump();
}

}  // namespace

PYBIND11_MODULE(_valcone, m) {
  m.doc() = "exact valuations, barycentric algebras and cone constructions";

  py::register_exception<domain_error>(m, "DomainError");

  m.def("rat_add", [](const std::string& a, const std::string& b) {
    return (Rat::parse(a) + Rat::parse(b)).str();
  });
  m.def("rat_mul", [](const std::string& a, const std::string& b) {
    return (Rat::parse(a) * Rat::parse(b)).str();
  });
  m.def("xr_add", [](const std::string& a, const std::string& b) {
    return (XRat::parse(a) + XRat::parse(b)).str();
  });
  m.def("xr_mul", [](const std::string& a, const std::string& b) {
    return (XRat::parse(a) * XRat::parse(b)).str();
  });
  m.def("way_below", [](const std::string& s, const std::string& t) {
    return way_below(XRat::parse(s), XRat::parse(t));
  });

  m.def("stochastic_le", &order_le, py::arg("space"), py::arg("mu"), py::arg("nu"),
        "Stochastic ordering with a verified transport witness (JSON in/out).");
  m.def("schroder_simpson_split", &split, py::arg("space"), py::arg("mu"), py::arg("nu"),
        py::arg("opens"));
  m.def("second_split", &split2, py::arg("space"), py::arg("mu"), py::arg("nu"), py::arg("pi"),
        py::arg("opens"));
  m.def("barycenter", &bary, py::arg("instance"), py::arg("weights"), py::arg("sub") = false);
  m.def("verify_barycenter_choquet", &choquet_verify, py::arg("instance"), py::arg("weights"),
        py::arg("point"));
  m.def("check_laws", &axioms, py::arg("instance"), py::arg("which") = "axioms",
        "which: axioms | entropic | pointed");
  m.def("sandwich", &sandwich_solve, py::arg("instance"), py::arg("q"), py::arg("p"));
  m.def("smyth_barycenter", &smyth_bary, py::arg("instance"), py::arg("weights"));
  m.def("tele_canonicalize", &tele_canon, py::arg("instance"), py::arg("alpha"), py::arg("n"),
        py::arg("x"));
}
