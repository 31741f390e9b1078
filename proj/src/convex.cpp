#include "valcone/convex.hpp"

#include <algorithm>
#include <set>

#include "valcone/lp.hpp"

namespace valcone {

namespace {

void require_finite_flat(const AlgebraInstance& inst) {
  if (!inst.finite_carrier() || !inst.interval_flat())
    throw domain_error("operation needs a finite interval-flat instance");
}

Elem midpoint(const AlgebraInstance& inst, const Elem& x, const Elem& y) {
  return inst.mix(x, UnitRat(Rat(1, 2)), y);
}

std::vector<int> sorted(std::set<int> s) { return {s.begin(), s.end()}; }

std::set<int> hull_indices(const AlgebraInstance& inst, const std::vector<Elem>& points) {
  require_finite_flat(inst);
  std::set<int> members;
  for (const auto& p : points) members.insert(inst.carrier_index(p));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(members.begin(), members.end());
    for (int i : cur)
      for (int j : cur) {
        int k = inst.carrier_index(midpoint(inst, inst.carrier()[i], inst.carrier()[j]));
        if (members.insert(k).second) grew = true;
      }
  }
  return members;
}

Mask to_mask(const std::vector<int>& members) {
  Mask m = 0;
  for (int i : members) m |= Mask(1) << i;
  return m;
}

Mask carrier_up(const AlgebraInstance& inst, Mask m) {
  const auto& C = inst.carrier();
  Mask out = m;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (!mask_has(m, static_cast<int>(i))) continue;
    for (std::size_t j = 0; j < C.size(); ++j)
      if (inst.leq(C[i], C[j])) out |= Mask(1) << j;
  }
  return out;
}

Mask carrier_down(const AlgebraInstance& inst, Mask m) {
  const auto& C = inst.carrier();
  Mask out = m;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (!mask_has(m, static_cast<int>(i))) continue;
    for (std::size_t j = 0; j < C.size(); ++j)
      if (inst.leq(C[j], C[i])) out |= Mask(1) << j;
  }
  return out;
}

}  // namespace

ConvexSet conv(const AlgebraInstance& inst, const std::vector<Elem>& points) {
  return {sorted(hull_indices(inst, points))};
}

bool conv_contains(const RationalConvexInstance& inst, const std::vector<Vec>& generators,
                   const Vec& point) {
  if (generators.empty()) return false;
  for (const auto& g : generators) inst.validate_elem(Elem(g));
  inst.validate_elem(Elem(point));
  lp::LinearSystem sys;
  for (std::size_t k = 0; k < generators.size(); ++k) sys.add_var("w" + std::to_string(k));
  std::vector<Rat> ones(generators.size(), Rat(1));
  sys.add(ones, lp::Rel::Eq, Rat(1));
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    std::vector<Rat> row(generators.size());
    for (std::size_t k = 0; k < generators.size(); ++k) row[k] = generators[k][i];
    sys.add(std::move(row), lp::Rel::Eq, point[i]);
  }
  return std::holds_alternative<lp::Solution>(lp::feasible(sys));
}

ConvexSet upconv(const AlgebraInstance& inst, const std::vector<Elem>& points) {
  auto hull = hull_indices(inst, points);
  Mask up = carrier_up(inst, to_mask({hull.begin(), hull.end()}));
  std::set<int> out;
  for (int i : mask_points(up)) out.insert(i);
  return {sorted(std::move(out))};
}

ConvexSet closed_conv(const AlgebraInstance& inst, const std::vector<Elem>& points) {
  auto hull = hull_indices(inst, points);
  Mask down = carrier_down(inst, to_mask({hull.begin(), hull.end()}));
  std::vector<int> members = mask_points(down);
  if (!is_convex(inst, members))
    throw domain_error("closure of the hull is not convex; mix is not monotone");
  return {members};
}

bool is_convex(const AlgebraInstance& inst, const std::vector<int>& members) {
  require_finite_flat(inst);
  const auto& C = inst.carrier();
  for (int i : members)
    for (int j : members) {
      int k = inst.carrier_index(midpoint(inst, C[i], C[j]));
      if (!std::count(members.begin(), members.end(), k)) return false;
    }
  return true;
}

bool is_halfspace(const AlgebraInstance& inst, const std::vector<int>& members) {
  require_finite_flat(inst);
  std::vector<int> complement;
  for (std::size_t i = 0; i < inst.carrier().size(); ++i)
    if (!std::count(members.begin(), members.end(), static_cast<int>(i)))
      complement.push_back(static_cast<int>(i));
  return is_convex(inst, members) && is_convex(inst, complement);
}

bool is_semiconcave(const AlgebraInstance& inst, const CarrierMap& h) {
  require_finite_flat(inst);
  const auto& C = inst.carrier();
  if (h.size() != C.size()) throw domain_error("map arity mismatch");
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (inst.leq(C[i], C[j]) && !(h[i] <= h[j])) return false;  // lsc = monotone here
      auto k = static_cast<std::size_t>(inst.carrier_index(midpoint(inst, C[i], C[j])));
      if (!(h[k] >= h[i])) return false;  // sup over a -> 1 of a h(x)
    }
  return true;
}

XRat minkowski_of_semiconcave(const AlgebraInstance& inst, const CarrierMap& h,
                              const ConifyElem& u) {
  if (!is_semiconcave(inst, h)) throw domain_error("map is not semi-concave");
  return conify_extend<XRat>(
      xrat_cone(),
      [&](const Elem& x) { return h[static_cast<std::size_t>(inst.carrier_index(x))]; }, u);
}

StrongConsistency check_strong_consistency(const AlgebraInstance& inst, Mask U, Mask V,
                                           const UnitRat& a) {
  require_finite_flat(inst);
  const auto& C = inst.carrier();
  Mask full = C.size() == 64 ? ~Mask(0) : ((Mask(1) << C.size()) - 1);
  if ((U | V) & ~full) throw domain_error("open mentions unknown carrier elements");
  if (carrier_up(inst, U) != U || carrier_up(inst, V) != V)
    throw domain_error("arguments must be open (upward-closed)");
  Mask mixset = 0;
  for (int i : mask_points(U))
    for (int j : mask_points(V))
      mixset |= Mask(1) << inst.carrier_index(inst.mix(C[i], a, C[j]));
  Mask up = carrier_up(inst, mixset);
  return {carrier_up(inst, up) == up, up};
}

std::pair<SimpleValuation, SimpleValuation> consistency_witness(
    const SimpleValuation& mu, const SimpleValuation& nu, const SimpleValuation& pi,
    const UnitRat& a, const UnitRat& c, const std::vector<Mask>& lattice) {
  if (a.is_zero() || a.is_one() || c.is_zero() || c.is_one())
    throw domain_error("witness construction needs a, c strictly between 0 and 1");
  SimpleValuation mu_s = mu.scaled(c.value() * a.value());
  SimpleValuation nu_s = nu.scaled(c.value() * a.complement());
  auto [mu1, nu1] = second_split(mu_s, nu_s, pi, lattice);
  // normalize totals through the first decomposition lemma
  SimpleValuation mu_w = schroder_simpson_split(mu_s, mu1, lattice).first;
  SimpleValuation nu_w = schroder_simpson_split(nu_s, nu1, lattice).first;
  return {std::move(mu_w), std::move(nu_w)};
}

namespace {

// Normalized monotone affine maps as an LP polytope (h constant-forced on
// interval-flat instances; the LP is the honest decision procedure).
lp::LinearSystem separation_polytope(const AlgebraInstance& inst) {
  const auto& C = inst.carrier();
  lp::LinearSystem sys;
  for (std::size_t i = 0; i < C.size(); ++i) sys.add_var("h" + std::to_string(i));
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::vector<Rat> row(C.size(), Rat(0));
    row[i] = Rat(1);
    sys.add(std::move(row), lp::Rel::Le, Rat(1));
  }
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (i == j) continue;
      std::vector<Rat> row(C.size(), Rat(0));
      row[i] = Rat(1);
      row[j] -= Rat(1);
      if (inst.leq(C[i], C[j])) sys.add(row, lp::Rel::Le, Rat(0));
      if (i < j) sys.add(row, lp::Rel::Eq, Rat(0));
    }
  return sys;
}

}  // namespace

SeparationResult is_linearly_separated(const AlgebraInstance& inst) {
  if (inst.kind() == "rational_convex") {
    // x !<= y exhibits a coordinate i with x_i > y_i; the i-th coordinate
    // functional is affine monotone and separates.
    return {true, std::nullopt};
  }
  require_finite_flat(inst);
  const auto& C = inst.carrier();
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (i == j || inst.leq(C[i], C[j])) continue;
      lp::LinearSystem sys = separation_polytope(inst);
      std::vector<Rat> objective(C.size(), Rat(0));
      objective[i] += Rat(1);
      objective[j] -= Rat(1);
      sys.objective = objective;
      auto res = lp::optimize(sys, lp::Sense::Max);
      const auto* best = std::get_if<lp::Optimum>(&res);
      if (!best) throw domain_error("internal: separation polytope should be bounded");
      if (!(best->value > Rat(0))) return {false, std::make_pair(C[i], C[j])};
    }
  return {true, std::nullopt};
}

std::optional<RatMap> sandwich(const AlgebraInstance& inst, const RatMap& q, const RatMap& p,
                               bool validate) {
  require_finite_flat(inst);
  const auto& C = inst.carrier();
  if (q.size() != C.size() || p.size() != C.size()) throw domain_error("map arity mismatch");
  if (validate) {
    for (std::size_t i = 0; i < C.size(); ++i) {
      if (q[i].is_negative() || p[i].is_negative())
        throw domain_error("sandwich maps must be nonnegative");
      if (!(q[i] <= p[i])) throw domain_error("q <= p fails at " + elem_str(C[i]));
      for (std::size_t j = 0; j < C.size(); ++j) {
        if (inst.leq(C[i], C[j]) && !(q[i] <= q[j]))
          throw domain_error("q is not monotone");
        auto k = static_cast<std::size_t>(inst.carrier_index(midpoint(inst, C[i], C[j])));
        if (!(q[k] >= std::max(q[i], q[j]))) throw domain_error("q is not concave");
        if (!(p[k] <= std::min(p[i], p[j]))) throw domain_error("p is not convex");
      }
    }
  }
  lp::LinearSystem sys;
  for (std::size_t i = 0; i < C.size(); ++i) sys.add_var("h" + std::to_string(i));
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::vector<Rat> row(C.size(), Rat(0));
    row[i] = Rat(1);
    sys.add(row, lp::Rel::Ge, q[i]);
    sys.add(row, lp::Rel::Le, p[i]);
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (i == j) continue;
      std::vector<Rat> rel(C.size(), Rat(0));
      rel[i] = Rat(1);
      rel[j] -= Rat(1);
      if (inst.leq(C[i], C[j])) sys.add(rel, lp::Rel::Le, Rat(0));
      if (i < j) sys.add(rel, lp::Rel::Eq, Rat(0));
    }
  }
  auto res = lp::feasible(sys);
  if (std::holds_alternative<lp::Infeasible>(res)) return std::nullopt;
  return std::get<lp::Solution>(res).values;
}

}  // namespace valcone
