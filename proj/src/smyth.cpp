#include "valcone/smyth.hpp"

#include <algorithm>

namespace valcone {

namespace {

void require_finite_flat(const AlgebraInstance& inst) {
  if (!inst.finite_carrier() || !inst.interval_flat())
    throw domain_error("the Smyth poweralgebra needs a finite interval-flat instance");
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

bool mask_convex(const AlgebraInstance& inst, Mask m) {
  const auto& C = inst.carrier();
  for (int i : mask_points(m))
    for (int j : mask_points(m))
      if (!mask_has(m, inst.carrier_index(
                           inst.mix(C[static_cast<std::size_t>(i)], UnitRat(Rat(1, 2)),
                                    C[static_cast<std::size_t>(j)]))))
        return false;
  return true;
}

Mask conv_mask(const AlgebraInstance& inst, Mask m) {
  const auto& C = inst.carrier();
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i : mask_points(m))
      for (int j : mask_points(m)) {
        int k = inst.carrier_index(inst.mix(C[static_cast<std::size_t>(i)], UnitRat(Rat(1, 2)),
                                            C[static_cast<std::size_t>(j)]));
        if (!mask_has(m, k)) {
          m |= Mask(1) << k;
          grew = true;
        }
      }
  }
  return m;
}

}  // namespace

ConvexUpset make_convex_upset(const AlgebraInstance& inst, Mask members) {
  require_finite_flat(inst);
  if (members == 0) throw domain_error("convex upset must be non-empty");
  if (carrier_up(inst, members) != members) throw domain_error("set is not upward-closed");
  if (!mask_convex(inst, members)) throw domain_error("set is not convex");
  return {members};
}

ConvexUpset smyth_mix(const AlgebraInstance& inst, const ConvexUpset& q1, const UnitRat& a,
                      const ConvexUpset& q2) {
  require_finite_flat(inst);
  if (a.is_one()) return q1;
  if (a.is_zero()) return q2;
  const auto& C = inst.carrier();
  Mask mixset = 0;
  for (int i : mask_points(q1.members))
    for (int j : mask_points(q2.members))
      mixset |= Mask(1) << inst.carrier_index(
          inst.mix(C[static_cast<std::size_t>(i)], a, C[static_cast<std::size_t>(j)]));
  return make_convex_upset(inst, carrier_up(inst, mixset));
}

ConvexUpset smyth_eta(const AlgebraInstance& inst, const Elem& x) {
  require_finite_flat(inst);
  Mask m = Mask(1) << inst.carrier_index(x);
  return make_convex_upset(inst, carrier_up(inst, m));
}

XRat min_affine(const AlgebraInstance& inst, const ConvexUpset& q, const std::vector<XRat>& lam) {
  require_finite_flat(inst);
  const auto& C = inst.carrier();
  if (lam.size() != C.size()) throw domain_error("map arity mismatch");
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j)
      if (inst.leq(C[i], C[j]) && !(lam[i] <= lam[j]))
        throw domain_error("map is not monotone");
  if (q.members == 0) throw domain_error("empty set has no minimum");
  std::optional<XRat> best;
  for (int i : mask_points(q.members)) {
    const XRat& v = lam[static_cast<std::size_t>(i)];
    if (!best || v < *best) best = v;
  }
  return *best;
}

SmythBarycenter smyth_barycenter(const AlgebraInstance& inst, const Weighted& weighted) {
  require_finite_flat(inst);
  Weighted ws;
  Rat total(0);
  for (const auto& [a, x] : weighted) {
    if (a.is_negative()) throw domain_error("negative weight");
    inst.validate_elem(x);
    if (!a.is_zero()) ws.emplace_back(a, x);
    total += a;
  }
  if (total > Rat(1)) throw domain_error("weights must sum to at most 1");
  if (total < Rat(1)) {
    if (!inst.pointed())
      throw domain_error("subnormalized barycenter needs a pointed instance");
    ws.emplace_back(Rat(1) - total, inst.bottom());
  }
  if (ws.empty()) throw domain_error("barycenter of the zero valuation on a non-pointed instance");

  // Q = upconv{ barycenter(a_i, y_i) : y_i in up(x_i) }
  const auto& C = inst.carrier();
  std::vector<std::vector<int>> upsets;
  for (const auto& [_, x] : ws) {
    std::vector<int> up;
    for (std::size_t j = 0; j < C.size(); ++j)
      if (inst.leq(x, C[j])) up.push_back(static_cast<int>(j));
    upsets.push_back(std::move(up));
  }
  Mask points = 0;
  std::vector<std::size_t> pick(ws.size(), 0);
  while (true) {
    Weighted tuple;
    for (std::size_t k = 0; k < ws.size(); ++k)
      tuple.emplace_back(ws[k].first, C[static_cast<std::size_t>(upsets[k][pick[k]])]);
    points |= Mask(1) << inst.carrier_index(barycenter(inst, tuple));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == upsets[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  Mask q = carrier_up(inst, conv_mask(inst, points));

  SmythBarycenter out;
  out.q = make_convex_upset(inst, q);
  // minimal antichain of q
  for (int i : mask_points(q)) {
    bool minimal = true;
    for (int j : mask_points(q))
      if (j != i && inst.leq(C[static_cast<std::size_t>(j)], C[static_cast<std::size_t>(i)])) {
        minimal = false;
        break;
      }
    if (minimal) out.minimal.push_back(C[static_cast<std::size_t>(i)]);
  }
  if (out.minimal.size() == 1 && q == carrier_up(inst, Mask(1) << inst.carrier_index(out.minimal[0])))
    out.point = out.minimal[0];
  return out;
}

}  // namespace valcone
