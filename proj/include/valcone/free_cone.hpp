#pragma once

#include <optional>
#include <vector>

#include "valcone/baryalg.hpp"

namespace valcone {

/// Element of the free cone conify(B): zero, or a pair (r, x) with r > 0.
struct ConifyElem {
  bool zero = true;
  Rat r;
  Elem x;

  static ConifyElem make_zero() { return ConifyElem{}; }
  static ConifyElem pair(Rat r, Elem x);
};

inline ConifyElem conify_eta(const Elem& x) { return ConifyElem::pair(Rat(1), x); }

bool conify_eq(const ConifyElem& u, const ConifyElem& v);

/// Cone operations on conify(B): a.(r,x) = (ar,x) and
/// (r,x) + (s,y) = (r+s, x +_{r/(r+s)} y), with 0 neutral/absorbing.
ConifyElem conify_add(const AlgebraInstance& inst, const ConifyElem& u, const ConifyElem& v);
ConifyElem conify_smul(const AlgebraInstance& inst, const Rat& a, const ConifyElem& u);

/// The free-preordered-cone relation: u <=_c v iff u can be topped up to
/// (s, y1) with y1 <= y, where v = (s, y).  Witness search runs over the
/// finite carrier or through the instance's closed-form oracle.
bool conify_le(const AlgebraInstance& inst, const ConifyElem& u, const ConifyElem& v);

/// Level of a cone element (0 for zero, r for (r, x)); a linear map.
Rat level(const ConifyElem& u);

/// conify_{<=1}(B): the free pointed barycentric algebra over B.
bool conify_le1_member(const ConifyElem& u);
ConifyElem conify_le1_mix(const AlgebraInstance& inst, const ConifyElem& u, const UnitRat& a,
                          const ConifyElem& v);

/// Positively homogeneous extension f^cext: zero to 0, (r, x) to r.f(x).
template <typename V>
V conify_extend(const ConeOps<V>& cone, const std::function<V(const Elem&)>& f,
                const ConifyElem& u) {
  if (u.zero) return cone.zero;
  return cone.smul(u.r, f(u.x));
}

/// The I-homogeneous extension into a pointed instance: zero to bottom,
/// (r, x) to r.f(x) (requires level(u) <= 1).
Elem conify_le1_extend(const AlgebraInstance& target, const std::function<Elem(const Elem&)>& f,
                       const ConifyElem& u);

/// Element of the telescope tscope_alpha(B), kept canonical: minimal level
/// n, least representative at that level.
struct TelescopeElem {
  int n = 0;
  Elem x;
};

struct TeleParams {
  UnitRat alpha;       // in ]0, 1[
  int search_cap = 64; // bound for orbit searches on finite carriers
  explicit TeleParams(UnitRat a) : alpha(std::move(a)) {
    if (alpha.is_zero() || alpha.is_one()) throw domain_error("alpha must lie in ]0,1[");
  }
};

/// (m, x) and (n, y) generate the same class iff alpha^{k-m}.x equals
/// alpha^{k-n}.y for some k >= m, n.
bool tele_equiv(const AlgebraInstance& inst, const TeleParams& tp, int m, const Elem& x, int n,
                const Elem& y);

TelescopeElem tele_canonicalize(const AlgebraInstance& inst, const TeleParams& tp, int n,
                                const Elem& x);

TelescopeElem tele_mix(const AlgebraInstance& inst, const TeleParams& tp, const TelescopeElem& u,
                       const UnitRat& a, const TelescopeElem& v);

TelescopeElem tele_smul(const AlgebraInstance& inst, const TeleParams& tp, const Rat& a,
                        const TelescopeElem& u);

/// Telescope ordering: some common level carries representatives with
/// x~ <= y~ in B.
bool tele_le(const AlgebraInstance& inst, const TeleParams& tp, const TelescopeElem& u,
             const TelescopeElem& v);

/// Extension along the telescope: [(n, x)] to (1/alpha)^n . f(x), for f
/// commuting with alpha-scaling (spot-checked on the given elements).
template <typename V>
std::function<V(const TelescopeElem&)> tele_extend(const AlgebraInstance& inst,
                                                   const TeleParams& tp, const ConeOps<V>& cone,
                                                   std::function<V(const Elem&)> f,
                                                   const std::vector<Elem>& spot_check) {
  for (const auto& e : spot_check) {
    V lhs = f(scalar(inst, tp.alpha, e));
    V rhs = cone.smul(tp.alpha.value(), f(e));
    if (!cone.eq(lhs, rhs))
      throw domain_error("map does not commute with alpha-scaling at " + elem_str(e));
  }
  Rat inv = Rat(1) / tp.alpha.value();
  return [f = std::move(f), &cone, inv](const TelescopeElem& u) -> V {
    Rat factor(1);
    for (int i = 0; i < u.n; ++i) factor *= inv;
    return cone.smul(factor, f(u.x));
  };
}

}  // namespace valcone
