#pragma once

#include <optional>
#include <vector>

#include "valcone/baryalg.hpp"

namespace valcone {

/// Element of the Smyth poweralgebra over a finite interval-flat
/// instance: a non-empty convex upward-closed subset of the carrier
/// (compact saturated = non-empty upset at finite scale).
struct ConvexUpset {
  Mask members = 0;
};

/// Validates non-emptiness, upward closure and convexity.
ConvexUpset make_convex_upset(const AlgebraInstance& inst, Mask members);

/// Q1 +#_a Q2 = up{ x1 +_a x2 : x1 in Q1, x2 in Q2 }, validated convex.
ConvexUpset smyth_mix(const AlgebraInstance& inst, const ConvexUpset& q1, const UnitRat& a,
                      const ConvexUpset& q2);

/// eta(x) = up x.
ConvexUpset smyth_eta(const AlgebraInstance& inst, const Elem& x);

/// The poweralgebra ordering is reverse inclusion.
inline bool smyth_order(const ConvexUpset& q1, const ConvexUpset& q2) {
  return (q1.members & q2.members) == q2.members;
}

/// min Lambda over the members of Q, for monotone affine Lambda (values
/// per carrier element).
XRat min_affine(const AlgebraInstance& inst, const ConvexUpset& q, const std::vector<XRat>& lam);

struct SmythBarycenter {
  std::optional<Elem> point;       // set when Q is principal
  ConvexUpset q;                   // the computed saturated convex hull
  std::vector<Elem> minimal;       // minimal elements of q
};

/// Barycenter through the poweralgebra: Q = upconv of the pointwise
/// barycenters over the product of the support upsets; returns the unique
/// minimal element when Q is principal, the minimal antichain otherwise.
SmythBarycenter smyth_barycenter(const AlgebraInstance& inst, const Weighted& weighted);

}  // namespace valcone
