#pragma once

#include <optional>
#include <vector>

#include "valcone/baryalg.hpp"
#include "valcone/free_cone.hpp"

namespace valcone {

/// Convex subset of a finite interval-flat instance, as carrier indices
/// (sorted).  Rational-convex hulls are handled separately by generators.
struct ConvexSet {
  std::vector<int> members;
};

/// Hull of the given carrier elements: closure under the binary midpoint.
ConvexSet conv(const AlgebraInstance& inst, const std::vector<Elem>& points);

/// Membership of a point in the convex hull of generators in Q>=0^d,
/// decided by exact LP.
bool conv_contains(const RationalConvexInstance& inst, const std::vector<Vec>& generators,
                   const Vec& point);

/// Saturated convex hull: upward closure of the hull.
ConvexSet upconv(const AlgebraInstance& inst, const std::vector<Elem>& points);

/// Closed convex hull: downward (Alexandroff) closure of the hull,
/// verified convex.
ConvexSet closed_conv(const AlgebraInstance& inst, const std::vector<Elem>& points);

bool is_convex(const AlgebraInstance& inst, const std::vector<int>& members);
bool is_halfspace(const AlgebraInstance& inst, const std::vector<int>& members);

/// Values per carrier element, in carrier order.
using CarrierMap = std::vector<XRat>;

/// h is semi-concave and lower semicontinuous on the instance: monotone,
/// and h(m(x,y)) >= h(x) for every pair.
bool is_semiconcave(const AlgebraInstance& inst, const CarrierMap& h);

/// Upper Minkowski functional attached to h through the free cone:
/// h^cext(0) = 0, h^cext(r, x) = r h(x).  Requires h semi-concave.
XRat minkowski_of_semiconcave(const AlgebraInstance& inst, const CarrierMap& h,
                              const ConifyElem& u);

struct StrongConsistency {
  bool open = false;   // always true on finite models; a structural assertion
  Mask saturation = 0; // up(U +_a V) over carrier indices
};

StrongConsistency check_strong_consistency(const AlgebraInstance& inst, Mask U, Mask V,
                                           const UnitRat& a);

/// Consistency witness from the strong-consistency proof for valuations:
/// second decomposition followed by Schroeder-Simpson normalization of
/// both parts.  Preconditions: lattice-closed opens containing the whole
/// space; c a mu(U) + c (1-a) nu(U) <= pi(U) on every member.
std::pair<SimpleValuation, SimpleValuation> consistency_witness(
    const SimpleValuation& mu, const SimpleValuation& nu, const SimpleValuation& pi,
    const UnitRat& a, const UnitRat& c, const std::vector<Mask>& lattice);

struct SeparationResult {
  bool separated = true;
  std::optional<std::pair<Elem, Elem>> counterexample;  // first pair that no map separates
};

/// Whether every x !<= y is witnessed by a monotone affine map with
/// h(x) > h(y) (normalized h <= 1), decided by exact LPs.
SeparationResult is_linearly_separated(const AlgebraInstance& inst);

/// Finite rational-valued maps per carrier element.
using RatMap = std::vector<Rat>;

/// Sandwich theorem on a finite interval-flat instance: an affine monotone
/// h with q <= h <= p, computed by exact LP.  q must be concave monotone
/// and p convex, with q <= p pointwise.
std::optional<RatMap> sandwich(const AlgebraInstance& inst, const RatMap& q, const RatMap& p,
                               bool validate = true);

}  // namespace valcone
