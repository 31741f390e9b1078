#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "valcone/finspace.hpp"
#include "valcone/rat.hpp"
#include "valcone/valuation.hpp"

namespace valcone {

/// Element of the Keimel-Plotkin example algebra: the points (-inf, s)
/// with s in [0,1], plus the isolated point (0, 1).
struct KpElem {
  bool at01 = false;  // true for the isolated point (0, 1)
  Rat s;              // second coordinate; 1 when at01
  friend bool operator==(const KpElem& a, const KpElem& b) {
    return a.at01 == b.at01 && a.s == b.s;
  }
  friend bool operator!=(const KpElem& a, const KpElem& b) { return !(a == b); }
};

using Vec = std::vector<Rat>;

/// Carrier element of some algebra instance: a named point (semilattices),
/// a vector over the nonnegative rationals, a KP point, a rational <= 0
/// (the B^- algebra), or a simple valuation.
using Elem = std::variant<std::string, Vec, KpElem, Rat, SimpleValuation>;

std::string elem_str(const Elem& e);

/// A barycentric algebra: carrier + mix + order (+ optional bottom).
/// Instances are immutable; all operations are pure.
class AlgebraInstance {
 public:
  virtual ~AlgebraInstance() = default;

  virtual std::string kind() const = 0;
  virtual Elem mix(const Elem& x, const UnitRat& a, const Elem& y) const = 0;
  virtual bool leq(const Elem& x, const Elem& y) const = 0;

  virtual bool pointed() const = 0;
  virtual Elem bottom() const;
  /// mix(x, a, y) does not depend on a for a strictly between 0 and 1
  /// (semilattices and friends).
  virtual bool interval_flat() const { return false; }
  virtual bool finite_carrier() const { return false; }
  virtual const std::vector<Elem>& carrier() const;
  /// Element schedule used by the law checkers on symbolic carriers.
  virtual std::vector<Elem> sample_elems() const = 0;

  virtual void validate_elem(const Elem& e) const = 0;
  virtual nlohmann::json elem_to_json(const Elem& e) const = 0;
  virtual Elem elem_from_json(const nlohmann::json& j) const = 0;

  /// Closed-form witness for the free-cone ordering on symbolic carriers:
  /// some x' with mix(x, ratio, x') <= y, if one exists.
  virtual bool has_cone_le_oracle() const { return false; }
  virtual std::optional<Elem> cone_le_witness(const Elem& x, const Rat& ratio,
                                              const Elem& y) const;

  /// Closed-form telescope structure on symbolic pointed carriers.
  virtual bool has_tele_oracle() const { return false; }
  virtual int tele_min_level(int n, const Elem& x, const UnitRat& alpha) const;
  virtual std::vector<Elem> tele_reps(int level, int n, const Elem& x,
                                      const UnitRat& alpha) const;

  std::vector<Elem> check_elems() const;  // carrier when finite, sample otherwise
  int carrier_index(const Elem& e) const;
};

using InstancePtr = std::shared_ptr<const AlgebraInstance>;

/// Sup-semilattice on a finite poset (every pair of points has a join);
/// mix is the join for every coefficient strictly between 0 and 1.
class SemilatticeInstance : public AlgebraInstance {
 public:
  explicit SemilatticeInstance(SpacePtr poset);

  std::string kind() const override { return "semilattice"; }
  Elem mix(const Elem& x, const UnitRat& a, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool pointed() const override { return poset_->least() >= 0; }
  Elem bottom() const override;
  bool interval_flat() const override { return true; }
  bool finite_carrier() const override { return true; }
  const std::vector<Elem>& carrier() const override { return carrier_; }
  std::vector<Elem> sample_elems() const override { return carrier_; }
  void validate_elem(const Elem& e) const override;
  nlohmann::json elem_to_json(const Elem& e) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

  const SpacePtr& poset() const { return poset_; }
  int join(int a, int b) const { return join_[a][b]; }
  int point(const Elem& e) const;

 private:
  SpacePtr poset_;
  std::vector<Elem> carrier_;
  std::vector<std::vector<int>> join_;
};

/// The cone Q>=0^d as a barycentric algebra: exact affine combinations,
/// pointwise order, bottom at the origin.
class RationalConvexInstance : public AlgebraInstance {
 public:
  explicit RationalConvexInstance(std::size_t dim);

  std::string kind() const override { return "rational_convex"; }
  Elem mix(const Elem& x, const UnitRat& a, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool pointed() const override { return true; }
  Elem bottom() const override { return Vec(dim_, Rat(0)); }
  std::vector<Elem> sample_elems() const override;
  void validate_elem(const Elem& e) const override;
  nlohmann::json elem_to_json(const Elem& e) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
};

/// Keimel and Plotkin's ordered pointed barycentric algebra with two
/// points identified by every scalar r in ]0,1[ but not by the order.
class KpInstance : public AlgebraInstance {
 public:
  std::string kind() const override { return "kp"; }
  Elem mix(const Elem& x, const UnitRat& a, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool pointed() const override { return true; }
  Elem bottom() const override { return KpElem{false, Rat(0)}; }
  std::vector<Elem> sample_elems() const override;
  void validate_elem(const Elem& e) const override;
  nlohmann::json elem_to_json(const Elem& e) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

  bool has_cone_le_oracle() const override { return true; }
  std::optional<Elem> cone_le_witness(const Elem& x, const Rat& ratio,
                                      const Elem& y) const override;
  bool has_tele_oracle() const override { return true; }
  int tele_min_level(int n, const Elem& x, const UnitRat& alpha) const override;
  std::vector<Elem> tele_reps(int level, int n, const Elem& x,
                              const UnitRat& alpha) const override;
};

/// The topological cone B^- = ]-inf, 0] with affine mix; ordered but not
/// pointed (no least element).
class BMinusInstance : public AlgebraInstance {
 public:
  std::string kind() const override { return "bminus"; }
  Elem mix(const Elem& x, const UnitRat& a, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool pointed() const override { return false; }
  std::vector<Elem> sample_elems() const override;
  void validate_elem(const Elem& e) const override;
  nlohmann::json elem_to_json(const Elem& e) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

  bool has_cone_le_oracle() const override { return true; }
  std::optional<Elem> cone_le_witness(const Elem& x, const Rat& ratio,
                                      const Elem& y) const override;
};

enum class ValuationMode { Prob, SubProb };

/// Simple (sub)probability valuations on a finite space with pointwise
/// mix and the stochastic ordering.
class ValuationAlgebraInstance : public AlgebraInstance {
 public:
  ValuationAlgebraInstance(SpacePtr space, ValuationMode mode);

  std::string kind() const override { return "valuations"; }
  Elem mix(const Elem& x, const UnitRat& a, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool pointed() const override { return mode_ == ValuationMode::SubProb; }
  Elem bottom() const override;
  std::vector<Elem> sample_elems() const override;
  void validate_elem(const Elem& e) const override;
  nlohmann::json elem_to_json(const Elem& e) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

  const SpacePtr& space() const { return space_; }
  ValuationMode mode() const { return mode_; }

 private:
  SpacePtr space_;
  ValuationMode mode_;
};

/// One failed law instance, with rendered witnesses.
struct LawViolation {
  std::string law;
  std::string witness;
};

struct Report {
  bool pass = true;
  std::vector<LawViolation> violations;
  std::size_t cases_checked = 0;
};

struct CheckSchedule {
  std::vector<Elem> elems;
  std::vector<Rat> coefficients;
  static CheckSchedule standard(const AlgebraInstance& inst);
};

/// Checks the four barycentric-algebra axioms over the schedule.
Report check_axioms(const AlgebraInstance& inst, const CheckSchedule& s);

/// Checks the entropic identity
/// (x +_a y) +_b (z +_a t) = (x +_b z) +_a (y +_b t).
Report check_entropic(const AlgebraInstance& inst, const CheckSchedule& s);

/// Checks the six pointed scalar laws on a pointed instance.
Report check_pointed_laws(const AlgebraInstance& inst, const CheckSchedule& s);

using Weighted = std::vector<std::pair<Rat, Elem>>;

/// Barycenter of weighted points, weights summing to one.
Elem barycenter(const AlgebraInstance& inst, const Weighted& weighted);

/// a . x = mix(x, a, bottom) on a pointed instance.
Elem scalar(const AlgebraInstance& inst, const UnitRat& a, const Elem& x);

/// Subnormalized barycenter on a pointed instance (weights summing to at
/// most one; bottom for the empty combination).
Elem barycenter_sub(const AlgebraInstance& inst, const Weighted& weighted);

/// Cone operations over values of type V.
template <typename V>
struct ConeOps {
  std::function<V(const V&, const V&)> add;
  std::function<V(const Rat&, const V&)> smul;  // nonnegative scalars
  V zero;
  std::function<bool(const V&, const V&)> eq;
};

/// The XRat cone.
const ConeOps<XRat>& xrat_cone();

/// Builds cone operations on a pointed instance from a doubling map
/// (spot-checked: linear and dbl((1/2).x) = x on the schedule).
ConeOps<Elem> cone_from_doubling(const InstancePtr& inst, std::function<Elem(const Elem&)> dbl,
                                 const std::vector<Elem>& spot_check);

/// Extension of an affine map on probability valuations to all bounded
/// valuations: zero to 0, otherwise total . f(normalized).
template <typename V>
std::function<V(const SimpleValuation&)> extend_prob_to_bounded(
    std::function<V(const SimpleValuation&)> f, const ConeOps<V>& cone) {
  return [f = std::move(f), &cone](const SimpleValuation& nu) -> V {
    Rat t = nu.total();
    if (t.is_zero()) return cone.zero;
    return cone.smul(t, f(nu.scaled(Rat(1) / t)));
  };
}

/// Choquet-style barycenter verification: Lambda(x0) equals the integral
/// of Lambda for every admissible affine (linear when subnormalized
/// pointed) monotone map.  Supported on rational-convex instances
/// (coordinate check) and on finite interval-flat instances (two exact
/// LPs over the normalized monotone affine polytope).
bool verify_barycenter_choquet(const AlgebraInstance& inst, const Weighted& weighted,
                               const Elem& x0);

}  // namespace valcone
