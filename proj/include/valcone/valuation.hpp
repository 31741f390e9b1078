#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "valcone/finspace.hpp"
#include "valcone/rat.hpp"

namespace valcone {

/// Simple valuation: a finite nonnegative rational point-mass assignment
/// on a finite space.  Zero masses are never stored.
class SimpleValuation {
 public:
  explicit SimpleValuation(SpacePtr space) : space_(std::move(space)) {
    if (!space_) throw domain_error("valuation without a space");
  }
  SimpleValuation(SpacePtr space, const std::vector<std::pair<std::string, Rat>>& masses);

  static SimpleValuation dirac(SpacePtr space, const std::string& point);

  const SpacePtr& space() const { return space_; }
  const std::map<int, Rat>& masses() const { return m_; }
  Rat mass(int point) const;
  void set_mass(int point, Rat value);  // drops zero entries, rejects negatives

  Rat total() const;
  bool is_zero() const { return m_.empty(); }
  Mask support() const;

  /// nu(U) for an upward-closed U; eval over an arbitrary mask is the
  /// Smiley-Horn-Tarski extension to crescent unions.
  Rat eval(const OpenSet& U) const;
  Rat eval_mask(Mask members) const;

  /// Exact sum integral of h against the valuation (0 * inf = 0).
  XRat integrate(const std::function<XRat(int)>& h) const;

  SimpleValuation scaled(const Rat& factor) const;  // factor >= 0
  friend SimpleValuation operator+(const SimpleValuation& a, const SimpleValuation& b);
  friend bool operator==(const SimpleValuation& a, const SimpleValuation& b);
  friend bool operator!=(const SimpleValuation& a, const SimpleValuation& b) { return !(a == b); }

 private:
  SpacePtr space_;
  std::map<int, Rat> m_;
};

/// Witness for stochastic dominance: nonzero entries only on pairs
/// row <= col, row sums equal to the source masses, column sums bounded
/// by the target masses.
struct TransportMatrix {
  std::vector<int> rows;  // source points
  std::vector<int> cols;  // target points
  std::map<std::pair<int, int>, Rat> entries;
};

struct StochasticOrder {
  bool related = false;
  std::optional<TransportMatrix> witness;
};

/// Decides mu <= nu in the stochastic ordering (mu(U) <= nu(U) for every
/// open U) by exact transport feasibility, returning a verified witness
/// when related.
StochasticOrder stochastic_le(const SimpleValuation& mu, const SimpleValuation& nu);

/// Checks the three transport conditions exactly.
bool verify_transport(const SimpleValuation& mu, const SimpleValuation& nu,
                      const TransportMatrix& t);

/// Pushforward along a monotone map given by target point index per source
/// point index.
SimpleValuation image_valuation(const SimpleValuation& nu, const SpacePtr& target,
                                const std::vector<int>& point_map);

/// Constriction of nu to a crescent: masses restricted to its members.
SimpleValuation constrict(const SimpleValuation& nu, Mask crescent_members);

/// Recovers point masses from a full table of values on all upsets
/// (validated strict, modular, monotone).
SimpleValuation masses_from_table(const SpacePtr& space, const std::map<Mask, Rat>& table);

/// Schroeder-Simpson decomposition.  `lattice` must be union/intersection
/// closed and contain the empty set and the whole space; mu(U) <= nu(U) is
/// required on every member.  Returns (nu1, nu2) with nu1 + nu2 = nu,
/// mu(U) <= nu1(U) on the lattice, and total(nu1) = total(mu).
std::pair<SimpleValuation, SimpleValuation> schroder_simpson_split(
    const SimpleValuation& mu, const SimpleValuation& nu, const std::vector<Mask>& lattice);

/// Second decomposition: from mu(U) + nu(U) <= pi(U) on the lattice,
/// produces (mu1, nu1) with mu1 + nu1 <= pi on every upset and
/// mu(U) <= mu1(U), nu(U) <= nu1(U) on lattice members.
std::pair<SimpleValuation, SimpleValuation> second_split(
    const SimpleValuation& mu, const SimpleValuation& nu, const SimpleValuation& pi,
    const std::vector<Mask>& lattice);

/// Edalat's trick, forward direction: probability valuation on a pointed
/// space to a subprobability valuation on the space minus bottom.
SimpleValuation edalat_to_sub(const SimpleValuation& nu, const SpacePtr& sub_space);

/// Edalat's trick, inverse: restores the mass deficit at bottom.
SimpleValuation edalat_to_prob(const SimpleValuation& sub, const SpacePtr& pointed_space);

void require_same_space(const SimpleValuation& a, const SimpleValuation& b);

}  // namespace valcone
