#pragma once

// Shared test utilities: independent oracles and generators.  Everything
// here stays independent of the implementation paths it cross-checks.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "valcone/baryalg.hpp"
#include "valcone/finspace.hpp"
#include "valcone/lp.hpp"
#include "valcone/rat.hpp"
#include "valcone/valuation.hpp"

namespace valcone::testing {

using Rng = std::mt19937_64;

inline SpacePtr make_space(std::vector<std::string> elems,
                           std::vector<std::pair<std::string, std::string>> pairs) {
  return std::make_shared<FinPoset>(std::move(elems), pairs);
}

inline SpacePtr chain_ab() { return make_space({"a", "b"}, {{"a", "b"}}); }

inline SpacePtr diamond() {
  return make_space({"bot", "a", "b", "top"},
                    {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

inline SpacePtr antichain(int n) {
  std::vector<std::string> elems;
  for (int i = 0; i < n; ++i) elems.push_back("x" + std::to_string(i));
  return make_space(std::move(elems), {});
}

// Brute-force stochastic ordering oracle: mu(U) <= nu(U) over every upset.
inline bool stochastic_le_oracle(const SimpleValuation& mu, const SimpleValuation& nu) {
  for (Mask u : mu.space()->all_upsets())
    if (!(mu.eval_mask(u) <= nu.eval_mask(u))) return false;
  return true;
}

// Choquet-formula oracle for monotone h with finitely many values:
// integral of nu(h > t) dt as a finite sum over the level sets.
inline XRat choquet_integral_oracle(const SimpleValuation& nu,
                                    const std::function<XRat(int)>& h) {
  const auto& space = *nu.space();
  std::vector<Rat> levels;
  bool has_inf = false;
  Rat inf_mass(0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    XRat v = h(static_cast<int>(i));
    if (v.is_infinite()) {
      has_inf = true;
      inf_mass += nu.mass(static_cast<int>(i));
    } else if (!v.finite().is_zero()) {
      levels.push_back(v.finite());
    }
  }
  if (has_inf && !inf_mass.is_zero()) return XRat::infinity();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  Rat acc(0);
  Rat prev(0);
  for (const Rat& v : levels) {
    // nu({h >= v}) = nu(h > t) for t in [prev, v)
    Rat mass(0);
    for (std::size_t i = 0; i < space.size(); ++i) {
      XRat hv = h(static_cast<int>(i));
      if (hv.is_infinite() || hv.finite() >= v) mass += nu.mass(static_cast<int>(i));
    }
    acc += (v - prev) * mass;
    prev = v;
  }
  return XRat(acc);
}

// Fourier-Motzkin feasibility oracle over rationals.  Constraints as
// rows (coef, rhs) meaning coef . x <= rhs; equalities pre-split by the
// caller.  Exponential, for small systems only.
inline bool fourier_motzkin_feasible(std::vector<std::pair<std::vector<Rat>, Rat>> rows,
                                     std::size_t nvars) {
  for (std::size_t v = nvars; v-- > 0;) {
    std::vector<std::pair<std::vector<Rat>, Rat>> lower, upper, rest;
    for (auto& [coef, rhs] : rows) {
      if (coef[v].is_zero()) {
        rest.emplace_back(coef, rhs);
      } else if (coef[v] > Rat(0)) {
        upper.emplace_back(coef, rhs);
      } else {
        lower.emplace_back(coef, rhs);
      }
    }
    for (const auto& [lc, lr] : lower)
      for (const auto& [uc, ur] : upper) {
        // combine to eliminate v: scale and add
        Rat ls = -lc[v], us = uc[v];
        std::vector<Rat> coef(lc.size(), Rat(0));
        for (std::size_t i = 0; i < coef.size(); ++i) coef[i] = lc[i] * us + uc[i] * ls;
        coef[v] = Rat(0);
        rest.emplace_back(std::move(coef), lr * us + ur * ls);
      }
    rows = std::move(rest);
  }
  for (const auto& [coef, rhs] : rows)
    if (rhs.is_negative()) return false;
  return true;
}

// Wraps a LinearSystem into pure <=-rows for the FM oracle.
inline bool fm_feasible(const lp::LinearSystem& sys) {
  std::vector<std::pair<std::vector<Rat>, Rat>> rows;
  auto negate = [](std::vector<Rat> v) {
    for (auto& r : v) r = -r;
    return v;
  };
  for (const auto& c : sys.constraints) {
    if (c.rel != lp::Rel::Ge) rows.emplace_back(c.coef, c.rhs);
    if (c.rel != lp::Rel::Le) rows.emplace_back(negate(c.coef), -c.rhs);
  }
  for (std::size_t j = 0; j < sys.vars.size(); ++j) {
    bool nn = j < sys.nonneg.size() ? sys.nonneg[j] : true;
    if (!nn) continue;
    std::vector<Rat> coef(sys.vars.size(), Rat(0));
    coef[j] = Rat(-1);
    rows.emplace_back(std::move(coef), Rat(0));
  }
  return fourier_motzkin_feasible(std::move(rows), sys.vars.size());
}

inline Rat random_rat(Rng& rng, int max_num = 8, int max_den = 8) {
  std::uniform_int_distribution<int> num(0, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rat(num(rng), den(rng));
}

inline SimpleValuation random_valuation(Rng& rng, const SpacePtr& space, int max_den = 8) {
  SimpleValuation nu(space);
  std::uniform_int_distribution<int> num(0, 3);
  std::uniform_int_distribution<int> den(1, max_den);
  for (std::size_t i = 0; i < space->size(); ++i)
    nu.set_mass(static_cast<int>(i), Rat(num(rng), den(rng)));
  return nu;
}

// Random probability valuation with denominators bounded by max_den.
inline SimpleValuation random_prob_valuation(Rng& rng, const SpacePtr& space, int max_den = 8) {
  std::uniform_int_distribution<int> den_d(1, max_den);
  int den = den_d(rng);
  std::vector<int> cuts;
  std::uniform_int_distribution<int> cut_d(0, den);
  for (std::size_t i = 0; i + 1 < space->size(); ++i) cuts.push_back(cut_d(rng));
  cuts.push_back(0);
  cuts.push_back(den);
  std::sort(cuts.begin(), cuts.end());
  SimpleValuation nu(space);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    int part = cuts[i + 1] - cuts[i];
    if (part > 0)
      nu.set_mass(static_cast<int>(i % space->size()),
                  nu.mass(static_cast<int>(i % space->size())) + Rat(part, den));
  }
  return nu;
}

// mu obtained from nu by moving mass downward: guarantees mu <= nu in the
// stochastic ordering (and mu(U) <= nu(U) on every lattice).
inline SimpleValuation random_dominated(Rng& rng, const SimpleValuation& nu) {
  const auto& space = *nu.space();
  SimpleValuation mu(nu.space());
  std::uniform_int_distribution<int> num(0, 4);
  for (const auto& [p, r] : nu.masses()) {
    auto below = mask_points(space.downset_of(p));
    // split a random sub-amount of r among points below p
    Rat remaining = r;
    for (int q : below) {
      int k = num(rng);
      Rat share = remaining * Rat(k, 8);
      if (share.is_zero()) continue;
      mu.set_mass(q, mu.mass(q) + share);
      remaining -= share;
      if (remaining.is_zero()) break;
    }
  }
  return mu;
}

// All labeled posets on n points (n small): each unordered pair is <, >,
// or incomparable; keep the transitive ones.
inline std::vector<SpacePtr> all_posets(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<SpacePtr> out;
  std::vector<int> state(pairs.size(), 0);
  while (true) {
    // build the relation
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) rel[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (state[k] == 1) rel[pairs[k].first][pairs[k].second] = true;
      if (state[k] == 2) rel[pairs[k].second][pairs[k].first] = true;
    }
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = 0; j < n && transitive; ++j)
        for (int k = 0; k < n; ++k)
          if (rel[i][j] && rel[j][k] && !rel[i][k]) {
            transitive = false;
            break;
          }
    if (transitive) {
      std::vector<std::pair<std::string, std::string>> lp;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && rel[i][j]) lp.emplace_back(names[i], names[j]);
      out.push_back(make_space(names, lp));
    }
    std::size_t k = 0;
    while (k < state.size() && ++state[k] == 3) state[k++] = 0;
    if (k == state.size()) break;
  }
  return out;
}

// Labeled join-semilattices on n points.
inline std::vector<std::shared_ptr<SemilatticeInstance>> all_semilattices(int n) {
  std::vector<std::shared_ptr<SemilatticeInstance>> out;
  for (const auto& p : all_posets(n)) {
    try {
      out.push_back(std::make_shared<SemilatticeInstance>(p));
    } catch (const domain_error&) {
    }
  }
  return out;
}

// Random poset on the given points: random DAG edges, transitively closed.
inline SpacePtr random_poset(Rng& rng, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> pairs;
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) == 0) pairs.emplace_back(names[i], names[j]);  // i < j only: acyclic
  return make_space(std::move(names), pairs);
}

inline std::vector<Mask> random_opens(Rng& rng, const FinPoset& space, int count) {
  auto upsets = space.all_upsets();
  std::uniform_int_distribution<std::size_t> pick(0, upsets.size() - 1);
  std::vector<Mask> out;
  for (int i = 0; i < count; ++i) out.push_back(upsets[pick(rng)]);
  return out;
}

}  // namespace valcone::testing
