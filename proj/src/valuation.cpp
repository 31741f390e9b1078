#include "valcone/valuation.hpp"

#include <algorithm>
#include <set>

#include "valcone/lp.hpp"

namespace valcone {

SimpleValuation::SimpleValuation(SpacePtr space,
                                 const std::vector<std::pair<std::string, Rat>>& masses)
    : space_(std::move(space)) {
  if (!space_) throw domain_error("valuation without a space");
  for (const auto& [name, r] : masses) {
    int i = space_->index(name);
    set_mass(i, mass(i) + r);
  }
}

SimpleValuation SimpleValuation::dirac(SpacePtr space, const std::string& point) {
  SimpleValuation nu(std::move(space));
  nu.set_mass(nu.space_->index(point), Rat(1));
  return nu;
}

Rat SimpleValuation::mass(int point) const {
  auto it = m_.find(point);
  return it == m_.end() ? Rat(0) : it->second;
}

void SimpleValuation::set_mass(int point, Rat value) {
  if (point < 0 || static_cast<std::size_t>(point) >= space_->size())
    throw domain_error("mass on unknown point");
  if (value.is_negative()) throw domain_error("negative mass");
  if (value.is_zero()) m_.erase(point);
  else m_[point] = std::move(value);
}

Rat SimpleValuation::total() const {
  Rat t(0);
  for (const auto& [_, r] : m_) t += r;
  return t;
}

Mask SimpleValuation::support() const {
  Mask s = 0;
  for (const auto& [p, _] : m_) s |= Mask(1) << p;
  return s;
}

Rat SimpleValuation::eval(const OpenSet& U) const {
  if (!U.space || !U.space->same_space(*space_)) throw domain_error("space mismatch in eval");
  return eval_mask(U.members);
}

Rat SimpleValuation::eval_mask(Mask members) const {
  Rat t(0);
  for (const auto& [p, r] : m_)
    if (mask_has(members, p)) t += r;
  return t;
}

XRat SimpleValuation::integrate(const std::function<XRat(int)>& h) const {
  XRat acc;
  for (const auto& [p, r] : m_) acc = acc + XRat(r) * h(p);
  return acc;
}

SimpleValuation SimpleValuation::scaled(const Rat& factor) const {
  if (factor.is_negative()) throw domain_error("negative scaling factor");
  SimpleValuation out(space_);
  if (factor.is_zero()) return out;
  for (const auto& [p, r] : m_) out.m_[p] = r * factor;
  return out;
}

SimpleValuation operator+(const SimpleValuation& a, const SimpleValuation& b) {
  require_same_space(a, b);
  SimpleValuation out = a;
  for (const auto& [p, r] : b.m_) out.set_mass(p, out.mass(p) + r);
  return out;
}

bool operator==(const SimpleValuation& a, const SimpleValuation& b) {
  return a.space_->same_space(*b.space_) && a.m_ == b.m_;
}

void require_same_space(const SimpleValuation& a, const SimpleValuation& b) {
  if (!a.space()->same_space(*b.space())) throw domain_error("valuations on different spaces");
}

namespace {

// Transport feasibility between mass vectors indexed by arbitrary keys,
// with an order relation on (row, col) pairs.  Rows: sum fixed; cols: sum
// bounded.  Used by stochastic_le and by both decomposition lemmas (there
// the keys are crescent signatures ordered by subset inclusion).
struct TransportProblem {
  std::vector<std::pair<int, Rat>> rows;  // key, required sum
  std::vector<std::pair<int, Rat>> cols;  // key, bound
  std::function<bool(int, int)> related;
};

std::optional<std::map<std::pair<int, int>, Rat>> solve_transport(const TransportProblem& tp) {
  lp::LinearSystem sys;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [rk, rv] : tp.rows)
    for (const auto& [ck, cv] : tp.cols)
      if (tp.related(rk, ck)) {
        pairs.emplace_back(rk, ck);
        sys.add_var("t_" + std::to_string(rk) + "_" + std::to_string(ck));
      }
  for (const auto& [rk, rv] : tp.rows) {
    std::vector<Rat> coef(sys.vars.size(), Rat(0));
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k].first == rk) coef[k] = Rat(1);
    sys.add(std::move(coef), lp::Rel::Eq, rv);
  }
  for (const auto& [ck, cv] : tp.cols) {
    std::vector<Rat> coef(sys.vars.size(), Rat(0));
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k].second == ck) coef[k] = Rat(1);
    sys.add(std::move(coef), lp::Rel::Le, cv);
  }
  auto res = lp::feasible(sys);
  if (std::holds_alternative<lp::Infeasible>(res)) return std::nullopt;
  const auto& sol = std::get<lp::Solution>(res).values;
  std::map<std::pair<int, int>, Rat> out;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!sol[k].is_zero()) out[pairs[k]] = sol[k];
  return out;
}

}  // namespace

bool verify_transport(const SimpleValuation& mu, const SimpleValuation& nu,
                      const TransportMatrix& t) {
  const auto& sp = *mu.space();
  std::map<int, Rat> row_sum, col_sum;
  for (const auto& [pc, r] : t.entries) {
    if (r.is_negative()) return false;
    if (!r.is_zero() && !sp.leq(pc.first, pc.second)) return false;  // (a)
    row_sum[pc.first] += r;
    col_sum[pc.second] += r;
  }
  for (const auto& [p, r] : mu.masses())
    if (row_sum[p] != r) return false;  // (b)
  for (const auto& [pc, _] : row_sum)
    if (mu.mass(pc) != row_sum[pc]) return false;
  for (const auto& [p, s] : col_sum)
    if (s > nu.mass(p)) return false;  // (c)
  return true;
}

StochasticOrder stochastic_le(const SimpleValuation& mu, const SimpleValuation& nu) {
  require_same_space(mu, nu);
  const auto& sp = *mu.space();
  TransportProblem tp;
  for (const auto& [p, r] : mu.masses()) tp.rows.emplace_back(p, r);
  for (const auto& [p, r] : nu.masses()) tp.cols.emplace_back(p, r);
  tp.related = [&sp](int a, int b) { return sp.leq(a, b); };
  auto sol = solve_transport(tp);
  if (!sol) return {false, std::nullopt};
  TransportMatrix t;
  for (const auto& [p, _] : mu.masses()) t.rows.push_back(p);
  for (const auto& [p, _] : nu.masses()) t.cols.push_back(p);
  t.entries = std::move(*sol);
  if (!verify_transport(mu, nu, t))
    throw domain_error("internal: transport witness failed verification");
  return {true, std::move(t)};
}

SimpleValuation image_valuation(const SimpleValuation& nu, const SpacePtr& target,
                                const std::vector<int>& point_map) {
  const auto& src = *nu.space();
  if (point_map.size() != src.size()) throw domain_error("point map arity mismatch");
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t b = 0; b < src.size(); ++b)
      if (src.leq(static_cast<int>(a), static_cast<int>(b)) &&
          !target->leq(point_map[a], point_map[b]))
        throw domain_error("point map is not monotone");
  SimpleValuation out(target);
  for (const auto& [p, r] : nu.masses()) {
    int q = point_map[static_cast<std::size_t>(p)];
    out.set_mass(q, out.mass(q) + r);
  }
  return out;
}

SimpleValuation constrict(const SimpleValuation& nu, Mask crescent_members) {
  SimpleValuation out(nu.space());
  for (const auto& [p, r] : nu.masses())
    if (mask_has(crescent_members, p)) out.set_mass(p, r);
  return out;
}

SimpleValuation masses_from_table(const SpacePtr& space, const std::map<Mask, Rat>& table) {
  auto upsets = space->all_upsets();
  if (table.size() != upsets.size()) throw domain_error("table must cover every upset exactly");
  for (Mask u : upsets)
    if (!table.count(u)) throw domain_error("table is missing an upset");
  auto val = [&](Mask u) { return table.at(u); };
  if (!val(0).is_zero()) throw domain_error("table is not strict");
  for (Mask u : upsets) {
    if (val(u).is_negative()) throw domain_error("table has a negative value");
    for (Mask v : upsets) {
      if ((u & v) == u && !(val(u) <= val(v))) throw domain_error("table is not monotone");
      if (val(u) + val(v) != val(u | v) + val(u & v)) throw domain_error("table is not modular");
    }
  }
  SimpleValuation out(space);
  for (std::size_t x = 0; x < space->size(); ++x) {
    Mask up = space->upset_of(static_cast<int>(x));
    Rat m = val(up) - val(up & ~(Mask(1) << x));
    if (m.is_negative()) throw domain_error("table yields a negative point mass");
    out.set_mass(static_cast<int>(x), m);
  }
  for (Mask u : upsets)
    if (out.eval_mask(u) != val(u))
      throw domain_error("internal: recovered masses do not reproduce the table");
  return out;
}

namespace {

void require_closed_lattice(const FinPoset& space, const std::vector<Mask>& lattice) {
  bool has_empty = false, has_full = false;
  for (Mask u : lattice) {
    if (!space.is_upset(u)) throw domain_error("lattice member is not an open");
    if (u == 0) has_empty = true;
    if (u == space.full_mask()) has_full = true;
  }
  if (!has_empty || !has_full)
    throw domain_error("lattice must contain the empty set and the whole space");
  auto find = [&](Mask m) {
    return std::find(lattice.begin(), lattice.end(), m) != lattice.end();
  };
  for (std::size_t i = 0; i < lattice.size(); ++i)
    for (std::size_t j = i + 1; j < lattice.size(); ++j) {
      if (!find(lattice[i] | lattice[j]) || !find(lattice[i] & lattice[j]))
        throw domain_error("lattice is not closed under union/intersection");
    }
}

// Signature of a point w.r.t. the lattice members (the crescent label the
// point falls into, as a subset of member indices).
std::vector<Mask> signatures(const FinPoset& space, const std::vector<Mask>& lattice) {
  std::vector<Mask> sig(space.size(), 0);
  if (lattice.size() > 60) throw domain_error("lattice too large for signatures");
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t i = 0; i < lattice.size(); ++i)
      if (mask_has(lattice[i], static_cast<int>(x))) sig[x] |= Mask(1) << i;
  return sig;
}

struct CrescentDecomposition {
  // per signature: total mass of each valuation, in a deterministic order
  std::vector<Mask> sigs;  // distinct signatures, ascending
  std::map<Mask, int> sig_index;
  std::vector<std::vector<Rat>> mass;  // [valuation][sig]
};

CrescentDecomposition decompose(const FinPoset& space, const std::vector<Mask>& lattice,
                                const std::vector<const SimpleValuation*>& vals,
                                const std::vector<Mask>& sig) {
  CrescentDecomposition d;
  std::set<Mask> seen;
  for (const auto* v : vals)
    for (const auto& [p, _] : v->masses()) seen.insert(sig[static_cast<std::size_t>(p)]);
  d.sigs.assign(seen.begin(), seen.end());
  for (std::size_t i = 0; i < d.sigs.size(); ++i) d.sig_index[d.sigs[i]] = static_cast<int>(i);
  d.mass.assign(vals.size(), std::vector<Rat>(d.sigs.size(), Rat(0)));
  for (std::size_t k = 0; k < vals.size(); ++k)
    for (const auto& [p, r] : vals[k]->masses())
      d.mass[k][static_cast<std::size_t>(d.sig_index[sig[static_cast<std::size_t>(p)]])] += r;
  (void)space;
  (void)lattice;
  return d;
}

// Scales each point of nu by the coefficient attached to its crescent.
SimpleValuation combine(const SimpleValuation& nu, const std::vector<Mask>& sig,
                        const CrescentDecomposition& d, const std::vector<Rat>& coef) {
  SimpleValuation out(nu.space());
  for (const auto& [p, r] : nu.masses()) {
    auto it = d.sig_index.find(sig[static_cast<std::size_t>(p)]);
    if (it == d.sig_index.end()) continue;
    Rat c = coef[static_cast<std::size_t>(it->second)];
    if (!c.is_zero()) out.set_mass(p, r * c);
  }
  return out;
}

}  // namespace

std::pair<SimpleValuation, SimpleValuation> schroder_simpson_split(
    const SimpleValuation& mu, const SimpleValuation& nu, const std::vector<Mask>& lattice) {
  require_same_space(mu, nu);
  const auto& space = *mu.space();
  require_closed_lattice(space, lattice);
  for (Mask u : lattice)
    if (!(mu.eval_mask(u) <= nu.eval_mask(u)))
      throw domain_error("precondition failed: mu > nu on a lattice member");

  auto sig = signatures(space, lattice);
  auto d = decompose(space, lattice, {&mu, &nu}, sig);

  // Jones transport between the image valuations on the signature poset.
  TransportProblem tp;
  for (std::size_t i = 0; i < d.sigs.size(); ++i) {
    if (!d.mass[0][i].is_zero()) tp.rows.emplace_back(static_cast<int>(i), d.mass[0][i]);
    if (!d.mass[1][i].is_zero()) tp.cols.emplace_back(static_cast<int>(i), d.mass[1][i]);
  }
  tp.related = [&d](int i, int j) {
    Mask a = d.sigs[static_cast<std::size_t>(i)], b = d.sigs[static_cast<std::size_t>(j)];
    return (a & b) == a;
  };
  auto t = solve_transport(tp);
  if (!t)
    throw domain_error("precondition failed: no transport (lattice not closed or mu > nu)");

  std::vector<Rat> c(d.sigs.size(), Rat(0));
  for (const auto& [ij, v] : *t) c[static_cast<std::size_t>(ij.second)] += v;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!d.mass[1][j].is_zero()) c[j] /= d.mass[1][j];

  std::vector<Rat> cbar(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) cbar[j] = Rat(1) - c[j];
  return {combine(nu, sig, d, c), combine(nu, sig, d, cbar)};
}

std::pair<SimpleValuation, SimpleValuation> second_split(
    const SimpleValuation& mu, const SimpleValuation& nu, const SimpleValuation& pi,
    const std::vector<Mask>& lattice) {
  require_same_space(mu, nu);
  require_same_space(mu, pi);
  const auto& space = *mu.space();
  require_closed_lattice(space, lattice);
  for (Mask u : lattice)
    if (!(mu.eval_mask(u) + nu.eval_mask(u) <= pi.eval_mask(u)))
      throw domain_error("precondition failed: mu + nu > pi on a lattice member");

  auto sig = signatures(space, lattice);
  auto d = decompose(space, lattice, {&mu, &nu, &pi}, sig);
  const std::size_t k = d.sigs.size();

  TransportProblem tp;
  for (std::size_t i = 0; i < k; ++i) {
    Rat ab = d.mass[0][i] + d.mass[1][i];
    if (!ab.is_zero()) tp.rows.emplace_back(static_cast<int>(i), ab);
    if (!d.mass[2][i].is_zero()) tp.cols.emplace_back(static_cast<int>(i), d.mass[2][i]);
  }
  tp.related = [&d](int i, int j) {
    Mask a = d.sigs[static_cast<std::size_t>(i)], b = d.sigs[static_cast<std::size_t>(j)];
    return (a & b) == a;
  };
  auto t = solve_transport(tp);
  if (!t)
    throw domain_error("precondition failed: no transport for the second decomposition");

  // u_IJ = a_I/(a_I+b_I) t_IJ, v_IJ the complementary share; then
  // a'_J = sum_I u_IJ / c_J and b'_J = sum_I v_IJ / c_J.
  std::vector<Rat> usum(k, Rat(0)), vsum(k, Rat(0));
  for (const auto& [ij, tv] : *t) {
    auto i = static_cast<std::size_t>(ij.first);
    auto j = static_cast<std::size_t>(ij.second);
    Rat ab = d.mass[0][i] + d.mass[1][i];
    if (ab.is_zero()) continue;
    usum[j] += d.mass[0][i] / ab * tv;
    vsum[j] += d.mass[1][i] / ab * tv;
  }
  std::vector<Rat> aj(k, Rat(0)), bj(k, Rat(0));
  for (std::size_t j = 0; j < k; ++j) {
    if (d.mass[2][j].is_zero()) continue;
    aj[j] = usum[j] / d.mass[2][j];
    bj[j] = vsum[j] / d.mass[2][j];
  }
  return {combine(pi, sig, d, aj), combine(pi, sig, d, bj)};
}

SimpleValuation edalat_to_sub(const SimpleValuation& nu, const SpacePtr& sub_space) {
  if (nu.total() != Rat(1)) throw domain_error("edalat_to_sub requires a probability valuation");
  const auto& space = *nu.space();
  int bot = space.least();
  if (bot < 0) throw domain_error("space has no least element");
  SimpleValuation out(sub_space);
  for (const auto& [p, r] : nu.masses()) {
    if (p == bot) continue;
    out.set_mass(sub_space->index(space.name(p)), r);
  }
  return out;
}

SimpleValuation edalat_to_prob(const SimpleValuation& sub, const SpacePtr& pointed_space) {
  int bot = pointed_space->least();
  if (bot < 0) throw domain_error("target space has no least element");
  Rat t = sub.total();
  if (t > Rat(1)) throw domain_error("edalat_to_prob requires a subprobability valuation");
  SimpleValuation out(pointed_space);
  const auto& sp = *sub.space();
  for (const auto& [p, r] : sub.masses())
    out.set_mass(pointed_space->index(sp.name(p)), r);
  out.set_mass(bot, Rat(1) - t);
  return out;
}

}  // namespace valcone
