#include "valcone/free_cone.hpp"

#include <algorithm>

namespace valcone {

ConifyElem ConifyElem::pair(Rat r, Elem x) {
  if (!(r > Rat(0))) throw domain_error("conify pair needs a positive level");
  ConifyElem u;
  u.zero = false;
  u.r = std::move(r);
  u.x = std::move(x);
  return u;
}

bool conify_eq(const ConifyElem& u, const ConifyElem& v) {
  if (u.zero != v.zero) return false;
  return u.zero || (u.r == v.r && u.x == v.x);
}

ConifyElem conify_add(const AlgebraInstance& inst, const ConifyElem& u, const ConifyElem& v) {
  if (u.zero) return v;
  if (v.zero) return u;
  Rat sum = u.r + v.r;
  return ConifyElem::pair(sum, inst.mix(u.x, UnitRat(u.r / sum), v.x));
}

ConifyElem conify_smul(const AlgebraInstance&, const Rat& a, const ConifyElem& u) {
  if (a.is_negative()) throw domain_error("negative cone scalar");
  if (a.is_zero() || u.zero) return ConifyElem::make_zero();
  return ConifyElem::pair(a * u.r, u.x);
}

bool conify_le(const AlgebraInstance& inst, const ConifyElem& u, const ConifyElem& v) {
  if (u.zero) return true;  // 0 is least
  if (v.zero) return false;
  if (u.r > v.r) return false;
  if (u.r == v.r) return inst.leq(u.x, v.x);
  // u.r < v.r: need some x' with mix(x, r/s, x') <= y
  Rat ratio = u.r / v.r;
  if (inst.finite_carrier()) {
    for (const auto& cand : inst.carrier())
      if (inst.leq(inst.mix(u.x, UnitRat(ratio), cand), v.x)) return true;
    return false;
  }
  if (inst.has_cone_le_oracle()) {
    auto wit = inst.cone_le_witness(u.x, ratio, v.x);
    if (!wit) return false;
    if (!inst.leq(inst.mix(u.x, UnitRat(ratio), *wit), v.x))
      throw domain_error("internal: cone ordering oracle returned a bad witness");
    return true;
  }
  throw domain_error("cone ordering needs a finite carrier or an oracle");
}

Rat level(const ConifyElem& u) { return u.zero ? Rat(0) : u.r; }

bool conify_le1_member(const ConifyElem& u) { return level(u) <= Rat(1); }

ConifyElem conify_le1_mix(const AlgebraInstance& inst, const ConifyElem& u, const UnitRat& a,
                          const ConifyElem& v) {
  if (!conify_le1_member(u) || !conify_le1_member(v))
    throw domain_error("conify_{<=1} mix requires members of level <= 1");
  return conify_add(inst, conify_smul(inst, a.value(), u),
                    conify_smul(inst, a.complement(), v));
}

Elem conify_le1_extend(const AlgebraInstance& target, const std::function<Elem(const Elem&)>& f,
                       const ConifyElem& u) {
  if (!conify_le1_member(u)) throw domain_error("extension argument must have level <= 1");
  if (u.zero) return target.bottom();
  return scalar(target, UnitRat(u.r), f(u.x));
}

// ---------------------------------------------------------------------------
// Telescope

namespace {

Elem alpha_scale(const AlgebraInstance& inst, const UnitRat& alpha, const Elem& x) {
  return scalar(inst, alpha, x);
}

// Representatives of the class of (n, x) at the given level, for finite
// carriers (symbolic instances override through the oracle).
std::vector<Elem> reps_at_level(const AlgebraInstance& inst, const TeleParams& tp, int level,
                                int n, const Elem& x) {
  if (inst.has_tele_oracle()) return inst.tele_reps(level, n, x, tp.alpha);
  std::vector<Elem> out;
  for (const auto& z : inst.carrier())
    if (tele_equiv(inst, tp, level, z, n, x)) out.push_back(z);
  return out;
}

}  // namespace

bool tele_equiv(const AlgebraInstance& inst, const TeleParams& tp, int m, const Elem& x, int n,
                const Elem& y) {
  if (!inst.pointed()) throw domain_error("telescope needs a pointed instance");
  if (m < 0 || n < 0) throw domain_error("telescope levels are natural numbers");
  if (inst.has_tele_oracle()) {
    auto ru = inst.tele_reps(std::max(m, n), m, x, tp.alpha);
    auto rv = inst.tele_reps(std::max(m, n), n, y, tp.alpha);
    for (const auto& a : ru)
      for (const auto& b : rv)
        if (a == b) return true;
    return false;
  }
  if (!inst.finite_carrier())
    throw domain_error("telescope equivalence needs a finite carrier or an oracle");
  // align at the common level, then push both forward looking for equality;
  // pairs over a finite carrier cycle, so the cap is a definitive bound
  Elem a = x, b = y;
  for (int i = m; i < std::max(m, n); ++i) a = alpha_scale(inst, tp.alpha, a);
  for (int i = n; i < std::max(m, n); ++i) b = alpha_scale(inst, tp.alpha, b);
  std::vector<std::pair<Elem, Elem>> seen;
  for (int step = 0; step <= tp.search_cap; ++step) {
    if (a == b) return true;
    for (const auto& p : seen)
      if (p.first == a && p.second == b) return false;  // cycled
    seen.emplace_back(a, b);
    a = alpha_scale(inst, tp.alpha, a);
    b = alpha_scale(inst, tp.alpha, b);
  }
  throw domain_error("telescope search bound exceeded");
}

TelescopeElem tele_canonicalize(const AlgebraInstance& inst, const TeleParams& tp, int n,
                                const Elem& x) {
  if (!inst.pointed()) throw domain_error("telescope needs a pointed instance");
  inst.validate_elem(x);
  if (inst.has_tele_oracle()) {
    int n0 = inst.tele_min_level(n, x, tp.alpha);
    auto reps = inst.tele_reps(n0, n, x, tp.alpha);
    if (reps.empty()) throw domain_error("internal: telescope oracle found no representative");
    return TelescopeElem{n0, reps.front()};
  }
  if (!inst.finite_carrier())
    throw domain_error("telescope canonicalization needs a finite carrier or an oracle");
  for (int lvl = 0; lvl <= n; ++lvl) {
    for (const auto& z : inst.carrier())
      if (tele_equiv(inst, tp, lvl, z, n, x)) return TelescopeElem{lvl, z};
  }
  return TelescopeElem{n, x};  // unreachable: (n, x) represents itself
}

TelescopeElem tele_mix(const AlgebraInstance& inst, const TeleParams& tp, const TelescopeElem& u,
                       const UnitRat& a, const TelescopeElem& v) {
  int lvl = std::max(u.n, v.n);
  Elem xu = u.x, xv = v.x;
  for (int i = u.n; i < lvl; ++i) xu = alpha_scale(inst, tp.alpha, xu);
  for (int i = v.n; i < lvl; ++i) xv = alpha_scale(inst, tp.alpha, xv);
  return tele_canonicalize(inst, tp, lvl, inst.mix(xu, a, xv));
}

TelescopeElem tele_smul(const AlgebraInstance& inst, const TeleParams& tp, const Rat& a,
                        const TelescopeElem& u) {
  if (a.is_negative()) throw domain_error("negative telescope scalar");
  // smallest k with alpha^k * a <= 1
  Rat scaled = a;
  int k = 0;
  while (scaled > Rat(1)) {
    scaled *= tp.alpha.value();
    ++k;
  }
  return tele_canonicalize(inst, tp, u.n + k, scalar(inst, UnitRat(scaled), u.x));
}

bool tele_le(const AlgebraInstance& inst, const TeleParams& tp, const TelescopeElem& u,
             const TelescopeElem& v) {
  TelescopeElem cu = tele_canonicalize(inst, tp, u.n, u.x);
  TelescopeElem cv = tele_canonicalize(inst, tp, v.n, v.x);
  int start = std::max(cu.n, cv.n);
  std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> seen;
  for (int lvl = start; lvl <= start + tp.search_cap; ++lvl) {
    auto ru = reps_at_level(inst, tp, lvl, cu.n, cu.x);
    auto rv = reps_at_level(inst, tp, lvl, cv.n, cv.x);
    for (const auto& a : ru)
      for (const auto& b : rv)
        if (inst.leq(a, b)) return true;
    for (const auto& p : seen)
      if (p.first == ru && p.second == rv) return false;  // representative sets cycled
    seen.emplace_back(std::move(ru), std::move(rv));
  }
  if (inst.has_tele_oracle()) return false;  // closed forms are level-stable
  throw domain_error("telescope ordering search bound exceeded");
}

}  // namespace valcone
