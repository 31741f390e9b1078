#include "valcone/baryalg.hpp"

#include <algorithm>
#include <sstream>

#include "valcone/lp.hpp"

namespace valcone {

std::string elem_str(const Elem& e) {
  struct V {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const Vec& v) const {
      std::string out = "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].str();
      }
      return out + ")";
    }
    std::string operator()(const KpElem& k) const {
      return k.at01 ? "(0,1)" : "(-inf," + k.s.str() + ")";
    }
    std::string operator()(const Rat& r) const { return r.str(); }
    std::string operator()(const SimpleValuation& nu) const {
      std::string out = "{";
      bool first = true;
      for (const auto& [p, r] : nu.masses()) {
        if (!first) out += ",";
        first = false;
        out += nu.space()->name(p) + ":" + r.str();
      }
      return out + "}";
    }
  };
  return std::visit(V{}, e);
}

Elem AlgebraInstance::bottom() const {
  throw domain_error("instance '" + kind() + "' is not pointed");
}

const std::vector<Elem>& AlgebraInstance::carrier() const {
  throw domain_error("instance '" + kind() + "' has no finite carrier");
}

std::optional<Elem> AlgebraInstance::cone_le_witness(const Elem&, const Rat&,
                                                     const Elem&) const {
  throw domain_error("instance '" + kind() + "' has no cone ordering oracle");
}

int AlgebraInstance::tele_min_level(int, const Elem&, const UnitRat&) const {
  throw domain_error("instance '" + kind() + "' has no telescope oracle");
}

std::vector<Elem> AlgebraInstance::tele_reps(int, int, const Elem&, const UnitRat&) const {
  throw domain_error("instance '" + kind() + "' has no telescope oracle");
}

std::vector<Elem> AlgebraInstance::check_elems() const {
  return finite_carrier() ? carrier() : sample_elems();
}

int AlgebraInstance::carrier_index(const Elem& e) const {
  const auto& c = carrier();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == e) return static_cast<int>(i);
  throw domain_error("element is not in the carrier");
}

// ---------------------------------------------------------------------------
// Semilattice

SemilatticeInstance::SemilatticeInstance(SpacePtr poset) : poset_(std::move(poset)) {
  const std::size_t n = poset_->size();
  join_.assign(n, std::vector<int>(n, -1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Mask common = poset_->upset_of(static_cast<int>(a)) & poset_->upset_of(static_cast<int>(b));
      auto mins = poset_->minimal_elements(common);
      if (mins.size() != 1)
        throw domain_error("not a sup-semilattice: " + poset_->name(static_cast<int>(a)) +
                           " and " + poset_->name(static_cast<int>(b)) + " have no join");
      join_[a][b] = mins[0];
    }
  for (const auto& name : poset_->names()) carrier_.emplace_back(name);
}

int SemilatticeInstance::point(const Elem& e) const {
  const auto* s = std::get_if<std::string>(&e);
  if (!s) throw domain_error("semilattice element must be a point name");
  return poset_->index(*s);
}

Elem SemilatticeInstance::mix(const Elem& x, const UnitRat& a, const Elem& y) const {
  int i = point(x), j = point(y);
  if (a.is_one()) return x;
  if (a.is_zero()) return y;
  return Elem(poset_->name(join_[i][j]));
}

bool SemilatticeInstance::leq(const Elem& x, const Elem& y) const {
  return poset_->leq(point(x), point(y));
}

Elem SemilatticeInstance::bottom() const {
  int b = poset_->least();
  if (b < 0) throw domain_error("semilattice has no least element");
  return Elem(poset_->name(b));
}

void SemilatticeInstance::validate_elem(const Elem& e) const { point(e); }

nlohmann::json SemilatticeInstance::elem_to_json(const Elem& e) const {
  return std::get<std::string>(e);
}

Elem SemilatticeInstance::elem_from_json(const nlohmann::json& j) const {
  if (!j.is_string()) throw domain_error("semilattice element must be a string");
  Elem e = j.get<std::string>();
  validate_elem(e);
  return e;
}

// ---------------------------------------------------------------------------
// Rational convex

RationalConvexInstance::RationalConvexInstance(std::size_t dim) : dim_(dim) {
  if (dim_ == 0 || dim_ > 16) throw domain_error("rational_convex dimension out of range");
}

Elem RationalConvexInstance::mix(const Elem& x, const UnitRat& a, const Elem& y) const {
  const auto& u = std::get<Vec>(x);
  const auto& v = std::get<Vec>(y);
  Vec out(dim_);
  Rat ca = a.value(), cb = a.complement();
  for (std::size_t i = 0; i < dim_; ++i) out[i] = ca * u[i] + cb * v[i];
  return out;
}

bool RationalConvexInstance::leq(const Elem& x, const Elem& y) const {
  const auto& u = std::get<Vec>(x);
  const auto& v = std::get<Vec>(y);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!(u[i] <= v[i])) return false;
  return true;
}

std::vector<Elem> RationalConvexInstance::sample_elems() const {
  std::vector<Elem> out;
  out.push_back(Vec(dim_, Rat(0)));
  out.push_back(Vec(dim_, Rat(1)));
  for (std::size_t i = 0; i < dim_; ++i) {
    Vec e(dim_, Rat(0));
    e[i] = Rat(1);
    out.push_back(e);
    e[i] = Rat(1, 2);
    out.push_back(e);
  }
  Vec mixed(dim_);
  for (std::size_t i = 0; i < dim_; ++i) mixed[i] = Rat(static_cast<long long>(i) + 1, 3);
  out.push_back(mixed);
  return out;
}

void RationalConvexInstance::validate_elem(const Elem& e) const {
  const auto* v = std::get_if<Vec>(&e);
  if (!v || v->size() != dim_) throw domain_error("rational_convex element has wrong shape");
  for (const auto& r : *v)
    if (r.is_negative()) throw domain_error("rational_convex element must be nonnegative");
}

nlohmann::json RationalConvexInstance::elem_to_json(const Elem& e) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : std::get<Vec>(e)) arr.push_back(r.str());
  return arr;
}

Elem RationalConvexInstance::elem_from_json(const nlohmann::json& j) const {
  if (!j.is_array()) throw domain_error("rational_convex element must be an array");
  Vec v;
  for (const auto& item : j) v.push_back(Rat::parse(item.get<std::string>()));
  Elem e = std::move(v);
  validate_elem(e);
  return e;
}

// ---------------------------------------------------------------------------
// Keimel-Plotkin example

namespace {
const KpElem& as_kp(const Elem& e) {
  const auto* k = std::get_if<KpElem>(&e);
  if (!k) throw domain_error("expected a KP element");
  return *k;
}
}  // namespace

Elem KpInstance::mix(const Elem& x, const UnitRat& a, const Elem& y) const {
  const auto& u = as_kp(x);
  const auto& v = as_kp(y);
  if (a.is_one()) return x;
  if (a.is_zero()) return y;
  // first coordinate is 0 only when both contributing points sit at (0,1)
  bool at01 = u.at01 && v.at01;
  Rat s = a.value() * u.s + a.complement() * v.s;
  return KpElem{at01, s};
}

bool KpInstance::leq(const Elem& x, const Elem& y) const {
  const auto& u = as_kp(x);
  const auto& v = as_kp(y);
  if (u.at01 && !v.at01) return false;  // 0 <= -inf fails
  return u.s <= v.s;
}

std::vector<Elem> KpInstance::sample_elems() const {
  return {KpElem{false, Rat(0)}, KpElem{false, Rat(1, 4)}, KpElem{false, Rat(1, 2)},
          KpElem{false, Rat(3, 4)}, KpElem{false, Rat(1)}, KpElem{true, Rat(1)}};
}

void KpInstance::validate_elem(const Elem& e) const {
  const auto& k = as_kp(e);
  if (k.s.is_negative() || k.s > Rat(1)) throw domain_error("KP second coordinate out of [0,1]");
  if (k.at01 && k.s != Rat(1)) throw domain_error("the isolated KP point is (0,1)");
}

nlohmann::json KpInstance::elem_to_json(const Elem& e) const {
  const auto& k = as_kp(e);
  return nlohmann::json::array({k.at01 ? "0" : "-inf", k.s.str()});
}

Elem KpInstance::elem_from_json(const nlohmann::json& j) const {
  if (!j.is_array() || j.size() != 2) throw domain_error("KP element must be a pair");
  std::string first = j[0].get<std::string>();
  KpElem k;
  k.at01 = (first == "0");
  if (!k.at01 && first != "-inf") throw domain_error("KP first coordinate must be -inf or 0");
  k.s = Rat::parse(j[1].get<std::string>());
  Elem e = k;
  validate_elem(e);
  return e;
}

std::optional<Elem> KpInstance::cone_le_witness(const Elem& x, const Rat& ratio,
                                                const Elem& y) const {
  // minimize mix(x, ratio, x') by taking x' = bottom; works iff
  // ratio * s_x <= s_y (and always when y is the isolated point).
  const auto& u = as_kp(x);
  const auto& v = as_kp(y);
  if (v.at01) return bottom();
  if (ratio * u.s <= v.s) return bottom();
  return std::nullopt;
}

int KpInstance::tele_min_level(int n, const Elem& x, const UnitRat& alpha) const {
  const auto& k = as_kp(x);
  if (k.s.is_zero()) return 0;  // the class of bottom
  // least j with s * alpha^(j-n) <= 1
  Rat bound(1);
  for (int j = n; j >= 0; --j) {
    if (k.s <= bound) {
      // s / alpha^(n-j) is still <= 1 at this j; keep descending
      if (j == 0) return 0;
      bound = bound * alpha.value();
      continue;
    }
    return j + 1;
  }
  return n;
}

std::vector<Elem> KpInstance::tele_reps(int level, int n, const Elem& x,
                                        const UnitRat& alpha) const {
  const auto& k = as_kp(x);
  int n0 = tele_min_level(n, x, alpha);
  if (level < n0) return {};
  // second coordinate of the representative at this level
  Rat s = k.s;
  for (int j = 0; j < n - level; ++j) s /= alpha.value();
  for (int j = 0; j < level - n; ++j) s *= alpha.value();
  std::vector<Elem> out;
  out.push_back(KpElem{false, s});
  if (s == Rat(1)) out.push_back(KpElem{true, Rat(1)});
  return out;
}

// ---------------------------------------------------------------------------
// B^-

namespace {
const Rat& as_bminus(const Elem& e) {
  const auto* r = std::get_if<Rat>(&e);
  if (!r) throw domain_error("expected a B^- element");
  return *r;
}
}  // namespace

Elem BMinusInstance::mix(const Elem& x, const UnitRat& a, const Elem& y) const {
  return a.value() * as_bminus(x) + a.complement() * as_bminus(y);
}

bool BMinusInstance::leq(const Elem& x, const Elem& y) const {
  return as_bminus(x) <= as_bminus(y);
}

std::vector<Elem> BMinusInstance::sample_elems() const {
  return {Rat(0), Rat(-1), Rat(-1, 2), Rat(-2), Rat(-1, 3), Rat(-3)};
}

void BMinusInstance::validate_elem(const Elem& e) const {
  if (as_bminus(e) > Rat(0)) throw domain_error("B^- element must be <= 0");
}

nlohmann::json BMinusInstance::elem_to_json(const Elem& e) const {
  return std::get<Rat>(e).str();
}

Elem BMinusInstance::elem_from_json(const nlohmann::json& j) const {
  Elem e = Rat::parse(j.get<std::string>());
  validate_elem(e);
  return e;
}

std::optional<Elem> BMinusInstance::cone_le_witness(const Elem& x, const Rat& ratio,
                                                    const Elem& y) const {
  // solve ratio*x + (1-ratio)*x' = y and clamp at 0
  Rat solved = (as_bminus(y) - ratio * as_bminus(x)) / (Rat(1) - ratio);
  return Elem(std::min(solved, Rat(0)));
}

// ---------------------------------------------------------------------------
// Valuation algebras

ValuationAlgebraInstance::ValuationAlgebraInstance(SpacePtr space, ValuationMode mode)
    : space_(std::move(space)), mode_(mode) {}

namespace {
const SimpleValuation& as_val(const Elem& e) {
  const auto* v = std::get_if<SimpleValuation>(&e);
  if (!v) throw domain_error("expected a valuation element");
  return *v;
}
}  // namespace

Elem ValuationAlgebraInstance::mix(const Elem& x, const UnitRat& a, const Elem& y) const {
  return as_val(x).scaled(a.value()) + as_val(y).scaled(a.complement());
}

bool ValuationAlgebraInstance::leq(const Elem& x, const Elem& y) const {
  return stochastic_le(as_val(x), as_val(y)).related;
}

Elem ValuationAlgebraInstance::bottom() const {
  if (mode_ != ValuationMode::SubProb)
    throw domain_error("probability valuations have no least element");
  return SimpleValuation(space_);
}

std::vector<Elem> ValuationAlgebraInstance::sample_elems() const {
  std::vector<Elem> out;
  if (mode_ == ValuationMode::SubProb) {
    out.push_back(SimpleValuation(space_));
    out.push_back(SimpleValuation::dirac(space_, space_->name(0)).scaled(Rat(1, 2)));
  }
  for (std::size_t i = 0; i < space_->size(); ++i)
    out.push_back(SimpleValuation::dirac(space_, space_->name(static_cast<int>(i))));
  // a uniform mixture
  SimpleValuation uni(space_);
  Rat w(1, static_cast<long long>(space_->size()));
  for (std::size_t i = 0; i < space_->size(); ++i) uni.set_mass(static_cast<int>(i), w);
  out.push_back(uni);
  return out;
}

void ValuationAlgebraInstance::validate_elem(const Elem& e) const {
  const auto& v = as_val(e);
  if (!v.space()->same_space(*space_)) throw domain_error("valuation element on wrong space");
  Rat t = v.total();
  if (mode_ == ValuationMode::Prob && t != Rat(1))
    throw domain_error("probability valuation must have total 1");
  if (mode_ == ValuationMode::SubProb && t > Rat(1))
    throw domain_error("subprobability valuation must have total <= 1");
}

nlohmann::json ValuationAlgebraInstance::elem_to_json(const Elem& e) const {
  nlohmann::json masses = nlohmann::json::object();
  const auto& v = as_val(e);
  for (const auto& [p, r] : v.masses()) masses[v.space()->name(p)] = r.str();
  return nlohmann::json{{"masses", masses}};
}

Elem ValuationAlgebraInstance::elem_from_json(const nlohmann::json& j) const {
  if (!j.is_object() || !j.contains("masses"))
    throw domain_error("valuation element must be {\"masses\": {...}}");
  std::vector<std::pair<std::string, Rat>> masses;
  for (const auto& [name, val] : j.at("masses").items())
    masses.emplace_back(name, Rat::parse(val.get<std::string>()));
  Elem e = SimpleValuation(space_, masses);
  validate_elem(e);
  return e;
}

// ---------------------------------------------------------------------------
// Law checkers

CheckSchedule CheckSchedule::standard(const AlgebraInstance& inst) {
  return {inst.check_elems(), coefficient_grid()};
}

namespace {

void record(Report& rep, const std::string& law, const std::string& witness) {
  rep.pass = false;
  if (rep.violations.size() < 32) rep.violations.push_back({law, witness});
}

std::string w2(const AlgebraInstance&, const Elem& x, const Rat& a, const Elem& y) {
  std::ostringstream os;
  os << elem_str(x) << " +_" << a.str() << " " << elem_str(y);
  return os.str();
}

}  // namespace

Report check_axioms(const AlgebraInstance& inst, const CheckSchedule& s) {
  Report rep;
  const auto& E = s.elems;
  for (const auto& x : E)
    for (const auto& y : E) {
      ++rep.cases_checked;
      if (!(inst.mix(x, UnitRat(Rat(1)), y) == x))
        record(rep, "unit", w2(inst, x, Rat(1), y));
      for (const auto& a : s.coefficients) {
        ++rep.cases_checked;
        if (!(inst.mix(x, UnitRat(a), x) == x)) record(rep, "idempotence", w2(inst, x, a, x));
        if (!(inst.mix(x, UnitRat(a), y) == inst.mix(y, UnitRat(Rat(1) - a), x)))
          record(rep, "skew-commutativity", w2(inst, x, a, y));
      }
    }
  for (const auto& x : E)
    for (const auto& y : E)
      for (const auto& z : E)
        for (const auto& a : s.coefficients) {
          if (a == Rat(1)) continue;
          for (const auto& b : s.coefficients) {
            if (b == Rat(1)) continue;
            ++rep.cases_checked;
            Rat inner = (Rat(1) - a) * b / (Rat(1) - a * b);
            Elem lhs = inst.mix(inst.mix(x, UnitRat(a), y), UnitRat(b), z);
            Elem rhs = inst.mix(x, UnitRat(a * b), inst.mix(y, UnitRat(inner), z));
            if (!(lhs == rhs)) {
              std::ostringstream os;
              os << "(" << w2(inst, x, a, y) << ") +_" << b.str() << " " << elem_str(z);
              record(rep, "skew-associativity", os.str());
            }
          }
        }
  return rep;
}

Report check_entropic(const AlgebraInstance& inst, const CheckSchedule& s) {
  Report rep;
  const auto& E = s.elems;
  for (const auto& x : E)
    for (const auto& y : E)
      for (const auto& z : E)
        for (const auto& t : E)
          for (const auto& a : s.coefficients)
            for (const auto& b : s.coefficients) {
              ++rep.cases_checked;
              Elem lhs = inst.mix(inst.mix(x, UnitRat(a), y), UnitRat(b),
                                  inst.mix(z, UnitRat(a), t));
              Elem rhs = inst.mix(inst.mix(x, UnitRat(b), z), UnitRat(a),
                                  inst.mix(y, UnitRat(b), t));
              if (!(lhs == rhs)) {
                std::ostringstream os;
                os << "entropic at a=" << a.str() << " b=" << b.str() << " on ("
                   << elem_str(x) << "," << elem_str(y) << "," << elem_str(z) << ","
                   << elem_str(t) << ")";
                record(rep, "entropic", os.str());
              }
            }
  return rep;
}

Report check_pointed_laws(const AlgebraInstance& inst, const CheckSchedule& s) {
  if (!inst.pointed()) throw domain_error("pointed laws need a pointed instance");
  Report rep;
  const Elem bot = inst.bottom();
  auto sc = [&](const Rat& a, const Elem& x) { return scalar(inst, UnitRat(a), x); };
  for (const auto& x : s.elems) {
    ++rep.cases_checked;
    if (!(sc(Rat(0), x) == bot)) record(rep, "0.x = bot", elem_str(x));
    if (!(sc(Rat(1), x) == x)) record(rep, "1.x = x", elem_str(x));
    for (const auto& a : s.coefficients) {
      ++rep.cases_checked;
      if (!(sc(a, bot) == bot)) record(rep, "a.bot = bot", a.str());
      for (const auto& b : s.coefficients) {
        ++rep.cases_checked;
        if (!(sc(a * b, x) == sc(a, sc(b, x))))
          record(rep, "(ab).x = a.(b.x)", a.str() + "," + b.str() + "," + elem_str(x));
      }
    }
  }
  for (const auto& x : s.elems)
    for (const auto& y : s.elems)
      for (const auto& a : s.coefficients)
        for (const auto& b : s.coefficients) {
          ++rep.cases_checked;
          if (!(sc(a, inst.mix(x, UnitRat(b), y)) ==
                inst.mix(sc(a, x), UnitRat(b), sc(a, y))))
            record(rep, "a.(x +_b y) = a.x +_b a.y",
                   a.str() + "," + b.str() + "," + elem_str(x) + "," + elem_str(y));
        }
  for (const auto& x : s.elems)
    for (const auto& a : s.coefficients)
      for (const auto& b : s.coefficients)
        for (const auto& r : s.coefficients) {
          ++rep.cases_checked;
          Rat combined = r * a + (Rat(1) - r) * b;
          if (!(inst.mix(sc(a, x), UnitRat(r), sc(b, x)) == sc(combined, x)))
            record(rep, "a.x +_r b.x = (ra+(1-r)b).x",
                   "a=" + a.str() + " b=" + b.str() + " r=" + r.str() + " x=" + elem_str(x));
        }
  return rep;
}

// ---------------------------------------------------------------------------
// Barycenters

Elem barycenter(const AlgebraInstance& inst, const Weighted& weighted) {
  if (weighted.empty()) throw domain_error("barycenter of an empty combination");
  Rat sum(0);
  for (const auto& [a, x] : weighted) {
    if (a.is_negative()) throw domain_error("negative barycenter weight");
    inst.validate_elem(x);
    sum += a;
  }
  if (sum != Rat(1)) throw domain_error("barycenter weights must sum to 1, got " + sum.str());
  // peel the last point: (sum_{i<n} a_i/(1-a_n) . x_i) +_{1-a_n} x_n
  const auto& [an, xn] = weighted.back();
  if (an == Rat(1)) return xn;
  if (weighted.size() == 1) throw domain_error("internal: barycenter recursion underflow");
  Weighted sub(weighted.begin(), weighted.end() - 1);
  Rat scale = Rat(1) - an;
  for (auto& [a, _] : sub) a /= scale;
  return inst.mix(barycenter(inst, sub), UnitRat(scale), xn);
}

Elem scalar(const AlgebraInstance& inst, const UnitRat& a, const Elem& x) {
  return inst.mix(x, a, inst.bottom());
}

Elem barycenter_sub(const AlgebraInstance& inst, const Weighted& weighted) {
  if (!inst.pointed()) throw domain_error("subnormalized barycenter needs a pointed instance");
  Rat sum(0);
  for (const auto& [a, x] : weighted) {
    if (a.is_negative()) throw domain_error("negative barycenter weight");
    inst.validate_elem(x);
    sum += a;
  }
  if (sum > Rat(1)) throw domain_error("subnormalized weights must sum to at most 1");
  if (sum.is_zero()) return inst.bottom();
  Weighted renorm = weighted;
  for (auto& [a, _] : renorm) a /= sum;
  return scalar(inst, UnitRat(sum), barycenter(inst, renorm));
}

// ---------------------------------------------------------------------------
// Cones

const ConeOps<XRat>& xrat_cone() {
  static const ConeOps<XRat> cone = {
      [](const XRat& a, const XRat& b) { return a + b; },
      [](const Rat& a, const XRat& x) { return XRat(a) * x; },
      XRat(),
      [](const XRat& a, const XRat& b) { return a == b; },
  };
  return cone;
}

ConeOps<Elem> cone_from_doubling(const InstancePtr& inst, std::function<Elem(const Elem&)> dbl,
                                 const std::vector<Elem>& spot_check) {
  if (!inst->pointed()) throw domain_error("doubling construction needs a pointed instance");
  const Elem bot = inst->bottom();
  if (!(dbl(bot) == bot)) throw domain_error("doubling map is not strict");
  for (const auto& x : spot_check) {
    if (!(dbl(scalar(*inst, UnitRat(Rat(1, 2)), x)) == x))
      throw domain_error("doubling map fails dbl((1/2).x) = x at " + elem_str(x));
    for (const auto& y : spot_check)
      for (const auto& a : coefficient_grid())
        if (!(dbl(inst->mix(x, UnitRat(a), y)) ==
              inst->mix(dbl(x), UnitRat(a), dbl(y))))
          throw domain_error("doubling map is not affine");
  }
  auto smul = [inst, dbl](const Rat& a, const Elem& x) -> Elem {
    if (a.is_negative()) throw domain_error("negative cone scalar");
    Rat frac = a;
    int k = 0;
    while (frac > Rat(1)) {
      frac /= Rat(2);
      ++k;
    }
    Elem cur = scalar(*inst, UnitRat(frac), x);
    for (int i = 0; i < k; ++i) cur = dbl(cur);
    return cur;
  };
  auto add = [inst, dbl](const Elem& x, const Elem& y) -> Elem {
    return dbl(inst->mix(x, UnitRat(Rat(1, 2)), y));
  };
  auto eq = [](const Elem& a, const Elem& b) { return a == b; };
  return ConeOps<Elem>{add, smul, bot, eq};
}

// ---------------------------------------------------------------------------
// Choquet barycenter verification

namespace {

// Polytope of normalized monotone affine maps on a finite interval-flat
// instance: variables h_e in [0,1], h monotone, h(x) = h(y) forced for all
// pairs (the two-sided family over a in ]0,1[ pins affine maps there).
lp::LinearSystem affine_polytope(const AlgebraInstance& inst, bool strict) {
  const auto& C = inst.carrier();
  lp::LinearSystem sys;
  for (std::size_t i = 0; i < C.size(); ++i) sys.add_var("h" + std::to_string(i));
  auto unit_row = [&](std::size_t i, std::size_t j) {
    std::vector<Rat> row(C.size(), Rat(0));
    row[i] = Rat(1);
    row[j] -= Rat(1);
    return row;
  };
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::vector<Rat> row(C.size(), Rat(0));
    row[i] = Rat(1);
    sys.add(std::move(row), lp::Rel::Le, Rat(1));
  }
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (i == j) continue;
      if (inst.leq(C[i], C[j])) sys.add(unit_row(i, j), lp::Rel::Le, Rat(0));
      if (i < j) {
        sys.add(unit_row(i, j), lp::Rel::Eq, Rat(0));
        Elem m = inst.mix(C[i], UnitRat(Rat(1, 2)), C[j]);
        auto k = static_cast<std::size_t>(inst.carrier_index(m));
        if (k != i) sys.add(unit_row(i, k), lp::Rel::Eq, Rat(0));
      }
    }
  if (strict && inst.pointed()) {
    auto b = static_cast<std::size_t>(inst.carrier_index(inst.bottom()));
    std::vector<Rat> row(C.size(), Rat(0));
    row[b] = Rat(1);
    sys.add(std::move(row), lp::Rel::Eq, Rat(0));
  }
  return sys;
}

}  // namespace

bool verify_barycenter_choquet(const AlgebraInstance& inst, const Weighted& weighted,
                               const Elem& x0) {
  inst.validate_elem(x0);
  Rat total(0);
  for (const auto& [a, x] : weighted) {
    if (a.is_negative()) throw domain_error("negative weight");
    inst.validate_elem(x);
    total += a;
  }
  if (inst.kind() == "rational_convex") {
    if (total != Rat(1)) throw domain_error("normalized valuation required");
    const auto& dim = std::get<Vec>(x0).size();
    Vec acc(dim, Rat(0));
    for (const auto& [a, x] : weighted) {
      const auto& v = std::get<Vec>(x);
      for (std::size_t i = 0; i < dim; ++i) acc[i] += a * v[i];
    }
    return Elem(acc) == x0;
  }
  if (inst.finite_carrier() && inst.interval_flat()) {
    bool sub = total < Rat(1);
    if (total > Rat(1)) throw domain_error("weights must sum to at most 1");
    if (sub && !inst.pointed())
      throw domain_error("subnormalized verification needs a pointed instance");
    lp::LinearSystem sys = affine_polytope(inst, sub);
    std::vector<Rat> objective(inst.carrier().size(), Rat(0));
    objective[static_cast<std::size_t>(inst.carrier_index(x0))] += Rat(1);
    for (const auto& [a, x] : weighted)
      objective[static_cast<std::size_t>(inst.carrier_index(x))] -= a;
    sys.objective = objective;
    auto hi = lp::optimize(sys, lp::Sense::Max);
    auto lo = lp::optimize(sys, lp::Sense::Min);
    const auto* hv = std::get_if<lp::Optimum>(&hi);
    const auto* lv = std::get_if<lp::Optimum>(&lo);
    if (!hv || !lv) throw domain_error("internal: affine polytope should be bounded nonempty");
    return hv->value.is_zero() && lv->value.is_zero();
  }
  throw domain_error("choquet verification unsupported on instance '" + inst.kind() + "'");
}

}  // namespace valcone
