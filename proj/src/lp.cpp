#include "valcone/lp.hpp"

#include <algorithm>
#include <cstddef>

namespace valcone {
namespace lp {

int LinearSystem::add_var(std::string name, bool nn) {
  vars.push_back(std::move(name));
  nonneg.resize(vars.size(), true);
  nonneg.back() = nn;
  return static_cast<int>(vars.size()) - 1;
}

void LinearSystem::add(std::vector<Rat> coef, Rel rel, Rat rhs) {
  if (coef.size() != vars.size()) throw domain_error("constraint arity mismatch");
  constraints.push_back({std::move(coef), rel, std::move(rhs)});
}

bool satisfies(const LinearSystem& sys, const std::vector<Rat>& x) {
  if (x.size() != sys.vars.size()) return false;
  for (std::size_t j = 0; j < sys.vars.size(); ++j) {
    bool nn = j < sys.nonneg.size() ? sys.nonneg[j] : true;
    if (nn && x[j].is_negative()) return false;
  }
  for (const auto& c : sys.constraints) {
    Rat lhs(0);
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coef[j] * x[j];
    switch (c.rel) {
      case Rel::Le: if (!(lhs <= c.rhs)) return false; break;
      case Rel::Eq: if (!(lhs == c.rhs)) return false; break;
      case Rel::Ge: if (!(lhs >= c.rhs)) return false; break;
    }
  }
  return true;
}

namespace {

// Dense exact simplex in standard form: min c.x s.t. A x = b, x >= 0.
// Free variables of the source system are split into differences first.
struct Tableau {
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;       // kept nonnegative
  std::vector<int> basis;   // basic column per row
  std::size_t cols = 0;

  void pivot(std::size_t row, std::size_t col) {
    const Rat piv = a[row][col];
    for (auto& v : a[row]) v /= piv;
    b[row] /= piv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      const Rat f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    basis[row] = static_cast<int>(col);
  }

  enum class Step { Optimal, Pivoted, Unbounded };

  // One Bland step on the given cost vector, entering columns < limit_cols.
  Step step(const std::vector<Rat>& cost, std::size_t limit_cols, std::size_t* enter_out) {
    std::vector<char> in_basis(cols, 0);
    for (int bc : basis) in_basis[static_cast<std::size_t>(bc)] = 1;
    for (std::size_t j = 0; j < limit_cols; ++j) {
      if (in_basis[j]) continue;
      Rat red = cost[j];
      for (std::size_t r = 0; r < a.size(); ++r)
        if (!a[r][j].is_zero() && !cost[static_cast<std::size_t>(basis[r])].is_zero())
          red -= cost[static_cast<std::size_t>(basis[r])] * a[r][j];
      if (!red.is_negative()) continue;
      std::ptrdiff_t row = -1;
      Rat best(0);
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (!(a[r][j] > Rat(0))) continue;
        Rat ratio = b[r] / a[r][j];
        if (row < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[static_cast<std::size_t>(row)])) {
          row = static_cast<std::ptrdiff_t>(r);
          best = ratio;
        }
      }
      if (row < 0) {
        if (enter_out) *enter_out = j;
        return Step::Unbounded;
      }
      pivot(static_cast<std::size_t>(row), j);
      return Step::Pivoted;
    }
    return Step::Optimal;
  }
};

struct Standardized {
  Tableau t;
  std::size_t n_struct = 0;  // structural (split) columns
  std::size_t n_slack = 0;
  std::vector<std::size_t> plus_col;     // per source var
  std::vector<std::ptrdiff_t> minus_col; // -1 when the var is sign-restricted
};

Standardized standardize(const LinearSystem& sys) {
  Standardized s;
  const std::size_t n = sys.vars.size();
  s.plus_col.resize(n);
  s.minus_col.assign(n, -1);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    s.plus_col[j] = col++;
    bool nn = j < sys.nonneg.size() ? sys.nonneg[j] : true;
    if (!nn) s.minus_col[j] = static_cast<std::ptrdiff_t>(col++);
  }
  s.n_struct = col;
  for (const auto& c : sys.constraints)
    if (c.rel != Rel::Eq) ++s.n_slack;

  const std::size_t m = sys.constraints.size();
  s.t.cols = s.n_struct + s.n_slack + m;  // one artificial per row
  s.t.a.assign(m, std::vector<Rat>(s.t.cols, Rat(0)));
  s.t.b.assign(m, Rat(0));
  s.t.basis.assign(m, -1);

  std::size_t slack = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = sys.constraints[r];
    for (std::size_t j = 0; j < n; ++j) {
      s.t.a[r][s.plus_col[j]] = c.coef[j];
      if (s.minus_col[j] >= 0) s.t.a[r][static_cast<std::size_t>(s.minus_col[j])] = -c.coef[j];
    }
    if (c.rel == Rel::Le) s.t.a[r][s.n_struct + slack++] = Rat(1);
    else if (c.rel == Rel::Ge) s.t.a[r][s.n_struct + slack++] = Rat(-1);
    Rat rhs = c.rhs;
    if (rhs.is_negative()) {
      for (auto& v : s.t.a[r]) v = -v;
      rhs = -rhs;
    }
    s.t.b[r] = rhs;
    const std::size_t art = s.n_struct + s.n_slack + r;
    s.t.a[r][art] = Rat(1);
    s.t.basis[r] = static_cast<int>(art);
  }
  return s;
}

// Phase 1: minimize the sum of artificials; on success every artificial is
// excised from the tableau (redundant rows dropped).
bool phase1(Standardized& s) {
  const std::size_t art0 = s.n_struct + s.n_slack;
  std::vector<Rat> cost(s.t.cols, Rat(0));
  for (std::size_t j = art0; j < s.t.cols; ++j) cost[j] = Rat(1);
  while (true) {
    auto st = s.t.step(cost, s.t.cols, nullptr);
    if (st == Tableau::Step::Optimal) break;
    if (st == Tableau::Step::Unbounded)
      throw domain_error("internal: phase-1 objective unbounded");
  }
  Rat obj(0);
  for (std::size_t r = 0; r < s.t.a.size(); ++r)
    if (s.t.basis[r] >= static_cast<int>(art0)) obj += s.t.b[r];
  if (!obj.is_zero()) return false;

  for (std::size_t r = 0; r < s.t.a.size(); ++r) {
    if (s.t.basis[r] < static_cast<int>(art0)) continue;
    std::ptrdiff_t col = -1;
    for (std::size_t j = 0; j < art0; ++j)
      if (!s.t.a[r][j].is_zero()) { col = static_cast<std::ptrdiff_t>(j); break; }
    if (col >= 0) s.t.pivot(r, static_cast<std::size_t>(col));
  }
  // rows still carrying a basic artificial are all-zero (redundant): drop
  for (std::size_t r = s.t.a.size(); r-- > 0;) {
    if (s.t.basis[r] < static_cast<int>(art0)) continue;
    s.t.a.erase(s.t.a.begin() + static_cast<std::ptrdiff_t>(r));
    s.t.b.erase(s.t.b.begin() + static_cast<std::ptrdiff_t>(r));
    s.t.basis.erase(s.t.basis.begin() + static_cast<std::ptrdiff_t>(r));
  }
  for (auto& row : s.t.a) row.resize(art0);
  s.t.cols = art0;
  return true;
}

std::vector<Rat> extract(const LinearSystem& sys, const Standardized& s) {
  std::vector<Rat> cell(s.t.cols, Rat(0));
  for (std::size_t r = 0; r < s.t.a.size(); ++r)
    cell[static_cast<std::size_t>(s.t.basis[r])] = s.t.b[r];
  std::vector<Rat> x(sys.vars.size(), Rat(0));
  for (std::size_t j = 0; j < sys.vars.size(); ++j) {
    x[j] = cell[s.plus_col[j]];
    if (s.minus_col[j] >= 0) x[j] -= cell[static_cast<std::size_t>(s.minus_col[j])];
  }
  return x;
}

}  // namespace

FeasResult feasible(const LinearSystem& sys) {
  for (const auto& c : sys.constraints)
    if (c.coef.size() != sys.vars.size()) throw domain_error("malformed system");
  Standardized s = standardize(sys);
  if (!phase1(s)) return Infeasible{};
  auto x = extract(sys, s);
  if (!satisfies(sys, x)) throw domain_error("internal: simplex produced an invalid point");
  return Solution{std::move(x)};
}

OptResult optimize(const LinearSystem& sys, Sense sense) {
  if (!sys.objective) throw domain_error("optimize requires an objective");
  if (sys.objective->size() != sys.vars.size()) throw domain_error("malformed objective");
  for (const auto& c : sys.constraints)
    if (c.coef.size() != sys.vars.size()) throw domain_error("malformed system");
  Standardized s = standardize(sys);
  if (!phase1(s)) return Infeasible{};

  std::vector<Rat> cost(s.t.cols, Rat(0));
  for (std::size_t j = 0; j < sys.vars.size(); ++j) {
    Rat cj = (*sys.objective)[j];
    if (sense == Sense::Max) cj = -cj;
    cost[s.plus_col[j]] = cj;
    if (s.minus_col[j] >= 0) cost[static_cast<std::size_t>(s.minus_col[j])] = -cj;
  }
  while (true) {
    std::size_t enter = 0;
    auto st = s.t.step(cost, s.t.cols, &enter);
    if (st == Tableau::Step::Optimal) break;
    if (st == Tableau::Step::Unbounded) {
      std::vector<Rat> dir(s.t.cols, Rat(0));
      dir[enter] = Rat(1);
      for (std::size_t r = 0; r < s.t.a.size(); ++r)
        dir[static_cast<std::size_t>(s.t.basis[r])] = -s.t.a[r][enter];
      std::vector<Rat> ray(sys.vars.size(), Rat(0));
      for (std::size_t j = 0; j < sys.vars.size(); ++j) {
        ray[j] = dir[s.plus_col[j]];
        if (s.minus_col[j] >= 0) ray[j] -= dir[static_cast<std::size_t>(s.minus_col[j])];
      }
      return Unbounded{Solution{std::move(ray)}};
    }
  }
  auto x = extract(sys, s);
  if (!satisfies(sys, x)) throw domain_error("internal: simplex produced an invalid point");
  Rat value(0);
  for (std::size_t j = 0; j < x.size(); ++j) value += (*sys.objective)[j] * x[j];
  return Optimum{std::move(value), Solution{std::move(x)}};
}

}  // namespace lp
}  // namespace valcone
