#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "valcone/rat.hpp"

namespace valcone {
namespace lp {

enum class Rel { Le, Eq, Ge };
enum class Sense { Min, Max };

struct Constraint {
  std::vector<Rat> coef;  // one per variable
  Rel rel = Rel::Le;
  Rat rhs;
};

/// Exact rational linear system.  Variables are nonnegative unless the
/// corresponding flag is cleared.
struct LinearSystem {
  std::vector<std::string> vars;
  std::vector<Constraint> constraints;
  std::vector<bool> nonneg;  // empty means all nonnegative
  std::optional<std::vector<Rat>> objective;

  int add_var(std::string name, bool nn = true);
  void add(std::vector<Rat> coef, Rel rel, Rat rhs);
};

struct Solution {
  std::vector<Rat> values;  // one per variable of the input system
};

struct Infeasible {};

struct Optimum {
  Rat value;
  Solution point;
};

struct Unbounded {
  Solution ray;  // improving ray from the last feasible point
};

using FeasResult = std::variant<Solution, Infeasible>;
using OptResult = std::variant<Optimum, Unbounded, Infeasible>;

/// Exact feasibility via phase-1 simplex (Bland's rule, deterministic).
FeasResult feasible(const LinearSystem& sys);

/// Exact optimum over the rational polyhedron.
OptResult optimize(const LinearSystem& sys, Sense sense);

/// Checks a point against every constraint and nonnegativity flag.
bool satisfies(const LinearSystem& sys, const std::vector<Rat>& x);

}  // namespace lp
}  // namespace valcone
