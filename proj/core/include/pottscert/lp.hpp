// Linear programs and the two solver paths. Both solvers are self-contained
// simplex implementations sharing this container: an exact rational solver
// (dense tableau, used by oracles, tests, and desk-scale certificates) and a
// sparse floating-point revised simplex for large instances. Interior-point
// methods are out of scope.
//
// Dual convention: at optimality, value == c0 + sum_i y_i * rhs_i. For a
// minimization, y_i <= 0 on "le" rows and reduced costs c - A^T y are >= 0 on
// nonnegative columns and == 0 on free columns; for a maximization the
// inequalities flip. The float path re-verifies this post hoc and reports the
// worst violation it found.
#pragma once

#include "pottscert/rational.hpp"

#include <utility>
#include <vector>

namespace pottscert {

enum class Rel { eq, le };
enum class Sense { minimize, maximize };

struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, Rat>> coeffs;
    Rel rel = Rel::eq;
    Rat rhs = 0;
  };

  Sense sense = Sense::minimize;
  int num_vars = 0;
  std::vector<Rat> c;
  Rat c0 = 0;
  std::vector<bool> is_free;  // default false: x_j >= 0
  std::vector<Row> rows;

  int add_var(const Rat& obj, bool free_var = false) {
    c.push_back(obj);
    is_free.push_back(free_var);
    return num_vars++;
  }

  void add_row(std::vector<std::pair<int, Rat>> coeffs, Rel rel, Rat rhs) {
    rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class LpStatus { optimal, infeasible, unbounded, iter_limit, numerical };

struct LpSolution {
  LpStatus status = LpStatus::numerical;
  Rat value = 0;       // includes c0, in the problem's own sense
  std::vector<Rat> x;  // primal values per variable
  std::vector<Rat> y;  // one dual per row, convention above
  long iterations = 0;
  bool dual_checked = false;   // float path only: post-hoc verification ran
  double dual_violation = 0;   // float path only: worst dual infeasibility
  double primal_residual = 0;  // float path only: worst |Ax - b| style residual
};

// Exact rational simplex. Deterministic: Dantzig pricing with a permanent
// switch to Bland's rule after a long degenerate stall, so it always
// terminates. Intended for desk-scale programs.
LpSolution solve_lp_exact(const LinearProgram& lp, long max_iters = 200000);

struct FloatLpOptions {
  double tol_feas = 1e-9;   // primal feasibility / ratio test tolerance
  double tol_dual = 1e-9;   // pricing threshold on reduced costs
  double tol_pivot = 1e-10; // smallest acceptable pivot magnitude
  long max_iters = 500000;
  int refactor_every = 100;
  bool scale = true;        // geometric-mean equilibration
};

// Sparse revised simplex in double precision: bounded variables, two phases,
// Markowitz LU with product-form updates, Harris ratio test. Returns exact
// conversions of its double iterates; consumers decide what the tolerances
// mean for them.
LpSolution solve_lp_float(const LinearProgram& lp, const FloatLpOptions& opts = {});

}  // namespace pottscert
