// The local (pairwise) LP relaxation. Variables live in the shared coordinate
// space from model.hpp. Constraint rows come in three fixed blocks, and this
// ordering is part of the certification file format:
//   block 1: for each edge e ascending, for each label j ascending:
//              sum_i x_e(i,j) - x_v(j) = 0       (marginalize to endpoint v)
//   block 2: for each edge e ascending, for each label i ascending:
//              sum_j x_e(i,j) - x_u(i) = 0       (marginalize to endpoint u)
//   block 3: for each node u ascending: sum_i x_u(i) = 1
// Rows 2mk + n in total, columns nk + mk^2. The dual of min <theta, x> over
// this system is max <b, nu> subject to A^T nu <= theta with nu free.
#pragma once

#include "pottscert/lp.hpp"
#include "pottscert/model.hpp"

namespace pottscert {

struct ConstraintSystem {
  int n = 0, k = 0, m = 0;
  std::vector<LinearProgram::Row> rows;  // all Rel::eq

  int num_cols() const {
    return n * k + m * k * k;
  }
  int num_rows() const { return 2 * m * k + n; }

  // Human-readable row label for debugging and report files.
  std::string row_name(int r) const;
};

ConstraintSystem build_system(const PottsInstance& inst);

enum class SolverPath { exact, floating };

inline const char* solver_path_name(SolverPath p) {
  return p == SolverPath::exact ? "exact" : "float";
}

struct DualSolution {
  std::vector<Rat> nu;  // one multiplier per constraint row, block order above
};

struct LpResult {
  LpStatus status = LpStatus::numerical;
  Rat value = 0;
  FractionalPoint primal;
  DualSolution dual;
  bool integral = false;       // primal is 0/1 (exactly, or within tol on the float path)
  SolverPath path = SolverPath::exact;
  long iterations = 0;
  double dual_violation = 0;   // float path: worst post-hoc dual infeasibility
  double primal_residual = 0;  // float path: worst post-hoc row residual
};

// Minimize <theta, x> over the local polytope; theta comes from the instance
// (or its perturbation). Exact path returns exact rational optima and exactly
// feasible duals; float path re-verifies duals post hoc and reports
// violations.
LpResult solve_primal_dual(const PottsInstance& inst, SolverPath path);
LpResult solve_primal_dual(const PerturbedInstance& pert, SolverPath path);

struct TightnessReport {
  bool tight = false;
  Rat lp_value = 0;
  Rat label_energy = 0;
  SolverPath path = SolverPath::exact;
};

// Is the LP relaxation tight at this labeling, i.e. lp optimum == energy?
// Exact path decides exactly; float path uses |gap| <= 1e-7 * (1 + |energy|).
TightnessReport check_tightness(const PottsInstance& inst, const Labeling& x, SolverPath path);
TightnessReport check_tightness(const PerturbedInstance& pert, const Labeling& x,
                                SolverPath path);

}  // namespace pottscert
