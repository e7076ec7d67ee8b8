// Certified bounds on the quality of expansion local minima. Three programs:
//
//   exact_certify       exhaustive search over labelings that are optimal for
//                       their own perturbed instance with a tight local LP;
//                       by construction it dominates every expansion minimum.
//   solve_certified_bound
//                       the LP relaxation of that search: maximize f over
//                       (x, nu) with x in the local polytope (plus accumulated
//                       cycle cuts), <theta, x> = <b, nu>, and the linearized
//                       dual-feasibility rows A^T nu <= theta^x(x). Iterates
//                       cutting-plane rounds.
//   naive_bound         maximize f over labelings whose energy is within the
//                       classical expansion guarantee: <theta, x> <=
//                       <theta, x*> + cut_weight(x*).
//
// Every certified value is a valid upper bound on f over all expansion local
// minima, independent of initialization.
#pragma once

#include "pottscert/locallp.hpp"
#include "pottscert/objective.hpp"
#include "pottscert/oracle.hpp"

#include <string>
#include <vector>

namespace pottscert {

// One step of a closed walk: instance edge `e` traversed with singleton
// partitions {a} at edges[e].u and {b} at edges[e].v. Its cut mass is
//   chi = x_u(a) + x_v(b) - 2 x_e(a, b),
// the probability mass on label pairs straddling the partitions.
struct CycleTerm {
  int e = 0;
  int a = 0, b = 0;
  bool in_f = false;
};

// Cycle inequality over a closed walk with an odd number of F-terms:
//   sum_{t in F} (1 - chi_t) + sum_{t not in F} chi_t >= 1.
// Valid for every labeling: the binary projections along a closed walk flip
// an even number of times, so the left side is a nonnegative integer of odd
// parity. Stored in the equivalent row form
//   sum_{t not in F} chi_t - sum_{t in F} chi_t >= 1 - |F|.
struct CycleInequality {
  std::vector<CycleTerm> terms;

  int f_count() const;
  // Left side of the row form at a fractional point.
  Rat lhs(const PottsInstance& inst, const FractionalPoint& p) const;
  // (1 - |F|) - lhs; positive means violated by that amount.
  Rat violation(const PottsInstance& inst, const FractionalPoint& p) const;
  // True on every labeling; checked exhaustively in tests.
  bool holds_on(const PottsInstance& inst, const Labeling& x) const;
};

struct SeparationOptions {
  double eps_cut = 1e-6;  // minimum (exact) violation worth returning
  int max_cuts = 20;      // per round, most violated first
};

// Shortest-path separation in the parity-doubled projection graph over the
// singleton partitions q_i = ({i}, [k] \ {i}). Returns deduplicated violated
// inequalities sorted by decreasing exact violation.
std::vector<CycleInequality> separate_cycles(const PottsInstance& inst, const FractionalPoint& p,
                                             const SeparationOptions& opts = {});

enum class BoundMethod { exact, certified, naive };

const char* bound_method_name(BoundMethod m);

struct BoundReport {
  BoundMethod method = BoundMethod::certified;
  std::string objective;
  Rat bound = 0;  // after dividing by the objective's divisor
  int rounds = 0;
  int cuts = 0;
  SolverPath path = SolverPath::exact;
  double wall_seconds = 0;

  // Search-based methods: best feasible labeling seen and its value. When the
  // search completed, incumbent_value == bound; when the budget truncated it,
  // exact_value is false and [incumbent_value, bound] brackets the true
  // optimum.
  bool exact_value = true;
  Rat incumbent_value = 0;
  Labeling incumbent;

  // Certified runs: per-round LP values (after the divisor) and every cut the
  // separator emitted, whether or not it made it into the final LP. Kept for
  // monotonicity and validity rechecks.
  std::vector<Rat> round_values;
  std::vector<CycleInequality> emitted_cuts;
};

// The relaxed certification LP over (x, nu): columns are the nk + mk^2
// polytope coordinates followed by the 2mk + n free duals; rows are the
// polytope equalities, the strong-duality row <theta, x> - <b, nu> = 0, one
// linearized dual-feasibility row per x-coordinate, then one row per cut.
LinearProgram build_certify_program(const PottsInstance& inst, const QualityObjective& f,
                                    const std::vector<CycleInequality>& cuts = {});

struct CertifyOptions {
  int max_rounds = 20;
  SolverPath path = SolverPath::exact;
  SeparationOptions separation;
};

BoundReport solve_certified_bound(const PottsInstance& inst, const Labeling& x_star,
                                  const QualityObjective& f, const CertifyOptions& opts = {});

struct SearchOptions {
  OracleBudget budget;
  // Past the enumeration budget, naive_bound falls back to one root LP bound
  // plus incumbent search instead of enumerating.
  bool allow_relaxed_fallback = true;
};

// Max f over labelings with <theta, x> <= <theta, x*> + cut_weight(x*), the
// feasible region of the classical guarantee. Exact enumeration at desk
// scale; otherwise bound = root LP value over that region (still a valid
// upper bound) and incumbent search provides the bracket's floor.
BoundReport naive_bound(const PottsInstance& inst, const Labeling& x_star,
                        const QualityObjective& f, const SearchOptions& opts = {});

// Max f over labelings x that are optimal for perturb(inst, x) and whose
// perturbed local LP is tight at x. Enumeration with a cut-mask grouping so
// the inner minimization is shared across labelings; LP tightness is then
// checked exactly on the few survivors.
BoundReport exact_certify(const PottsInstance& inst, const Labeling& x_star,
                          const QualityObjective& f, const SearchOptions& opts = {});

}  // namespace pottscert
