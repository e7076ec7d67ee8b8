#include "pottscert/lp.hpp"

#include "pottscert/rng.hpp"

#include "doctest.h"

#include <cmath>

using namespace pottscert;

namespace {

// value == c0 + <y, rhs> at optimality, per the header's dual convention.
void check_duality(const LinearProgram& lp, const LpSolution& sol) {
  Rat dual_value = lp.c0;
  for (size_t r = 0; r < lp.rows.size(); ++r) dual_value += sol.y[r] * lp.rows[r].rhs;
  CHECK(dual_value == sol.value);
}

}  // namespace

TEST_CASE("equality-constrained minimum, both paths") {
  LinearProgram lp;
  int x = lp.add_var(Rat(1));
  int y = lp.add_var(Rat(2));
  lp.add_row({{x, Rat(1)}, {y, Rat(1)}}, Rel::eq, Rat(1));

  LpSolution ex = solve_lp_exact(lp);
  REQUIRE(ex.status == LpStatus::optimal);
  CHECK(ex.value == Rat(1));
  CHECK(ex.x[x] == Rat(1));
  CHECK(ex.x[y] == Rat(0));
  check_duality(lp, ex);

  LpSolution fl = solve_lp_float(lp);
  REQUIRE(fl.status == LpStatus::optimal);
  CHECK(std::fabs(to_double(fl.value) - 1.0) < 1e-9);
  CHECK(fl.dual_checked);
  CHECK(fl.dual_violation < 1e-7);
  CHECK(fl.primal_residual < 1e-7);
}

TEST_CASE("maximization with le rows and constant term") {
  LinearProgram lp;
  lp.sense = Sense::maximize;
  lp.c0 = Rat(7);
  int x = lp.add_var(Rat(1));
  lp.add_row({{x, Rat(1)}}, Rel::le, Rat(5));
  LpSolution ex = solve_lp_exact(lp);
  REQUIRE(ex.status == LpStatus::optimal);
  CHECK(ex.value == Rat(12));
  CHECK(ex.x[x] == Rat(5));
  check_duality(lp, ex);
  LpSolution fl = solve_lp_float(lp);
  REQUIRE(fl.status == LpStatus::optimal);
  CHECK(std::fabs(to_double(fl.value) - 12.0) < 1e-9);
}

TEST_CASE("free variables can go negative") {
  LinearProgram lp;
  int z = lp.add_var(Rat(1), true);
  lp.add_row({{z, Rat(-1)}}, Rel::le, Rat(3));  // z >= -3
  LpSolution ex = solve_lp_exact(lp);
  REQUIRE(ex.status == LpStatus::optimal);
  CHECK(ex.value == Rat(-3));
  CHECK(ex.x[z] == Rat(-3));
  LpSolution fl = solve_lp_float(lp);
  REQUIRE(fl.status == LpStatus::optimal);
  CHECK(std::fabs(to_double(fl.value) + 3.0) < 1e-9);
}

TEST_CASE("infeasible and unbounded programs are detected") {
  LinearProgram inf;
  int x = inf.add_var(Rat(0));
  inf.add_row({{x, Rat(1)}}, Rel::le, Rat(-1));
  CHECK(solve_lp_exact(inf).status == LpStatus::infeasible);
  CHECK(solve_lp_float(inf).status == LpStatus::infeasible);

  LinearProgram unb;
  int y = unb.add_var(Rat(-1));
  int s = unb.add_var(Rat(0));
  unb.add_row({{s, Rat(1)}}, Rel::le, Rat(1));
  (void)y;
  CHECK(solve_lp_exact(unb).status == LpStatus::unbounded);
  CHECK(solve_lp_float(unb).status == LpStatus::unbounded);

  LinearProgram empty;  // no rows: all-zeros is optimal unless improving
  empty.add_var(Rat(2));
  CHECK(solve_lp_exact(empty).status == LpStatus::optimal);
  CHECK(solve_lp_exact(empty).value == Rat(0));
  LinearProgram empty_unb;
  empty_unb.add_var(Rat(-1));
  CHECK(solve_lp_exact(empty_unb).status == LpStatus::unbounded);
  CHECK(solve_lp_float(empty_unb).status == LpStatus::unbounded);
}

TEST_CASE("degenerate vertices do not stall either path") {
  // Three redundant constraints through the same optimum.
  LinearProgram lp;
  int x = lp.add_var(Rat(-1));
  int y = lp.add_var(Rat(-1));
  lp.add_row({{x, Rat(1)}, {y, Rat(1)}}, Rel::le, Rat(1));
  lp.add_row({{x, Rat(1)}}, Rel::le, Rat(1));
  lp.add_row({{y, Rat(1)}}, Rel::le, Rat(1));
  lp.add_row({{x, Rat(2)}, {y, Rat(2)}}, Rel::le, Rat(2));
  LpSolution ex = solve_lp_exact(lp);
  REQUIRE(ex.status == LpStatus::optimal);
  CHECK(ex.value == Rat(-1));
  LpSolution fl = solve_lp_float(lp);
  REQUIRE(fl.status == LpStatus::optimal);
  CHECK(std::fabs(to_double(fl.value) + 1.0) < 1e-9);
}

TEST_CASE("random small programs: exact and float paths agree") {
  SplitMix64 rng(404);
  int optimal_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LinearProgram lp;
    int nv = 2 + static_cast<int>(rng.uniform(0, 4));
    int nr = 1 + static_cast<int>(rng.uniform(0, 3));
    for (int j = 0; j < nv; ++j)
      lp.add_var(Rat(static_cast<long>(rng.uniform(0, 6)) - 3), rng.uniform(0, 9) == 0);
    for (int r = 0; r < nr; ++r) {
      std::vector<std::pair<int, Rat>> coeffs;
      for (int j = 0; j < nv; ++j) {
        long a = static_cast<long>(rng.uniform(0, 6)) - 3;
        if (a != 0) coeffs.push_back({j, Rat(a)});
      }
      if (coeffs.empty()) coeffs.push_back({0, Rat(1)});
      lp.add_row(std::move(coeffs), rng.uniform(0, 1) ? Rel::le : Rel::eq,
                 Rat(static_cast<long>(rng.uniform(0, 6)) - 2));
    }
    // Box rows keep everything bounded so statuses are optimal or infeasible.
    for (int j = 0; j < nv; ++j) {
      lp.add_row({{j, Rat(1)}}, Rel::le, Rat(4));
      if (lp.is_free[j]) lp.add_row({{j, Rat(-1)}}, Rel::le, Rat(4));
    }

    LpSolution ex = solve_lp_exact(lp);
    LpSolution fl = solve_lp_float(lp);
    REQUIRE(ex.status != LpStatus::unbounded);
    if (ex.status == LpStatus::optimal) {
      ++optimal_seen;
      REQUIRE(fl.status == LpStatus::optimal);
      CHECK(std::fabs(to_double(fl.value) - to_double(ex.value)) <
            1e-7 * (1 + std::fabs(to_double(ex.value))));
      check_duality(lp, ex);
    } else {
      CHECK(fl.status == LpStatus::infeasible);
    }
  }
  CHECK(optimal_seen > 10);
}
