#include "pottscert/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace pottscert {

namespace {

// Dense two-phase tableau over rationals. Free variables are split into
// positive and negative parts, every row gets an artificial so duals can be
// read off the artificial reduced costs, and redundant rows simply keep their
// artificial basic at zero. Dantzig pricing switches permanently to Bland's
// rule after a degenerate stall, which guarantees termination.
struct Tableau {
  int rows = 0, cols = 0;           // cols excludes the rhs column
  std::vector<std::vector<Rat>> t;  // rows x (cols + 1)
  std::vector<Rat> d;               // reduced cost row
  Rat obj = 0;                      // objective of the current basis
  std::vector<int> basis;           // row -> basic column
  int art_base = 0;                 // first artificial column
  bool bland = false;
  int stall = 0;
  long iterations = 0;

  bool is_artificial(int col) const { return col >= art_base; }

  void pivot(int pr, int pc) {
    Rat piv = t[pr][pc];
    for (Rat& v : t[pr]) v /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr || t[r][pc] == 0) continue;
      Rat f = t[r][pc];
      for (int c = 0; c <= cols; ++c)
        if (t[pr][c] != 0) t[r][c] -= f * t[pr][c];
      t[r][pc] = 0;
    }
    Rat fd = d[pc];
    if (fd != 0) {
      for (int c = 0; c < cols; ++c)
        if (t[pr][c] != 0) d[c] -= fd * t[pr][c];
      obj += fd * t[pr][cols];
      d[pc] = 0;
    }
    basis[pr] = pc;
  }

  // Returns false when optimal; throws nothing. status_out set on unbounded.
  enum class Step { pivoted, optimal, unbounded };

  Step step(bool phase2, long max_iters) {
    int pc = -1;
    if (bland) {
      for (int c = 0; c < art_base; ++c)
        if (d[c] < 0) {
          pc = c;
          break;
        }
    } else {
      const Rat* best = nullptr;
      for (int c = 0; c < art_base; ++c)
        if (d[c] < 0 && (!best || d[c] < *best)) {
          best = &d[c];
          pc = c;
        }
    }
    if (pc < 0) return Step::optimal;

    int pr = -1;
    Rat best_ratio = 0;
    for (int r = 0; r < rows; ++r) {
      const Rat& a = t[r][pc];
      Rat ratio;
      if (phase2 && is_artificial(basis[r]) && a != 0) {
        // Artificials sit at zero in phase 2 and must never grow; any touch
        // forces a degenerate pivot kicking them out.
        ratio = 0;
      } else if (a > 0) {
        ratio = t[r][cols] / a;
      } else {
        continue;
      }
      if (pr < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[pr])) {
        pr = r;
        best_ratio = ratio;
      }
    }
    if (pr < 0) return Step::unbounded;

    if (best_ratio == 0) {
      if (++stall > 64) bland = true;
    } else {
      stall = 0;
    }
    ++iterations;
    if (iterations > max_iters) throw std::runtime_error("exact simplex iteration limit");
    pivot(pr, pc);
    return Step::pivoted;
  }
};

}  // namespace

LpSolution solve_lp_exact(const LinearProgram& lp, long max_iters) {
  bool maximize = lp.sense == Sense::maximize;
  int nv = lp.num_vars;
  int nrows = static_cast<int>(lp.rows.size());

  // Column layout: plus parts, minus parts of free vars, slacks, artificials.
  std::vector<int> minus_col(nv, -1);
  int next = nv;
  for (int j = 0; j < nv; ++j)
    if (lp.is_free[j]) minus_col[j] = next++;
  std::vector<int> slack_col(nrows, -1);
  for (int r = 0; r < nrows; ++r)
    if (lp.rows[r].rel == Rel::le) slack_col[r] = next++;
  int art_base = next;
  int cols = art_base + nrows;

  Tableau tb;
  tb.rows = nrows;
  tb.cols = cols;
  tb.art_base = art_base;
  tb.t.assign(nrows, std::vector<Rat>(cols + 1, Rat(0)));
  tb.basis.resize(nrows);

  std::vector<int> flip(nrows, 1);  // row sign normalization so rhs >= 0
  for (int r = 0; r < nrows; ++r) {
    const LinearProgram::Row& row = lp.rows[r];
    if (row.rhs < 0) flip[r] = -1;
    for (const auto& [j, v] : row.coeffs) {
      if (j < 0 || j >= nv) throw std::invalid_argument("lp row references bad variable");
      tb.t[r][j] += flip[r] * v;
      if (minus_col[j] >= 0) tb.t[r][minus_col[j]] -= flip[r] * v;
    }
    if (slack_col[r] >= 0) tb.t[r][slack_col[r]] = flip[r];
    tb.t[r][art_base + r] = 1;
    tb.t[r][cols] = flip[r] * row.rhs;
    tb.basis[r] = art_base + r;
  }

  // Phase 1: minimize the artificial sum. Reduced costs start at
  // -(column sums) because the artificials are basic with unit cost.
  tb.d.assign(cols, Rat(0));
  for (int c = 0; c < art_base; ++c)
    for (int r = 0; r < nrows; ++r) tb.d[c] -= tb.t[r][c];
  tb.obj = 0;
  for (int r = 0; r < nrows; ++r) tb.obj += tb.t[r][cols];

  LpSolution sol;
  for (;;) {
    Tableau::Step s = tb.step(false, max_iters);
    if (s == Tableau::Step::optimal) break;
    if (s == Tableau::Step::unbounded)
      throw std::runtime_error("phase 1 unbounded, should be impossible");
  }
  if (tb.obj != 0) {
    sol.status = LpStatus::infeasible;
    sol.iterations = tb.iterations;
    return sol;
  }

  // Phase 2 objective: minimize (possibly negated) c over structural columns.
  std::vector<Rat> cost(cols, Rat(0));
  for (int j = 0; j < nv; ++j) {
    Rat cj = maximize ? -lp.c[j] : lp.c[j];
    cost[j] = cj;
    if (minus_col[j] >= 0) cost[minus_col[j]] = -cj;
  }
  tb.d = cost;
  tb.obj = 0;
  for (int r = 0; r < nrows; ++r) {
    const Rat& cb = cost[tb.basis[r]];
    if (cb == 0) continue;
    for (int c = 0; c < cols; ++c)
      if (tb.t[r][c] != 0) tb.d[c] -= cb * tb.t[r][c];
    tb.obj += cb * tb.t[r][cols];
  }
  tb.bland = false;
  tb.stall = 0;

  for (;;) {
    Tableau::Step s = tb.step(true, max_iters);
    if (s == Tableau::Step::optimal) break;
    if (s == Tableau::Step::unbounded) {
      sol.status = LpStatus::unbounded;
      sol.iterations = tb.iterations;
      return sol;
    }
  }

  sol.status = LpStatus::optimal;
  sol.iterations = tb.iterations;
  sol.x.assign(nv, Rat(0));
  std::vector<Rat> col_val(cols, Rat(0));
  for (int r = 0; r < nrows; ++r) col_val[tb.basis[r]] = tb.t[r][cols];
  for (int j = 0; j < nv; ++j) {
    sol.x[j] = col_val[j];
    if (minus_col[j] >= 0) sol.x[j] -= col_val[minus_col[j]];
  }

  // Duals from artificial reduced costs: d_art_i = 0 - y_i in the solved row
  // space, then undo the row flips and the max-sense negation.
  sol.y.assign(nrows, Rat(0));
  for (int r = 0; r < nrows; ++r) {
    Rat yi = -tb.d[art_base + r];
    if (flip[r] < 0) yi = -yi;
    sol.y[r] = maximize ? -yi : yi;
  }

  Rat val = tb.obj;  // minimize-form objective
  sol.value = lp.c0 + (maximize ? -val : val);
  return sol;
}

}  // namespace pottscert
