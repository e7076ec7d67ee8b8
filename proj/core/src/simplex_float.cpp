#include "pottscert/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pottscert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sparse LU of a basis matrix with Markowitz pivot selection and threshold
// partial pivoting. Rows are constraint indices, columns are basis slots;
// ftran maps row space to slot space, btran the other way round.
struct LuFactor {
  int n = 0;
  std::vector<int> prow, pcol;  // elimination order
  std::vector<double> pval;
  std::vector<std::vector<std::pair<int, double>>> lcol;  // (row, multiplier)
  std::vector<std::vector<std::pair<int, double>>> urow;  // (slot, value), pivot excluded

  bool factor(int size, const std::vector<std::vector<std::pair<int, double>>>& cols,
              double threshold);

  // Solve B x = a. work holds a indexed by row and is destroyed; the result
  // lands in out indexed by slot (out must be zeroed, size n).
  void ftran(std::vector<double>& work, std::vector<double>& out) const {
    for (int t = 0; t < n; ++t) {
      double a = work[prow[t]];
      if (a != 0)
        for (const auto& [r, m] : lcol[t]) work[r] -= m * a;
    }
    for (int t = n - 1; t >= 0; --t) {
      double v = work[prow[t]];
      for (const auto& [s, u] : urow[t]) v -= u * out[s];
      out[pcol[t]] = v / pval[t];
    }
  }

  // Solve B^T y = c. work holds c indexed by slot and is destroyed; the
  // result lands in out indexed by row (size n).
  void btran(std::vector<double>& work, std::vector<double>& out) const {
    std::vector<double> g(n);
    for (int t = 0; t < n; ++t) {
      double v = work[pcol[t]] / pval[t];
      g[t] = v;
      if (v != 0)
        for (const auto& [s, u] : urow[t]) work[s] -= u * v;
    }
    for (int t = n - 1; t >= 0; --t) {
      double v = g[t];
      for (const auto& [r, m] : lcol[t]) v -= m * out[r];
      out[prow[t]] = v;
    }
  }
};

bool LuFactor::factor(int size, const std::vector<std::vector<std::pair<int, double>>>& cols,
                      double threshold) {
  n = size;
  prow.assign(n, -1);
  pcol.assign(n, -1);
  pval.assign(n, 0.0);
  lcol.assign(n, {});
  urow.assign(n, {});
  if (n == 0) return true;

  // Working copy: per-column entries plus per-row lists of column ids. The
  // row lists and the count buckets may go stale; both are validated lazily.
  std::vector<std::vector<std::pair<int, double>>> col(cols);
  std::vector<std::vector<int>> rowcols(n);
  std::vector<int> rowcount(n, 0), colcount(n, 0);
  std::vector<char> col_alive(n, 1);
  for (int j = 0; j < n; ++j) {
    colcount[j] = static_cast<int>(col[j].size());
    for (const auto& [r, v] : col[j]) {
      rowcols[r].push_back(j);
      ++rowcount[r];
    }
  }
  std::vector<std::vector<int>> bucket(n + 1);
  int max_count = 0;
  for (int j = 0; j < n; ++j) {
    bucket[colcount[j]].push_back(j);
    max_count = std::max(max_count, colcount[j]);
  }

  std::vector<double> dense(n, 0.0);
  std::vector<int> stamp(n, -1), old_stamp(n, -1);
  int gen = 0;
  std::vector<int> cand;
  std::vector<int> ustamp(n, -1);

  auto col_find = [&col](int j, int r) -> const double* {
    for (const auto& e : col[j])
      if (e.first == r) return &e.second;
    return nullptr;
  };

  for (int step = 0; step < n; ++step) {
    // Markowitz search: scan columns in increasing count, stop once a few
    // candidates have been examined or the score cannot improve.
    int best_row = -1, best_col = -1;
    long best_score = -1;
    double best_val = 0;
    int examined = 0;
    for (int count = 1; count <= max_count; ++count) {
      auto& bk = bucket[count];
      for (size_t bi = 0; bi < bk.size();) {
        int j = bk[bi];
        if (!col_alive[j] || colcount[j] != count) {
          bk[bi] = bk.back();
          bk.pop_back();
          continue;  // stale; the column lives in its true bucket as well
        }
        ++bi;
        double cmax = 0;
        for (const auto& [r, v] : col[j]) cmax = std::max(cmax, std::fabs(v));
        if (cmax == 0) return false;  // structurally present but numerically dead
        ++examined;
        for (const auto& [r, v] : col[j]) {
          if (std::fabs(v) < threshold * cmax) continue;
          long score = static_cast<long>(rowcount[r] - 1) * (count - 1);
          if (best_score < 0 || score < best_score ||
              (score == best_score && std::fabs(v) > std::fabs(best_val))) {
            best_score = score;
            best_row = r;
            best_col = j;
            best_val = v;
          }
        }
        if (best_score == 0 || (best_score >= 0 && examined >= 8)) break;
      }
      if (best_score == 0 || (best_score >= 0 && examined >= 8)) break;
    }
    if (best_col < 0) return false;  // singular

    const int pi = best_row, pj = best_col;
    const double piv = best_val;
    prow[step] = pi;
    pcol[step] = pj;
    pval[step] = piv;

    auto& lc = lcol[step];
    for (const auto& [r, v] : col[pj])
      if (r != pi) lc.push_back({r, v / piv});

    // rowcols can hold the same id twice (an entry that cancelled and was
    // later refilled pushes its column again), so dedupe while collecting.
    auto& ur = urow[step];
    for (int j : rowcols[pi]) {
      if (j == pj || !col_alive[j] || ustamp[j] == step) continue;
      ustamp[j] = step;
      if (const double* v = col_find(j, pi)) ur.push_back({j, *v});
    }
    rowcols[pi].clear();

    col_alive[pj] = 0;
    for (const auto& [r, v] : col[pj])
      if (r != pi) --rowcount[r];
    col[pj].clear();
    colcount[pj] = 0;

    // Rank-1 update of every column with a pivot-row entry, one dense
    // scatter per column.
    for (const auto& [j, upv] : ur) {
      ++gen;
      cand.clear();
      for (const auto& [r, v] : col[j]) {
        if (r == pi) continue;
        dense[r] = v;
        stamp[r] = gen;
        old_stamp[r] = gen;
        cand.push_back(r);
      }
      for (const auto& [r, m] : lc) {
        double delta = -m * upv;
        if (stamp[r] == gen) {
          dense[r] += delta;
        } else {
          dense[r] = delta;
          stamp[r] = gen;
          cand.push_back(r);
        }
      }
      double cmax = 0;
      for (int r : cand) cmax = std::max(cmax, std::fabs(dense[r]));
      double droptol = 1e-14 * cmax;

      std::vector<std::pair<int, double>> rebuilt;
      rebuilt.reserve(cand.size());
      for (int r : cand) {
        bool was_old = old_stamp[r] == gen;
        if (std::fabs(dense[r]) > droptol) {
          rebuilt.push_back({r, dense[r]});
          if (!was_old) {
            rowcols[r].push_back(j);
            ++rowcount[r];
          }
        } else if (was_old) {
          --rowcount[r];  // cancelled; stale ids in rowcols are tolerated
        }
      }
      col[j] = std::move(rebuilt);
      colcount[j] = static_cast<int>(col[j].size());
      bucket[std::min(colcount[j], n)].push_back(j);
      max_count = std::max(max_count, colcount[j]);
    }
  }
  return true;
}

// Product-form eta: after the basic variable in `slot` is replaced, B_new =
// B_old * E with E = I except column `slot` = w, where w = ftran(entering
// column).
struct Eta {
  int slot;
  double wp;  // w[slot]
  std::vector<std::pair<int, double>> w;  // entries with index != slot
};

void apply_eta_ftran(const Eta& e, std::vector<double>& x) {
  double xp = x[e.slot] / e.wp;
  if (xp != 0)
    for (const auto& [s, v] : e.w) x[s] -= v * xp;
  x[e.slot] = xp;
}

void apply_eta_btran(const Eta& e, std::vector<double>& c) {
  double acc = c[e.slot];
  for (const auto& [s, v] : e.w) acc -= v * c[s];
  c[e.slot] = acc / e.wp;
}

// Bounded-variable two-phase revised simplex. Variable order: structural
// columns, slacks for "le" rows, then one artificial per row (entering is
// barred for artificials; in phase 2 they are fixed at zero so the ratio test
// kicks them out of the basis whenever they are touched). On basis
// factorization breakdown, retry_left grants one restart with tighter
// refactorization before reporting a numerical failure.
LpSolution solve_float_attempt(const LinearProgram& lp, const FloatLpOptions& opts,
                               bool retry_left) {
  const bool maximize = lp.sense == Sense::maximize;
  const int nrows = static_cast<int>(lp.rows.size());
  const int nstruct = lp.num_vars;

  LpSolution sol;
  if (nrows == 0) {
    // Degenerate but legal: all variables at zero unless that is suboptimal,
    // in which case the problem is unbounded.
    for (int j = 0; j < nstruct; ++j) {
      double cj = to_double(lp.c[j]) * (maximize ? -1.0 : 1.0);
      if (cj < -opts.tol_dual || (lp.is_free[j] && std::fabs(cj) > opts.tol_dual)) {
        sol.status = LpStatus::unbounded;
        return sol;
      }
    }
    sol.status = LpStatus::optimal;
    sol.x.assign(nstruct, Rat(0));
    sol.value = lp.c0;
    sol.dual_checked = true;
    return sol;
  }

  int nslack = 0;
  for (const auto& row : lp.rows)
    if (row.rel == Rel::le) ++nslack;
  const int ntotal = nstruct + nslack + nrows;  // artificials last
  const int art_base = nstruct + nslack;

  // Assemble columns in double precision (CSC) and the rhs.
  std::vector<std::vector<std::pair<int, double>>> acol(ntotal);
  std::vector<double> b(nrows);
  std::vector<int> slack_of_row(nrows, -1);
  {
    int next_slack = nstruct;
    for (int r = 0; r < nrows; ++r) {
      const auto& row = lp.rows[r];
      for (const auto& [j, v] : row.coeffs) {
        if (j < 0 || j >= nstruct) throw std::invalid_argument("lp row references bad variable");
        double dv = to_double(v);
        if (dv != 0) acol[j].push_back({r, dv});
      }
      b[r] = to_double(row.rhs);
      if (row.rel == Rel::le) {
        slack_of_row[r] = next_slack;
        acol[next_slack].push_back({r, 1.0});
        ++next_slack;
      }
    }
  }
  // Duplicate coordinates within a row are legal in the container; merge.
  for (int j = 0; j < nstruct; ++j) {
    auto& cj = acol[j];
    if (cj.size() < 2) continue;
    std::sort(cj.begin(), cj.end());
    size_t w = 0;
    for (size_t i = 0; i < cj.size(); ++i) {
      if (w > 0 && cj[w - 1].first == cj[i].first) {
        cj[w - 1].second += cj[i].second;
      } else {
        cj[w++] = cj[i];
      }
    }
    cj.resize(w);
  }

  // Geometric-mean-ish equilibration: scale rows then columns by 1/sqrt(max),
  // two rounds. Positive scaling preserves bounds at zero and infinity.
  std::vector<double> rscale(nrows, 1.0), cscale(ntotal, 1.0);
  if (opts.scale) {
    for (int round = 0; round < 2; ++round) {
      std::vector<double> rmax(nrows, 0.0);
      for (int j = 0; j < art_base; ++j)
        for (const auto& [r, v] : acol[j])
          rmax[r] = std::max(rmax[r], std::fabs(v) * rscale[r] * cscale[j]);
      for (int r = 0; r < nrows; ++r)
        if (rmax[r] > 0) rscale[r] /= std::sqrt(rmax[r]);
      std::vector<double> cmax(ntotal, 0.0);
      for (int j = 0; j < art_base; ++j)
        for (const auto& [r, v] : acol[j])
          cmax[j] = std::max(cmax[j], std::fabs(v) * rscale[r] * cscale[j]);
      for (int j = 0; j < art_base; ++j)
        if (cmax[j] > 0) cscale[j] /= std::sqrt(cmax[j]);
    }
    for (int j = 0; j < art_base; ++j)
      for (auto& [r, v] : acol[j]) v *= rscale[r] * cscale[j];
    for (int r = 0; r < nrows; ++r) b[r] *= rscale[r];
  }

  // Artificial columns: sign chosen so the initial basic value is >= 0.
  for (int r = 0; r < nrows; ++r) acol[art_base + r].push_back({r, b[r] < 0 ? -1.0 : 1.0});

  // Bounds. Structural vars are [0, inf) or free; slacks [0, inf);
  // artificials [0, inf) in phase 1 and [0, 0] in phase 2.
  std::vector<double> lb(ntotal, 0.0), ub(ntotal, kInf);
  for (int j = 0; j < nstruct; ++j)
    if (lp.is_free[j]) lb[j] = -kInf;

  enum VStat : char { kBasic, kAtLower, kFreeZero };
  std::vector<char> vstat(ntotal, kAtLower);
  for (int j = 0; j < nstruct; ++j)
    if (lp.is_free[j]) vstat[j] = kFreeZero;

  // Initial basis: slack when the row has one and b >= 0, else artificial.
  std::vector<int> basis(nrows);
  std::vector<char> is_basic(ntotal, 0);
  for (int r = 0; r < nrows; ++r) {
    int j = (slack_of_row[r] >= 0 && b[r] >= 0) ? slack_of_row[r] : art_base + r;
    basis[r] = j;
    vstat[j] = kBasic;
    is_basic[j] = 1;
  }

  std::vector<double> cost(ntotal, 0.0);  // phase 1: artificial sum
  for (int j = art_base; j < ntotal; ++j) cost[j] = 1.0;

  LuFactor lu;
  std::vector<Eta> etas;
  std::vector<double> beta(nrows, 0.0);  // basic values per slot
  std::vector<double> work(std::max(nrows, ntotal), 0.0);

  auto refactor = [&]() -> bool {
    std::vector<std::vector<std::pair<int, double>>> bcols(nrows);
    for (int r = 0; r < nrows; ++r) bcols[r] = acol[basis[r]];
    etas.clear();
    for (double threshold : {0.01, 0.1, 0.5})
      if (lu.factor(nrows, bcols, threshold)) return true;
    return false;
  };

  auto factor_breakdown = [&]() -> LpSolution {
    if (retry_left) {
      FloatLpOptions tight = opts;
      tight.refactor_every = std::min(opts.refactor_every, 10);
      return solve_float_attempt(lp, tight, false);
    }
    LpSolution bad;
    bad.status = LpStatus::numerical;
    return bad;
  };

  auto ftran = [&](const std::vector<std::pair<int, double>>& a, std::vector<double>& out) {
    std::fill(work.begin(), work.begin() + nrows, 0.0);
    for (const auto& [r, v] : a) work[r] = v;
    std::fill(out.begin(), out.end(), 0.0);
    lu.ftran(work, out);
    for (const Eta& e : etas) apply_eta_ftran(e, out);
  };

  auto compute_beta = [&]() {
    std::vector<std::pair<int, double>> brhs;
    for (int r = 0; r < nrows; ++r)
      if (b[r] != 0) brhs.push_back({r, b[r]});
    ftran(brhs, beta);
  };

  // y = B^-T c_B, indexed by row.
  std::vector<double> duals(nrows, 0.0);
  auto compute_duals = [&]() {
    std::fill(work.begin(), work.begin() + nrows, 0.0);
    for (int s = 0; s < nrows; ++s) work[s] = cost[basis[s]];
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) apply_eta_btran(*it, work);
    lu.btran(work, duals);
  };

  if (!refactor()) return factor_breakdown();
  compute_beta();

  long iter = 0;
  int since_refactor = 0;
  bool phase2 = false;
  int stall = 0;
  bool bland = false;

  // Columns sidelined after producing a numerically dependent pivot column on
  // a fresh factorization. Bars last until the next basis change.
  std::vector<long> barred(ntotal, -1);
  long bar_gen = 0;
  int bars_active = 0;

  auto current_obj = [&]() {
    double z = 0;
    for (int r = 0; r < nrows; ++r) z += cost[basis[r]] * beta[r];
    return z;
  };

  std::vector<double> wcol(nrows, 0.0);

  for (;;) {
    if (iter++ > opts.max_iters) {
      sol.status = LpStatus::iter_limit;
      sol.iterations = iter;
      return sol;
    }

    compute_duals();

    // Pricing. Entering variable: worst violation (Dantzig) or least index
    // (Bland when stalling). Artificials never enter.
    int q = -1, qdir = 0;
    double worst = 0;
    for (int j = 0; j < art_base; ++j) {  // artificials are barred for good
      if (vstat[j] == kBasic || barred[j] == bar_gen) continue;
      double dj = cost[j];
      for (const auto& [r, v] : acol[j]) dj -= duals[r] * v;
      int dir = 0;
      double viol = 0;
      if (vstat[j] == kFreeZero) {
        if (dj < -opts.tol_dual) dir = 1, viol = -dj;
        else if (dj > opts.tol_dual) dir = -1, viol = dj;
      } else {  // at lower bound, can only increase
        if (dj < -opts.tol_dual) dir = 1, viol = -dj;
      }
      if (dir != 0) {
        if (bland) {
          q = j;
          qdir = dir;
          break;
        }
        if (viol > worst) {
          worst = viol;
          q = j;
          qdir = dir;
        }
      }
    }

    if (q < 0 && bars_active > 0 && since_refactor > 0) {
      // Everything improving is barred on a stale basis; refresh and reprice
      // before concluding anything.
      ++bar_gen;
      bars_active = 0;
      if (!refactor()) return factor_breakdown();
      compute_beta();
      since_refactor = 0;
      continue;
    }

    if (q < 0) {
      double z = current_obj();
      if (!phase2) {
        double bnorm = 0;
        for (int r = 0; r < nrows; ++r) bnorm = std::max(bnorm, std::fabs(b[r]));
        if (z > opts.tol_feas * (1.0 + bnorm) * nrows) {
          sol.status = LpStatus::infeasible;
          sol.iterations = iter;
          return sol;
        }
        // Switch to phase 2: real costs, artificials pinned to zero.
        phase2 = true;
        for (int j = 0; j < nstruct; ++j)
          cost[j] = to_double(maximize ? -lp.c[j] : lp.c[j]) * cscale[j];
        for (int j = nstruct; j < art_base; ++j) cost[j] = 0.0;
        for (int j = art_base; j < ntotal; ++j) {
          cost[j] = 0.0;
          ub[j] = 0.0;
        }
        bland = false;
        stall = 0;
        ++bar_gen;
        bars_active = 0;
        continue;
      }
      break;  // phase 2 optimal
    }

    ftran(acol[q], wcol);

    // Ratio test (Harris two-pass). Direction: entering moves by t*qdir from
    // zero; basics move by -t*qdir*wcol. delta slack on pass 1 buys a larger
    // pivot on pass 2.
    const double delta = opts.tol_feas;
    double tmax = kInf;
    for (int s = 0; s < nrows; ++s) {
      double dirw = qdir * wcol[s];
      int bj = basis[s];
      if (dirw > opts.tol_pivot && lb[bj] > -kInf) {
        tmax = std::min(tmax, (beta[s] - lb[bj] + delta) / dirw);
      } else if (dirw < -opts.tol_pivot && ub[bj] < kInf) {
        tmax = std::min(tmax, (ub[bj] - beta[s] + delta) / (-dirw));
      }
    }
    if (tmax == kInf) {
      sol.status = phase2 ? LpStatus::unbounded : LpStatus::numerical;
      sol.iterations = iter;
      return sol;
    }
    int leave = -1;
    double best_piv = 0, t_exact = 0;
    for (int s = 0; s < nrows; ++s) {
      double dirw = qdir * wcol[s];
      int bj = basis[s];
      double ratio;
      if (dirw > opts.tol_pivot && lb[bj] > -kInf) {
        ratio = (beta[s] - lb[bj]) / dirw;
      } else if (dirw < -opts.tol_pivot && ub[bj] < kInf) {
        ratio = (ub[bj] - beta[s]) / (-dirw);
      } else {
        continue;
      }
      if (ratio <= tmax && std::fabs(wcol[s]) > std::fabs(best_piv)) {
        best_piv = wcol[s];
        leave = s;
        t_exact = ratio;
      }
    }
    if (leave < 0) {
      sol.status = phase2 ? LpStatus::unbounded : LpStatus::numerical;
      sol.iterations = iter;
      return sol;
    }
    double t = std::max(t_exact, 0.0);

    // Unreliable pivot: a pivot that is tiny in absolute terms, or far below
    // the transformed column's own scale, usually means the blocking slot is
    // an eta-chain noise entry on a degenerate row; pivoting there can make
    // the basis exactly singular. On a stale factorization, rebuild and redo
    // the iteration; on a fresh one the entering column is genuinely near-
    // dependent on the basis, so sideline it rather than poison the basis.
    double wmax = 0;
    for (int s = 0; s < nrows; ++s) wmax = std::max(wmax, std::fabs(wcol[s]));
    if (std::fabs(wcol[leave]) < 1e-9 || std::fabs(wcol[leave]) < 1e-6 * wmax ||
        wmax < 1e-7) {
      if (since_refactor > 0) {
        if (!refactor()) return factor_breakdown();
        compute_beta();
        since_refactor = 0;
      } else {
        barred[q] = bar_gen;
        ++bars_active;
      }
      continue;
    }

    // Degenerate-stall bookkeeping drives the Bland switch.
    if (t <= delta) {
      if (++stall > 500) bland = true;
    } else {
      stall = 0;
      bland = false;
    }

    // Update basic values and swap the basis. Only bounded variables can
    // leave (free basics never block), so the leaving variable rests at its
    // lower bound; for pinned artificials upper == lower anyway.
    for (int s = 0; s < nrows; ++s) beta[s] -= t * qdir * wcol[s];
    int out_var = basis[leave];
    beta[leave] = t * qdir;  // entering variable moved away from zero
    basis[leave] = q;
    is_basic[q] = 1;
    is_basic[out_var] = 0;
    vstat[q] = kBasic;
    vstat[out_var] = kAtLower;
    ++bar_gen;  // basis changed: sidelined columns get another chance
    bars_active = 0;

    Eta e;
    e.slot = leave;
    e.wp = wcol[leave];
    for (int s = 0; s < nrows; ++s)
      if (s != leave && wcol[s] != 0) e.w.push_back({s, wcol[s]});
    etas.push_back(std::move(e));

    if (++since_refactor >= opts.refactor_every) {
      if (!refactor()) return factor_breakdown();
      compute_beta();
      since_refactor = 0;
    }
  }

  // Extract the solution in original units.
  std::vector<double> xval(ntotal, 0.0);
  for (int s = 0; s < nrows; ++s) xval[basis[s]] = beta[s];
  sol.x.assign(nstruct, Rat(0));
  for (int j = 0; j < nstruct; ++j) {
    double v = xval[j] * cscale[j];
    sol.x[j] = rat_from_double(v);
  }

  compute_duals();
  sol.y.assign(nrows, Rat(0));
  for (int r = 0; r < nrows; ++r) {
    double yr = duals[r] * rscale[r];  // unscale: y_orig = R * y_scaled
    if (maximize) yr = -yr;
    sol.y[r] = rat_from_double(yr);
  }

  double obj = 0;
  for (int j = 0; j < nstruct; ++j) obj += to_double(lp.c[j]) * to_double(sol.x[j]);
  sol.value = lp.c0 + rat_from_double(obj);

  // Post-hoc verification in original units: primal residuals and dual
  // feasibility of the returned multipliers.
  double presid = 0;
  for (int r = 0; r < nrows; ++r) {
    const auto& row = lp.rows[r];
    double ax = 0;
    for (const auto& [j, v] : row.coeffs) ax += to_double(v) * to_double(sol.x[j]);
    double rb = to_double(row.rhs);
    double scale = 1 + std::fabs(rb);
    if (row.rel == Rel::eq) presid = std::max(presid, std::fabs(ax - rb) / scale);
    else presid = std::max(presid, std::max(0.0, ax - rb) / scale);
  }
  for (int j = 0; j < nstruct; ++j)
    if (!lp.is_free[j] && sol.x[j] < 0)
      presid = std::max(presid, -to_double(sol.x[j]));
  sol.primal_residual = presid;

  double dviol = 0;
  {
    std::vector<double> yd(nrows);
    for (int r = 0; r < nrows; ++r) yd[r] = to_double(sol.y[r]);
    std::vector<double> red(nstruct);
    for (int j = 0; j < nstruct; ++j) red[j] = to_double(lp.c[j]);
    for (int r = 0; r < nrows; ++r)
      for (const auto& [j, v] : lp.rows[r].coeffs) red[j] -= yd[r] * to_double(v);
    for (int j = 0; j < nstruct; ++j) {
      double scale = 1 + std::fabs(to_double(lp.c[j]));
      if (lp.is_free[j]) {
        dviol = std::max(dviol, std::fabs(red[j]) / scale);
      } else if (maximize) {
        dviol = std::max(dviol, std::max(0.0, red[j]) / scale);
      } else {
        dviol = std::max(dviol, std::max(0.0, -red[j]) / scale);
      }
    }
    for (int r = 0; r < nrows; ++r) {
      if (lp.rows[r].rel != Rel::le) continue;
      double yr = yd[r];
      if (maximize) dviol = std::max(dviol, std::max(0.0, -yr));
      else dviol = std::max(dviol, std::max(0.0, yr));
    }
  }
  sol.dual_violation = dviol;
  sol.dual_checked = true;

  sol.status = LpStatus::optimal;
  sol.iterations = iter;
  return sol;
}

}  // namespace

LpSolution solve_lp_float(const LinearProgram& lp, const FloatLpOptions& opts) {
  return solve_float_attempt(lp, opts, true);
}

}  // namespace pottscert
