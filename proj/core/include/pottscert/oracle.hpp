// Brute-force oracles: exhaustive MAP, exhaustive enumeration of expansion
// local minima, and the main-theorem verifier built on them. These are the
// ground truth the solvers and certificates are tested against, so they stay
// independent of the min-cut and LP code paths wherever possible.
//
// Enumeration order is pinned: labelings are visited in mixed-radix counting
// order with node 0 as the least significant digit. "First minimizer" always
// refers to this order.
#pragma once

#include "pottscert/locallp.hpp"
#include "pottscert/model.hpp"
#include "pottscert/objective.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace pottscert {

// k^n above this refuses to enumerate. 2^24 by default.
struct OracleBudget {
  std::uint64_t max_labelings = std::uint64_t(1) << 24;
};

struct BudgetError : std::runtime_error {
  double required;  // k^n that would have been visited

  BudgetError(const std::string& what, double req) : std::runtime_error(what), required(req) {}
};

// Walks all k^n labelings in the pinned order. The callback receives the
// labeling and the positions changed since the previous call (everything on
// the first call); returning false stops early. Throws BudgetError upfront.
void for_each_labeling(int n, int k, const OracleBudget& budget,
                       const std::function<bool(const Labeling&, const std::vector<int>&)>& fn);

// Incremental view of one enumeration step: exact energies of the instance
// (and an optional second instance over the same graph and k) plus the
// cut-edge bitmask. The mask is meaningful only when m <= 64. Arithmetic runs
// in scaled int64 whenever both instances admit an exact scaling with
// headroom, rationals otherwise; the reported energies are exact either way.
struct ScanItem {
  const Labeling& x;
  const std::vector<int>& changed;
  Rat energy;                  // main instance
  Rat energy_aux;              // aux instance, 0 when absent
  std::uint64_t cut_mask = 0;  // bit e set iff edge e is cut by x
};

// Enumerates all labelings in the pinned order, handing each step to `fn`;
// returning false stops early. `aux` may be null.
void scan_labelings(const PottsInstance& inst, const PottsInstance* aux,
                    const OracleBudget& budget, const std::function<bool(const ScanItem&)>& fn);

// Exact common int64 scaling of costs and weights, when one exists with
// headroom for instance-sized sums (doubled weights included). scale is the
// applied multiplier: stored values are the exact originals times scale.
struct Int64Scale {
  bool ok = false;
  Rat scale = 1;
  std::vector<long long> cost, w;
};

Int64Scale int64_scale(const PottsInstance& inst);

struct MapResult {
  Labeling labeling;  // first minimizer in enumeration order
  Rat energy;
  std::uint64_t visited = 0;
};

MapResult brute_map(const PottsInstance& inst, const OracleBudget& budget = {});

// All expansion local minima, by direct search over moves: x is a local
// minimum iff no subset of nodes switching to a common label strictly
// improves the energy. Does not touch the min-cut solver.
std::vector<Labeling> all_expansion_minima(const PottsInstance& inst,
                                           const OracleBudget& budget = {});

struct TheoremCheck {
  bool ok = false;
  int minima = 0;
  // First failure found, if any.
  std::string failure;
  Labeling witness;
};

// For every expansion local minimum x of the instance: (a) x attains the
// exhaustive MAP energy of perturb(inst, x), and (b) the local LP is tight
// there. Claim (b) goes through solve_primal_dual on `path`; when the float
// path reports a gap beyond tolerance it is re-checked exactly before being
// declared a failure.
TheoremCheck verify_main_theorem(const PottsInstance& inst, SolverPath path,
                                 const OracleBudget& budget = {});

struct WorstMinimum {
  Labeling argmax;  // first attainer in enumeration order
  Rat value = 0;    // objective value, after the divisor
  int minima = 0;
};

// max f over all expansion local minima; the initialization-independent
// quantity the certified bounds must dominate.
WorstMinimum worst_minimum(const PottsInstance& inst, const QualityObjective& obj,
                           const OracleBudget& budget = {});

}  // namespace pottscert
