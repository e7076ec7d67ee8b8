// LP-guided expansion rounding and the exact verification of its guarantees.
// The algorithm blends x' = eps * y' + (1 - eps) * embed(x), draws a label
// alpha uniformly and a threshold r uniformly from (0, 1/k), and moves every
// node with x'_u(alpha) > r to alpha. The sample space splits into finitely
// many (alpha, r-interval) cells on which the outcome is constant, so every
// probability and expectation here is an exact rational. Everything in this
// header runs on the exact path only.
#pragma once

#include "pottscert/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pottscert {

// One outcome cell: alpha fixed, r anywhere in (r_lo, r_hi). Its probability
// mass is exactly r_hi - r_lo (the 1/k label probability cancels against the
// 1/k threshold density).
struct RoundingCell {
  int alpha = 0;
  Rat r_lo, r_hi;
  Labeling outcome;
  Rat mass;
};

// The blended node marginals eps * y'_u + (1 - eps) * indicator(x(u)).
std::vector<Rat> blend_marginals(const PottsInstance& inst, const Labeling& x,
                                 const FractionalPoint& y_prime, const Rat& eps);

// One draw of the rounding algorithm. Requires 0 < eps < 1/k, 0 < r < 1/k.
Labeling round_once(const PottsInstance& inst, const Labeling& x, const FractionalPoint& y_prime,
                    const Rat& eps, int alpha, const Rat& r);

// All cells, alphas ascending and r-intervals ascending; masses sum to 1.
std::vector<RoundingCell> rounding_cells(const PottsInstance& inst, const Labeling& x,
                                         const FractionalPoint& y_prime, const Rat& eps);

// lhs = E[<theta, x - R(x, y')>] by exact cell enumeration;
// rhs = eps * (<theta^x, x> - <theta^x, y'>). The guarantee lhs >= rhs holds
// whenever y' is an optimal point of the perturbed local LP.
std::pair<Rat, Rat> exact_rounding_expectation(const PottsInstance& inst, const Labeling& x,
                                               const FractionalPoint& y_prime, const Rat& eps);

struct RoundingReport {
  bool ok = false;
  std::string failure;  // first violated identity, empty when ok
};

// Checks the three distribution guarantees exactly: node marginals
// P[out(u) = i] == x'_u(i); uncut edges P[cut] <= 2 d(u,v); cut edges
// P[uncut] == 1 - d(u,v), with d the halved L1 node distance under x'.
RoundingReport verify_marginal_guarantees(const PottsInstance& inst, const Labeling& x,
                                          const FractionalPoint& y_prime, const Rat& eps);

// Minimum disagreement mass of a coupling with the given marginals:
// value = (1/2) sum_i |z_u(i) - z_v(i)|. The returned k*k coupling (row-major
// over (i,j)) puts min(z_u(i), z_v(i)) on the diagonal and routes the
// residuals by the northwest-corner rule; its marginals match exactly.
std::pair<Rat, std::vector<Rat>> pairwise_min_cost(const std::vector<Rat>& z_u,
                                                   const std::vector<Rat>& z_v);

// The decomposition behind the combinatorial optimality proof: expansions
// x^alpha of x toward y (nodes with y(u) = alpha switch) satisfy
//   lhs = sum_alpha (E(x) - E(x^alpha)) >= E_x(x) - E_x(y) = rhs
// for every labeling pair, with E_x the perturbed-at-x energy.
std::pair<Rat, Rat> combinatorial_decomposition(const PottsInstance& inst, const Labeling& x,
                                                const Labeling& y);

}  // namespace pottscert
