// Quality objectives measured against a reference MAP labeling. An objective
// is an affine form over the shared coordinate space, reported after dividing
// by a fixed positive constant:  f(x) = (<coeff, x> + c0) / divisor.
#pragma once

#include "pottscert/model.hpp"

#include <string>

namespace pottscert {

struct QualityObjective {
  std::string name;        // "hamming" or "gap"
  std::vector<Rat> coeff;  // over node block then edge block
  Rat c0 = 0;
  Rat divisor = 1;         // applied when reporting; the LP maximizes the affine part

  Rat eval(const FractionalPoint& p) const;
  Rat eval_affine(const FractionalPoint& p) const;  // without the divisor
};

// Normalized Hamming distance from x_star as an affine form:
//   (1/2n) * (sum_{u, i != x*(u)} x_u(i) - sum_u x_u(x*(u)) + n),
// which equals |{u : x(u) != x*(u)}| / n on embeddings and (k-1)/k at the
// uniform point.
QualityObjective make_hamming_objective(const PottsInstance& inst, const Labeling& x_star);

// Energy ratio <theta, x> / <theta, x*>. The affine part is <theta, x>; the
// division by the MAP energy happens at report time, keeping LP coefficients
// at the instance's own scale. Requires energy(x*) > 0.
QualityObjective make_gap_objective(const PottsInstance& inst, const Labeling& x_star);

}  // namespace pottscert
