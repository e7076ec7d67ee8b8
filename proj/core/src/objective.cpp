#include "pottscert/objective.hpp"

#include <stdexcept>

namespace pottscert {

Rat QualityObjective::eval_affine(const FractionalPoint& p) const {
  size_t dim = p.node.size() + p.edge.size();
  if (coeff.size() != dim)
    throw std::invalid_argument("objective/point dimension mismatch");
  Rat total = c0;
  size_t nn = p.node.size();
  for (size_t i = 0; i < nn; ++i)
    if (!coeff[i].is_zero() && !p.node[i].is_zero()) total += coeff[i] * p.node[i];
  for (size_t i = 0; i < p.edge.size(); ++i)
    if (!coeff[nn + i].is_zero() && !p.edge[i].is_zero()) total += coeff[nn + i] * p.edge[i];
  return total;
}

Rat QualityObjective::eval(const FractionalPoint& p) const {
  return eval_affine(p) / divisor;
}

QualityObjective make_hamming_objective(const PottsInstance& inst, const Labeling& x_star) {
  if (static_cast<int>(x_star.size()) != inst.n)
    throw std::invalid_argument("reference labeling has wrong size");
  QualityObjective obj;
  obj.name = "hamming";
  obj.coeff.assign(static_cast<size_t>(inst.n) * inst.k +
                       static_cast<size_t>(inst.m()) * inst.k * inst.k,
                   Rat(0));
  Rat half_inv_n = Rat(1) / (2 * inst.n);
  for (int u = 0; u < inst.n; ++u)
    for (int i = 0; i < inst.k; ++i)
      obj.coeff[static_cast<size_t>(u) * inst.k + i] = (i == x_star[u]) ? -half_inv_n : half_inv_n;
  obj.c0 = Rat(1, 2);
  obj.divisor = 1;
  return obj;
}

QualityObjective make_gap_objective(const PottsInstance& inst, const Labeling& x_star) {
  Rat ref = energy(inst, x_star);
  if (ref <= 0)
    throw std::invalid_argument("gap objective needs energy(x*) > 0");
  QualityObjective obj;
  obj.name = "gap";
  obj.coeff = theta_vector(inst);
  obj.c0 = 0;
  obj.divisor = ref;
  return obj;
}

}  // namespace pottscert
