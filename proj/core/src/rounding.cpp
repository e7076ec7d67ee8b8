#include "pottscert/rounding.hpp"

#include <algorithm>
#include <stdexcept>

namespace pottscert {

namespace {

void check_params(const PottsInstance& inst, const Labeling& x, const FractionalPoint& y_prime,
                  const Rat& eps) {
  inst.validate();
  if (static_cast<int>(x.size()) != inst.n) throw std::invalid_argument("labeling size mismatch");
  for (int u = 0; u < inst.n; ++u)
    if (x[u] < 0 || x[u] >= inst.k) throw std::invalid_argument("label out of range");
  if (y_prime.n != inst.n || y_prime.k != inst.k ||
      y_prime.node.size() != static_cast<size_t>(inst.n) * inst.k)
    throw std::invalid_argument("fractional point shape mismatch");
  Rat inv_k = Rat(1, inst.k);
  if (eps <= 0 || eps >= inv_k) throw std::invalid_argument("eps must lie in (0, 1/k)");
}

// Halved L1 distance between the blended node marginals at u and v.
Rat node_distance(const std::vector<Rat>& xp, int k, int u, int v) {
  Rat total = 0;
  for (int i = 0; i < k; ++i) {
    Rat d = xp[static_cast<size_t>(u) * k + i] - xp[static_cast<size_t>(v) * k + i];
    total += d < 0 ? -d : d;
  }
  return total / 2;
}

}  // namespace

std::vector<Rat> blend_marginals(const PottsInstance& inst, const Labeling& x,
                                 const FractionalPoint& y_prime, const Rat& eps) {
  std::vector<Rat> xp(static_cast<size_t>(inst.n) * inst.k);
  for (int u = 0; u < inst.n; ++u)
    for (int i = 0; i < inst.k; ++i) {
      Rat v = eps * y_prime.node_at(u, i);
      if (x[u] == i) v += 1 - eps;
      xp[static_cast<size_t>(u) * inst.k + i] = v;
    }
  return xp;
}

Labeling round_once(const PottsInstance& inst, const Labeling& x, const FractionalPoint& y_prime,
                    const Rat& eps, int alpha, const Rat& r) {
  check_params(inst, x, y_prime, eps);
  if (alpha < 0 || alpha >= inst.k) throw std::invalid_argument("alpha out of range");
  if (r <= 0 || r >= Rat(1, inst.k)) throw std::invalid_argument("r must lie in (0, 1/k)");
  std::vector<Rat> xp = blend_marginals(inst, x, y_prime, eps);
  Labeling out(inst.n);
  for (int u = 0; u < inst.n; ++u)
    out[u] = xp[static_cast<size_t>(u) * inst.k + alpha] > r ? alpha : x[u];
  return out;
}

std::vector<RoundingCell> rounding_cells(const PottsInstance& inst, const Labeling& x,
                                         const FractionalPoint& y_prime, const Rat& eps) {
  check_params(inst, x, y_prime, eps);
  std::vector<Rat> xp = blend_marginals(inst, x, y_prime, eps);
  Rat inv_k = Rat(1, inst.k);
  std::vector<RoundingCell> cells;
  std::vector<Rat> breaks;
  for (int alpha = 0; alpha < inst.k; ++alpha) {
    breaks.clear();
    breaks.push_back(Rat(0));
    breaks.push_back(inv_k);
    for (int u = 0; u < inst.n; ++u) {
      const Rat& v = xp[static_cast<size_t>(u) * inst.k + alpha];
      if (v > 0 && v < inv_k) breaks.push_back(v);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    for (size_t t = 0; t + 1 < breaks.size(); ++t) {
      RoundingCell cell;
      cell.alpha = alpha;
      cell.r_lo = breaks[t];
      cell.r_hi = breaks[t + 1];
      cell.mass = cell.r_hi - cell.r_lo;
      cell.outcome.resize(inst.n);
      // On (r_lo, r_hi) a node moves iff its blended mass clears the whole
      // interval; breakpoints make "> r" and ">= r_hi" agree here.
      for (int u = 0; u < inst.n; ++u)
        cell.outcome[u] =
            xp[static_cast<size_t>(u) * inst.k + alpha] >= cell.r_hi ? alpha : x[u];
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::pair<Rat, Rat> exact_rounding_expectation(const PottsInstance& inst, const Labeling& x,
                                               const FractionalPoint& y_prime, const Rat& eps) {
  std::vector<RoundingCell> cells = rounding_cells(inst, x, y_prime, eps);
  Rat ex = energy(inst, x);
  Rat lhs = 0;
  for (const RoundingCell& cell : cells) lhs += cell.mass * (ex - energy(inst, cell.outcome));
  PerturbedInstance pert = perturb(inst, x);
  Rat rhs = eps * (energy(pert, x) - theta_dot(pert, y_prime));
  return {lhs, rhs};
}

RoundingReport verify_marginal_guarantees(const PottsInstance& inst, const Labeling& x,
                                          const FractionalPoint& y_prime, const Rat& eps) {
  std::vector<RoundingCell> cells = rounding_cells(inst, x, y_prime, eps);
  std::vector<Rat> xp = blend_marginals(inst, x, y_prime, eps);
  RoundingReport rep;

  Rat total_mass = 0;
  for (const RoundingCell& cell : cells) total_mass += cell.mass;
  if (total_mass != 1) {
    rep.failure = "cell masses sum to " + format_rational(total_mass);
    return rep;
  }

  std::vector<Rat> prob(static_cast<size_t>(inst.n) * inst.k, Rat(0));
  for (const RoundingCell& cell : cells)
    for (int u = 0; u < inst.n; ++u)
      prob[static_cast<size_t>(u) * inst.k + cell.outcome[u]] += cell.mass;
  for (int u = 0; u < inst.n; ++u)
    for (int i = 0; i < inst.k; ++i) {
      size_t idx = static_cast<size_t>(u) * inst.k + i;
      if (prob[idx] != xp[idx]) {
        rep.failure = "node marginal mismatch at (u=" + std::to_string(u) +
                      ", i=" + std::to_string(i) + "): " + format_rational(prob[idx]) + " vs " +
                      format_rational(xp[idx]);
        return rep;
      }
    }

  for (int e = 0; e < inst.m(); ++e) {
    int u = inst.edges[e].u, v = inst.edges[e].v;
    Rat cut_prob = 0;
    for (const RoundingCell& cell : cells)
      if (cell.outcome[u] != cell.outcome[v]) cut_prob += cell.mass;
    Rat d = node_distance(xp, inst.k, u, v);
    if (x[u] == x[v]) {
      if (cut_prob > 2 * d) {
        rep.failure = "uncut edge " + std::to_string(e) + ": P[cut] = " +
                      format_rational(cut_prob) + " > 2 d = " + format_rational(2 * d);
        return rep;
      }
    } else {
      if (1 - cut_prob != 1 - d) {
        rep.failure = "cut edge " + std::to_string(e) + ": P[agree] = " +
                      format_rational(1 - cut_prob) + " != 1 - d = " + format_rational(1 - d);
        return rep;
      }
    }
  }
  rep.ok = true;
  return rep;
}

std::pair<Rat, std::vector<Rat>> pairwise_min_cost(const std::vector<Rat>& z_u,
                                                   const std::vector<Rat>& z_v) {
  if (z_u.size() != z_v.size() || z_u.empty())
    throw std::invalid_argument("marginal size mismatch");
  const int k = static_cast<int>(z_u.size());
  Rat sum_u = 0, sum_v = 0;
  for (const Rat& v : z_u) {
    if (v < 0) throw std::invalid_argument("negative marginal");
    sum_u += v;
  }
  for (const Rat& v : z_v) {
    if (v < 0) throw std::invalid_argument("negative marginal");
    sum_v += v;
  }
  if (sum_u != 1 || sum_v != 1) throw std::invalid_argument("marginals must sum to 1");

  std::vector<Rat> coupling(static_cast<size_t>(k) * k, Rat(0));
  std::vector<Rat> ru(k), rv(k);
  Rat value = 0;
  for (int i = 0; i < k; ++i) {
    Rat diag = std::min(z_u[i], z_v[i]);
    coupling[static_cast<size_t>(i) * k + i] = diag;
    ru[i] = z_u[i] - diag;
    rv[i] = z_v[i] - diag;
    Rat d = z_u[i] - z_v[i];
    value += d < 0 ? -d : d;
  }
  value /= 2;

  // Northwest-corner routing of the residual masses (off-diagonal only:
  // residual supports are disjoint, so i == j never receives mass here).
  int i = 0, j = 0;
  while (i < k && j < k) {
    if (ru[i].is_zero()) {
      ++i;
      continue;
    }
    if (rv[j].is_zero()) {
      ++j;
      continue;
    }
    Rat move = std::min(ru[i], rv[j]);
    coupling[static_cast<size_t>(i) * k + j] += move;
    ru[i] -= move;
    rv[j] -= move;
  }
  return {value, coupling};
}

std::pair<Rat, Rat> combinatorial_decomposition(const PottsInstance& inst, const Labeling& x,
                                                const Labeling& y) {
  inst.validate();
  if (static_cast<int>(x.size()) != inst.n || static_cast<int>(y.size()) != inst.n)
    throw std::invalid_argument("labeling size mismatch");
  Rat ex = energy(inst, x);
  Rat lhs = 0;
  Labeling xa(inst.n);
  for (int alpha = 0; alpha < inst.k; ++alpha) {
    for (int u = 0; u < inst.n; ++u) xa[u] = y[u] == alpha ? alpha : x[u];
    lhs += ex - energy(inst, xa);
  }
  PerturbedInstance pert = perturb(inst, x);
  Rat rhs = energy(pert, x) - energy(pert, y);
  return {lhs, rhs};
}

}  // namespace pottscert
