#include "pottscert/locallp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pottscert {

std::string ConstraintSystem::row_name(int r) const {
  if (r < m * k) return "marg_v(e=" + std::to_string(r / k) + ",j=" + std::to_string(r % k) + ")";
  r -= m * k;
  if (r < m * k) return "marg_u(e=" + std::to_string(r / k) + ",i=" + std::to_string(r % k) + ")";
  r -= m * k;
  return "norm(u=" + std::to_string(r) + ")";
}

ConstraintSystem build_system(const PottsInstance& inst) {
  inst.validate();
  ConstraintSystem sys;
  sys.n = inst.n;
  sys.k = inst.k;
  sys.m = inst.m();
  const int k = inst.k;
  const int node_cols = inst.n * k;
  auto node_col = [k](int u, int i) { return u * k + i; };
  auto edge_col = [node_cols, k](int e, int i, int j) {
    return node_cols + (e * k + i) * k + j;
  };

  sys.rows.reserve(sys.num_rows());
  for (int e = 0; e < sys.m; ++e)
    for (int j = 0; j < k; ++j) {
      LinearProgram::Row row;
      for (int i = 0; i < k; ++i) row.coeffs.push_back({edge_col(e, i, j), Rat(1)});
      row.coeffs.push_back({node_col(inst.edges[e].v, j), Rat(-1)});
      row.rel = Rel::eq;
      row.rhs = 0;
      sys.rows.push_back(std::move(row));
    }
  for (int e = 0; e < sys.m; ++e)
    for (int i = 0; i < k; ++i) {
      LinearProgram::Row row;
      for (int j = 0; j < k; ++j) row.coeffs.push_back({edge_col(e, i, j), Rat(1)});
      row.coeffs.push_back({node_col(inst.edges[e].u, i), Rat(-1)});
      row.rel = Rel::eq;
      row.rhs = 0;
      sys.rows.push_back(std::move(row));
    }
  for (int u = 0; u < inst.n; ++u) {
    LinearProgram::Row row;
    for (int i = 0; i < k; ++i) row.coeffs.push_back({node_col(u, i), Rat(1)});
    row.rel = Rel::eq;
    row.rhs = 1;
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

namespace {

LpResult solve_impl(const PottsInstance& inst, const std::vector<Rat>& theta, SolverPath path) {
  ConstraintSystem sys = build_system(inst);
  LinearProgram lp;
  lp.sense = Sense::minimize;
  for (const Rat& t : theta) lp.add_var(t);
  lp.rows = sys.rows;

  LpSolution raw = path == SolverPath::exact ? solve_lp_exact(lp) : solve_lp_float(lp);

  LpResult res;
  res.status = raw.status;
  res.path = path;
  res.iterations = raw.iterations;
  res.dual_violation = raw.dual_violation;
  res.primal_residual = raw.primal_residual;
  if (raw.status != LpStatus::optimal) return res;

  res.value = raw.value;
  res.primal.n = inst.n;
  res.primal.k = inst.k;
  size_t node_cols = static_cast<size_t>(inst.n) * inst.k;
  res.primal.node.assign(raw.x.begin(), raw.x.begin() + node_cols);
  res.primal.edge.assign(raw.x.begin() + node_cols, raw.x.end());
  res.dual.nu = raw.y;

  res.integral = true;
  if (path == SolverPath::exact) {
    for (const Rat& v : raw.x)
      if (v != 0 && v != 1) {
        res.integral = false;
        break;
      }
  } else {
    for (const Rat& v : raw.x) {
      double d = to_double(v);
      if (std::abs(d) > 1e-7 && std::abs(d - 1) > 1e-7) {
        res.integral = false;
        break;
      }
    }
  }
  return res;
}

}  // namespace

LpResult solve_primal_dual(const PottsInstance& inst, SolverPath path) {
  return solve_impl(inst, theta_vector(inst), path);
}

LpResult solve_primal_dual(const PerturbedInstance& pert, SolverPath path) {
  return solve_impl(pert.base, theta_vector(pert), path);
}

namespace {

TightnessReport tightness_impl(const PottsInstance& inst, const std::vector<Rat>& theta,
                               const Rat& label_energy, SolverPath path) {
  LpResult lp = solve_impl(inst, theta, path);
  if (lp.status != LpStatus::optimal)
    throw std::runtime_error("check_tightness: LP solve failed");
  TightnessReport rep;
  rep.lp_value = lp.value;
  rep.label_energy = label_energy;
  rep.path = path;
  if (path == SolverPath::exact) {
    rep.tight = lp.value == label_energy;
  } else {
    double gap = to_double(label_energy - lp.value);
    rep.tight = std::abs(gap) <= 1e-7 * (1 + std::abs(to_double(label_energy)));
  }
  return rep;
}

}  // namespace

TightnessReport check_tightness(const PottsInstance& inst, const Labeling& x, SolverPath path) {
  return tightness_impl(inst, theta_vector(inst), energy(inst, x), path);
}

TightnessReport check_tightness(const PerturbedInstance& pert, const Labeling& x,
                                SolverPath path) {
  return tightness_impl(pert.base, theta_vector(pert), energy(pert, x), path);
}

}  // namespace pottscert
