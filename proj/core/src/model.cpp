#include "pottscert/model.hpp"

#include <stdexcept>
#include <string>

namespace pottscert {

void PottsInstance::validate() const {
  if (n <= 0) throw std::invalid_argument("instance needs at least one node");
  if (k < 2) throw std::invalid_argument("instance needs at least two labels");
  if (node_cost.size() != static_cast<size_t>(n) * k)
    throw std::invalid_argument("node cost table has wrong size");
  if (weight.size() != edges.size())
    throw std::invalid_argument("weight table does not match edge list");
  for (size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
      throw std::invalid_argument("edge " + std::to_string(e) + " endpoint out of range");
    if (ed.u == ed.v)
      throw std::invalid_argument("edge " + std::to_string(e) + " is a self loop");
    if (weight[e] < 0)
      throw std::invalid_argument("edge " + std::to_string(e) + " has negative weight");
  }
}

PottsInstance PerturbedInstance::as_instance() const {
  PottsInstance inst = base;
  inst.weight = pweight;
  return inst;
}

namespace {

void check_labeling(const PottsInstance& inst, const Labeling& x, const char* what) {
  if (x.size() != static_cast<size_t>(inst.n))
    throw std::invalid_argument(std::string(what) + ": labeling size mismatch");
  for (int l : x)
    if (l < 0 || l >= inst.k)
      throw std::invalid_argument(std::string(what) + ": label out of range");
}

}  // namespace

Rat energy(const PottsInstance& inst, const Labeling& x) {
  check_labeling(inst, x, "energy");
  Rat total = 0;
  for (int u = 0; u < inst.n; ++u) total += inst.cost(u, x[u]);
  for (int e = 0; e < inst.m(); ++e)
    if (x[inst.edges[e].u] != x[inst.edges[e].v]) total += inst.weight[e];
  return total;
}

Rat energy(const PerturbedInstance& pert, const Labeling& y) {
  check_labeling(pert.base, y, "energy");
  Rat total = 0;
  for (int u = 0; u < pert.base.n; ++u) total += pert.base.cost(u, y[u]);
  for (int e = 0; e < pert.base.m(); ++e)
    if (y[pert.base.edges[e].u] != y[pert.base.edges[e].v]) total += pert.pweight[e];
  return total;
}

int cut_count(const PottsInstance& inst, const Labeling& x) {
  check_labeling(inst, x, "cut_count");
  int c = 0;
  for (const Edge& e : inst.edges)
    if (x[e.u] != x[e.v]) ++c;
  return c;
}

Rat cut_weight(const PottsInstance& inst, const Labeling& x) {
  check_labeling(inst, x, "cut_weight");
  Rat total = 0;
  for (int e = 0; e < inst.m(); ++e)
    if (x[inst.edges[e].u] != x[inst.edges[e].v]) total += inst.weight[e];
  return total;
}

Rat hamming(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("hamming: labelings must have equal nonzero size");
  int diff = 0;
  for (size_t u = 0; u < a.size(); ++u)
    if (a[u] != b[u]) ++diff;
  return Rat(diff, static_cast<int>(a.size()));
}

PerturbedInstance perturb(const PottsInstance& inst, const Labeling& x) {
  check_labeling(inst, x, "perturb");
  PerturbedInstance pert;
  pert.base = inst;
  pert.x = x;
  pert.pweight.resize(inst.edges.size());
  for (int e = 0; e < inst.m(); ++e) {
    bool cut = x[inst.edges[e].u] != x[inst.edges[e].v];
    pert.pweight[e] = cut ? inst.weight[e] : 2 * inst.weight[e];
  }
  return pert;
}

FractionalPoint embed(const PottsInstance& inst, const Labeling& x) {
  check_labeling(inst, x, "embed");
  FractionalPoint p;
  p.n = inst.n;
  p.k = inst.k;
  p.node.assign(static_cast<size_t>(inst.n) * inst.k, Rat(0));
  p.edge.assign(static_cast<size_t>(inst.m()) * inst.k * inst.k, Rat(0));
  for (int u = 0; u < inst.n; ++u) p.node[static_cast<size_t>(u) * inst.k + x[u]] = 1;
  for (int e = 0; e < inst.m(); ++e) {
    int i = x[inst.edges[e].u], j = x[inst.edges[e].v];
    p.edge[(static_cast<size_t>(e) * inst.k + i) * inst.k + j] = 1;
  }
  return p;
}

namespace {

std::vector<Rat> theta_vector_impl(const PottsInstance& inst, const std::vector<Rat>& w) {
  std::vector<Rat> theta(inst.node_cost.begin(), inst.node_cost.end());
  theta.reserve(theta.size() + static_cast<size_t>(inst.m()) * inst.k * inst.k);
  for (int e = 0; e < inst.m(); ++e)
    for (int i = 0; i < inst.k; ++i)
      for (int j = 0; j < inst.k; ++j) theta.push_back(i == j ? Rat(0) : w[e]);
  return theta;
}

Rat theta_dot_impl(const PottsInstance& inst, const std::vector<Rat>& w,
                   const FractionalPoint& p) {
  if (p.n != inst.n || p.k != inst.k ||
      p.edge.size() != static_cast<size_t>(inst.m()) * inst.k * inst.k)
    throw std::invalid_argument("theta_dot: point does not match instance");
  Rat total = 0;
  for (size_t c = 0; c < inst.node_cost.size(); ++c)
    if (p.node[c] != 0) total += inst.node_cost[c] * p.node[c];
  for (int e = 0; e < inst.m(); ++e) {
    Rat cut_mass = 0;
    for (int i = 0; i < inst.k; ++i)
      for (int j = 0; j < inst.k; ++j)
        if (i != j) cut_mass += p.edge_at(e, i, j);
    if (cut_mass != 0) total += w[e] * cut_mass;
  }
  return total;
}

}  // namespace

std::vector<Rat> theta_vector(const PottsInstance& inst) {
  return theta_vector_impl(inst, inst.weight);
}

std::vector<Rat> theta_vector(const PerturbedInstance& pert) {
  return theta_vector_impl(pert.base, pert.pweight);
}

Rat theta_dot(const PottsInstance& inst, const FractionalPoint& p) {
  return theta_dot_impl(inst, inst.weight, p);
}

Rat theta_dot(const PerturbedInstance& pert, const FractionalPoint& p) {
  return theta_dot_impl(pert.base, pert.pweight, p);
}

PottsInstance make_t1() {
  PottsInstance inst;
  inst.n = 2;
  inst.k = 2;
  inst.edges = {{0, 1}};
  inst.node_cost = {Rat(0), Rat(2), Rat(2), Rat(0)};
  inst.weight = {Rat(1)};
  return inst;
}

PottsInstance make_p4() {
  PottsInstance inst;
  inst.n = 2;
  inst.k = 4;
  inst.edges = {{0, 1}};
  Rat eps(1, 10), big(1000000);
  inst.node_cost = {Rat(0), eps, big, big, big, big, eps, Rat(0)};
  inst.weight = {Rat(1)};
  return inst;
}

}  // namespace pottscert
