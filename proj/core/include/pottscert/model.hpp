// Ferromagnetic Potts model: node costs theta_u(i) plus nonnegative edge
// weights w_uv charged when the endpoints disagree. This header fixes the
// coordinate conventions shared by every other module:
//   node coordinates  (u, i)    -> index u*k + i
//   edge coordinates  (e, i, j) -> index e*k*k + i*k + j, where i labels
//                                  edges[e].u and j labels edges[e].v
// Fractional points, objectives, and LP columns all use this layout with the
// node block first and the edge block second.
#pragma once

#include "pottscert/rational.hpp"

#include <cstdint>
#include <vector>

namespace pottscert {

using Labeling = std::vector<int>;

struct Edge {
  int u, v;
};

struct PottsInstance {
  int n = 0;
  int k = 0;
  std::vector<Edge> edges;
  std::vector<Rat> node_cost;  // n*k, node coordinate order
  std::vector<Rat> weight;     // one per edge, >= 0

  int m() const { return static_cast<int>(edges.size()); }
  const Rat& cost(int u, int i) const { return node_cost[static_cast<size_t>(u) * k + i]; }
  Rat& cost(int u, int i) { return node_cost[static_cast<size_t>(u) * k + i]; }

  // Throws std::invalid_argument when sizes, endpoints, or weight signs are
  // inconsistent. Called by the parsers and the generators.
  void validate() const;
};

// Weights doubled on the edges x leaves uncut; everything else unchanged.
// theta^x and theta agree on x itself: <theta^x, embed(x)> == energy(base, x).
struct PerturbedInstance {
  PottsInstance base;
  Labeling x;
  std::vector<Rat> pweight;  // w if x cuts the edge, 2w otherwise

  // The perturbed model as a plain instance (same costs, pweight as weights).
  PottsInstance as_instance() const;
};

struct FractionalPoint {
  int n = 0, k = 0;
  std::vector<Rat> node;  // n*k
  std::vector<Rat> edge;  // m*k*k

  Rat node_at(int u, int i) const { return node[static_cast<size_t>(u) * k + i]; }
  Rat edge_at(int e, int i, int j) const {
    return edge[(static_cast<size_t>(e) * k + i) * k + j];
  }
};

Rat energy(const PottsInstance& inst, const Labeling& x);
Rat energy(const PerturbedInstance& pert, const Labeling& y);

// Number of cut edges (endpoints disagree) under x.
int cut_count(const PottsInstance& inst, const Labeling& x);
// Total weight of edges cut by x.
Rat cut_weight(const PottsInstance& inst, const Labeling& x);

// Normalized Hamming distance |{u : a(u) != b(u)}| / n.
Rat hamming(const Labeling& a, const Labeling& b);

PerturbedInstance perturb(const PottsInstance& inst, const Labeling& x);

// Indicator point of a labeling: node marginals are unit vectors and edge
// marginals are the corresponding products.
FractionalPoint embed(const PottsInstance& inst, const Labeling& x);

// theta as a vector over the full coordinate space (node block then edge
// block); edge entries are w_e * [i != j]. The perturbed overload uses the
// perturbed weights.
std::vector<Rat> theta_vector(const PottsInstance& inst);
std::vector<Rat> theta_vector(const PerturbedInstance& pert);

// <theta, p> for a fractional point, matching energy() on embeddings.
Rat theta_dot(const PottsInstance& inst, const FractionalPoint& p);
Rat theta_dot(const PerturbedInstance& pert, const FractionalPoint& p);

// Shipped desk fixtures. T1: two nodes, one unit edge, k=2, costs (0,2) and
// (2,0). P4: two nodes, one unit edge, k=4, costs (0, 0.1, 1e6, 1e6) and
// (1e6, 1e6, 0.1, 0); its expansion dynamics separate naive from certified
// bounds.
PottsInstance make_t1();
PottsInstance make_p4();

}  // namespace pottscert
