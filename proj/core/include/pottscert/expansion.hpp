// Alpha-expansion over exact min cuts. The move graph encodes "keep the
// current label" versus "switch to alpha" per node; Potts pairwise terms are
// submodular for every (x, alpha), so a single s-t cut finds the optimal
// expansion. Capacities stay rational, which keeps the solver deterministic
// and tolerance-free.
#pragma once

#include "pottscert/model.hpp"

#include <vector>

namespace pottscert {

// Dinic max-flow. Arcs added first are explored first, so cut sides are a
// deterministic function of the construction order.
struct FlowNetwork {
  struct Arc {
    int to;
    int rev;  // index of the reverse arc in adj[to]
    Rat cap;
  };

  explicit FlowNetwork(int num_nodes) : adj(num_nodes) {}

  int size() const { return static_cast<int>(adj.size()); }
  void add_edge(int u, int v, const Rat& cap, const Rat& rev_cap = Rat(0));
  Rat max_flow(int s, int t);
  // After max_flow: nodes reachable from s in the residual graph.
  std::vector<bool> source_side(int s) const;

  std::vector<std::vector<Arc>> adj;

 private:
  bool bfs_levels(int s, int t);
  Rat dfs_push(int u, int t, const Rat& limit);
  std::vector<int> level, iter;
};

struct SweepStats {
  int sweeps = 0;
  int moves_accepted = 0;
  std::vector<Rat> energy_trace;  // energy after each accepted move
  Rat final_energy = 0;
  bool converged = false;  // a full sweep made no move
};

// y is an alpha-expansion of x: every node keeps its label or takes alpha.
bool is_expansion_of(const Labeling& y, const Labeling& x, int alpha);

// Minimum-energy alpha-expansion of x via one min cut. Among optimal moves,
// nodes reachable from the source in the residual graph keep their label.
Labeling optimal_expansion(const PottsInstance& inst, const Labeling& x, int alpha);

// Sweeps alpha over `order` (a permutation of the labels), accepting a move
// only on strict energy decrease, until a sweep accepts nothing or max_sweeps
// is hit.
std::pair<Labeling, SweepStats> run_expansion(const PottsInstance& inst, const Labeling& init,
                                              const std::vector<int>& order,
                                              int max_sweeps = 100);

// No alpha-expansion strictly improves x.
bool is_local_minimum(const PottsInstance& inst, const Labeling& x);

// Expansion local minima of the uniform metric are 2-approximations:
// energy(x) <= 2 * map_energy. map_energy must come from an exact solver.
bool check_bvz_bound(const PottsInstance& inst, const Labeling& x, const Rat& map_energy);

}  // namespace pottscert
