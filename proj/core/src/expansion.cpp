#include "pottscert/expansion.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace pottscert {

void FlowNetwork::add_edge(int u, int v, const Rat& cap, const Rat& rev_cap) {
  if (cap < 0 || rev_cap < 0) throw std::invalid_argument("negative arc capacity");
  adj[u].push_back({v, static_cast<int>(adj[v].size()), cap});
  adj[v].push_back({u, static_cast<int>(adj[u].size()) - 1, rev_cap});
}

bool FlowNetwork::bfs_levels(int s, int t) {
  level.assign(size(), -1);
  std::queue<int> q;
  level[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const Arc& a : adj[u])
      if (a.cap > 0 && level[a.to] < 0) {
        level[a.to] = level[u] + 1;
        q.push(a.to);
      }
  }
  return level[t] >= 0;
}

Rat FlowNetwork::dfs_push(int u, int t, const Rat& limit) {
  if (u == t) return limit;
  for (int& i = iter[u]; i < static_cast<int>(adj[u].size()); ++i) {
    Arc& a = adj[u][i];
    if (a.cap <= 0 || level[a.to] != level[u] + 1) continue;
    Rat pushed = dfs_push(a.to, t, std::min(limit, a.cap));
    if (pushed > 0) {
      a.cap -= pushed;
      adj[a.to][a.rev].cap += pushed;
      return pushed;
    }
  }
  level[u] = -1;  // dead end, prune for this phase
  return 0;
}

Rat FlowNetwork::max_flow(int s, int t) {
  Rat total = 0;
  // No finite capacities exceed this sum, so it works as the dfs limit.
  Rat inf = 1;
  for (const auto& arcs : adj)
    for (const Arc& a : arcs) inf += a.cap;
  while (bfs_levels(s, t)) {
    iter.assign(size(), 0);
    for (;;) {
      Rat pushed = dfs_push(s, t, inf);
      if (pushed == 0) break;
      total += pushed;
    }
  }
  return total;
}

std::vector<bool> FlowNetwork::source_side(int s) const {
  std::vector<bool> seen(size(), false);
  std::queue<int> q;
  seen[s] = true;
  q.push(s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const Arc& a : adj[u])
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = true;
        q.push(a.to);
      }
  }
  return seen;
}

bool is_expansion_of(const Labeling& y, const Labeling& x, int alpha) {
  if (y.size() != x.size()) return false;
  for (size_t u = 0; u < x.size(); ++u)
    if (y[u] != x[u] && y[u] != alpha) return false;
  return true;
}

Labeling optimal_expansion(const PottsInstance& inst, const Labeling& x, int alpha) {
  if (alpha < 0 || alpha >= inst.k) throw std::invalid_argument("optimal_expansion: bad alpha");
  // Binary move variable z_u: 0 keeps x(u), 1 takes alpha. Nodes already at
  // alpha are fixed and excluded from the graph. Each pairwise term
  // E(z_u, z_v) with corners A=E(0,0), B=E(0,1), C=E(1,0), D=E(1,1) is split
  // as A + (C-A) z_u + (D-C) z_v + (B+C-A-D)[z_u=0, z_v=1]; the mixed part is
  // an arc u->v and the linear parts fold into the unary costs.
  std::vector<int> node_id(inst.n, -1);
  int movable = 0;
  for (int u = 0; u < inst.n; ++u)
    if (x[u] != alpha) node_id[u] = movable++;
  if (movable == 0) return x;

  int s = movable, t = movable + 1;
  FlowNetwork net(movable + 2);
  // cost_keep[u] accumulates the z_u = 0 side, cost_move[u] the z_u = 1 side.
  std::vector<Rat> cost_keep(movable), cost_move(movable);
  for (int u = 0; u < inst.n; ++u)
    if (node_id[u] >= 0) {
      cost_keep[node_id[u]] = inst.cost(u, x[u]);
      cost_move[node_id[u]] = inst.cost(u, alpha);
    }

  struct PendingArc {
    int u, v;
    Rat cap;
  };
  std::vector<PendingArc> arcs;
  for (int e = 0; e < inst.m(); ++e) {
    const Edge& ed = inst.edges[e];
    const Rat& w = inst.weight[e];
    if (w == 0) continue;
    int iu = node_id[ed.u], iv = node_id[ed.v];
    if (iu < 0 && iv < 0) continue;  // both endpoints already alpha
    if (iu < 0 || iv < 0) {
      // One endpoint fixed at alpha: the other pays w while it keeps a
      // different label.
      cost_keep[iu < 0 ? iv : iu] += w;
      continue;
    }
    bool cut_now = x[ed.u] != x[ed.v];
    Rat a = cut_now ? w : Rat(0);  // E(0,0)
    Rat b = w, c = w;              // E(0,1), E(1,0): exactly one side at alpha
    // E(1,1) = 0, both at alpha.
    cost_move[iu] += c - a;  // (C-A) z_u
    cost_keep[iv] += c;      // (D-C) z_v = -c z_v, rewritten as c (1-z_v) minus a constant
    arcs.push_back({iu, iv, b + c - a});  // B+C-A-D
  }

  // Keep = source side (z_u = 0), move = sink side. A cut crosses s->u when u
  // lands on the move side and u->t when it keeps, so s->u carries the move
  // cost and u->t the keep cost. Shift per node so both caps are nonnegative.
  for (int id = 0; id < movable; ++id) {
    Rat lo = std::min(cost_keep[id], cost_move[id]);
    Rat keep = cost_keep[id] - lo, move = cost_move[id] - lo;
    if (move > 0) net.add_edge(s, id, move);
    if (keep > 0) net.add_edge(id, t, keep);
  }
  for (const PendingArc& pa : arcs) net.add_edge(pa.u, pa.v, pa.cap);

  net.max_flow(s, t);
  std::vector<bool> keep_side = net.source_side(s);
  Labeling y = x;
  for (int u = 0; u < inst.n; ++u)
    if (node_id[u] >= 0 && !keep_side[node_id[u]]) y[u] = alpha;
  return y;
}

std::pair<Labeling, SweepStats> run_expansion(const PottsInstance& inst, const Labeling& init,
                                              const std::vector<int>& order, int max_sweeps) {
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < inst.k; ++i)
      if (i >= static_cast<int>(sorted.size()) || sorted[i] != i)
        throw std::invalid_argument("run_expansion: order must be a permutation of the labels");
  }
  Labeling x = init;
  SweepStats stats;
  Rat current = energy(inst, x);
  while (stats.sweeps < max_sweeps) {
    ++stats.sweeps;
    bool any = false;
    for (int alpha : order) {
      Labeling y = optimal_expansion(inst, x, alpha);
      Rat ey = energy(inst, y);
      if (ey < current) {  // strict decrease only; ties keep the labeling
        x = std::move(y);
        current = ey;
        ++stats.moves_accepted;
        stats.energy_trace.push_back(current);
        any = true;
      }
    }
    if (!any) {
      stats.converged = true;
      break;
    }
  }
  stats.final_energy = current;
  return {x, stats};
}

bool is_local_minimum(const PottsInstance& inst, const Labeling& x) {
  Rat current = energy(inst, x);
  for (int alpha = 0; alpha < inst.k; ++alpha)
    if (energy(inst, optimal_expansion(inst, x, alpha)) < current) return false;
  return true;
}

bool check_bvz_bound(const PottsInstance& inst, const Labeling& x, const Rat& map_energy) {
  return energy(inst, x) <= 2 * map_energy;
}

}  // namespace pottscert
