#include "pottscert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace pottscert {

void for_each_labeling(int n, int k, const OracleBudget& budget,
                       const std::function<bool(const Labeling&, const std::vector<int>&)>& fn) {
  double total = std::pow(static_cast<double>(k), n);
  if (total > static_cast<double>(budget.max_labelings))
    throw BudgetError("enumeration budget exceeded: k^n = " + std::to_string(total) +
                          " labelings with budget " + std::to_string(budget.max_labelings),
                      total);
  Labeling x(n, 0);
  std::vector<int> changed(n);
  for (int u = 0; u < n; ++u) changed[u] = u;
  if (!fn(x, changed)) return;
  for (;;) {
    // Mixed-radix increment, node 0 least significant.
    changed.clear();
    int pos = 0;
    while (pos < n) {
      changed.push_back(pos);
      if (++x[pos] < k) break;
      x[pos] = 0;
      ++pos;
    }
    if (pos == n) return;  // wrapped around
    if (!fn(x, changed)) return;
  }
}

// The oracles run in int64 when every cost and weight becomes an integer
// after multiplying by the lcm of denominators and the scaled magnitudes
// leave headroom; otherwise they fall back to rationals. Perturbed weights
// double, hence the factor two in the headroom check.
Int64Scale int64_scale(const PottsInstance& inst) {
  Int64Scale sv;
  Int lcm_den = 1;
  for (const Rat& r : inst.node_cost) lcm_den = lcm(lcm_den, denominator(r));
  for (const Rat& r : inst.weight) lcm_den = lcm(lcm_den, denominator(r));
  if (lcm_den > 1000000000) return sv;

  Int max_abs = 0;
  auto scaled = [&lcm_den](const Rat& r) { return Int(numerator(r) * (lcm_den / denominator(r))); };
  for (const Rat& r : inst.node_cost) max_abs = std::max(max_abs, Int(abs(scaled(r))));
  for (const Rat& r : inst.weight) max_abs = std::max(max_abs, Int(abs(scaled(r))));
  Int budget_bound = max_abs * 2 * (inst.n + inst.m() + 1);
  if (budget_bound >= (Int(1) << 62)) return sv;

  sv.ok = true;
  sv.scale = Rat(lcm_den);
  sv.cost.reserve(inst.node_cost.size());
  for (const Rat& r : inst.node_cost) sv.cost.push_back(scaled(r).convert_to<long long>());
  sv.w.reserve(inst.weight.size());
  for (const Rat& r : inst.weight) sv.w.push_back(scaled(r).convert_to<long long>());
  return sv;
}

namespace {

using ScaledView = Int64Scale;

struct Adjacency {
  // (edge index, neighbor) pairs per node, edge order preserved.
  std::vector<std::vector<std::pair<int, int>>> at;

  explicit Adjacency(const PottsInstance& inst) : at(inst.n) {
    for (int e = 0; e < inst.m(); ++e) {
      at[inst.edges[e].u].push_back({e, inst.edges[e].v});
      at[inst.edges[e].v].push_back({e, inst.edges[e].u});
    }
  }
};

template <class N>
struct NumView {
  const PottsInstance& inst;
  const Adjacency& adj;
  std::vector<N> cost, w;

  const N& cost_at(int u, int i) const { return cost[static_cast<size_t>(u) * inst.k + i]; }

  N full_energy(const Labeling& x) const {
    N total = 0;
    for (int u = 0; u < inst.n; ++u) total += cost_at(u, x[u]);
    for (int e = 0; e < inst.m(); ++e)
      if (x[inst.edges[e].u] != x[inst.edges[e].v]) total += w[e];
    return total;
  }

  // Energy delta of relabeling node u from `from` to `to` within x (x still
  // holds `from` at u).
  N move_delta(const Labeling& x, int u, int from, int to) const {
    N d = cost_at(u, to) - cost_at(u, from);
    for (const auto& [e, v] : adj.at[u]) {
      bool cut_before = x[v] != from;
      bool cut_after = x[v] != to;
      if (cut_before != cut_after) d += cut_after ? w[e] : -w[e];
    }
    return d;
  }
};

template <class N>
NumView<N> make_view(const PottsInstance& inst, const Adjacency& adj, const ScaledView& sv);

template <>
NumView<long long> make_view(const PottsInstance& inst, const Adjacency& adj,
                             const ScaledView& sv) {
  return {inst, adj, sv.cost, sv.w};
}

template <>
NumView<Rat> make_view(const PottsInstance& inst, const Adjacency& adj, const ScaledView&) {
  std::vector<Rat> cost(inst.node_cost.begin(), inst.node_cost.end());
  std::vector<Rat> w(inst.weight.begin(), inst.weight.end());
  return {inst, adj, std::move(cost), std::move(w)};
}

// Incremental energy (and cut mask) alongside for_each_labeling: the previous
// labeling is kept so deltas touch only changed nodes; edges between two
// changed nodes are deduplicated with a stamp.
template <class N>
struct EnergyTracker {
  const NumView<N>& view;
  Labeling prev;
  N value = 0;
  std::uint64_t mask = 0;  // meaningful only when m <= 64
  std::vector<int> edge_stamp;
  int gen = 0;

  explicit EnergyTracker(const NumView<N>& v)
      : view(v), edge_stamp(static_cast<size_t>(v.inst.m()), -1) {}

  const N& update(const Labeling& x, const std::vector<int>& changed) {
    if (prev.empty() || changed.size() >= static_cast<size_t>(view.inst.n)) {
      value = view.full_energy(x);
      mask = 0;
      for (int e = 0; e < view.inst.m() && e < 64; ++e)
        if (x[view.inst.edges[e].u] != x[view.inst.edges[e].v]) mask |= std::uint64_t(1) << e;
      prev = x;
      return value;
    }
    ++gen;
    for (int u : changed) {
      value += view.cost_at(u, x[u]) - view.cost_at(u, prev[u]);
      for (const auto& [e, v] : view.adj.at[u]) {
        if (edge_stamp[e] == gen) continue;
        edge_stamp[e] = gen;
        bool cut_before = prev[view.inst.edges[e].u] != prev[view.inst.edges[e].v];
        bool cut_after = x[view.inst.edges[e].u] != x[view.inst.edges[e].v];
        if (cut_before != cut_after) {
          value += cut_after ? view.w[e] : -view.w[e];
          if (e < 64) mask ^= std::uint64_t(1) << e;
        }
      }
    }
    for (int u : changed) prev[u] = x[u];
    return value;
  }
};

// True iff some subset of nodes switching to a common label strictly lowers
// the energy. Single-node moves are screened first; larger subsets go through
// a Gray-code walk with O(degree) toggles.
template <class N>
bool has_improving_expansion(const NumView<N>& view, const Labeling& x) {
  const PottsInstance& inst = view.inst;
  for (int u = 0; u < inst.n; ++u)
    for (int a = 0; a < inst.k; ++a)
      if (a != x[u] && view.move_delta(x, u, x[u], a) < 0) return true;

  std::vector<int> members;
  Labeling y;
  for (int a = 0; a < inst.k; ++a) {
    members.clear();
    for (int u = 0; u < inst.n; ++u)
      if (x[u] != a) members.push_back(u);
    size_t sz = members.size();
    if (sz <= 1) continue;
    y = x;
    N base = view.full_energy(x);
    N cur = base;
    unsigned long long limit = 1ull << sz;
    unsigned long long code = 0;
    for (unsigned long long g = 1; g < limit; ++g) {
      unsigned long long next = g ^ (g >> 1);  // Gray code of g
      unsigned long long flipped = next ^ code;
      int bit = 0;
      while (!((flipped >> bit) & 1)) ++bit;
      code = next;
      int u = members[bit];
      if (y[u] == a) {
        cur += view.move_delta(y, u, a, x[u]);
        y[u] = x[u];
      } else {
        cur += view.move_delta(y, u, x[u], a);
        y[u] = a;
      }
      if (cur < base) return true;
    }
  }
  return false;
}

template <class N>
std::vector<Labeling> minima_impl(const PottsInstance& inst, const Adjacency& adj,
                                  const NumView<N>& view, const OracleBudget& budget) {
  std::vector<Labeling> minima;
  for_each_labeling(inst.n, inst.k, budget, [&](const Labeling& x, const std::vector<int>&) {
    if (!has_improving_expansion(view, x)) minima.push_back(x);
    return true;
  });
  return minima;
}

}  // namespace

namespace {

template <class N>
void scan_impl(const PottsInstance& inst, const PottsInstance* aux, const OracleBudget& budget,
               const std::function<bool(const ScanItem&)>& fn, const NumView<N>& main_view,
               const NumView<N>* aux_view, const Rat& main_scale, const Rat& aux_scale) {
  EnergyTracker<N> main_tracker(main_view);
  std::optional<EnergyTracker<N>> aux_tracker;
  if (aux_view) aux_tracker.emplace(*aux_view);
  for_each_labeling(inst.n, inst.k, budget,
                    [&](const Labeling& x, const std::vector<int>& changed) {
                      ScanItem item{x, changed, Rat(main_tracker.update(x, changed)), Rat(0),
                                    main_tracker.mask};
                      if (main_scale != 1) item.energy /= main_scale;
                      if (aux_tracker) {
                        item.energy_aux = Rat(aux_tracker->update(x, changed));
                        if (aux_scale != 1) item.energy_aux /= aux_scale;
                      }
                      return fn(item);
                    });
}

}  // namespace

void scan_labelings(const PottsInstance& inst, const PottsInstance* aux,
                    const OracleBudget& budget, const std::function<bool(const ScanItem&)>& fn) {
  inst.validate();
  Adjacency adj(inst);
  std::optional<Adjacency> aux_adj;
  if (aux) {
    if (aux->n != inst.n || aux->k != inst.k || aux->m() != inst.m())
      throw std::invalid_argument("scan_labelings: aux instance shape mismatch");
    aux->validate();
    aux_adj.emplace(*aux);
  }
  Int64Scale main_sc = int64_scale(inst);
  Int64Scale aux_sc;
  if (aux) aux_sc = int64_scale(*aux);

  if (main_sc.ok && (!aux || aux_sc.ok)) {
    NumView<long long> main_view = make_view<long long>(inst, adj, main_sc);
    std::optional<NumView<long long>> aux_view;
    if (aux) aux_view.emplace(make_view<long long>(*aux, *aux_adj, aux_sc));
    scan_impl<long long>(inst, aux, budget, fn, main_view, aux ? &*aux_view : nullptr,
                         main_sc.scale, aux_sc.scale);
  } else {
    NumView<Rat> main_view = make_view<Rat>(inst, adj, main_sc);
    std::optional<NumView<Rat>> aux_view;
    if (aux) aux_view.emplace(make_view<Rat>(*aux, *aux_adj, aux_sc));
    scan_impl<Rat>(inst, aux, budget, fn, main_view, aux ? &*aux_view : nullptr, Rat(1), Rat(1));
  }
}

MapResult brute_map(const PottsInstance& inst, const OracleBudget& budget) {
  inst.validate();
  Adjacency adj(inst);
  ScaledView sv = int64_scale(inst);
  MapResult res;
  if (sv.ok) {
    NumView<long long> view = make_view<long long>(inst, adj, sv);
    EnergyTracker<long long> tracker(view);
    bool first = true;
    long long best = 0;
    for_each_labeling(inst.n, inst.k, budget,
                      [&](const Labeling& x, const std::vector<int>& changed) {
                        long long e = tracker.update(x, changed);
                        ++res.visited;
                        if (first || e < best) {
                          first = false;
                          best = e;
                          res.labeling = x;
                        }
                        return true;
                      });
    res.energy = energy(inst, res.labeling);
  } else {
    NumView<Rat> view = make_view<Rat>(inst, adj, sv);
    EnergyTracker<Rat> tracker(view);
    bool first = true;
    Rat best = 0;
    for_each_labeling(inst.n, inst.k, budget,
                      [&](const Labeling& x, const std::vector<int>& changed) {
                        Rat e = tracker.update(x, changed);
                        ++res.visited;
                        if (first || e < best) {
                          first = false;
                          best = e;
                          res.labeling = x;
                        }
                        return true;
                      });
    res.energy = best;
  }
  return res;
}

std::vector<Labeling> all_expansion_minima(const PottsInstance& inst,
                                           const OracleBudget& budget) {
  inst.validate();
  Adjacency adj(inst);
  ScaledView sv = int64_scale(inst);
  if (sv.ok) {
    NumView<long long> view = make_view<long long>(inst, adj, sv);
    return minima_impl(inst, adj, view, budget);
  }
  NumView<Rat> view = make_view<Rat>(inst, adj, sv);
  return minima_impl(inst, adj, view, budget);
}

TheoremCheck verify_main_theorem(const PottsInstance& inst, SolverPath path,
                                 const OracleBudget& budget) {
  TheoremCheck check;
  std::vector<Labeling> minima = all_expansion_minima(inst, budget);
  check.minima = static_cast<int>(minima.size());

  for (const Labeling& x : minima) {
    PerturbedInstance pert = perturb(inst, x);
    PottsInstance pinst = pert.as_instance();

    MapResult pmap = brute_map(pinst, budget);
    Rat ex = energy(pert, x);
    if (pmap.energy != ex) {
      check.failure = "local minimum is not optimal for its perturbed instance (perturbed MAP " +
                      format_rational(pmap.energy) + " vs " + format_rational(ex) + ")";
      check.witness = x;
      return check;
    }

    TightnessReport tight = check_tightness(pert, x, path);
    if (!tight.tight && path == SolverPath::floating) {
      // Escalate borderline float verdicts before declaring failure.
      tight = check_tightness(pert, x, SolverPath::exact);
    }
    if (!tight.tight) {
      check.failure = "local LP not tight on the perturbed instance (lp " +
                      format_rational(tight.lp_value) + " vs energy " +
                      format_rational(tight.label_energy) + ")";
      check.witness = x;
      return check;
    }
  }
  check.ok = true;
  return check;
}

WorstMinimum worst_minimum(const PottsInstance& inst, const QualityObjective& obj,
                           const OracleBudget& budget) {
  std::vector<Labeling> minima = all_expansion_minima(inst, budget);
  WorstMinimum worst;
  worst.minima = static_cast<int>(minima.size());
  bool first = true;
  for (const Labeling& x : minima) {
    Rat v = obj.eval(embed(inst, x));
    if (first || v > worst.value) {
      first = false;
      worst.value = v;
      worst.argmax = x;
    }
  }
  if (first) throw std::runtime_error("worst_minimum: no local minima found, impossible");
  return worst;
}

}  // namespace pottscert
