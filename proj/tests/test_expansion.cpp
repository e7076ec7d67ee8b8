#include "pottscert/expansion.hpp"

#include "pottscert/instances.hpp"
#include "pottscert/model.hpp"
#include "pottscert/oracle.hpp"
#include "pottscert/rng.hpp"

#include "doctest.h"

#include <algorithm>

using namespace pottscert;

namespace {

// Exhaustive optimum over expansions of x toward alpha: nodes keep their
// label or switch to alpha.
Rat brute_expansion_value(const PottsInstance& inst, const Labeling& x, int alpha) {
  std::vector<int> movable;
  for (int u = 0; u < inst.n; ++u)
    if (x[u] != alpha) movable.push_back(u);
  Labeling y = x;
  for (int u : movable) y[u] = alpha;  // start all-switched; walk subsets
  Rat best = energy(inst, y);
  const size_t subsets = size_t(1) << movable.size();
  for (size_t mask = 0; mask < subsets; ++mask) {
    for (size_t b = 0; b < movable.size(); ++b)
      y[movable[b]] = (mask >> b) & 1 ? alpha : x[movable[b]];
    best = std::min(best, energy(inst, y));
  }
  return best;
}

}  // namespace

TEST_CASE("max flow on a hand network") {
  FlowNetwork net(4);
  net.add_edge(0, 1, Rat(3));
  net.add_edge(0, 2, Rat(2));
  net.add_edge(1, 3, Rat(2));
  net.add_edge(2, 3, Rat(3));
  net.add_edge(1, 2, Rat(1));
  CHECK(net.max_flow(0, 3) == Rat(5));
  std::vector<bool> side = net.source_side(0);
  CHECK(side[0]);
  CHECK_FALSE(side[3]);
}

TEST_CASE("max flow with rational capacities") {
  FlowNetwork net(3);
  net.add_edge(0, 1, Rat(1, 3));
  net.add_edge(1, 2, Rat(1, 2));
  CHECK(net.max_flow(0, 2) == Rat(1, 3));
}

TEST_CASE("is_expansion_of semantics") {
  CHECK(is_expansion_of({0, 2, 2}, {0, 1, 2}, 2));
  CHECK(is_expansion_of({0, 1, 2}, {0, 1, 2}, 2));     // no move is a move
  CHECK_FALSE(is_expansion_of({0, 0, 2}, {0, 1, 2}, 2));  // switched to non-alpha
  CHECK_FALSE(is_expansion_of({2, 1, 0}, {0, 1, 2}, 2));  // alpha node left alpha
}

TEST_CASE("optimal_expansion on t1 finds the improving move") {
  PottsInstance t1 = make_t1();
  Labeling better = optimal_expansion(t1, {0, 0}, 1);
  CHECK(better == Labeling{0, 1});
  CHECK(energy(t1, better) == Rat(1));
  // Already optimal: expansion cannot improve, returns an expansion of x.
  Labeling same = optimal_expansion(t1, {0, 1}, 0);
  CHECK(energy(t1, same) == Rat(1));
}

TEST_CASE("optimal_expansion matches brute force on seeded instances") {
  SplitMix64 rng(2024);
  const int shapes[][2] = {{1, 4}, {2, 2}, {1, 5}, {2, 3}};
  for (int trial = 0; trial < 24; ++trial) {
    const auto& sh = shapes[trial % 4];
    int k = 2 + trial % 2;
    PottsInstance inst = gen_grid(sh[0], sh[1], k, rng.next());
    std::uint64_t total = 1;
    for (int u = 0; u < inst.n; ++u) total *= k;
    Labeling x(inst.n, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (int u = 0; u < inst.n; ++u) {
        x[u] = static_cast<int>(c % k);
        c /= k;
      }
      for (int alpha = 0; alpha < k; ++alpha) {
        Labeling y = optimal_expansion(inst, x, alpha);
        REQUIRE(is_expansion_of(y, x, alpha));
        REQUIRE(energy(inst, y) == brute_expansion_value(inst, x, alpha));
      }
    }
  }
}

TEST_CASE("binary MAP via a single expansion from zeros") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    PottsInstance inst = gen_grid(2, 3, 2, rng.next());
    Labeling x = optimal_expansion(inst, Labeling(inst.n, 0), 1);
    CHECK(energy(inst, x) == brute_map(inst).energy);
  }
}

TEST_CASE("run_expansion reaches a local minimum with a monotone trace") {
  PottsInstance inst = gen_grid(2, 3, 3, 7);
  auto [x, stats] = run_expansion(inst, Labeling(inst.n, 0), {0, 1, 2});
  CHECK(stats.converged);
  CHECK(energy(inst, x) == stats.final_energy);
  CHECK(is_local_minimum(inst, x));
  for (size_t i = 1; i < stats.energy_trace.size(); ++i)
    CHECK(stats.energy_trace[i] <= stats.energy_trace[i - 1]);
  // Same instance from a worse start lands on some local minimum too.
  auto [x2, stats2] = run_expansion(inst, Labeling(inst.n, 2), {2, 0, 1});
  CHECK(stats2.converged);
  CHECK(is_local_minimum(inst, x2));
}

TEST_CASE("run_expansion rejects a non-permutation order") {
  PottsInstance t1 = make_t1();
  CHECK_THROWS(run_expansion(t1, {0, 0}, {}));
  CHECK_THROWS(run_expansion(t1, {0, 0}, {0, 0}));
  CHECK_THROWS(run_expansion(t1, {0, 0}, {0, 1, 2}));
}

TEST_CASE("is_local_minimum matches the expansion search") {
  PottsInstance t1 = make_t1();
  CHECK(is_local_minimum(t1, {0, 1}));
  CHECK_FALSE(is_local_minimum(t1, {0, 0}));
  CHECK_FALSE(is_local_minimum(t1, {1, 0}));
}

TEST_CASE("expansion minima satisfy the classical 2-approximation bound") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    PottsInstance inst = gen_grid(2, 2, 3, rng.next());
    auto [x, stats] = run_expansion(inst, Labeling(inst.n, trial % 3), {0, 1, 2});
    REQUIRE(stats.converged);
    CHECK(check_bvz_bound(inst, x, brute_map(inst).energy));
  }
}
