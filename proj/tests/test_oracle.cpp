#include "pottscert/oracle.hpp"

#include "pottscert/instances.hpp"
#include "pottscert/model.hpp"
#include "pottscert/objective.hpp"
#include "pottscert/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>

using namespace pottscert;

TEST_CASE("for_each_labeling walks k^n labelings with incremental changes") {
  int count = 0;
  Labeling prev;
  for_each_labeling(3, 3, {}, [&](const Labeling& x, const std::vector<int>& changed) {
    if (count == 0) {
      CHECK(changed.size() == 3);  // first call reports every position
    } else {
      REQUIRE(!changed.empty());
      Labeling rebuilt = prev;
      for (int u : changed) rebuilt[u] = x[u];
      CHECK(rebuilt == x);
      int untouched = 0;
      for (int u = 0; u < 3; ++u)
        if (std::find(changed.begin(), changed.end(), u) == changed.end() &&
            prev[u] == x[u])
          ++untouched;
      CHECK(untouched == 3 - static_cast<int>(changed.size()));
    }
    prev = x;
    ++count;
    return true;
  });
  CHECK(count == 27);

  int stopped = 0;
  for_each_labeling(3, 3, {}, [&](const Labeling&, const std::vector<int>&) {
    return ++stopped < 5;
  });
  CHECK(stopped == 5);
}

TEST_CASE("enumeration refuses to exceed the budget upfront") {
  OracleBudget tiny;
  tiny.max_labelings = 8;
  try {
    for_each_labeling(4, 2, tiny, [](const Labeling&, const std::vector<int>&) { return true; });
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.required == 16.0);
  }
}

TEST_CASE("scan_labelings reports exact energies and cut masks") {
  PottsInstance inst = gen_grid(2, 2, 3, 11);
  PottsInstance aux = perturb(inst, {0, 1, 2, 0}).as_instance();
  int seen = 0;
  scan_labelings(inst, &aux, {}, [&](const ScanItem& item) {
    REQUIRE(item.energy == energy(inst, item.x));
    REQUIRE(item.energy_aux == energy(aux, item.x));
    std::uint64_t mask = 0;
    for (int e = 0; e < inst.m(); ++e)
      if (item.x[inst.edges[e].u] != item.x[inst.edges[e].v]) mask |= std::uint64_t(1) << e;
    REQUIRE(item.cut_mask == mask);
    ++seen;
    return true;
  });
  CHECK(seen == 81);
}

TEST_CASE("scan_labelings stays exact on non-integer data") {
  PottsInstance p4 = make_p4();  // 0.1 costs force a common denominator
  scan_labelings(p4, nullptr, {}, [&](const ScanItem& item) {
    REQUIRE(item.energy == energy(p4, item.x));
    return true;
  });
}

TEST_CASE("int64_scale clears denominators exactly") {
  Int64Scale s1 = int64_scale(make_t1());
  REQUIRE(s1.ok);
  CHECK(Rat(s1.cost[0]) == make_t1().node_cost[0] * s1.scale);
  CHECK(Rat(s1.w[0]) == make_t1().weight[0] * s1.scale);

  Int64Scale s4 = int64_scale(make_p4());
  REQUIRE(s4.ok);
  PottsInstance p4 = make_p4();
  for (size_t i = 0; i < p4.node_cost.size(); ++i)
    CHECK(Rat(s4.cost[i]) == p4.node_cost[i] * s4.scale);

  PottsInstance ugly = make_t1();
  ugly.cost(0, 0) = Rat(1, 3);  // 1/3 has no finite binary/decimal scaling issue: 3 divides
  Int64Scale s3 = int64_scale(ugly);
  if (s3.ok) CHECK(Rat(s3.cost[0]) == ugly.cost(0, 0) * s3.scale);

  PottsInstance huge = make_t1();
  huge.cost(0, 0) = Rat(Int(1) << 80);  // cannot fit any int64 scaling
  CHECK_FALSE(int64_scale(huge).ok);
}

TEST_CASE("brute_map finds the global optimum") {
  MapResult res = brute_map(make_t1());
  CHECK(res.labeling == Labeling{0, 1});
  CHECK(res.energy == Rat(1));
  CHECK(res.visited == 4);
  MapResult res4 = brute_map(make_p4());
  CHECK(res4.labeling == Labeling{0, 3});
  CHECK(res4.energy == Rat(1));
}

TEST_CASE("all_expansion_minima enumerates exactly the local minima") {
  std::vector<Labeling> t1_minima = all_expansion_minima(make_t1());
  REQUIRE(t1_minima.size() == 1);
  CHECK(t1_minima[0] == Labeling{0, 1});

  // p4: the second-best labeling (1,2) is escapable via a 0-expansion, so the
  // MAP labeling is the only minimum.
  std::vector<Labeling> p4_minima = all_expansion_minima(make_p4());
  REQUIRE(p4_minima.size() == 1);
  CHECK(p4_minima[0] == Labeling{0, 3});

  // Two symmetric ground states, both local minima.
  PottsInstance flat;
  flat.n = 2;
  flat.k = 2;
  flat.edges = {{0, 1}};
  flat.node_cost = {Rat(0), Rat(0), Rat(0), Rat(0)};
  flat.weight = {Rat(1)};
  std::vector<Labeling> flat_minima = all_expansion_minima(flat);
  std::set<Labeling> got(flat_minima.begin(), flat_minima.end());
  CHECK(got == std::set<Labeling>{{0, 0}, {1, 1}});
}

TEST_CASE("verify_main_theorem passes on seeded grids") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    PottsInstance inst = gen_grid(2, 3, 3, rng.next());
    TheoremCheck tc = verify_main_theorem(inst, SolverPath::exact);
    REQUIRE_MESSAGE(tc.ok, tc.failure);
    CHECK(tc.minima >= 1);
  }
}

TEST_CASE("worst_minimum maximizes the objective over local minima") {
  PottsInstance t1 = make_t1();
  MapResult map = brute_map(t1);
  WorstMinimum wm = worst_minimum(t1, make_hamming_objective(t1, map.labeling));
  CHECK(wm.minima == 1);
  CHECK(wm.value == Rat(0));

  PottsInstance flat;
  flat.n = 2;
  flat.k = 2;
  flat.edges = {{0, 1}};
  flat.node_cost = {Rat(0), Rat(0), Rat(0), Rat(0)};
  flat.weight = {Rat(1)};
  MapResult fmap = brute_map(flat);  // first minimizer: (0,0)
  WorstMinimum fwm = worst_minimum(flat, make_hamming_objective(flat, fmap.labeling));
  CHECK(fwm.minima == 2);
  CHECK(fwm.value == Rat(1));
  CHECK(fwm.argmax == Labeling{1, 1});

  WorstMinimum gap = worst_minimum(t1, make_gap_objective(t1, map.labeling));
  CHECK(gap.value == Rat(1));  // unique minimum is the MAP labeling itself
}
