// pottscert CLI: generation, expansion, exact MAP, certified and naive bounds,
// theorem verification, and rounding checks. Reports are flat snake_case JSON
// on stdout; diagnostics go to stderr. Exit codes: 0 success, 1 usage, 2 I/O
// or parse, 3 enumeration budget exceeded, 4 verification failure.
#include "pottscert/certify.hpp"
#include "pottscert/expansion.hpp"
#include "pottscert/instances.hpp"
#include "pottscert/locallp.hpp"
#include "pottscert/model.hpp"
#include "pottscert/objective.hpp"
#include "pottscert/oracle.hpp"
#include "pottscert/rng.hpp"
#include "pottscert/rounding.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#ifndef POTTSCERT_VERSION
#define POTTSCERT_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::json;
using namespace pottscert;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json base_report(const char* command) {
  json j;
  j["tool_version"] = POTTSCERT_VERSION;
  j["command"] = command;
  return j;
}

void add_instance_fields(json& j, const PottsInstance& inst) {
  j["n"] = inst.n;
  j["m"] = static_cast<int>(inst.m());
  j["k"] = inst.k;
  j["instance_hash"] = hash_hex(instance_hash(inst));
}

// Numeric value plus its exact counterpart under "<key>_exact".
void add_rat(json& j, const std::string& key, const Rat& r) {
  j[key] = to_double(r);
  j[key + "_exact"] = format_rational(r);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

SolverPath parse_path(const std::string& s) {
  if (s == "exact") return SolverPath::exact;
  if (s == "float") return SolverPath::floating;
  throw CLI::ValidationError("--path", "expected 'exact' or 'float'");
}

std::vector<int> parse_order(const std::string& s, int k) {
  std::vector<int> order;
  if (s == "ascending") {
    for (int a = 0; a < k; ++a) order.push_back(a);
    return order;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok));
  return order;  // run_expansion validates the permutation
}

Labeling parse_init(const std::string& s, const PottsInstance& inst) {
  if (s == "zeros") return Labeling(inst.n, 0);
  if (s.rfind("random:", 0) == 0) {
    SplitMix64 rng(std::stoull(s.substr(7)));
    Labeling x(inst.n);
    for (int u = 0; u < inst.n; ++u) x[u] = static_cast<int>(rng.uniform(0, inst.k - 1));
    return x;
  }
  return read_labeling_file(s);
}

QualityObjective make_objective(const std::string& name, const PottsInstance& inst,
                                const Labeling& x_star) {
  if (name == "hamming") return make_hamming_objective(inst, x_star);
  if (name == "gap") return make_gap_objective(inst, x_star);
  throw CLI::ValidationError("--objective", "expected 'hamming' or 'gap'");
}

struct Shape {
  int h = 0, w = 0;
};

Shape parse_shape(const std::string& s) {
  Shape sh;
  char x = 0;
  std::stringstream ss(s);
  if (!(ss >> sh.h >> x >> sh.w) || x != 'x' || sh.h <= 0 || sh.w <= 0)
    throw CLI::ValidationError("--shape", "expected HxW, e.g. 2x3");
  return sh;
}

int cmd_gen(int h, int w, int k, std::uint64_t seed, const std::string& out, int cost_lo,
            int cost_hi, int w_lo, int w_hi) {
  PottsInstance inst = gen_grid(h, w, k, seed, cost_lo, cost_hi, w_lo, w_hi);
  write_instance_file(inst, out);
  json j = base_report("gen");
  add_instance_fields(j, inst);
  j["seed"] = seed;
  j["out"] = out;
  emit(j);
  return kExitOk;
}

int cmd_info(const std::string& path) {
  PottsInstance inst = read_instance_file(path);
  json j = base_report("info");
  add_instance_fields(j, inst);
  if (inst.m() > 0) {
    Rat wmin = inst.weight[0], wmax = inst.weight[0];
    for (const Rat& w : inst.weight) {
      if (w < wmin) wmin = w;
      if (w > wmax) wmax = w;
    }
    add_rat(j, "weight_min", wmin);
    add_rat(j, "weight_max", wmax);
  }
  Rat cmin = inst.node_cost[0], cmax = inst.node_cost[0];
  for (const Rat& c : inst.node_cost) {
    if (c < cmin) cmin = c;
    if (c > cmax) cmax = c;
  }
  add_rat(j, "cost_min", cmin);
  add_rat(j, "cost_max", cmax);
  emit(j);
  return kExitOk;
}

int cmd_solve_expansion(const std::string& inst_path, const std::string& init_spec,
                        const std::string& order_spec, int max_sweeps,
                        const std::string& out) {
  PottsInstance inst = read_instance_file(inst_path);
  Labeling init = parse_init(init_spec, inst);
  std::vector<int> order = parse_order(order_spec, inst.k);
  auto [x, stats] = run_expansion(inst, init, order, max_sweeps);
  if (!out.empty()) write_labeling_file(x, inst.k, out);
  json j = base_report("solve-expansion");
  add_instance_fields(j, inst);
  j["init"] = init_spec;
  j["order"] = order;
  j["max_sweeps"] = max_sweeps;
  j["sweeps"] = stats.sweeps;
  j["moves_accepted"] = stats.moves_accepted;
  j["converged"] = stats.converged;
  add_rat(j, "energy", stats.final_energy);
  j["labeling"] = x;
  if (!out.empty()) j["labeling_out"] = out;
  emit(j);
  return kExitOk;
}

int cmd_solve_map(const std::string& inst_path, std::uint64_t budget, const std::string& out) {
  PottsInstance inst = read_instance_file(inst_path);
  MapResult res = brute_map(inst, OracleBudget{budget});
  if (!out.empty()) write_labeling_file(res.labeling, inst.k, out);
  json j = base_report("solve-map");
  add_instance_fields(j, inst);
  j["budget"] = budget;
  j["visited"] = res.visited;
  add_rat(j, "energy", res.energy);
  j["labeling"] = res.labeling;
  if (!out.empty()) j["labeling_out"] = out;
  emit(j);
  return kExitOk;
}

void add_bound_fields(json& j, const BoundReport& rep) {
  j["method"] = bound_method_name(rep.method);
  j["objective"] = rep.objective;
  add_rat(j, "bound", rep.bound);
  j["exact_value"] = rep.exact_value;
  add_rat(j, "incumbent_value", rep.incumbent_value);
  j["rounds"] = rep.rounds;
  j["cuts"] = rep.cuts;
  j["solver_path"] = solver_path_name(rep.path);
  j["wall_seconds"] = rep.wall_seconds;
}

int cmd_certify(const std::string& inst_path, const std::string& map_path,
                const std::string& objective, int rounds, const std::string& path_name) {
  PottsInstance inst = read_instance_file(inst_path);
  Labeling x_star = read_labeling_file(map_path);
  QualityObjective obj = make_objective(objective, inst, x_star);
  CertifyOptions opts;
  opts.max_rounds = rounds;
  opts.path = parse_path(path_name);
  BoundReport rep = solve_certified_bound(inst, x_star, obj, opts);
  json j = base_report("certify");
  add_instance_fields(j, inst);
  add_bound_fields(j, rep);
  emit(j);
  return kExitOk;
}

int cmd_naive_bound(const std::string& inst_path, const std::string& map_path,
                    const std::string& objective, std::uint64_t budget, bool no_fallback) {
  PottsInstance inst = read_instance_file(inst_path);
  Labeling x_star = read_labeling_file(map_path);
  QualityObjective obj = make_objective(objective, inst, x_star);
  SearchOptions opts;
  opts.budget.max_labelings = budget;
  opts.allow_relaxed_fallback = !no_fallback;
  BoundReport rep = naive_bound(inst, x_star, obj, opts);
  json j = base_report("naive-bound");
  add_instance_fields(j, inst);
  add_bound_fields(j, rep);
  emit(j);
  return kExitOk;
}

int cmd_verify_theorem(int trials, std::uint64_t seed, const std::string& shape_spec, int k,
                       int workers, const std::string& path_name) {
  Shape shape = parse_shape(shape_spec);
  SolverPath path = parse_path(path_name);
  SplitMix64 stream(seed);
  std::vector<std::uint64_t> trial_seed(trials);
  for (auto& s : trial_seed) s = stream.next();

  std::atomic<int> next{0};
  std::atomic<int> minima_total{0};
  std::mutex mu;
  int failures = 0;
  std::string first_failure;

  auto work = [&] {
    for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      PottsInstance inst = gen_grid(shape.h, shape.w, k, trial_seed[t]);
      TheoremCheck tc = verify_main_theorem(inst, path);
      minima_total += tc.minima;
      if (!tc.ok) {
        std::lock_guard<std::mutex> lock(mu);
        ++failures;
        if (first_failure.empty()) {
          std::ostringstream os;
          os << "trial " << t << " (seed " << trial_seed[t] << "): " << tc.failure;
          first_failure = os.str();
        }
      }
    }
  };

  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 1 || trials <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  json j = base_report("verify-theorem");
  j["trials"] = trials;
  j["shape"] = shape_spec;
  j["k"] = k;
  j["seed"] = seed;
  j["workers"] = workers;
  j["solver_path"] = solver_path_name(path);
  j["minima_total"] = minima_total.load();
  j["failures"] = failures;
  if (!first_failure.empty()) j["first_failure"] = first_failure;
  emit(j);
  return failures == 0 ? kExitOk : kExitVerify;
}

// One full rounding check: y' is the exact LP optimum of the perturbed
// instance, then the marginal guarantees and the expectation inequality are
// verified as exact identities.
std::string round_check_one(const PottsInstance& inst, const Labeling& x, const Rat& eps) {
  PerturbedInstance pert = perturb(inst, x);
  LpResult lp = solve_primal_dual(pert, SolverPath::exact);
  if (lp.status != LpStatus::optimal) return "perturbed LP did not solve to optimality";
  RoundingReport rep = verify_marginal_guarantees(inst, x, lp.primal, eps);
  if (!rep.ok) return rep.failure;
  auto [lhs, rhs] = exact_rounding_expectation(inst, x, lp.primal, eps);
  if (lhs < rhs) {
    return "expectation inequality violated: lhs " + format_rational(lhs) + " < rhs " +
           format_rational(rhs);
  }
  return {};
}

int cmd_round_check(const std::string& inst_path, const std::string& labeling_path,
                    const std::string& eps_spec, int trials, std::uint64_t seed,
                    const std::string& shape_spec, int k) {
  json j = base_report("round-check");
  int checks = 0, failures = 0;
  std::string first_failure;
  auto record = [&](const std::string& fail) {
    ++checks;
    if (!fail.empty()) {
      ++failures;
      if (first_failure.empty()) first_failure = fail;
    }
  };

  if (!inst_path.empty()) {
    PottsInstance inst = read_instance_file(inst_path);
    Labeling x = read_labeling_file(labeling_path);
    Rat eps = eps_spec.empty() ? Rat(1, 2 * inst.k) : parse_rational(eps_spec);
    add_instance_fields(j, inst);
    add_rat(j, "eps", eps);
    record(round_check_one(inst, x, eps));
  } else {
    Shape shape = parse_shape(shape_spec);
    SplitMix64 stream(seed);
    j["trials"] = trials;
    j["shape"] = shape_spec;
    j["k"] = k;
    j["seed"] = seed;
    for (int t = 0; t < trials; ++t) {
      std::uint64_t inst_seed = stream.next();
      std::uint64_t init_seed = stream.next();
      PottsInstance inst = gen_grid(shape.h, shape.w, k, inst_seed);
      SplitMix64 rng(init_seed);
      Labeling init(inst.n);
      for (int u = 0; u < inst.n; ++u) init[u] = static_cast<int>(rng.uniform(0, k - 1));
      std::vector<int> order;
      for (int a = 0; a < k; ++a) order.push_back(a);
      Labeling x = run_expansion(inst, init, order).first;
      Rat eps = eps_spec.empty() ? Rat(1, 2 * k) : parse_rational(eps_spec);
      record(round_check_one(inst, x, eps));
    }
  }

  j["checks"] = checks;
  j["failures"] = failures;
  if (!first_failure.empty()) j["first_failure"] = first_failure;
  emit(j);
  return failures == 0 ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified bounds for alpha-expansion on ferromagnetic Potts models"};
  app.require_subcommand(1);
  // --h is a data flag on gen, so subcommand help is long-form only.
  auto add_sub = [&app](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  // gen
  auto* gen = add_sub("gen", "Generate a seeded random grid instance");
  int gh = 2, gw = 3, gk = 3, cost_lo = 0, cost_hi = 10, w_lo = 0, w_hi = 5;
  std::uint64_t gseed = 0;
  std::string gout;
  gen->add_option("--h", gh, "grid height")->required();
  gen->add_option("--w", gw, "grid width")->required();
  gen->add_option("--k", gk, "number of labels")->required();
  gen->add_option("--seed", gseed, "generator seed")->required();
  gen->add_option("--out", gout, "output instance path")->required();
  gen->add_option("--cost-lo", cost_lo, "node cost range low");
  gen->add_option("--cost-hi", cost_hi, "node cost range high");
  gen->add_option("--w-lo", w_lo, "weight range low");
  gen->add_option("--w-hi", w_hi, "weight range high");

  // info
  auto* info = add_sub("info", "Print instance dimensions and stats");
  std::string info_inst;
  info->add_option("--instance", info_inst, "instance path")->required();

  // solve-expansion
  auto* sexp = add_sub("solve-expansion", "Run alpha-expansion to a local minimum");
  std::string se_inst, se_init = "zeros", se_order = "ascending", se_out;
  int se_sweeps = 100;
  sexp->add_option("--instance", se_inst, "instance path")->required();
  sexp->add_option("--init", se_init, "initial labeling: file path, 'zeros', or 'random:SEED'");
  sexp->add_option("--order", se_order, "label order: 'ascending' or comma list, e.g. 2,0,1");
  sexp->add_option("--max-sweeps", se_sweeps, "sweep limit");
  sexp->add_option("--out", se_out, "write final labeling here");

  // solve-map
  auto* smap = add_sub("solve-map", "Exact MAP by exhaustive enumeration");
  std::string sm_inst, sm_out;
  std::uint64_t sm_budget = std::uint64_t(1) << 24;
  smap->add_option("--instance", sm_inst, "instance path")->required();
  smap->add_option("--budget", sm_budget, "max labelings to enumerate");
  smap->add_option("--out", sm_out, "write MAP labeling here");

  // certify
  auto* cert = add_sub("certify", "Certified initialization-independent bound");
  std::string c_inst, c_map, c_obj = "hamming", c_path = "exact";
  int c_rounds = 20;
  cert->add_option("--instance", c_inst, "instance path")->required();
  cert->add_option("--map", c_map, "exact MAP labeling path")->required();
  cert->add_option("--objective", c_obj, "hamming or gap");
  cert->add_option("--rounds", c_rounds, "max cutting-plane rounds");
  cert->add_option("--path", c_path, "solver path: exact or float");

  // naive-bound
  auto* naive = add_sub("naive-bound", "Threshold-region bound for comparison");
  std::string n_inst, n_map, n_obj = "hamming";
  std::uint64_t n_budget = std::uint64_t(1) << 24;
  bool n_nofall = false;
  naive->add_option("--instance", n_inst, "instance path")->required();
  naive->add_option("--map", n_map, "exact MAP labeling path")->required();
  naive->add_option("--objective", n_obj, "hamming or gap");
  naive->add_option("--budget", n_budget, "max labelings to enumerate");
  naive->add_flag("--no-fallback", n_nofall, "fail instead of falling back to the LP bound");

  // verify-theorem
  auto* vt = add_sub("verify-theorem", "Check the certification theorem on a batch");
  int vt_trials = 10, vt_k = 3, vt_workers = 0;
  std::uint64_t vt_seed = 0;
  std::string vt_shape = "2x3", vt_path = "exact";
  vt->add_option("--trials", vt_trials, "number of instances");
  vt->add_option("--seed", vt_seed, "batch seed");
  vt->add_option("--shape", vt_shape, "grid shape HxW");
  vt->add_option("--k", vt_k, "number of labels");
  vt->add_option("--workers", vt_workers, "worker threads (0 = hardware)");
  vt->add_option("--path", vt_path, "solver path: exact or float");

  // round-check
  auto* rc = add_sub("round-check", "Verify the rounding guarantees exactly");
  std::string rc_inst, rc_lab, rc_eps, rc_shape = "2x3";
  int rc_trials = 10, rc_k = 3;
  std::uint64_t rc_seed = 0;
  rc->add_option("--instance", rc_inst, "instance path (with --labeling)");
  rc->add_option("--labeling", rc_lab, "labeling path");
  rc->add_option("--eps", rc_eps, "blend weight in (0, 1/k), default 1/(2k)");
  rc->add_option("--trials", rc_trials, "batch mode: number of instances");
  rc->add_option("--seed", rc_seed, "batch seed");
  rc->add_option("--shape", rc_shape, "batch grid shape HxW");
  rc->add_option("--k", rc_k, "batch number of labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gh, gw, gk, gseed, gout, cost_lo, cost_hi, w_lo, w_hi);
    if (info->parsed()) return cmd_info(info_inst);
    if (sexp->parsed()) return cmd_solve_expansion(se_inst, se_init, se_order, se_sweeps, se_out);
    if (smap->parsed()) return cmd_solve_map(sm_inst, sm_budget, sm_out);
    if (cert->parsed()) return cmd_certify(c_inst, c_map, c_obj, c_rounds, c_path);
    if (naive->parsed()) return cmd_naive_bound(n_inst, n_map, n_obj, n_budget, n_nofall);
    if (vt->parsed()) return cmd_verify_theorem(vt_trials, vt_seed, vt_shape, vt_k, vt_workers, vt_path);
    if (rc->parsed()) {
      if (rc_inst.empty() != rc_lab.empty()) {
        std::cerr << "round-check: --instance and --labeling go together\n";
        return kExitUsage;
      }
      return cmd_round_check(rc_inst, rc_lab, rc_eps, rc_trials, rc_seed, rc_shape, rc_k);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
