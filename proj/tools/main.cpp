#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "swaploc/bench.hpp"
#include "swaploc/cells.hpp"
#include "swaploc/generators.hpp"
#include "swaploc/ilp.hpp"
#include "swaploc/instance_io.hpp"
#include "swaploc/policy_agent.hpp"
#include "swaploc/protocol.hpp"
#include "swaploc/scaling.hpp"
#include "swaploc/trajectory.hpp"

namespace fs = std::filesystem;
using namespace swaploc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kProtocol = 3 };

constexpr const char* kEnvEndpointEnv = "SWAPLOC_ENV_ENDPOINT";

std::string join(std::span<const NodeId> ids) {
  std::string out = "{";
  for (size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + std::to_string(ids[i]);
  return out + "}";
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::ostream* open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw Error("cannot open " + path + " for writing");
  return &file;
}

struct Common {
  std::string instance;
  int p = 0;
  int k = 0;
  std::string method;
  int trials = 5;
  int swaps = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string endpoint;
  std::string format = "table";
  std::uint64_t oracle_cap = ExactOptions{}.max_candidates;
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "rows"}))
      ->capture_default_str();
}

int cmd_generate(const std::string& kind, int count, std::uint64_t seed, const std::string& out,
                 int width, int n_cbds, int n, int knn) {
  fs::create_directories(out);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    Instance instance = [&] {
      if (kind == "grid") {
        GridCityParams params;
        params.width = width;
        params.n_cbds = n_cbds;
        params.seed = s;
        return generate_grid_city(params);
      }
      GabrielParams params;
      params.n = n;
      params.knn = knn;
      params.seed = s;
      return generate_gabriel(params);
    }();
    std::ostringstream name;
    name << kind << '_' << instance.size() << "_s" << std::setw(6) << std::setfill('0') << s << ".json";
    const fs::path path = fs::path(out) / name.str();
    save_instance(instance, path);
    double total = 0.0;
    for (double d : instance.demand()) total += d;
    std::cout << path.string() << "  n=" << instance.size() << " edges=" << instance.graph().edges().size()
              << " seed=" << s << " demand=" << format_double(total) << '\n';
  }
  return kOk;
}

int cmd_relocate(const Common& c) {
  const Instance instance = load_instance(c.instance);
  const auto base = density_init(instance, c.p, c.seed);
  const int budget = c.k > 0 ? c.k : std::max(1, c.p / 2);
  const std::string method = canonical_method(BenchTask::Frp, c.method);
  auto agent = make_agent(method, c.seed, c.endpoint);
  const auto start = std::chrono::steady_clock::now();
  const RelocationPlan plan = swap_relocate(instance, base, budget, *agent, c.trials, c.seed);
  const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (c.format == "rows") {
    nlohmann::json steps = nlohmann::json::array();
    for (const StepRecord& s : plan.steps) {
      steps.push_back({{"restart", s.restart}, {"step", s.step}, {"u1", s.remove}, {"u2", s.insert},
                       {"delta", s.delta}, {"accepted", s.accepted}});
    }
    std::cout << nlohmann::json{{"method", method},       {"p", c.p},
                                {"k", budget},            {"trials", c.trials},
                                {"seed", c.seed},         {"F0", plan.base_facilities},
                                {"removed", plan.removed}, {"inserted", plan.inserted},
                                {"F", plan.final_facilities},
                                {"base_objective", plan.base_objective},
                                {"objective", plan.final_objective},
                                {"Q", plan.improvement_ratio}, {"runtime", runtime},
                                {"steps", steps}}
                     .dump()
              << '\n';
    return kOk;
  }
  std::cout << "method      " << method << " (k=" << budget << ", T=" << c.trials << ", seed=" << c.seed
            << ")\n"
            << "F0          " << join(plan.base_facilities) << "  objective " << format_double(plan.base_objective)
            << '\n'
            << "removed     " << join(plan.removed) << '\n'
            << "inserted    " << join(plan.inserted) << '\n'
            << "F           " << join(plan.final_facilities) << "  objective "
            << format_double(plan.final_objective) << '\n'
            << "Q           " << fixed(100.0 * plan.improvement_ratio, 4) << " %\n"
            << "runtime     " << fixed(runtime, 4) << " s\n";
  if (plan.steps.empty()) {
    std::cout << "no move possible\n";
    return kOk;
  }
  std::cout << "steps\n";
  for (const StepRecord& s : plan.steps) {
    std::cout << "  restart " << s.restart << " step " << s.step << ": remove " << s.remove << ", insert "
              << s.insert << ", delta " << format_double(s.delta) << (s.accepted ? "" : " (rejected)")
              << '\n';
  }
  return kOk;
}

int cmd_solve(const Common& c) {
  const Instance instance = load_instance(c.instance);
  ExactOptions exact;
  exact.max_candidates = c.oracle_cap;
  const PmpResult result =
      solve_with(instance, c.p, c.method, c.trials, c.swaps, c.seed, c.endpoint, exact);
  std::optional<double> gap;
  if (result.method == "exact") {
    gap = 0.0;
  } else {
    try {
      exact.upper_bound = result.objective;
      gap = optimality_gap(result.objective, exact_solve(instance, c.p, exact).objective);
    } catch (const OracleCapExceeded&) {
    }
  }
  if (c.format == "rows") {
    nlohmann::json doc = {{"method", result.method}, {"p", c.p},
                          {"trials", result.trials}, {"seed", c.seed},
                          {"F", result.facilities},  {"objective", result.objective},
                          {"gap", nullptr},          {"runtime", result.runtime_seconds}};
    if (gap) doc["gap"] = *gap;
    std::cout << doc.dump() << '\n';
    return kOk;
  }
  std::cout << "method      " << result.method << " (p=" << c.p << ", T=" << result.trials
            << ", seed=" << c.seed << ")\n"
            << "F           " << join(result.facilities) << '\n'
            << "objective   " << format_double(result.objective) << '\n'
            << "gap         " << (gap ? fixed(100.0 * *gap, 4) + " %" : std::string("n/a")) << '\n'
            << "runtime     " << fixed(result.runtime_seconds, 4) << " s\n";
  return kOk;
}

int cmd_bench(const Common& c, const std::string& corpus_dir, const std::string& task,
              const std::vector<std::string>& methods, int workers) {
  const auto corpus = load_corpus(corpus_dir);
  BenchConfig config;
  config.task = task == "pmp" ? BenchTask::Pmp : BenchTask::Frp;
  config.methods = methods.empty() ? known_methods(config.task) : methods;
  if (methods.empty()) {
    // The policy needs a server and exact is the reference itself.
    std::erase(config.methods, "policy");
    std::erase(config.methods, "exact");
  }
  config.p = c.p;
  config.k = c.k;
  config.trials = c.trials;
  config.swaps = c.swaps;
  config.seed = c.seed;
  config.workers = workers;
  config.endpoint = c.endpoint;
  config.exact.max_candidates = c.oracle_cap;
  const BenchReport report = run_bench(corpus, config);
  std::ofstream file;
  std::ostream& out = *open_output(c.out, file);
  if (c.format == "rows") {
    write_rows(out, report.rows);
  } else {
    out << format_table(report.rows);
  }
  return kOk;
}

int cmd_verify_scaling(const Common& c, double lo, double hi) {
  const Instance instance = load_instance(c.instance);
  const PmpResult solved = solve_with(instance, c.p, c.method, c.trials, c.swaps, c.seed, c.endpoint);
  const ScalingFit fit = verify_scaling_law(instance, solved.facilities);
  const bool pass = fit.slope >= lo && fit.slope <= hi;
  if (c.format == "rows") {
    std::cout << nlohmann::json{{"method", solved.method}, {"p", c.p},          {"cells", fit.cells},
                                {"slope", fit.slope},      {"intercept", fit.intercept},
                                {"r_squared", fit.r_squared}, {"expected", kScalingExponent},
                                {"band", {lo, hi}},        {"pass", pass}}
                     .dump()
              << '\n';
  } else {
    std::cout << "solver      " << solved.method << " (p=" << c.p << ")\n"
              << "cells       " << fit.cells << '\n'
              << "slope       " << fixed(fit.slope, 4) << "  (expected " << fixed(kScalingExponent, 4) << ")\n"
              << "intercept   " << fixed(fit.intercept, 4) << '\n'
              << "r^2         " << fixed(fit.r_squared, 4) << '\n'
              << "band        [" << lo << ", " << hi << "] " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return kOk;
}

int cmd_serve_env(const std::string& endpoint, const SessionLimits& limits) {
  if (endpoint == "stdio" || endpoint == "-") {
    serve_stream(std::cin, std::cout, limits);
    return kOk;
  }
  TcpEnvServer server(parse_endpoint(endpoint), limits);
  std::cout << "listening on " << parse_endpoint(endpoint).host << ':' << server.port() << std::endl;
  server.run();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swaploc: p-median solving and facility relocation on graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Common c;

  auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", c.instance, "Instance file (JSON)")->required()->check(CLI::ExistingFile);
  };
  auto add_p = [&](CLI::App* cmd) {
    cmd->add_option("--p", c.p, "Number of facilities")->required()->check(CLI::PositiveNumber);
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  };
  auto add_trials = [&](CLI::App* cmd) {
    cmd->add_option("-T,--trials", c.trials, "Restarts / trials")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_swaps = [&](CLI::App* cmd) {
    cmd->add_option("-S,--swaps", c.swaps, "Swap steps per trial for swap solvers (0 = p)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };
  auto add_endpoint = [&](CLI::App* cmd) {
    cmd->add_option("--endpoint", c.endpoint,
                    std::string("Policy server for method=policy (default ") + kDefaultPolicyEndpoint + ")")
        ->envname(kPolicyEndpointEnv);
  };
  auto add_oracle_cap = [&](CLI::App* cmd) {
    cmd->add_option("--oracle-cap", c.oracle_cap, "Largest C(n,p) the exact oracle enumerates")
        ->capture_default_str();
  };

  std::string kind = "grid";
  int count = 10;
  int width = 8;
  int n_cbds = 0;
  int gabriel_n = 100;
  int knn = 3;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic instance corpus");
  generate->add_option("--kind", kind, "Generator")->check(CLI::IsMember({"grid", "gabriel"}))->capture_default_str();
  generate->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--out", c.out, "Output directory")->required();
  generate->add_option("--width", width, "Grid width w (n = w^2)")->check(CLI::Range(2, 1024))->capture_default_str();
  generate->add_option("--cbds", n_cbds, "Grid population centres, 0 draws 1..3")->check(CLI::Range(0, 3))->capture_default_str();
  generate->add_option("--n", gabriel_n, "Gabriel node count")->check(CLI::Range(3, 100000))->capture_default_str();
  generate->add_option("--knn", knn, "Gabriel k-NN augmentation")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_seed(generate);

  auto* relocate = app.add_subcommand("relocate", "Relocate up to k facilities of a density-sampled F0");
  add_instance(relocate);
  add_p(relocate);
  relocate->add_option("--k", c.k, "Relocation budget (0 = floor(p/2))")->check(CLI::NonNegativeNumber)->capture_default_str();
  relocate->add_option("--method", c.method, "random | greedy | vsca | policy")->required();
  add_trials(relocate);
  add_seed(relocate);
  add_endpoint(relocate);
  add_format(relocate, c);

  auto* solve = app.add_subcommand("solve", "Solve the p-median problem");
  add_instance(solve);
  add_p(solve);
  solve->add_option("--method", c.method,
                    "random | kmeans | maranzana | greedy-addition | greedy | random-swap | vsca | policy | exact")
      ->required();
  add_trials(solve);
  add_swaps(solve);
  add_seed(solve);
  add_endpoint(solve);
  add_oracle_cap(solve);
  add_format(solve, c);

  std::string corpus;
  std::string task = "frp";
  std::vector<std::string> methods;
  int workers = 0;
  auto* bench = app.add_subcommand("bench", "Benchmark methods over an instance corpus");
  bench->add_option("--corpus", corpus, "Directory of instance files")->required();
  bench->add_option("--task", task, "frp (relocation Q) or pmp (optimality gap)")
      ->check(CLI::IsMember({"frp", "pmp"}))
      ->capture_default_str();
  bench->add_option("--method", methods, "Methods (repeat or comma separate; default all)")->delimiter(',');
  add_p(bench);
  bench->add_option("--k", c.k, "Relocation budget (0 = floor(p/2))")->check(CLI::NonNegativeNumber);
  add_trials(bench);
  add_swaps(bench);
  add_seed(bench);
  add_endpoint(bench);
  add_oracle_cap(bench);
  bench->add_option("--workers", workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  bench->add_option("--out", c.out, "Report file (default stdout)");
  add_format(bench, c);

  double lo = 0.5;
  double hi = 0.85;
  auto* scaling = app.add_subcommand("verify-scaling", "Fit facility density against demand density");
  add_instance(scaling);
  add_p(scaling);
  c.method = "greedy";
  scaling->add_option("--method", c.method, "p-median solver")->capture_default_str();
  add_trials(scaling);
  add_swaps(scaling);
  add_seed(scaling);
  scaling->add_option("--band-min", lo, "Lower slope bound")->capture_default_str();
  scaling->add_option("--band-max", hi, "Upper slope bound")->capture_default_str();
  add_format(scaling, c);

  auto* ilp = app.add_subcommand("export-ilp", "Write the p-median integer program in LP format");
  add_instance(ilp);
  add_p(ilp);
  ilp->add_option("--out", c.out, "LP file (default stdout)");

  auto* record = app.add_subcommand("record-expert", "Record greedy swap trajectories");
  record->add_option("--corpus", corpus, "Directory of instance files")->required();
  add_p(record);
  record->add_option("--k", c.k, "Episode length (0 = floor(p/2))")->check(CLI::NonNegativeNumber);
  add_seed(record);
  record->add_option("--out", c.out, "Trajectory file")->required();

  std::string env_endpoint = "tcp://127.0.0.1:5556";
  SessionLimits limits;
  auto* serve = app.add_subcommand("serve-env", "Serve the relocation environment protocol");
  serve->add_option("--endpoint", env_endpoint, "tcp://host:port (port 0 picks one) or stdio")
      ->envname(kEnvEndpointEnv)
      ->capture_default_str();
  serve->add_option("--max-instances", limits.max_instances, "Instances stored per session")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) return cmd_generate(kind, count, c.seed, c.out, width, n_cbds, gabriel_n, knn);
    if (*relocate) return cmd_relocate(c);
    if (*solve) return cmd_solve(c);
    if (*bench) return cmd_bench(c, corpus, task, methods, workers);
    if (*scaling) return cmd_verify_scaling(c, lo, hi);
    if (*ilp) {
      const Instance instance = load_instance(c.instance);
      if (c.out.empty() || c.out == "-") {
        write_ilp(instance, c.p, std::cout);
      } else {
        export_ilp(instance, c.p, c.out);
      }
      return kOk;
    }
    if (*record) {
      const auto instances = load_corpus(corpus);
      const auto trajectories = record_expert(instances, c.p, c.k, c.out, c.seed);
      size_t steps = 0;
      for (const auto& t : trajectories) steps += t.steps.size();
      std::cout << "recorded " << trajectories.size() << " trajectories, " << steps << " steps -> " << c.out
                << '\n';
      return kOk;
    }
    if (*serve) return cmd_serve_env(env_endpoint, limits);
  } catch (const OracleCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const DisconnectedGraph& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ProtocolError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kProtocol;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
