#include "swaploc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <exception>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "swaploc/policy_agent.hpp"

namespace swaploc {
namespace {

using Clock = std::chrono::steady_clock;

const std::map<std::string, std::string>& frp_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"random", "random"}, {"random-swap", "random"}, {"greedy", "greedy"},
      {"greedy-swap", "greedy"}, {"vsca", "vsca"},     {"policy", "policy"},
      {"ppo-swap", "policy"}};
  return aliases;
}

const std::map<std::string, std::string>& pmp_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"random", "random"},
      {"kmeans", "kmeans"},
      {"k-means", "kmeans"},
      {"maranzana", "maranzana"},
      {"greedy-addition", "greedy-addition"},
      {"greedy", "greedy"},
      {"greedy-swap", "greedy"},
      {"vsca", "vsca"},
      {"random-swap", "random-swap"},
      {"policy", "policy"},
      {"exact", "exact"}};
  return aliases;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

int default_budget(int p, int k) { return k > 0 ? k : std::max(1, p / 2); }

}  // namespace

std::string canonical_method(BenchTask task, const std::string& method) {
  const auto& aliases = task == BenchTask::Frp ? frp_aliases() : pmp_aliases();
  const auto it = aliases.find(lower(method));
  if (it == aliases.end()) {
    std::string list;
    for (const auto& name : known_methods(task)) list += (list.empty() ? "" : ", ") + name;
    throw InvalidArgument("unknown method '" + method + "' (expected one of " + list + ")");
  }
  return it->second;
}

std::vector<std::string> known_methods(BenchTask task) {
  if (task == BenchTask::Frp) return {"random", "greedy", "vsca", "policy"};
  return {"random",      "kmeans", "maranzana", "greedy-addition", "greedy",
          "random-swap", "vsca",   "policy",    "exact"};
}

std::unique_ptr<SwapAgent> make_agent(const std::string& method, std::uint64_t seed,
                                      const std::string& endpoint) {
  if (method == "random" || method == "random-swap") return random_swap_agent(seed);
  if (method == "greedy") return greedy_swap_agent();
  if (method == "vsca") return vsca_agent();
  if (method == "policy") {
    return policy_agent(endpoint.empty() ? default_policy_endpoint() : endpoint);
  }
  throw InvalidArgument("method '" + method + "' is not a swap agent");
}

RelocationPlan relocate_with(const Instance& instance, std::span<const NodeId> base, int budget,
                             const std::string& method, int trials, std::uint64_t seed,
                             const std::string& endpoint) {
  const std::string name = canonical_method(BenchTask::Frp, method);
  auto agent = make_agent(name, seed, endpoint);
  return swap_relocate(instance, base, budget, *agent, trials, seed);
}

PmpResult solve_with(const Instance& instance, int p, const std::string& method, int trials,
                     int swaps, std::uint64_t seed, const std::string& endpoint,
                     const ExactOptions& exact) {
  const std::string name = canonical_method(BenchTask::Pmp, method);
  if (name == "random") return random_baseline(instance, p, trials, seed);
  if (name == "kmeans") return kmeans_baseline(instance, p, seed, trials);
  if (name == "maranzana") return maranzana_baseline(instance, p, trials, seed);
  if (name == "greedy-addition") return greedy_addition(instance, p);
  if (name == "exact") {
    const auto start = Clock::now();
    ExactResult solved = exact_solve(instance, p, exact);
    PmpResult result;
    result.facilities = std::move(solved.facilities);
    result.objective = solved.objective;
    result.gap = 0.0;
    result.runtime_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.method = "exact";
    result.trials = 1;
    return result;
  }
  auto agent = make_agent(name, seed, endpoint);
  PmpOptions options;
  options.trials = trials;
  options.swaps = swaps;
  options.seed = seed;
  return solve_pmp(instance, p, *agent, options);
}

std::string dataset_name(std::span<const std::shared_ptr<const Instance>> corpus) {
  if (corpus.empty()) return "empty";
  const std::string generator = corpus.front()->meta().generator;
  const int n = corpus.front()->size();
  for (const auto& instance : corpus) {
    if (instance->meta().generator != generator || instance->size() != n) return "Mixed";
  }
  std::string label = generator.empty() ? "Custom" : generator;
  label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  return label + "_" + std::to_string(n);
}

BenchReport run_bench(std::span<const std::shared_ptr<const Instance>> corpus,
                      const BenchConfig& config) {
  if (corpus.empty()) throw InvalidArgument("benchmark corpus is empty");
  if (config.methods.empty()) throw InvalidArgument("no methods to benchmark");
  if (config.trials < 1) throw InvalidArgument("trial count must be at least 1");
  std::vector<std::string> methods;
  for (const auto& m : config.methods) methods.push_back(canonical_method(config.task, m));
  for (const auto& instance : corpus) {
    if (config.p < 1 || config.p > instance->size()) {
      throw InvalidArgument("p = " + std::to_string(config.p) + " does not fit an instance with n = " +
                            std::to_string(instance->size()));
    }
  }
  const int count = static_cast<int>(corpus.size());
  const int budget = default_budget(config.p, config.k);

  int workers = config.workers > 0 ? config.workers
                                   : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto parallel_for = [workers](int jobs, const std::function<void(int)>& body) {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, jobs); ++w) {
      pool.emplace_back([&] {
        for (int job = next++; job < jobs; job = next++) {
          try {
            body(job);
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            next = jobs;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  };

  std::vector<std::optional<double>> optimum(count);
  std::vector<std::vector<NodeId>> bases(count);
  if (config.task == BenchTask::Pmp) {
    parallel_for(count, [&](int i) {
      try {
        optimum[i] = exact_solve(*corpus[i], config.p, config.exact).objective;
      } catch (const OracleCapExceeded&) {
        optimum[i].reset();
      }
    });
  } else {
    for (int i = 0; i < count; ++i) {
      bases[i] = density_init(*corpus[i], config.p, derive_seed(config.seed, i));
    }
  }

  const int method_count = static_cast<int>(methods.size());
  std::vector<BenchSample> samples(static_cast<size_t>(count) * method_count);
  parallel_for(count * method_count, [&](int job) {
    const int i = job / method_count;
    const std::string& method = methods[job % method_count];
    const std::uint64_t seed = derive_seed(config.seed, i);
    BenchSample& sample = samples[job];
    sample.instance = i;
    sample.method = method;
    if (config.task == BenchTask::Frp) {
      auto agent = make_agent(method, derive_seed(seed, 1), config.endpoint);
      const auto start = Clock::now();
      const RelocationPlan plan =
          swap_relocate(*corpus[i], bases[i], budget, *agent, config.trials, derive_seed(seed, 1));
      sample.runtime = std::chrono::duration<double>(Clock::now() - start).count();
      sample.objective = plan.final_objective;
      sample.value = 100.0 * plan.improvement_ratio;
    } else {
      const auto start = Clock::now();
      const PmpResult result = solve_with(*corpus[i], config.p, method, config.trials, config.swaps,
                                          seed, config.endpoint, config.exact);
      sample.runtime = std::chrono::duration<double>(Clock::now() - start).count();
      sample.objective = result.objective;
      if (optimum[i]) sample.value = 100.0 * optimality_gap(result.objective, *optimum[i]);
    }
  });

  BenchReport report;
  const std::string dataset = config.dataset.empty() ? dataset_name(corpus) : config.dataset;
  for (int m = 0; m < method_count; ++m) {
    BenchRow row;
    row.dataset = dataset;
    row.n = corpus.front()->size();
    row.p = config.p;
    row.method = methods[m];
    row.metric = config.task == BenchTask::Frp ? "Q" : "gap";
    row.instances = count;
    row.seed = config.seed;
    double value_sum = 0.0;
    bool complete = true;
    for (int i = 0; i < count; ++i) {
      const BenchSample& s = samples[static_cast<size_t>(i) * method_count + m];
      row.mean_objective += s.objective / count;
      row.mean_runtime += s.runtime / count;
      if (s.value) {
        value_sum += *s.value;
      } else {
        complete = false;
      }
    }
    if (complete) row.value = value_sum / count;
    report.rows.push_back(std::move(row));
  }
  report.samples = std::move(samples);
  return report;
}

std::string format_table(std::span<const BenchRow> rows) {
  const std::vector<std::string> header = {"dataset", "n", "p", "method", "metric", "mean (%)",
                                           "objective", "time (s)", "instances"};
  std::vector<std::vector<std::string>> cells;
  auto fixed = [](double v, int digits) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
  };
  for (const BenchRow& r : rows) {
    cells.push_back({r.dataset, std::to_string(r.n), std::to_string(r.p), r.method, r.metric,
                     r.value ? fixed(*r.value, 2) : "n/a", fixed(r.mean_objective, 2),
                     fixed(r.mean_runtime, 4), std::to_string(r.instances)});
  }
  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size(); ++c) {
      // Text columns left-aligned, numbers right-aligned.
      const bool text = c == 0 || c == 3 || c == 4;
      out << (c ? "  " : "") << (text ? std::left : std::right) << std::setw(static_cast<int>(width[c]))
          << row[c];
    }
    out << '\n';
  };
  emit(header);
  size_t total = 0;
  for (size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& row : cells) emit(row);
  return out.str();
}

void write_rows(std::ostream& out, std::span<const BenchRow> rows) {
  for (const BenchRow& r : rows) {
    nlohmann::json doc = {{"dataset", r.dataset},       {"n", r.n},
                          {"p", r.p},                   {"method", r.method},
                          {"metric", r.metric},         {"value", nullptr},
                          {"objective", r.mean_objective}, {"runtime", r.mean_runtime},
                          {"instances", r.instances},   {"seed", r.seed}};
    if (r.value) doc["value"] = *r.value;
    out << doc.dump() << '\n';
  }
}

std::vector<BenchRow> read_rows(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      BenchRow r;
      r.dataset = doc.at("dataset").get<std::string>();
      r.n = doc.at("n").get<int>();
      r.p = doc.at("p").get<int>();
      r.method = doc.at("method").get<std::string>();
      r.metric = doc.at("metric").get<std::string>();
      if (!doc.at("value").is_null()) r.value = doc.at("value").get<double>();
      r.mean_objective = doc.at("objective").get<double>();
      r.mean_runtime = doc.at("runtime").get<double>();
      r.instances = doc.at("instances").get<int>();
      r.seed = doc.at("seed").get<std::uint64_t>();
      rows.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed report row: ") + e.what());
    }
  }
  return rows;
}

}  // namespace swaploc
