#include "swaploc/trajectory.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "swaploc/instance_io.hpp"
#include "swaploc/pmp.hpp"
#include "swaploc/swap.hpp"

namespace swaploc {

Trajectory greedy_rollout(std::shared_ptr<const Instance> instance, std::span<const NodeId> base,
                          int budget, std::uint64_t seed) {
  Trajectory trajectory;
  trajectory.instance = instance;
  trajectory.budget = budget;
  trajectory.seed = seed;

  Environment env;
  env.reset(instance, base, budget);
  trajectory.base.assign(env.base().begin(), env.base().end());
  auto agent = greedy_swap_agent();
  while (!env.done()) {
    const SwapContext context{env.base(), env.base_objective(), 0, env.step_index(), budget};
    const auto move = agent->act(*instance, env.solution(), context);
    if (!move) break;
    const double delta = swap_delta(*instance, env.solution(), move->remove, move->insert);
    if (!agent->accepts(delta, env.solution())) break;
    Observation state = env.observation();
    const StepResult result = env.step(move->remove, move->insert);
    trajectory.steps.push_back({std::move(state), move->remove, move->insert, result.reward});
  }
  trajectory.final_q = env.current_q();
  return trajectory;
}

TrajectoryWriter::TrajectoryWriter(std::ostream& out) : out_(out) {
  out_ << nlohmann::json{{"format", kTrajectoryFormat}, {"version", kTrajectoryFormatVersion}}.dump()
       << '\n';
}

void TrajectoryWriter::write(const Trajectory& t) {
  out_ << nlohmann::json{{"record", "trajectory_begin"},
                         {"instance", instance_to_json(*t.instance)},
                         {"F0", t.base},
                         {"k", t.budget},
                         {"seed", t.seed}}
              .dump()
       << '\n';
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const TrajectoryStep& s = t.steps[i];
    out_ << nlohmann::json{{"record", "step"},
                           {"index", i},
                           {"observation", observation_to_json(s.observation)},
                           {"u1", s.u1},
                           {"u2", s.u2},
                           {"reward", s.reward}}
                .dump()
         << '\n';
  }
  out_ << nlohmann::json{{"record", "trajectory_end"}, {"steps", t.steps.size()}, {"final_q", t.final_q}}
              .dump()
       << '\n';
  if (!out_) throw Error("failed writing trajectory record");
}

std::vector<Trajectory> record_expert(std::span<const std::shared_ptr<const Instance>> corpus,
                                      int p, int k, const std::filesystem::path& out_path,
                                      std::uint64_t seed) {
  if (corpus.empty()) throw InvalidArgument("expert corpus is empty");
  const int budget = k > 0 ? k : std::max(1, p / 2);
  if (budget > p) throw InvalidArgument("budget k must not exceed p");
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open " + out_path.string() + " for writing");
  TrajectoryWriter writer(out);
  std::vector<Trajectory> trajectories;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const std::uint64_t episode_seed = derive_seed(seed, i);
    const auto base = density_init(*corpus[i], p, episode_seed);
    trajectories.push_back(greedy_rollout(corpus[i], base, budget, episode_seed));
    writer.write(trajectories.back());
  }
  out.flush();
  if (!out) throw Error("failed writing " + out_path.string());
  return trajectories;
}

std::vector<Trajectory> read_trajectories(std::istream& in) {
  std::vector<Trajectory> result;
  std::string line;
  size_t line_no = 0;
  auto fail = [&line_no](const std::string& what) {
    return InvalidArgument("trajectory file line " + std::to_string(line_no) + ": " + what);
  };
  bool header = false;
  bool open = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(e.what());
    }
    try {
      if (!header) {
        if (doc.value("format", std::string{}) != kTrajectoryFormat) throw fail("missing header");
        if (doc.value("version", 0) != kTrajectoryFormatVersion) {
          throw fail("unsupported trajectory version");
        }
        header = true;
        continue;
      }
      const std::string record = doc.at("record").get<std::string>();
      if (record == "trajectory_begin") {
        if (open) throw fail("trajectory_begin inside an open trajectory");
        Trajectory t;
        t.instance = std::make_shared<const Instance>(instance_from_json(doc.at("instance")));
        t.base = doc.at("F0").get<std::vector<NodeId>>();
        t.budget = doc.at("k").get<int>();
        t.seed = doc.at("seed").get<std::uint64_t>();
        result.push_back(std::move(t));
        open = true;
      } else if (record == "step") {
        if (!open) throw fail("step outside a trajectory");
        TrajectoryStep s;
        s.observation = observation_from_json(doc.at("observation"));
        s.u1 = doc.at("u1").get<NodeId>();
        s.u2 = doc.at("u2").get<NodeId>();
        s.reward = doc.at("reward").get<double>();
        result.back().steps.push_back(std::move(s));
      } else if (record == "trajectory_end") {
        if (!open) throw fail("trajectory_end without begin");
        if (doc.at("steps").get<size_t>() != result.back().steps.size()) {
          throw fail("step count disagrees with the records read");
        }
        result.back().final_q = doc.at("final_q").get<double>();
        open = false;
      } else {
        throw fail("unknown record '" + record + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    }
  }
  if (!header) throw InvalidArgument("trajectory file is empty");
  if (open) throw InvalidArgument("trajectory file ends inside a trajectory");
  return result;
}

std::vector<Trajectory> read_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_trajectories(in);
}

}  // namespace swaploc
