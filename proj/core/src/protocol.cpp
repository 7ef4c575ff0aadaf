#include "swaploc/protocol.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>

#include "swaploc/generators.hpp"
#include "swaploc/instance_io.hpp"
#include "swaploc/pmp.hpp"

namespace swaploc {
namespace {

// Request errors raised while decoding fields; `code` goes on the wire.
class RequestError : public Error {
 public:
  RequestError(std::string code, const std::string& message)
      : Error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

std::string dump(const nlohmann::json& value) {
  return value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

nlohmann::json reply(std::string_view type) {
  return {{"type", type}, {"version", kProtocolVersion}};
}

std::int64_t get_int(const nlohmann::json& request, const char* key, std::int64_t lo,
                     std::int64_t hi) {
  if (!request.contains(key)) throw RequestError("bad_request", std::string("missing field '") + key + "'");
  const auto& value = request[key];
  if (!value.is_number_integer()) {
    throw RequestError("bad_request", std::string("field '") + key + "' must be an integer");
  }
  if (value.is_number_unsigned() &&
      value.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw RequestError("bad_request", std::string("field '") + key + "' is out of range");
  }
  const auto v = value.get<std::int64_t>();
  if (v < lo || v > hi) {
    throw RequestError("bad_request", std::string("field '") + key + "' must lie in " +
                                          std::to_string(lo) + ".." + std::to_string(hi));
  }
  return v;
}

std::int64_t get_int_or(const nlohmann::json& request, const char* key, std::int64_t fallback,
                        std::int64_t lo, std::int64_t hi) {
  return request.contains(key) ? get_int(request, key, lo, hi) : fallback;
}

std::uint64_t get_seed(const nlohmann::json& request) {
  if (!request.contains("seed")) return 0;
  const auto& value = request["seed"];
  if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() &&
                                     value.get<std::int64_t>() < 0)) {
    throw RequestError("bad_request", "field 'seed' must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

double get_real_or(const nlohmann::json& request, const char* key, double fallback) {
  if (!request.contains(key)) return fallback;
  const auto& value = request[key];
  if (!value.is_number()) {
    throw RequestError("bad_request", std::string("field '") + key + "' must be a number");
  }
  return value.get<double>();
}

std::string get_string(const nlohmann::json& request, const char* key) {
  if (!request.contains(key) || !request[key].is_string()) {
    throw RequestError("bad_request", std::string("field '") + key + "' must be a string");
  }
  return request[key].get<std::string>();
}

}  // namespace

nlohmann::json protocol_error(std::string_view code, std::string_view message) {
  nlohmann::json out = reply("error");
  out["code"] = code;
  out["message"] = message;
  return out;
}

std::string EnvSession::handle(std::string_view line) {
  nlohmann::json response;
  try {
    nlohmann::json request;
    try {
      request = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      return dump(protocol_error("parse_error", e.what()));
    }
    response = dispatch(request);
  } catch (const RequestError& e) {
    response = protocol_error(e.code(), e.what());
  } catch (const DisconnectedGraph& e) {
    response = protocol_error("bad_request", e.what());
  } catch (const InvalidArgument& e) {
    response = protocol_error("bad_request", e.what());
  } catch (const nlohmann::json::exception& e) {
    response = protocol_error("bad_request", e.what());
  } catch (const std::exception& e) {
    response = protocol_error("internal", e.what());
  } catch (...) {
    response = protocol_error("internal", "unknown failure");
  }
  return dump(response);
}

nlohmann::json EnvSession::dispatch(const nlohmann::json& request) {
  if (!request.is_object()) throw RequestError("bad_request", "message must be a JSON object");
  if (!request.contains("version")) throw RequestError("bad_version", "field 'version' is mandatory");
  if (!request["version"].is_number_integer() ||
      request["version"].get<std::int64_t>() != kProtocolVersion) {
    throw RequestError("bad_version", "unsupported protocol version; this server speaks version " +
                                          std::to_string(kProtocolVersion));
  }
  const std::string type = get_string(request, "type");
  if (closed_) throw RequestError("closed", "session has been shut down");
  if (type == "hello") {
    nlohmann::json out = reply("hello");
    out["server"] = "swaploc-env";
    out["features"] = kFeatureCount;
    return out;
  }
  if (type == "reset") return on_reset(request);
  if (type == "step") return on_step(request);
  if (type == "batch_generate") return on_batch_generate(request);
  if (type == "shutdown") {
    closed_ = true;
    stop_server_ = request.value("scope", std::string{"session"}) == "server";
    return reply("shutdown_ack");
  }
  throw RequestError("unknown_type", "unknown message type '" + type + "'");
}

std::string EnvSession::store(std::shared_ptr<const Instance> instance) {
  if (static_cast<int>(instances_.size()) >= limits_.max_instances) {
    throw RequestError("limit", "session already stores " + std::to_string(instances_.size()) +
                                    " instances");
  }
  std::string id = "inst-" + std::to_string(next_id_++);
  instances_.emplace(id, std::move(instance));
  return id;
}

nlohmann::json EnvSession::on_reset(const nlohmann::json& request) {
  std::shared_ptr<const Instance> instance;
  std::string id;
  if (request.contains("instance_id")) {
    id = get_string(request, "instance_id");
    const auto it = instances_.find(id);
    if (it == instances_.end()) throw RequestError("not_found", "unknown instance id '" + id + "'");
    instance = it->second;
  } else if (request.contains("instance")) {
    if (static_cast<int>(instances_.size()) >= limits_.max_instances) {
      throw RequestError("limit", "session instance store is full");
    }
    const auto& doc = request["instance"];
    if (doc.is_object() && doc.contains("nodes") && doc["nodes"].is_array() &&
        static_cast<int>(doc["nodes"].size()) > limits_.max_inline_nodes) {
      throw RequestError("limit", "inline instance exceeds " + std::to_string(limits_.max_inline_nodes) +
                                      " nodes");
    }
    instance = std::make_shared<const Instance>(instance_from_json(doc));
    id = store(instance);
  } else {
    throw RequestError("bad_request", "reset needs 'instance_id' or an inline 'instance'");
  }

  const int n = instance->size();
  const std::uint64_t seed = get_seed(request);
  std::vector<NodeId> base;
  if (request.contains("F0")) {
    const auto& f0 = request["F0"];
    if (!f0.is_array()) throw RequestError("bad_request", "field 'F0' must be an array");
    for (const auto& v : f0) {
      if (!v.is_number_integer()) throw RequestError("bad_request", "F0 entries must be integers");
      const auto id_value = v.get<std::int64_t>();
      if (id_value < 0 || id_value >= n) {
        throw RequestError("bad_request", "F0 entry " + std::to_string(id_value) + " out of range");
      }
      base.push_back(static_cast<NodeId>(id_value));
    }
  } else {
    const auto p = static_cast<int>(get_int(request, "p", 1, n));
    base = density_init(*instance, p, seed);
  }
  const int p = static_cast<int>(base.size());
  const auto budget = static_cast<int>(get_int_or(request, "k", std::max(1, p / 2), 1, std::max(p, 1)));
  const Observation& obs = env_.reset(instance, base, budget);

  nlohmann::json out = reply("observation");
  out["instance_id"] = id;
  out["F0"] = std::vector<NodeId>(env_.base().begin(), env_.base().end());
  out["observation"] = observation_to_json(obs);
  return out;
}

nlohmann::json EnvSession::on_step(const nlohmann::json& request) {
  if (!env_.active()) throw RequestError("no_episode", "no active episode; send reset first");
  if (env_.done()) {
    throw RequestError("episode_done", "episode finished after " + std::to_string(env_.budget()) +
                                           " steps; send reset");
  }
  const int n = env_.instance().size();
  const auto remove = static_cast<NodeId>(get_int(request, "u1", 0, n - 1));
  const auto insert = static_cast<NodeId>(get_int(request, "u2", 0, n - 1));
  StepResult result;
  try {
    result = env_.step(remove, insert);
  } catch (const InvalidArgument& e) {
    throw RequestError("illegal_action", e.what());
  }
  nlohmann::json out = reply("step_result");
  out["observation"] = observation_to_json(result.observation);
  out["reward"] = result.reward;
  out["done"] = result.done;
  return out;
}

nlohmann::json EnvSession::on_batch_generate(const nlohmann::json& request) {
  if (!request.contains("params") || !request["params"].is_object()) {
    throw RequestError("bad_request", "batch_generate needs a 'params' object");
  }
  const auto& params = request["params"];
  const std::string kind = get_string(params, "kind");
  const auto count = static_cast<int>(get_int_or(params, "count", 1, 1, limits_.max_batch));
  if (static_cast<int>(instances_.size()) + count > limits_.max_instances) {
    throw RequestError("limit", "batch would exceed the session instance store");
  }
  const std::uint64_t seed = get_seed(params);
  std::vector<std::shared_ptr<const Instance>> batch;
  for (int i = 0; i < count; ++i) {
    if (kind == "grid") {
      GridCityParams grid;
      grid.width = static_cast<int>(get_int_or(params, "width", 8, 2, limits_.max_grid_width));
      grid.n_cbds = static_cast<int>(get_int_or(params, "n_cbds", 0, 0, 3));
      grid.total_population = get_real_or(params, "total_population", grid.total_population);
      grid.noise_fraction = get_real_or(params, "noise_fraction", grid.noise_fraction);
      grid.seed = seed + static_cast<std::uint64_t>(i);
      batch.push_back(std::make_shared<const Instance>(generate_grid_city(grid)));
    } else if (kind == "gabriel") {
      GabrielParams gabriel;
      gabriel.n = static_cast<int>(get_int_or(params, "n", 100, 3, limits_.max_gabriel_nodes));
      gabriel.knn = static_cast<int>(get_int_or(params, "knn", 3, 0, gabriel.n - 1));
      gabriel.min_degree_cap =
          static_cast<int>(get_int_or(params, "degree_cap_min", 3, 1, gabriel.n - 1));
      gabriel.max_degree_cap =
          static_cast<int>(get_int_or(params, "degree_cap_max", 6, 1, gabriel.n - 1));
      gabriel.seed = seed + static_cast<std::uint64_t>(i);
      batch.push_back(std::make_shared<const Instance>(generate_gabriel(gabriel)));
    } else {
      throw RequestError("bad_request", "unknown instance kind '" + kind + "'");
    }
  }
  nlohmann::json ids = nlohmann::json::array();
  for (auto& instance : batch) ids.push_back(store(std::move(instance)));
  nlohmann::json out = reply("instances");
  out["instance_ids"] = std::move(ids);
  return out;
}

void serve_channel(LineChannel& channel, SessionLimits limits) {
  EnvSession session(limits);
  while (!session.closed()) {
    std::string line;
    try {
      line = channel.receive();
    } catch (const ProtocolError&) {
      return;
    }
    if (line.empty()) continue;
    channel.send(session.handle(line));
  }
}

void serve_stream(std::istream& in, std::ostream& out, SessionLimits limits) {
  EnvSession session(limits);
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << session.handle(line) << '\n' << std::flush;
  }
}

TcpEnvServer::TcpEnvServer(const Endpoint& endpoint, SessionLimits limits)
    : listener_(endpoint), limits_(limits) {}

TcpEnvServer::~TcpEnvServer() {
  stopping_ = true;
  for (auto& worker : workers_) {
    if (worker.joinable()) worker.join();
  }
}

void TcpEnvServer::run() {
  std::mutex mutex;
  std::set<int> open;
  while (!stopping_) {
    const int fd = listener_.accept_for(std::chrono::milliseconds{100});
    if (fd < 0) continue;
    {
      std::lock_guard lock(mutex);
      open.insert(fd);
    }
    workers_.emplace_back([this, fd, &mutex, &open] {
      {
        FdChannel channel(fd, fd, false);
        EnvSession session(limits_);
        while (!session.closed()) {
          std::string line;
          try {
            line = channel.receive();
            if (line.empty()) continue;
            channel.send(session.handle(line));
          } catch (const ProtocolError&) {
            break;
          }
        }
        if (session.server_shutdown_requested()) stopping_ = true;
      }
      std::lock_guard lock(mutex);
      open.erase(fd);
      ::shutdown(fd, SHUT_RDWR);
      ::close(fd);
    });
  }
  {
    // Unblock sessions still waiting on their peers.
    std::lock_guard lock(mutex);
    for (int fd : open) ::shutdown(fd, SHUT_RDWR);
  }
  for (auto& worker : workers_) {
    if (worker.joinable()) worker.join();
  }
  workers_.clear();
}

}  // namespace swaploc
