#include "swaploc/policy_agent.hpp"

#include <cstdlib>

#include <nlohmann/json.hpp>

#include "swaploc/env.hpp"
#include "swaploc/protocol.hpp"

namespace swaploc {

PolicyAgent::PolicyAgent(std::unique_ptr<LineChannel> channel) : channel_(std::move(channel)) {
  if (!channel_) throw InvalidArgument("policy agent needs a channel");
}

std::optional<SwapMove> PolicyAgent::act(const Instance& instance, const Solution& solution,
                                         const SwapContext& context) {
  if (solution.p() == instance.size()) return std::nullopt;
  const double q = context.base_objective > 0.0
                       ? (context.base_objective - solution.objective()) / context.base_objective
                       : 0.0;
  const Observation obs = observe(instance, solution, context.step, context.budget, q);
  const nlohmann::json request = {{"type", "act"},
                                  {"version", kProtocolVersion},
                                  {"observation", observation_to_json(obs)}};
  channel_->send(request.dump());

  const std::string line = channel_->receive();
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw ProtocolError("policy sent unparsable reply: " + line);
  }
  if (!reply.is_object() || reply.value("type", std::string{}) != "action") {
    throw ProtocolError("policy sent unexpected reply: " + line);
  }
  if (!reply.contains("version") || reply["version"] != kProtocolVersion) {
    throw ProtocolError("policy reply has wrong or missing version: " + line);
  }
  if (!reply.contains("u1") || !reply["u1"].is_number_integer() || !reply.contains("u2") ||
      !reply["u2"].is_number_integer()) {
    throw ProtocolError("policy reply needs integer u1 and u2: " + line);
  }
  const auto u1 = reply["u1"].get<std::int64_t>();
  const auto u2 = reply["u2"].get<std::int64_t>();
  const int n = instance.size();
  if (u1 < 0 || u1 >= n || !solution.is_facility(static_cast<NodeId>(u1))) {
    throw ProtocolError("policy action violates the remove mask (u1 = " + std::to_string(u1) +
                        "): " + line);
  }
  if (u2 < 0 || u2 >= n || solution.is_facility(static_cast<NodeId>(u2))) {
    throw ProtocolError("policy action violates the insert mask (u2 = " + std::to_string(u2) +
                        "): " + line);
  }
  return SwapMove{static_cast<NodeId>(u1), static_cast<NodeId>(u2)};
}

std::unique_ptr<SwapAgent> policy_agent(const std::string& endpoint,
                                        std::chrono::milliseconds timeout) {
  const Endpoint parsed = parse_endpoint(endpoint);
  try {
    return std::make_unique<PolicyAgent>(connect_tcp(parsed, timeout));
  } catch (const ProtocolError& e) {
    throw ProtocolError(std::string(e.what()) +
                        "\nhint: start a policy server (the trainer's serve_policy) at " + endpoint +
                        ", or point --endpoint / " + kPolicyEndpointEnv + " at a running one");
  }
}

std::string default_policy_endpoint() {
  const char* value = std::getenv(kPolicyEndpointEnv);
  return value && *value ? std::string(value) : std::string(kDefaultPolicyEndpoint);
}

}  // namespace swaploc
