#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "swaploc/channel.hpp"
#include "swaploc/swap.hpp"

namespace swaploc {

/// Environment variable naming the default policy endpoint.
inline constexpr const char* kPolicyEndpointEnv = "SWAPLOC_POLICY_ENDPOINT";
inline constexpr const char* kDefaultPolicyEndpoint = "tcp://127.0.0.1:5555";

/// Swap agent whose moves come from an external policy speaking the action
/// side of the env protocol: it receives {"type":"act", observation} and
/// answers {"type":"action", u1, u2}. Every returned move is mask-checked;
/// violations, error replies and timeouts raise ProtocolError quoting the
/// offending message. Moves are always accepted.
class PolicyAgent : public SwapAgent {
 public:
  explicit PolicyAgent(std::unique_ptr<LineChannel> channel);

  std::string_view name() const override { return "policy"; }
  std::optional<SwapMove> act(const Instance& instance, const Solution& solution,
                              const SwapContext& context) override;
  bool accepts(double, const Solution&) const override { return true; }

 private:
  std::unique_ptr<LineChannel> channel_;
};

/// Connects to a policy server. Throws ProtocolError with a remediation hint
/// when nothing is listening.
std::unique_ptr<SwapAgent> policy_agent(const std::string& endpoint,
                                        std::chrono::milliseconds timeout = std::chrono::seconds{30});

/// Endpoint from SWAPLOC_POLICY_ENDPOINT, else the built-in default.
std::string default_policy_endpoint();

}  // namespace swaploc
