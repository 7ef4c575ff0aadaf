#include <gtest/gtest.h>

#include <sys/socket.h>

#include <cstdlib>
#include <functional>
#include <thread>

#include "fixtures.hpp"
#include "swaploc/policy_agent.hpp"
#include "swaploc/pmp.hpp"
#include "swaploc/protocol.hpp"

namespace swaploc {
namespace {

using nlohmann::json;

// Scripted policy on the far end of a socket pair. `respond` maps each act
// message to the reply line.
class StubPolicy {
 public:
  explicit StubPolicy(std::function<std::string(const json&)> respond) {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) throw std::runtime_error("socketpair");
    agent_fd_ = fds[0];
    thread_ = std::thread([fd = fds[1], respond = std::move(respond), this] {
      FdChannel channel(fd, fd, true);
      try {
        for (;;) {
          const json request = json::parse(channel.receive());
          requests_.push_back(request);
          channel.send(respond(request));
        }
      } catch (const ProtocolError&) {
      }
    });
  }
  ~StubPolicy() {
    if (thread_.joinable()) thread_.join();
  }

  std::unique_ptr<PolicyAgent> agent() {
    return std::make_unique<PolicyAgent>(
        std::make_unique<FdChannel>(agent_fd_, agent_fd_, true, std::chrono::seconds{10}));
  }
  // Valid after the agent is destroyed.
  const std::vector<json>& requests() {
    if (thread_.joinable()) thread_.join();
    return requests_;
  }

 private:
  int agent_fd_ = -1;
  std::thread thread_;
  std::vector<json> requests_;
};

std::string action(std::int64_t u1, std::int64_t u2) {
  return json{{"type", "action"}, {"version", 1}, {"u1", u1}, {"u2", u2}}.dump();
}

std::vector<NodeId> open_nodes(const json& observation) {
  std::vector<NodeId> open;
  const auto& mask = observation.at("remove_mask");
  for (size_t v = 0; v < mask.size(); ++v) {
    if (mask[v].get<bool>()) open.push_back(static_cast<NodeId>(v));
  }
  return open;
}

TEST(PolicyAgent, EchoingGreedyReproducesGreedyMoves) {
  const Instance instance = testing::random_instance(30, 8);
  const std::vector<NodeId> f0 = density_init(instance, 6, 2);
  StubPolicy stub([&](const json& request) {
    const Solution s = build_solution(instance, open_nodes(request.at("observation")));
    const auto best = best_swap(instance, s);
    return action(best->first.remove, best->first.insert);
  });
  RelocationPlan policy_plan;
  {
    auto agent = stub.agent();
    policy_plan = swap_relocate(instance, f0, 3, *agent, 1, 0);
  }
  auto greedy = greedy_swap_agent();
  const RelocationPlan greedy_plan = swap_relocate(instance, f0, 3, *greedy, 1, 0);
  ASSERT_EQ(policy_plan.steps.size(), 3u);
  // The policy proposes the same moves; it differs only in accepting every one.
  for (size_t i = 0; i < greedy_plan.steps.size(); ++i) {
    EXPECT_EQ(policy_plan.steps[i].remove, greedy_plan.steps[i].remove);
    EXPECT_EQ(policy_plan.steps[i].insert, greedy_plan.steps[i].insert);
    if (!greedy_plan.steps[i].accepted) break;
  }
  EXPECT_LE(policy_plan.final_objective, greedy_plan.final_objective + 1e-9 * greedy_plan.base_objective);

  const auto& requests = stub.requests();
  ASSERT_EQ(requests.size(), 3u);
  for (size_t i = 0; i < requests.size(); ++i) {
    EXPECT_EQ(requests[i].at("type"), "act");
    EXPECT_EQ(requests[i].at("version"), kProtocolVersion);
    EXPECT_EQ(requests[i].at("observation").at("step_index"), static_cast<int>(i));
    EXPECT_EQ(requests[i].at("observation").at("budget"), 3);
    EXPECT_EQ(requests[i].at("observation").at("n"), 30);
  }
}

void expect_protocol_error(const std::string& reply, const std::string& fragment) {
  const Instance instance = testing::path_instance(5);
  StubPolicy stub([&](const json&) { return reply; });
  auto agent = stub.agent();
  try {
    swap_relocate(instance, std::vector<NodeId>{0, 3}, 1, *agent, 1, 0);
    FAIL() << "expected ProtocolError for " << reply;
  } catch (const ProtocolError& e) {
    const std::string message = e.what();
    EXPECT_NE(message.find(fragment), std::string::npos) << message;
    EXPECT_NE(message.find(reply), std::string::npos) << message;
  }
}

TEST(PolicyAgent, MaskViolationsAreProtocolErrors) {
  expect_protocol_error(action(0, 3), "insert mask");
  expect_protocol_error(action(1, 2), "remove mask");
  expect_protocol_error(action(0, 5), "insert mask");
  expect_protocol_error(action(-1, 2), "remove mask");
}

TEST(PolicyAgent, MalformedRepliesAreProtocolErrors) {
  expect_protocol_error("not json", "unparsable");
  expect_protocol_error(R"({"type":"error","version":1,"code":"x","message":"boom"})", "unexpected");
  expect_protocol_error(R"({"type":"action","u1":0,"u2":1})", "version");
  expect_protocol_error(R"({"type":"action","version":1,"u1":0.5,"u2":1})", "integer");
  expect_protocol_error(R"({"type":"action","version":1,"u1":0})", "integer");
}

TEST(PolicyAgent, PeerHangupIsProtocolError) {
  int fds[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds), 0);
  ::close(fds[1]);
  PolicyAgent agent(std::make_unique<FdChannel>(fds[0], fds[0], true));
  const Instance instance = testing::path_instance(4);
  EXPECT_THROW(swap_relocate(instance, std::vector<NodeId>{0}, 1, agent, 1, 0), ProtocolError);
}

TEST(PolicyAgent, TimeoutIsProtocolError) {
  int fds[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds), 0);
  PolicyAgent agent(std::make_unique<FdChannel>(fds[0], fds[0], true, std::chrono::milliseconds{50}));
  const Instance instance = testing::path_instance(4);
  try {
    swap_relocate(instance, std::vector<NodeId>{0}, 1, agent, 1, 0);
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("timed out"), std::string::npos);
  }
  ::close(fds[1]);
}

TEST(PolicyAgent, ConnectFailureCarriesHint) {
  int port;
  {
    TcpListener probe(parse_endpoint("127.0.0.1:0"));
    port = probe.port();
  }
  const std::string endpoint = "tcp://127.0.0.1:" + std::to_string(port);
  try {
    policy_agent(endpoint, std::chrono::seconds{1});
    FAIL();
  } catch (const ProtocolError& e) {
    const std::string message = e.what();
    EXPECT_NE(message.find("hint"), std::string::npos);
    EXPECT_NE(message.find(endpoint), std::string::npos);
    EXPECT_NE(message.find(kPolicyEndpointEnv), std::string::npos);
  }
}

TEST(PolicyAgent, DefaultEndpointFromEnvironment) {
  ::unsetenv(kPolicyEndpointEnv);
  EXPECT_EQ(default_policy_endpoint(), kDefaultPolicyEndpoint);
  ::setenv(kPolicyEndpointEnv, "tcp://10.0.0.1:7000", 1);
  EXPECT_EQ(default_policy_endpoint(), "tcp://10.0.0.1:7000");
  ::unsetenv(kPolicyEndpointEnv);
}

TEST(PolicyAgent, ConnectsOverTcp) {
  TcpListener listener(parse_endpoint("127.0.0.1:0"));
  const Instance instance = testing::path_instance(4);
  std::thread server([&] {
    int fd = -1;
    while (fd < 0) fd = listener.accept_for(std::chrono::milliseconds{100});
    FdChannel channel(fd, fd, true);
    channel.receive();
    channel.send(action(0, 1));
  });
  {
    auto agent = policy_agent("tcp://127.0.0.1:" + std::to_string(listener.port()));
    const RelocationPlan plan = swap_relocate(instance, std::vector<NodeId>{0}, 1, *agent, 1, 0);
    EXPECT_EQ(plan.inserted, std::vector<NodeId>{1});
    EXPECT_DOUBLE_EQ(plan.improvement_ratio, 1.0 / 3.0);
  }
  server.join();
}

}  // namespace
}  // namespace swaploc
