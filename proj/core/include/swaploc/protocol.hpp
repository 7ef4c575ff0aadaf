#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "swaploc/channel.hpp"
#include "swaploc/env.hpp"

namespace swaploc {

/// Version carried in every message; mismatches are rejected in-band.
inline constexpr int kProtocolVersion = 1;

struct SessionLimits {
  int max_instances = 1024;   // stored per session
  int max_batch = 256;        // instances per batch_generate
  int max_grid_width = 64;
  int max_gabriel_nodes = 1000;
  int max_inline_nodes = 4096;  // nodes of an instance sent inside reset
};

/// One protocol session driving at most one episode at a time. Instance ids
/// are scoped to the session. handle() never throws: every failure becomes
/// an in-band error message and the session stays usable.
class EnvSession {
 public:
  explicit EnvSession(SessionLimits limits = {}) : limits_(limits) {}

  /// Processes one request line and returns the response line.
  std::string handle(std::string_view line);

  /// Set after a shutdown request.
  bool closed() const { return closed_; }
  /// Set when the shutdown asked for the whole server to stop.
  bool server_shutdown_requested() const { return stop_server_; }
  const Environment& environment() const { return env_; }

 private:
  nlohmann::json dispatch(const nlohmann::json& request);
  nlohmann::json on_reset(const nlohmann::json& request);
  nlohmann::json on_step(const nlohmann::json& request);
  nlohmann::json on_batch_generate(const nlohmann::json& request);
  std::string store(std::shared_ptr<const Instance> instance);

  SessionLimits limits_;
  Environment env_;
  std::map<std::string, std::shared_ptr<const Instance>> instances_;
  std::uint64_t next_id_ = 0;
  bool closed_ = false;
  bool stop_server_ = false;
};

/// Builds an in-band error response.
nlohmann::json protocol_error(std::string_view code, std::string_view message);

/// Serves one session over a channel until shutdown or end of stream.
void serve_channel(LineChannel& channel, SessionLimits limits = {});

/// Serves one session over text streams (standard input/output).
void serve_stream(std::istream& in, std::ostream& out, SessionLimits limits = {});

/// Multi-session TCP server; each connection gets its own EnvSession on its
/// own thread.
class TcpEnvServer {
 public:
  TcpEnvServer(const Endpoint& endpoint, SessionLimits limits = {});
  ~TcpEnvServer();
  TcpEnvServer(const TcpEnvServer&) = delete;
  TcpEnvServer& operator=(const TcpEnvServer&) = delete;

  int port() const { return listener_.port(); }
  /// Accepts connections until stop() or a server-scoped shutdown message.
  void run();
  void stop() { stopping_ = true; }

 private:
  TcpListener listener_;
  SessionLimits limits_;
  std::atomic<bool> stopping_{false};
  std::vector<std::thread> workers_;
};

}  // namespace swaploc
