#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

namespace swaploc {

/// Bidirectional stream of newline-terminated text messages.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  /// Sends one message; a trailing newline is appended.
  virtual void send(std::string_view line) = 0;
  /// Blocks for the next message (without its newline). Throws ProtocolError
  /// on end of stream or timeout.
  virtual std::string receive() = 0;
};

/// Channel over a pair of file descriptors (pipes, stdio, sockets). The
/// descriptors are closed on destruction when `owned` is true.
class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd, bool owned,
            std::chrono::milliseconds timeout = std::chrono::milliseconds{0});
  ~FdChannel() override;
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  void send(std::string_view line) override;
  std::string receive() override;

 private:
  int read_fd_;
  int write_fd_;
  bool owned_;
  std::chrono::milliseconds timeout_;  // zero waits forever
  std::string buffer_;
};

struct Endpoint {
  std::string host = "127.0.0.1";
  int port = 0;
};

/// Parses "tcp://host:port", "host:port" or ":port".
Endpoint parse_endpoint(std::string_view text);

/// Connects to a TCP endpoint. Throws ProtocolError when nothing listens.
std::unique_ptr<LineChannel> connect_tcp(const Endpoint& endpoint,
                                         std::chrono::milliseconds timeout);

/// Listening TCP socket bound to host:port (port 0 picks a free one).
class TcpListener {
 public:
  explicit TcpListener(const Endpoint& endpoint);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  int port() const { return port_; }
  /// Waits up to `poll` for a connection; returns a connected descriptor or -1.
  int accept_for(std::chrono::milliseconds poll);

 private:
  int fd_ = -1;
  int port_ = 0;
};

}  // namespace swaploc
