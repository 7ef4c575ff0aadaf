#include "swaploc/channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "swaploc/common.hpp"

namespace swaploc {

FdChannel::FdChannel(int read_fd, int write_fd, bool owned, std::chrono::milliseconds timeout)
    : read_fd_(read_fd), write_fd_(write_fd), owned_(owned), timeout_(timeout) {}

FdChannel::~FdChannel() {
  if (!owned_) return;
  ::close(read_fd_);
  if (write_fd_ != read_fd_) ::close(write_fd_);
}

void FdChannel::send(std::string_view line) {
  std::string data(line);
  data.push_back('\n');
  size_t written = 0;
  while (written < data.size()) {
    const ssize_t r = ::send(write_fd_, data.data() + written, data.size() - written, MSG_NOSIGNAL);
    if (r < 0 && errno == ENOTSOCK) {
      const ssize_t w = ::write(write_fd_, data.data() + written, data.size() - written);
      if (w < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError(std::string("write failed: ") + std::strerror(errno));
      }
      written += static_cast<size_t>(w);
      continue;
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("send failed: ") + std::strerror(errno));
    }
    written += static_cast<size_t>(r);
  }
}

std::string FdChannel::receive() {
  for (;;) {
    const size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (timeout_.count() > 0) {
      pollfd pfd{read_fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(timeout_.count()));
      if (ready == 0) {
        throw ProtocolError("timed out after " + std::to_string(timeout_.count()) +
                            " ms waiting for a message");
      }
      if (ready < 0 && errno != EINTR) {
        throw ProtocolError(std::string("poll failed: ") + std::strerror(errno));
      }
    }
    char chunk[4096];
    const ssize_t r = ::read(read_fd_, chunk, sizeof(chunk));
    if (r < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("read failed: ") + std::strerror(errno));
    }
    if (r == 0) throw ProtocolError("peer closed the connection");
    buffer_.append(chunk, static_cast<size_t>(r));
  }
}

Endpoint parse_endpoint(std::string_view text) {
  std::string_view rest = text;
  if (rest.starts_with("tcp://")) rest.remove_prefix(6);
  const size_t colon = rest.rfind(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("endpoint '" + std::string(text) + "' must look like tcp://host:port");
  }
  Endpoint endpoint;
  if (colon > 0) endpoint.host = std::string(rest.substr(0, colon));
  const std::string port(rest.substr(colon + 1));
  try {
    size_t used = 0;
    endpoint.port = std::stoi(port, &used);
    if (used != port.size() || endpoint.port < 0 || endpoint.port > 65535) throw std::out_of_range("");
  } catch (const std::exception&) {
    throw InvalidArgument("endpoint '" + std::string(text) + "' has an invalid port");
  }
  return endpoint;
}

namespace {

addrinfo* resolve(const Endpoint& endpoint, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  const std::string port = std::to_string(endpoint.port);
  const int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &result);
  if (rc != 0) {
    throw ProtocolError("cannot resolve " + endpoint.host + ": " + ::gai_strerror(rc));
  }
  return result;
}

}  // namespace

std::unique_ptr<LineChannel> connect_tcp(const Endpoint& endpoint,
                                         std::chrono::milliseconds timeout) {
  addrinfo* info = resolve(endpoint, false);
  const int fd = ::socket(info->ai_family, info->ai_socktype, info->ai_protocol);
  if (fd < 0) {
    ::freeaddrinfo(info);
    throw ProtocolError(std::string("socket failed: ") + std::strerror(errno));
  }
  const int rc = ::connect(fd, info->ai_addr, info->ai_addrlen);
  const int err = errno;
  ::freeaddrinfo(info);
  if (rc != 0) {
    ::close(fd);
    throw ProtocolError("cannot connect to " + endpoint.host + ":" +
                        std::to_string(endpoint.port) + ": " + std::strerror(err));
  }
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return std::make_unique<FdChannel>(fd, fd, true, timeout);
}

TcpListener::TcpListener(const Endpoint& endpoint) {
  addrinfo* info = resolve(endpoint, true);
  fd_ = ::socket(info->ai_family, info->ai_socktype, info->ai_protocol);
  if (fd_ < 0) {
    ::freeaddrinfo(info);
    throw ProtocolError(std::string("socket failed: ") + std::strerror(errno));
  }
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd_, info->ai_addr, info->ai_addrlen) != 0 || ::listen(fd_, 16) != 0) {
    const int err = errno;
    ::freeaddrinfo(info);
    ::close(fd_);
    throw ProtocolError("cannot listen on " + endpoint.host + ":" +
                        std::to_string(endpoint.port) + ": " + std::strerror(err));
  }
  ::freeaddrinfo(info);
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

int TcpListener::accept_for(std::chrono::milliseconds poll) {
  pollfd pfd{fd_, POLLIN, 0};
  if (::poll(&pfd, 1, static_cast<int>(poll.count())) <= 0) return -1;
  const int client = ::accept(fd_, nullptr, nullptr);
  if (client >= 0) {
    int one = 1;
    ::setsockopt(client, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  }
  return client;
}

}  // namespace swaploc
