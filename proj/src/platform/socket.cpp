#include "qxp/platform/socket.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

#include "qxp/core/types.hpp"

namespace qxp {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

}  // namespace

TcpStream::TcpStream(TcpStream&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)),
      buffer_(std::move(other.buffer_)) {}

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
  if (this != &other) {
    close_fd(fd_);
    fd_ = std::exchange(other.fd_, -1);
    buffer_ = std::move(other.buffer_);
  }
  return *this;
}

TcpStream::~TcpStream() { close_fd(fd_); }

TcpStream TcpStream::connect_to(const std::string& host, int port) {
  if (port <= 0 || port > 65535) {
    throw UsageError("port must be in [1, 65535]");
  }
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw UsageError("host \"" + host + "\" is not an IPv4 address");
  }
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) fail("socket");
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr),
                sizeof(addr)) != 0) {
    const int saved = errno;
    ::close(fd);
    errno = saved;
    fail("connect to " + host + ":" + std::to_string(port));
  }
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpStream(fd);
}

void TcpStream::write_line(const std::string& line) {
  if (fd_ < 0) throw TransportError("write on a closed stream");
  std::string framed = line;
  framed.push_back('\n');
  std::size_t sent = 0;
  while (sent < framed.size()) {
    const ssize_t k = ::send(fd_, framed.data() + sent, framed.size() - sent,
                             MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      fail("send");
    }
    sent += static_cast<std::size_t>(k);
  }
}

std::optional<std::string> TcpStream::read_line() {
  if (fd_ < 0) throw TransportError("read on a closed stream");
  for (;;) {
    const std::size_t pos = buffer_.find('\n');
    if (pos != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 1);
      return line;
    }
    char chunk[4096];
    const ssize_t k = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (k < 0) {
      if (errno == EINTR) continue;
      fail("recv");
    }
    if (k == 0) {
      if (!buffer_.empty()) {
        throw TransportError("connection closed mid-line");
      }
      return std::nullopt;
    }
    buffer_.append(chunk, static_cast<std::size_t>(k));
  }
}

void TcpStream::shutdown() {
  // Only shut down; the destructor closes the descriptor. Closing here
  // would race a concurrent read_line against descriptor reuse.
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

void TcpStream::close() { close_fd(fd_); }

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)),
      port_(std::exchange(other.port_, 0)) {}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
  if (this != &other) {
    close_fd(fd_);
    fd_ = std::exchange(other.fd_, -1);
    port_ = std::exchange(other.port_, 0);
  }
  return *this;
}

TcpListener::~TcpListener() { close_fd(fd_); }

TcpListener TcpListener::bind_local(int port) {
  if (port < 0 || port > 65535) {
    throw UsageError("port must be in [0, 65535]");
  }
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) fail("socket");
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) !=
      0) {
    const int saved = errno;
    ::close(fd);
    errno = saved;
    fail("bind 127.0.0.1:" + std::to_string(port));
  }
  if (::listen(fd, 8) != 0) {
    const int saved = errno;
    ::close(fd);
    errno = saved;
    fail("listen");
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  if (::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len) != 0) {
    const int saved = errno;
    ::close(fd);
    errno = saved;
    fail("getsockname");
  }
  TcpListener out;
  out.fd_ = fd;
  out.port_ = static_cast<int>(ntohs(bound.sin_port));
  return out;
}

TcpStream TcpListener::accept_one() {
  if (fd_ < 0) throw TransportError("accept on a closed listener");
  for (;;) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      fail("accept");
    }
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return TcpStream(fd);
  }
}

void TcpListener::shutdown() {
  // Only shut down; the destructor closes the descriptor. Closing here
  // would race a concurrent accept_one against descriptor reuse.
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

}  // namespace qxp
