#pragma once

#include <optional>
#include <string>

namespace qxp {

// Minimal line-oriented TCP wrappers over POSIX sockets. All failures throw
// TransportError; orderly remote close reads as std::nullopt.

class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(int fd) : fd_(fd) {}
  TcpStream(TcpStream&& other) noexcept;
  TcpStream& operator=(TcpStream&& other) noexcept;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;
  ~TcpStream();

  static TcpStream connect_to(const std::string& host, int port);

  bool valid() const { return fd_ >= 0; }

  // Sends line + '\n'.
  void write_line(const std::string& line);

  // Next '\n'-terminated line without the terminator; std::nullopt once the
  // peer closes and the buffer is drained.
  std::optional<std::string> read_line();

  // Unblocks a concurrent read_line (which then sees end-of-stream) without
  // releasing the descriptor. Safe to call from another thread.
  void shutdown();

  void close();

 private:
  int fd_ = -1;
  std::string buffer_;
};

class TcpListener {
 public:
  TcpListener() = default;
  TcpListener(TcpListener&& other) noexcept;
  TcpListener& operator=(TcpListener&& other) noexcept;
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  // Binds and listens on 127.0.0.1; port 0 picks an ephemeral port.
  static TcpListener bind_local(int port);

  int port() const { return port_; }
  bool valid() const { return fd_ >= 0; }

  TcpStream accept_one();

  // Unblocks a concurrent accept_one (which then throws TransportError) and
  // releases the port. Safe to call from another thread.
  void shutdown();

 private:
  int fd_ = -1;
  int port_ = 0;
};

}  // namespace qxp
