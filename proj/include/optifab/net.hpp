#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "optifab/json_util.hpp"

namespace optifab {

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Move-only RAII file descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void close();
  // Unblocks any reader stuck in read(); the fd stays open until close().
  void shutdown_both() const;

 private:
  int fd_ = -1;
};

Socket tcp_listen(const std::string& host, uint16_t port);
uint16_t local_port(const Socket& listener);
Socket tcp_accept(const Socket& listener);  // invalid Socket when the listener closed
Socket tcp_connect(const std::string& host, uint16_t port, double timeout_seconds);

std::pair<std::string, uint16_t> parse_host_port(const std::string& address);

// Length-prefixed frames: 4-byte big-endian payload length + canonical JSON.
inline constexpr size_t kMaxFrameBytes = 64ull << 20;

std::string encode_frame(const Json& msg);

// Blocking frame I/O on a socket. read_frame returns nullopt on clean EOF
// and throws IoError on a torn frame or oversized length.
void write_frame(const Socket& sock, const Json& msg);
std::optional<Json> read_frame(const Socket& sock);

// Frame I/O on plain file descriptors (topic logs).
void write_frame_fd(int fd, const Json& msg);

struct LogScanResult {
  std::vector<Json> frames;
  size_t valid_bytes = 0;  // offset of the first torn/invalid byte
  bool truncated_tail = false;
};

// Decodes a whole frame log buffer, stopping at the first torn frame.
LogScanResult scan_frame_log(const std::string& bytes);

}  // namespace optifab
