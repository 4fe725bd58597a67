#include "optifab/net.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace optifab {

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

Socket::~Socket() { close(); }

void Socket::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void Socket::shutdown_both() const {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

namespace {

void throw_errno(const std::string& what) {
  throw IoError(what + ": " + std::strerror(errno));
}

}  // namespace

Socket tcp_listen(const std::string& host, uint16_t port) {
  Socket sock(::socket(AF_INET, SOCK_STREAM, 0));
  if (!sock.valid()) throw_errno("socket");
  const int one = 1;
  ::setsockopt(sock.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (host.empty() || host == "0.0.0.0") {
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
  } else if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw IoError("tcp_listen: bad host '" + host + "'");
  }
  if (::bind(sock.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
    throw_errno("bind " + host + ":" + std::to_string(port));
  if (::listen(sock.fd(), 64) != 0) throw_errno("listen");
  return sock;
}

uint16_t local_port(const Socket& listener) {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(listener.fd(), reinterpret_cast<sockaddr*>(&addr), &len) != 0)
    throw_errno("getsockname");
  return ntohs(addr.sin_port);
}

Socket tcp_accept(const Socket& listener) {
  const int fd = ::accept(listener.fd(), nullptr, nullptr);
  if (fd < 0) return Socket();
  return Socket(fd);
}

Socket tcp_connect(const std::string& host, uint16_t port, double timeout_seconds) {
  const double deadline_budget = std::max(timeout_seconds, 0.05);
  Socket sock(::socket(AF_INET, SOCK_STREAM, 0));
  if (!sock.valid()) throw_errno("socket");

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  std::string resolved = host;
  if (host.empty() || host == "localhost") resolved = "127.0.0.1";
  if (::inet_pton(AF_INET, resolved.c_str(), &addr.sin_addr) != 1) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* info = nullptr;
    if (::getaddrinfo(host.c_str(), nullptr, &hints, &info) != 0 || info == nullptr)
      throw IoError("tcp_connect: cannot resolve '" + host + "'");
    addr.sin_addr = reinterpret_cast<sockaddr_in*>(info->ai_addr)->sin_addr;
    ::freeaddrinfo(info);
  }

  const int flags = ::fcntl(sock.fd(), F_GETFL, 0);
  ::fcntl(sock.fd(), F_SETFL, flags | O_NONBLOCK);
  const int rc = ::connect(sock.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
  if (rc != 0) {
    if (errno != EINPROGRESS) throw_errno("connect " + host + ":" + std::to_string(port));
    pollfd pfd{sock.fd(), POLLOUT, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(deadline_budget * 1000));
    if (ready <= 0) throw IoError("connect " + host + ":" + std::to_string(port) + ": timed out");
    int err = 0;
    socklen_t len = sizeof(err);
    ::getsockopt(sock.fd(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) throw IoError("connect " + host + ":" + std::to_string(port) + ": " +
                                std::strerror(err));
  }
  ::fcntl(sock.fd(), F_SETFL, flags);
  const int one = 1;
  ::setsockopt(sock.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return sock;
}

std::pair<std::string, uint16_t> parse_host_port(const std::string& address) {
  const size_t colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 >= address.size())
    throw ConfigError("address must be host:port, got '" + address + "'");
  const std::string host = address.substr(0, colon);
  const int port = std::stoi(address.substr(colon + 1));
  if (port < 1 || port > 65535) throw ConfigError("port out of range in '" + address + "'");
  return {host, static_cast<uint16_t>(port)};
}

std::string encode_frame(const Json& msg) {
  const std::string payload = canonical_dump(msg);
  if (payload.size() > kMaxFrameBytes) throw IoError("frame exceeds size limit");
  std::string out;
  out.reserve(4 + payload.size());
  const uint32_t n = static_cast<uint32_t>(payload.size());
  out.push_back(static_cast<char>((n >> 24) & 0xff));
  out.push_back(static_cast<char>((n >> 16) & 0xff));
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  out += payload;
  return out;
}

namespace {

void write_all(int fd, const char* data, size_t size, bool is_socket) {
  size_t done = 0;
  while (done < size) {
    const ssize_t n = is_socket ? ::send(fd, data + done, size - done, MSG_NOSIGNAL)
                                : ::write(fd, data + done, size - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("write");
    }
    done += static_cast<size_t>(n);
  }
}

// Returns false on clean EOF at a frame boundary; throws mid-frame.
bool read_exact(int fd, char* data, size_t size, bool at_boundary) {
  size_t done = 0;
  while (done < size) {
    const ssize_t n = ::read(fd, data + done, size - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("read");
    }
    if (n == 0) {
      if (done == 0 && at_boundary) return false;
      throw IoError("connection closed mid-frame");
    }
    done += static_cast<size_t>(n);
  }
  return true;
}

}  // namespace

void write_frame(const Socket& sock, const Json& msg) {
  const std::string frame = encode_frame(msg);
  write_all(sock.fd(), frame.data(), frame.size(), /*is_socket=*/true);
}

std::optional<Json> read_frame(const Socket& sock) {
  char header[4];
  if (!read_exact(sock.fd(), header, 4, /*at_boundary=*/true)) return std::nullopt;
  const uint32_t n = (static_cast<uint32_t>(static_cast<unsigned char>(header[0])) << 24) |
                     (static_cast<uint32_t>(static_cast<unsigned char>(header[1])) << 16) |
                     (static_cast<uint32_t>(static_cast<unsigned char>(header[2])) << 8) |
                     static_cast<uint32_t>(static_cast<unsigned char>(header[3]));
  if (n > kMaxFrameBytes) throw IoError("incoming frame exceeds size limit");
  std::string payload(n, '\0');
  read_exact(sock.fd(), payload.data(), n, /*at_boundary=*/false);
  try {
    return Json::parse(payload);
  } catch (const Json::exception& e) {
    throw IoError(std::string("bad frame payload: ") + e.what());
  }
}

void write_frame_fd(int fd, const Json& msg) {
  const std::string frame = encode_frame(msg);
  write_all(fd, frame.data(), frame.size(), /*is_socket=*/false);
}

LogScanResult scan_frame_log(const std::string& bytes) {
  LogScanResult out;
  size_t offset = 0;
  while (offset + 4 <= bytes.size()) {
    const uint32_t n = (static_cast<uint32_t>(static_cast<unsigned char>(bytes[offset])) << 24) |
                       (static_cast<uint32_t>(static_cast<unsigned char>(bytes[offset + 1])) << 16) |
                       (static_cast<uint32_t>(static_cast<unsigned char>(bytes[offset + 2])) << 8) |
                       static_cast<uint32_t>(static_cast<unsigned char>(bytes[offset + 3]));
    if (n > kMaxFrameBytes || offset + 4 + n > bytes.size()) break;
    Json parsed = Json::parse(bytes.substr(offset + 4, n), nullptr, false);
    if (parsed.is_discarded()) break;
    out.frames.push_back(std::move(parsed));
    offset += 4 + n;
  }
  out.valid_bytes = offset;
  out.truncated_tail = offset < bytes.size();
  return out;
}

}  // namespace optifab
