#pragma once

// Line-delimited JSON over TCP on the loopback interface. One thread per
// connection; sessions may be shared between connections.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <string>
#include <thread>

#include "seqalg/session.hpp"

namespace seqalg {

class SessionServer {
 public:
  explicit SessionServer(SessionManager& sessions) : sessions_(sessions) {}
  ~SessionServer() { stop(); }
  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  /// Binds 127.0.0.1:port (0 picks a free port) and returns the bound port.
  int listen(int port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) fail("socket");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) fail("bind");
    if (::listen(fd_, 16) < 0) fail("listen");
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    return ntohs(addr.sin_port);
  }

  /// Accepts connections until stop().
  void serve() {
    while (!stopping_) {
      int c = ::accept(fd_, nullptr, nullptr);
      if (c < 0) {
        if (stopping_) break;
        if (errno == EINTR) continue;
        fail("accept");
      }
      std::thread([this, c] { connection(c); }).detach();
    }
  }

  void stop() {
    if (stopping_.exchange(true) || fd_ < 0) return;
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
  }

 private:
  [[noreturn]] static void fail(const char* what) {
    throw Error(ErrorCode::violation, std::string(what) + ": " + std::strerror(errno));
  }

  void connection(int c) {
    std::string buf;
    char chunk[4096];
    for (;;) {
      const ssize_t n = ::recv(c, chunk, sizeof chunk, 0);
      if (n <= 0) break;
      buf.append(chunk, static_cast<std::size_t>(n));
      for (std::size_t nl; (nl = buf.find('\n')) != std::string::npos;) {
        std::string line = buf.substr(0, nl);
        buf.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string reply = sessions_.handle_line(line) + "\n";
        if (!send_all(c, reply)) {
          ::close(c);
          return;
        }
      }
    }
    ::close(c);
  }

  static bool send_all(int c, const std::string& s) {
    for (std::size_t off = 0; off < s.size();) {
      const ssize_t n = ::send(c, s.data() + off, s.size() - off, MSG_NOSIGNAL);
      if (n <= 0) return false;
      off += static_cast<std::size_t>(n);
    }
    return true;
  }

  SessionManager& sessions_;
  int fd_ = -1;
  std::atomic<bool> stopping_{false};
};

}  // namespace seqalg
