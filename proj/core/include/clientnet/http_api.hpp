#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "clientnet/service.hpp"

namespace clientnet {

struct HttpOptions {
  // Served at "/" when non-empty.
  std::filesystem::path static_dir;
  std::size_t max_limit = 1000;
};

// JSON API under /api/v1 plus GET /healthz. Requests run concurrently
// against the current snapshot; replace_service() swaps it atomically and
// in-flight requests finish on the one they started with.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<const ExplorerService> service, HttpOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  std::shared_ptr<const ExplorerService> service() const;
  void replace_service(std::shared_ptr<const ExplorerService> service);

  // Blocking. Returns false if the socket could not be bound.
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it, or -1.
  int bind_any_port(const std::string& host);
  // Blocking; serves on the socket from bind_any_port().
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace clientnet
