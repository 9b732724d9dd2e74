#include "clientnet/http_api.hpp"

#include <charconv>
#include <mutex>
#include <optional>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "clientnet/error.hpp"

namespace clientnet {

namespace {

using nlohmann::json;

json company_json(const CompanySummary& c) {
  return {{"id", c.id},
          {"name", c.name},
          {"score", c.score},
          {"rank", c.rank},
          {"status", c.status},
          {"location", c.location},
          {"yearFounded", c.year_founded}};
}

json ranked_json(const RankedList& list) {
  json entries = json::array();
  for (const RankedItem& item : list.entries) {
    entries.push_back({{"id", item.id}, {"name", item.name}, {"score", item.score}, {"rank", item.rank}});
  }
  return {{"entries", std::move(entries)}};
}

json optional_text(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json edge_json(const EcosystemGraph& g, EdgeIndex e) {
  const Edge& edge = g.edge(e);
  const EdgeLabel& l = edge.label;
  auto opt = [](const auto& v) -> std::optional<std::string> {
    if (!v) return std::nullopt;
    return std::string(to_string(*v));
  };
  return {{"id", edge.id},
          {"source", g.id(edge.source)},
          {"target", g.id(edge.target)},
          {"category", std::string(to_string(l.category))},
          {"role", optional_text(opt(l.role))},
          {"tense", optional_text(opt(l.tense))},
          {"b2bType", optional_text(opt(l.b2b_type))},
          {"b2bState", optional_text(opt(l.b2b_state))},
          {"past", l.is_past()},
          {"cost", edge.cost},
          {"weight", edge.weight}};
}

json subgraph_json(const ExplorerService& svc, const Subgraph& sub) {
  const EcosystemGraph& g = svc.graph();
  json nodes = json::array();
  for (NodeIndex n : sub.nodes) {
    const Node& node = g.node(n);
    nodes.push_back({{"id", node.id},
                     {"kind", std::string(to_string(node.kind))},
                     {"name", node.name},
                     {"description", node.description},
                     {"attrs", node.attrs},
                     {"isRoot", n == g.root()},
                     {"score", svc.score(n)}});
  }
  json edges = json::array();
  for (EdgeIndex e : sub.edges) edges.push_back(edge_json(g, e));
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"pathsIncluded", sub.paths_included}};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownId:
    case ErrorCode::NodeNotFound:
      return 404;
    case ErrorCode::Disconnected:
      return 422;
    case ErrorCode::InvalidConfig:
    case ErrorCode::ParseError:
      return 400;
    default:
      return 500;
  }
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  send(res, status, {{"error", {{"code", code}, {"message", message}}}});
}

// Positive integer query parameter, clamped to `max`.
std::size_t count_param(const httplib::Request& req, const char* name, std::size_t fallback, std::size_t max) {
  if (!req.has_param(name)) return std::min(fallback, max);
  const std::string raw = req.get_param_value(name);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc() || ptr != raw.data() + raw.size() || value == 0) {
    throw Error(ErrorCode::InvalidConfig, std::string(name) + " must be a positive integer");
  }
  return std::min(value, max);
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
  HttpOptions options;
  mutable std::mutex mutex;
  std::shared_ptr<const ExplorerService> current;

  std::shared_ptr<const ExplorerService> snapshot() const {
    std::lock_guard lock(mutex);
    return current;
  }

  template <class Handler>
  auto guarded(Handler handler) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      const std::shared_ptr<const ExplorerService> svc = snapshot();
      try {
        handler(*svc, req, res);
      } catch (const Error& e) {
        send_error(res, status_for(e.code()), to_string(e.code()), e.what());
      } catch (const json::exception& e) {
        send_error(res, 400, "ParseError", e.what());
      }
    };
  }

  void install_routes() {
    const std::size_t max = options.max_limit;

    server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
      const auto svc = snapshot();
      send(res, 200, {{"status", "ok"}, {"nodes", svc->graph().node_count()}, {"edges", svc->graph().edge_count()}});
    });

    server.Get("/api/v1/companies", guarded([max](const ExplorerService& svc, const httplib::Request& req,
                                                  httplib::Response& res) {
      const std::string q = req.get_param_value("q");
      const std::size_t limit = count_param(req, "limit", svc.options().default_limit, max);
      json out = json::array();
      for (const CompanySummary& c : svc.search_companies(q, limit)) out.push_back(company_json(c));
      send(res, 200, out);
    }));

    server.Get(R"(/api/v1/companies/([^/]+))",
               guarded([](const ExplorerService& svc, const httplib::Request& req, httplib::Response& res) {
                 send(res, 200, company_json(svc.company(req.matches[1].str())));
               }));

    server.Post("/api/v1/rankings",
                guarded([](const ExplorerService& svc, const httplib::Request& req, httplib::Response& res) {
                  const json body = json::parse(req.body);
                  const std::vector<std::string> ids = body.at("ids").get<std::vector<std::string>>();
                  send(res, 200, ranked_json(svc.rank_list(ids)));
                }));

    server.Get(R"(/api/v1/companies/([^/]+)/whitespace)",
               guarded([max](const ExplorerService& svc, const httplib::Request& req, httplib::Response& res) {
                 const std::size_t limit = count_param(req, "limit", svc.options().default_limit, max);
                 send(res, 200, ranked_json(svc.whitespace_connections(req.matches[1].str(), limit)));
               }));

    server.Get(R"(/api/v1/companies/([^/]+)/subgraph)",
               guarded([max](const ExplorerService& svc, const httplib::Request& req, httplib::Response& res) {
                 const std::size_t paths = count_param(req, "maxPaths", svc.options().default_max_paths, max);
                 send(res, 200, subgraph_json(svc, svc.subgraph_to_root(req.matches[1].str(), paths)));
               }));

    server.Get(R"(/api/v1/nodes/([^/]+)/neighbors)",
               guarded([max](const ExplorerService& svc, const httplib::Request& req, httplib::Response& res) {
                 const std::size_t limit = count_param(req, "limit", svc.options().default_limit, max);
                 send(res, 200, subgraph_json(svc, svc.expand_node(req.matches[1].str(), limit)));
               }));

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string message = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        message = e.what();
      } catch (...) {
      }
      send_error(res, 500, "Internal", message);
    });

    if (!options.static_dir.empty()) server.set_mount_point("/", options.static_dir.string());
  }
};

HttpServer::HttpServer(std::shared_ptr<const ExplorerService> service, HttpOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (!service) throw Error(ErrorCode::InvalidConfig, "no service snapshot");
  impl_->options = std::move(options);
  impl_->current = std::move(service);
  impl_->install_routes();
}

HttpServer::~HttpServer() { stop(); }

std::shared_ptr<const ExplorerService> HttpServer::service() const { return impl_->snapshot(); }

void HttpServer::replace_service(std::shared_ptr<const ExplorerService> service) {
  if (!service) throw Error(ErrorCode::InvalidConfig, "no service snapshot");
  std::lock_guard lock(impl_->mutex);
  impl_->current.swap(service);
}

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace clientnet
