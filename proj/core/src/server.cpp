#include <atomic>

#include "httplib.h"
#include "scholarmap/errors.hpp"
#include "scholarmap/service.hpp"

namespace scholarmap {
namespace {

QueryParams to_params(const httplib::Request& req) {
  QueryParams out;
  for (const auto& [key, value] : req.params) out.try_emplace(key, value);
  return out;
}

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body, "application/json");
}

}  // namespace

struct HttpServer::Impl {
  Impl(std::shared_ptr<MapEngine> engine, ApiConfig cfg)
      : config(std::move(cfg)), handler(std::move(engine), config.defaults) {}

  ApiConfig config;
  ApiHandler handler;
  httplib::Server server;
  std::atomic<bool> bound{false};
};

HttpServer::HttpServer(std::shared_ptr<MapEngine> engine, ApiConfig config)
    : impl_(std::make_unique<Impl>(std::move(engine), std::move(config))) {
  auto& svr = impl_->server;
  const ApiHandler& handler = impl_->handler;

  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  svr.Get("/api/map", [&handler](const httplib::Request& req, httplib::Response& res) {
    send(res, handler.map(to_params(req)));
  });
  svr.Get("/api/query", [&handler](const httplib::Request& req, httplib::Response& res) {
    send(res, handler.query(to_params(req)));
  });
  svr.Get("/api/search", [&handler](const httplib::Request& req, httplib::Response& res) {
    send(res, handler.search(to_params(req)));
  });
  svr.Get(R"(/api/researcher/([^/]+))", [&handler](const httplib::Request& req, httplib::Response& res) {
    send(res, handler.researcher(req.matches[1].str()));
  });
  svr.Get(R"(/api/.*)", [](const httplib::Request& req, httplib::Response& res) {
    send(res, {404, error_document("not_found", "no endpoint " + req.path)});
  });

  if (impl_->config.static_dir) {
    if (!svr.set_mount_point("/", impl_->config.static_dir->string())) {
      throw IoError(*impl_->config.static_dir, "static directory does not exist");
    }
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  auto& svr = impl_->server;
  const auto& cfg = impl_->config;
  int port = cfg.port;
  if (port == 0) {
    port = svr.bind_to_any_port(cfg.host);
    if (port < 0) throw IoError(cfg.host, "cannot bind to any port");
  } else if (!svr.bind_to_port(cfg.host, port)) {
    throw IoError(cfg.host + ":" + std::to_string(port), "cannot bind");
  }
  impl_->bound = true;
  return port;
}

void HttpServer::serve() {
  if (!impl_->bound) bind();
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace scholarmap
