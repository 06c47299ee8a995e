#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scholarmap/mapstate.hpp"

namespace scholarmap {

/// Server settings. `port` must be in [1, 65535] (see validate_config).
struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path dataset_path;
  MapParams defaults;
  std::optional<std::filesystem::path> static_dir;
};

/// Throws InvalidParamError("invalid_port") for a port outside [1, 65535].
void validate_config(const ApiConfig& config);

// JSON bodies. Each matches a schema in core/schemas/.
std::string map_document(const MapState& state);
std::string query_document(const QueryResult& result);
std::string researcher_document(const ResearcherSummary& summary);
std::string researchers_document(std::span<const ResearcherSummary> summaries);
std::string search_document(std::string_view query, std::span<const ResearcherSummary> matches);
std::string error_document(std::string_view code, std::string_view message);

using QueryParams = std::map<std::string, std::string, std::less<>>;

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// Transport-independent endpoint logic; the HTTP server and the static
/// exporter both go through it. Never mutates the dataset.
class ApiHandler {
 public:
  explicit ApiHandler(std::shared_ptr<MapEngine> engine);
  ApiHandler(std::shared_ptr<MapEngine> engine, MapParams defaults);

  /// GET /api/map?pubset=&emphasis=&k=&seed=
  ApiResponse map(const QueryParams& params) const;
  /// GET /api/query?q=&pubset=&emphasis=&top=
  ApiResponse query(const QueryParams& params) const;
  /// GET /api/researcher/{id}; ids are exact, case-sensitive.
  ApiResponse researcher(std::string_view id) const;
  /// GET /api/search?name=  (case-insensitive substring over names)
  ApiResponse search(const QueryParams& params) const;

  /// Absent or empty values fall back to the defaults. Throws InvalidParamError.
  MapParams parse_map_params(const QueryParams& params) const;

  const MapParams& defaults() const noexcept { return defaults_; }
  MapEngine& engine() const noexcept { return *engine_; }

 private:
  std::shared_ptr<MapEngine> engine_;
  MapParams defaults_;
};

struct ExportResult {
  std::vector<std::filesystem::path> files;  // in write order
  std::size_t indexed_queries = 0;
};

/// Writes map.json, researchers.json, queries.json (one query document per
/// distinct researcher keyword) and researcher/<id>.json under `out_dir`.
/// Bodies are byte-identical to the corresponding API responses.
/// Throws IoError naming the offending path.
ExportResult export_static(MapEngine& engine, const MapParams& params, const std::filesystem::path& out_dir);

/// Blocking HTTP/1.1 front end for an ApiHandler. Permissive CORS.
class HttpServer {
 public:
  HttpServer(std::shared_ptr<MapEngine> engine, ApiConfig config);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds config.host:config.port (port 0 picks a free port) and returns
  /// the bound port. Throws IoError on failure.
  int bind();
  /// Serves until stop(); call after bind().
  void serve();
  void stop();
  /// Blocks until the server is accepting connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scholarmap
