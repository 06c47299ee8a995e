#include "scholarmap/service.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "json.hpp"
#include "scholarmap/errors.hpp"
#include "text_util.hpp"

namespace scholarmap {
namespace {

using ojson = nlohmann::ordered_json;

ojson params_json(const MapParams& p) {
  ojson out;
  out["pubset"] = std::string(to_string(p.pub_set));
  out["emphasis"] = p.emphasis;
  out["k"] = p.k;
  out["seed"] = p.seed;
  return out;
}

ojson map_json(const MapState& state) {
  ojson doc;
  doc["params"] = params_json(state.params);

  // Points depend only on (pubset, emphasis); cluster membership lives in a
  // parallel array so the points block stays stable across k and seed.
  ojson points = ojson::array();
  ojson assignments = ojson::array();
  const auto& coords = state.coords();
  for (std::size_t i = 0; i < state.size(); ++i) {
    ojson p;
    p["id"] = state.summaries[i].id;
    p["name"] = state.summaries[i].name;
    p["x"] = coords.points[i].x;
    p["y"] = coords.points[i].y;
    points.push_back(std::move(p));

    ojson a;
    a["id"] = state.summaries[i].id;
    a["cluster"] = state.labels()[i];
    a["color"] = state.color_of(i);
    assignments.push_back(std::move(a));
  }
  doc["points"] = std::move(points);
  doc["assignments"] = std::move(assignments);

  ojson ellipses = ojson::array();
  for (std::size_t c = 0; c < state.ellipses.size(); ++c) {
    const auto& e = state.ellipses[c];
    ojson item;
    item["cx"] = e.center.x;
    item["cy"] = e.center.y;
    item["rx"] = e.half_axes[0];
    item["ry"] = e.half_axes[1];
    item["rotation"] = e.rotation;
    item["color"] = state.component_colors[c];
    ellipses.push_back(std::move(item));
  }
  doc["ellipses"] = std::move(ellipses);

  const auto& ev = state.embedding->pca.explained_variance;
  doc["explained_variance"] = ojson::array({ev[0], ev[1]});
  return doc;
}

ojson query_json(const QueryResult& result) {
  ojson doc;
  doc["matched_terms"] = result.matched_terms;
  doc["dropped_terms"] = result.dropped_terms;
  ojson top = ojson::array();
  for (const auto& t : result.top) top.push_back(ojson{{"id", t.id}, {"score", t.score}});
  doc["top"] = std::move(top);
  ojson scores = ojson::object();
  for (const auto& s : result.scores) scores[s.id] = s.score;
  doc["scores"] = std::move(scores);
  return doc;
}

ojson researcher_json(const ResearcherSummary& s) {
  ojson doc;
  doc["id"] = s.id;
  doc["name"] = s.name;
  doc["affiliation"] = s.affiliation;
  doc["keywords"] = s.keywords;
  doc["citation_count"] = s.citation_count;
  doc["scholar_url"] = s.scholar_url;
  doc["photo_url"] = s.photo_url;
  return doc;
}

ApiResponse error_response(int status, std::string_view code, std::string_view message) {
  return {status, error_document(code, message)};
}

template <class F>
ApiResponse guarded(F&& f) {
  try {
    return f();
  } catch (const EmptyQueryError& e) {
    return error_response(400, "empty_query", e.what());
  } catch (const InvalidParamError& e) {
    return error_response(400, e.code(), e.what());
  } catch (const EmptyCorpusError& e) {
    return error_response(422, "empty_corpus", e.what());
  } catch (const DegenerateDataError& e) {
    return error_response(422, "degenerate_data", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

std::optional<std::string_view> param(const QueryParams& params, std::string_view name) {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  auto value = detail::trim(it->second);
  if (value.empty()) return std::nullopt;
  return value;
}

template <class Int>
Int parse_int(std::string_view text, const char* code, const char* name) {
  Int value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw InvalidParamError(code, std::string(name) + " must be an integer, got '" + std::string(text) + "'");
  }
  return value;
}

PublicationSet parse_pubset(const QueryParams& params, PublicationSet fallback) {
  auto text = param(params, "pubset");
  if (!text) return fallback;
  auto set = parse_publication_set(*text);
  if (!set) {
    throw InvalidParamError("invalid_pubset",
                            "pubset must be most_cited or most_recent, got '" + std::string(*text) + "'");
  }
  return *set;
}

int parse_emphasis(const QueryParams& params, int fallback) {
  auto text = param(params, "emphasis");
  if (!text) return fallback;
  int value = parse_int<int>(*text, "invalid_emphasis", "emphasis");
  if (value < 0 || value > kMaxEmphasis) {
    throw InvalidParamError("invalid_emphasis", "emphasis must be in [0, 10], got " + std::to_string(value));
  }
  return value;
}

void write_file(const std::filesystem::path& path, std::string_view body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.close();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

void validate_config(const ApiConfig& config) {
  if (config.port < 1 || config.port > 65535) {
    throw InvalidParamError("invalid_port", "port must be in [1, 65535], got " + std::to_string(config.port));
  }
}

std::string map_document(const MapState& state) { return map_json(state).dump(); }

std::string query_document(const QueryResult& result) { return query_json(result).dump(); }

std::string researcher_document(const ResearcherSummary& summary) { return researcher_json(summary).dump(); }

std::string researchers_document(std::span<const ResearcherSummary> summaries) {
  ojson doc = ojson::array();
  for (const auto& s : summaries) doc.push_back(researcher_json(s));
  return doc.dump();
}

std::string search_document(std::string_view query, std::span<const ResearcherSummary> matches) {
  ojson doc;
  doc["query"] = std::string(query);
  ojson list = ojson::array();
  for (const auto& m : matches) list.push_back(ojson{{"id", m.id}, {"name", m.name}});
  doc["matches"] = std::move(list);
  return doc.dump();
}

std::string error_document(std::string_view code, std::string_view message) {
  ojson doc;
  doc["error"] = ojson{{"code", std::string(code)}, {"message", std::string(message)}};
  return doc.dump();
}

ApiHandler::ApiHandler(std::shared_ptr<MapEngine> engine)
    : engine_(std::move(engine)), defaults_(engine_->defaults()) {}

ApiHandler::ApiHandler(std::shared_ptr<MapEngine> engine, MapParams defaults)
    : engine_(std::move(engine)), defaults_(defaults) {}

MapParams ApiHandler::parse_map_params(const QueryParams& params) const {
  MapParams out = defaults_;
  out.pub_set = parse_pubset(params, defaults_.pub_set);
  out.emphasis = parse_emphasis(params, defaults_.emphasis);
  if (auto k = param(params, "k")) out.k = parse_int<int>(*k, "invalid_k", "k");
  if (auto seed = param(params, "seed")) out.seed = parse_int<std::uint64_t>(*seed, "invalid_seed", "seed");
  validate_params(out, engine_->dataset().size());
  return out;
}

ApiResponse ApiHandler::map(const QueryParams& params) const {
  return guarded([&] {
    const MapParams p = parse_map_params(params);
    return ApiResponse{200, map_document(*engine_->map(p))};
  });
}

ApiResponse ApiHandler::query(const QueryParams& params) const {
  return guarded([&] {
    auto text = param(params, "q");
    if (!text) return error_response(400, "empty_query", "query text is empty");
    const PublicationSet set = parse_pubset(params, defaults_.pub_set);
    const int emphasis = parse_emphasis(params, defaults_.emphasis);
    std::size_t top = kDefaultTopK;
    if (auto t = param(params, "top")) {
      const auto value = parse_int<long long>(*t, "invalid_top", "top");
      if (value < 1) throw InvalidParamError("invalid_top", "top must be at least 1");
      top = static_cast<std::size_t>(value);
    }
    return ApiResponse{200, query_document(engine_->query(*text, set, emphasis, top))};
  });
}

ApiResponse ApiHandler::researcher(std::string_view id) const {
  return guarded([&] {
    if (const auto* s = engine_->find(id)) return ApiResponse{200, researcher_document(*s)};
    return error_response(404, "unknown_id", "no researcher with id '" + std::string(id) + "'");
  });
}

ApiResponse ApiHandler::search(const QueryParams& params) const {
  return guarded([&] {
    const std::string name(param(params, "name").value_or(""));
    return ApiResponse{200, search_document(name, find_by_name(engine_->summaries(), name))};
  });
}

ExportResult export_static(MapEngine& engine, const MapParams& params, const std::filesystem::path& out_dir) {
  validate_params(params, engine.dataset().size());
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "researcher", ec);
  if (ec) throw IoError(out_dir, "cannot create output directory: " + ec.message());

  ExportResult result;
  auto emit = [&](const std::filesystem::path& path, std::string_view body) {
    write_file(path, body);
    result.files.push_back(path);
  };

  emit(out_dir / "map.json", map_document(*engine.map(params)));
  emit(out_dir / "researchers.json", researchers_document(engine.summaries()));

  // Keyword query index, built with the default top-k.
  std::set<std::string> keywords;
  for (const auto& s : engine.summaries()) {
    for (const auto& k : s.keywords) {
      std::string key(detail::trim(k));
      for (char& c : key) c = detail::ascii_lower(c);
      if (!key.empty()) keywords.insert(std::move(key));
    }
  }
  ojson index = ojson::object();
  for (const auto& keyword : keywords) {
    try {
      index[keyword] = query_json(engine.query(keyword, params.pub_set, params.emphasis, kDefaultTopK));
    } catch (const EmptyQueryError&) {
      // Keyword made only of stopwords or out-of-vocabulary terms.
    }
  }
  result.indexed_queries = index.size();
  emit(out_dir / "queries.json", index.dump());

  for (const auto& s : engine.summaries()) {
    emit(out_dir / "researcher" / (s.id + ".json"), researcher_document(s));
  }
  return result;
}

}  // namespace scholarmap
