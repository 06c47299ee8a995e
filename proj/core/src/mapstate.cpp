#include "scholarmap/mapstate.hpp"

#include <algorithm>
#include <tuple>

#include "lru_cache.hpp"
#include "scholarmap/errors.hpp"
#include "text_util.hpp"

namespace scholarmap {

MapParams default_params(std::size_t n) {
  MapParams params;
  params.k = static_cast<int>(std::min<std::size_t>(kDefaultClusters, n));
  return params;
}

int max_clusters(std::size_t n) noexcept {
  return static_cast<int>(std::min<std::size_t>(kMaxClusters, n));
}

void validate_params(const MapParams& params, std::size_t n) {
  if (params.emphasis < 0 || params.emphasis > kMaxEmphasis) {
    throw InvalidParamError("invalid_emphasis",
                            "emphasis must be in [0, 10], got " + std::to_string(params.emphasis));
  }
  const int upper = max_clusters(n);
  if (params.k < 1 || params.k > upper) {
    throw InvalidKError("k must be in [1, " + std::to_string(upper) + "], got " +
                        std::to_string(params.k));
  }
}

ResearcherSummary summarize(const Researcher& r) {
  return {r.id, r.name, r.affiliation, r.keywords, r.citation_count, r.scholar_url, r.photo_url};
}

std::shared_ptr<const EmbeddingStage> build_embedding_stage(const Dataset& dataset, PublicationSet set,
                                                            int emphasis) {
  if (dataset.size() < 2) {
    throw DegenerateDataError("a map needs at least 2 researchers, got " +
                              std::to_string(dataset.size()));
  }
  auto stage = std::make_shared<EmbeddingStage>();
  stage->pub_set = set;
  stage->emphasis = emphasis;
  stage->documents.reserve(dataset.size());
  for (const auto& researcher : dataset.researchers) {
    stage->documents.push_back(build_document(researcher, set, emphasis));
  }
  stage->tfidf = compute_tfidf(stage->documents, build_vocabulary(stage->documents));
  stage->pca = fit_pca(stage->tfidf);
  stage->coords = project(stage->pca, stage->tfidf);
  stage->warnings = stage->tfidf.warnings;
  return stage;
}

MapState build_map_state(const Dataset& dataset, std::shared_ptr<const EmbeddingStage> embedding,
                         const MapParams& params) {
  validate_params(params, dataset.size());
  if (embedding->pub_set != params.pub_set || embedding->emphasis != params.emphasis) {
    throw Error("embedding stage does not match the map parameters");
  }
  MapState state;
  state.params = params;
  state.source_digest = dataset.source_digest;
  state.gmm = fit_gmm(embedding->coords.points, params.k, params.seed);
  state.component_colors = assign_colors(state.gmm);
  state.ellipses.reserve(static_cast<std::size_t>(params.k));
  for (int c = 0; c < params.k; ++c) {
    state.ellipses.push_back(ellipse_params(state.gmm.means[c], state.gmm.covariances[c]));
  }
  state.summaries.reserve(dataset.size());
  for (const auto& researcher : dataset.researchers) state.summaries.push_back(summarize(researcher));
  state.embedding = std::move(embedding);
  return state;
}

MapState build_map_state(const Dataset& dataset, const MapParams& params) {
  validate_params(params, dataset.size());
  return build_map_state(dataset, build_embedding_stage(dataset, params.pub_set, params.emphasis), params);
}

QueryResult query_embedding(const EmbeddingStage& stage, std::string_view text, std::size_t top_k) {
  const QueryVector q = embed_query(text, stage.tfidf);
  Ranking ranking = rank_researchers(stage.tfidf, q, top_k);

  QueryResult result;
  result.matched_terms = q.matched_terms;
  result.dropped_terms = q.dropped_terms;
  result.top = std::move(ranking.top);
  result.scores.reserve(ranking.scores.size());
  for (std::size_t i = 0; i < ranking.scores.size(); ++i) {
    result.scores.push_back({stage.tfidf.researcher_ids[i], ranking.scores[i]});
  }
  return result;
}

QueryResult query_map(const MapState& state, std::string_view text, std::size_t top_k) {
  return query_embedding(*state.embedding, text, top_k);
}

std::vector<ResearcherSummary> find_by_name(std::span<const ResearcherSummary> summaries,
                                            std::string_view fragment) {
  std::string needle(detail::trim(fragment));
  std::vector<ResearcherSummary> found;
  if (needle.empty()) return found;
  for (char& c : needle) c = detail::ascii_lower(c);
  for (const auto& s : summaries) {
    std::string name = s.name;
    for (char& c : name) c = detail::ascii_lower(c);
    if (name.find(needle) != std::string::npos) found.push_back(s);
  }
  return found;
}

struct MapEngine::Impl {
  using EmbeddingKey = std::tuple<std::string, int, int>;
  using MapKey = std::tuple<std::string, int, int, int, std::uint64_t>;

  Impl(Dataset data, std::size_t capacity)
      : dataset(std::move(data)), embeddings(capacity), maps(capacity) {
    summaries.reserve(dataset.size());
    for (const auto& r : dataset.researchers) summaries.push_back(summarize(r));
  }

  Dataset dataset;
  std::vector<ResearcherSummary> summaries;
  detail::LruCache<EmbeddingKey, EmbeddingStage> embeddings;
  detail::LruCache<MapKey, MapState> maps;
};

MapEngine::MapEngine(Dataset dataset, std::size_t cache_capacity)
    : impl_(std::make_unique<Impl>(std::move(dataset), cache_capacity)) {}

MapEngine::~MapEngine() = default;

const Dataset& MapEngine::dataset() const noexcept { return impl_->dataset; }

const std::vector<ResearcherSummary>& MapEngine::summaries() const noexcept { return impl_->summaries; }

const ResearcherSummary* MapEngine::find(std::string_view id) const noexcept {
  for (const auto& s : impl_->summaries) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

MapParams MapEngine::defaults() const { return default_params(impl_->dataset.size()); }

std::shared_ptr<const EmbeddingStage> MapEngine::embedding(PublicationSet set, int emphasis) {
  if (emphasis < 0 || emphasis > kMaxEmphasis) {
    throw InvalidParamError("invalid_emphasis", "emphasis must be in [0, 10], got " + std::to_string(emphasis));
  }
  Impl::EmbeddingKey key{impl_->dataset.source_digest, static_cast<int>(set), emphasis};
  return impl_->embeddings.get_or_build(
      key, [&] { return build_embedding_stage(impl_->dataset, set, emphasis); });
}

std::shared_ptr<const MapState> MapEngine::map(const MapParams& params) {
  validate_params(params, impl_->dataset.size());
  Impl::MapKey key{impl_->dataset.source_digest, static_cast<int>(params.pub_set), params.emphasis,
                   params.k, params.seed};
  return impl_->maps.get_or_build(key, [&] {
    return std::make_shared<const MapState>(
        build_map_state(impl_->dataset, embedding(params.pub_set, params.emphasis), params));
  });
}

QueryResult MapEngine::query(std::string_view text, PublicationSet set, int emphasis, std::size_t top_k) {
  return query_embedding(*embedding(set, emphasis), text, top_k);
}

CacheStats MapEngine::stats() const {
  const auto e = impl_->embeddings.counters();
  const auto m = impl_->maps.counters();
  return {e.hits, e.misses, m.hits, m.misses};
}

}  // namespace scholarmap
