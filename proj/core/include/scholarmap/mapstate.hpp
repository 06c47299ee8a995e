#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scholarmap/clustering.hpp"
#include "scholarmap/embedding.hpp"
#include "scholarmap/ingest.hpp"
#include "scholarmap/projection.hpp"
#include "scholarmap/textproc.hpp"

namespace scholarmap {

inline constexpr int kDefaultEmphasis = 1;
inline constexpr int kDefaultClusters = 5;
inline constexpr int kMaxClusters = 10;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultCacheCapacity = 16;

struct MapParams {
  PublicationSet pub_set = PublicationSet::MostCited;
  int emphasis = kDefaultEmphasis;
  int k = kDefaultClusters;
  std::uint64_t seed = kDefaultSeed;

  bool operator==(const MapParams&) const = default;
};

/// Defaults for a dataset of n researchers: k = min(5, n).
MapParams default_params(std::size_t n);

/// Largest slider value for n researchers: min(10, n).
int max_clusters(std::size_t n) noexcept;

/// Throws InvalidParamError ("invalid_emphasis") or InvalidKError ("invalid_k").
void validate_params(const MapParams& params, std::size_t n);

/// Fields shown in the researcher detail panel.
struct ResearcherSummary {
  std::string id;
  std::string name;
  std::string affiliation;
  std::vector<std::string> keywords;
  std::uint64_t citation_count = 0;
  std::string scholar_url;
  std::string photo_url;

  bool operator==(const ResearcherSummary&) const = default;
};

ResearcherSummary summarize(const Researcher& researcher);

/// Everything that depends only on (publication set, emphasis): documents,
/// TFIDF, PCA and the 2D coordinates.
struct EmbeddingStage {
  PublicationSet pub_set = PublicationSet::MostCited;
  int emphasis = kDefaultEmphasis;
  std::vector<Document> documents;
  TfidfModel tfidf;
  PcaModel pca;
  Coords2D coords;
  std::vector<std::string> warnings;
};

/// Propagates EmptyCorpusError / DegenerateDataError.
std::shared_ptr<const EmbeddingStage> build_embedding_stage(const Dataset& dataset, PublicationSet set,
                                                            int emphasis);

/// Materialized map for one parameter combination.
struct MapState {
  MapParams params;
  std::string source_digest;
  std::shared_ptr<const EmbeddingStage> embedding;
  GmmModel gmm;
  std::vector<int> component_colors;  // palette index per mixture component
  std::vector<Ellipse> ellipses;      // one per component, component order
  std::vector<ResearcherSummary> summaries;

  const Coords2D& coords() const noexcept { return embedding->coords; }
  const TfidfModel& tfidf() const noexcept { return embedding->tfidf; }
  const std::vector<int>& labels() const noexcept { return gmm.labels; }
  int color_of(std::size_t researcher) const { return component_colors[gmm.labels[researcher]]; }
  std::size_t size() const noexcept { return summaries.size(); }
};

/// documents -> vocabulary -> TFIDF -> PCA -> GMM -> colors + ellipses.
/// Throws InvalidParamError, EmptyCorpusError, DegenerateDataError.
MapState build_map_state(const Dataset& dataset, const MapParams& params);

/// Same, reusing an already built embedding stage for params.pub_set/emphasis.
MapState build_map_state(const Dataset& dataset, std::shared_ptr<const EmbeddingStage> embedding,
                         const MapParams& params);

struct QueryResult {
  std::vector<std::string> matched_terms;
  std::vector<std::string> dropped_terms;
  std::vector<ScoredResearcher> top;
  std::vector<ScoredResearcher> scores;  // every researcher, dataset order
};

/// Topic query. Throws EmptyQueryError when no term survives normalization
/// and matches the vocabulary.
QueryResult query_embedding(const EmbeddingStage& stage, std::string_view text,
                            std::size_t top_k = kDefaultTopK);
QueryResult query_map(const MapState& state, std::string_view text, std::size_t top_k = kDefaultTopK);

/// Researchers whose name contains `fragment`, ASCII case-insensitive, in
/// dataset order. A blank fragment matches nobody.
std::vector<ResearcherSummary> find_by_name(std::span<const ResearcherSummary> summaries,
                                            std::string_view fragment);

struct CacheStats {
  std::size_t embedding_hits = 0;
  std::size_t embedding_misses = 0;
  std::size_t map_hits = 0;
  std::size_t map_misses = 0;
};

/// Owns a dataset and caches embedding stages and map states (bounded LRU,
/// keyed by dataset digest and parameters). Thread-safe; concurrent
/// requests for the same uncached key share a single build.
class MapEngine {
 public:
  explicit MapEngine(Dataset dataset, std::size_t cache_capacity = kDefaultCacheCapacity);
  ~MapEngine();
  MapEngine(const MapEngine&) = delete;
  MapEngine& operator=(const MapEngine&) = delete;

  const Dataset& dataset() const noexcept;
  const std::vector<ResearcherSummary>& summaries() const noexcept;
  const ResearcherSummary* find(std::string_view id) const noexcept;
  MapParams defaults() const;

  std::shared_ptr<const EmbeddingStage> embedding(PublicationSet set, int emphasis);
  std::shared_ptr<const MapState> map(const MapParams& params);
  QueryResult query(std::string_view text, PublicationSet set, int emphasis,
                    std::size_t top_k = kDefaultTopK);

  CacheStats stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scholarmap
