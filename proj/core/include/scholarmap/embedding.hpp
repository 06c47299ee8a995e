#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scholarmap/textproc.hpp"

namespace scholarmap {

inline constexpr std::size_t kDefaultTopK = 5;

/// Sorted term list plus its inverse index.
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t size() const noexcept { return terms.size(); }
  std::optional<std::uint32_t> find(const std::string& term) const;
};

struct SparseEntry {
  std::uint32_t term;
  double value;

  bool operator==(const SparseEntry&) const = default;
};

/// Entries sorted by strictly increasing term index.
using SparseVector = std::vector<SparseEntry>;

double dot(const SparseVector& a, const SparseVector& b) noexcept;
double norm(const SparseVector& v) noexcept;

/// Researcher-by-term TFIDF matrix, stored one sparse column per researcher.
struct TfidfModel {
  Vocabulary vocab;
  std::vector<std::size_t> doc_freq;        // per term
  std::vector<double> idf;                  // per term
  std::vector<SparseVector> columns;        // per researcher, L2-normalized unless empty
  std::vector<std::string> researcher_ids;  // column order
  std::vector<std::string> warnings;

  std::size_t rows() const noexcept { return vocab.size(); }
  std::size_t cols() const noexcept { return columns.size(); }
};

struct QueryVector {
  SparseVector weights;
  std::vector<std::string> matched_terms;  // distinct, first-occurrence order
  std::vector<std::string> dropped_terms;  // distinct, first-occurrence order

  bool empty() const noexcept { return matched_terms.empty(); }
};

struct ScoredResearcher {
  std::string id;
  double score;

  bool operator==(const ScoredResearcher&) const = default;
};

struct Ranking {
  std::vector<ScoredResearcher> top;  // descending score, ties by id
  std::vector<double> scores;         // aligned with TfidfModel::researcher_ids
};

/// Sorted union of all document tokens. Throws EmptyCorpusError if every
/// document is empty.
Vocabulary build_vocabulary(std::span<const Document> documents);

/// idf(t) = ln((1 + N) / (1 + df(t))) + 1; entry = count * idf; each
/// non-empty column is then L2-normalized.
TfidfModel compute_tfidf(std::span<const Document> documents, Vocabulary vocab);

/// Normalizes `text` with the document pipeline and weights it with the
/// corpus idf. Out-of-vocabulary terms are reported, never added.
QueryVector embed_query(std::string_view text, const TfidfModel& model);

/// q.v / (|q| |v|), or 0 when either norm is zero.
double cosine_similarity(const SparseVector& q, const SparseVector& v) noexcept;
inline double cosine_similarity(const QueryVector& q, const SparseVector& v) noexcept {
  return cosine_similarity(q.weights, v);
}

/// Scores every researcher and returns the best min(k, N). Throws
/// EmptyQueryError if the query matched no vocabulary term and
/// InvalidParamError if k == 0.
Ranking rank_researchers(const TfidfModel& model, const QueryVector& query, std::size_t k);

}  // namespace scholarmap
