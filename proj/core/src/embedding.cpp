#include "scholarmap/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "scholarmap/errors.hpp"

namespace scholarmap {
namespace {

void normalize_in_place(SparseVector& v) {
  const double n = norm(v);
  if (n == 0.0) return;
  for (auto& e : v) e.value /= n;
}

}  // namespace

std::optional<std::uint32_t> Vocabulary::find(const std::string& term) const {
  auto it = index.find(term);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

double dot(const SparseVector& a, const SparseVector& b) noexcept {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->term < ib->term) {
      ++ia;
    } else if (ib->term < ia->term) {
      ++ib;
    } else {
      sum += ia->value * ib->value;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double norm(const SparseVector& v) noexcept {
  double sum = 0.0;
  for (const auto& e : v) sum += e.value * e.value;
  return std::sqrt(sum);
}

Vocabulary build_vocabulary(std::span<const Document> documents) {
  std::set<std::string> terms;
  for (const auto& doc : documents) {
    for (const auto& [token, count] : doc.token_counts) terms.insert(token);
  }
  if (terms.empty()) throw EmptyCorpusError("every document is empty; nothing to embed");

  Vocabulary vocab;
  vocab.terms.assign(terms.begin(), terms.end());
  vocab.index.reserve(vocab.terms.size());
  for (std::uint32_t i = 0; i < vocab.terms.size(); ++i) vocab.index.emplace(vocab.terms[i], i);
  return vocab;
}

TfidfModel compute_tfidf(std::span<const Document> documents, Vocabulary vocab) {
  TfidfModel model;
  model.vocab = std::move(vocab);
  const std::size_t n_terms = model.vocab.size();
  const auto n_docs = static_cast<double>(documents.size());

  model.doc_freq.assign(n_terms, 0);
  for (const auto& doc : documents) {
    for (const auto& [token, count] : doc.token_counts) {
      auto term = model.vocab.find(token);
      if (!term) throw DimensionMismatchError("token '" + token + "' is not in the vocabulary");
      ++model.doc_freq[*term];
    }
  }

  model.idf.resize(n_terms);
  for (std::size_t t = 0; t < n_terms; ++t) {
    model.idf[t] = std::log((1.0 + n_docs) / (1.0 + static_cast<double>(model.doc_freq[t]))) + 1.0;
  }

  model.columns.reserve(documents.size());
  model.researcher_ids.reserve(documents.size());
  for (const auto& doc : documents) {
    SparseVector column;
    column.reserve(doc.token_counts.size());
    // token_counts iterates in lexicographic order, which is vocabulary order.
    for (const auto& [token, count] : doc.token_counts) {
      const std::uint32_t term = *model.vocab.find(token);
      column.push_back({term, static_cast<double>(count) * model.idf[term]});
    }
    if (column.empty()) {
      model.warnings.push_back("researcher '" + doc.researcher_id +
                               "' has an empty document; embedding is the zero vector");
    }
    normalize_in_place(column);
    model.columns.push_back(std::move(column));
    model.researcher_ids.push_back(doc.researcher_id);
  }
  return model;
}

QueryVector embed_query(std::string_view text, const TfidfModel& model) {
  QueryVector q;
  std::map<std::uint32_t, double> counts;
  std::set<std::string> seen;
  for (auto& token : normalize(text)) {
    const bool first = seen.insert(token).second;
    if (auto term = model.vocab.find(token)) {
      counts[*term] += 1.0;
      if (first) q.matched_terms.push_back(std::move(token));
    } else if (first) {
      q.dropped_terms.push_back(std::move(token));
    }
  }
  q.weights.reserve(counts.size());
  for (const auto& [term, count] : counts) q.weights.push_back({term, count * model.idf[term]});
  normalize_in_place(q.weights);
  return q;
}

double cosine_similarity(const SparseVector& q, const SparseVector& v) noexcept {
  const double nq = norm(q);
  const double nv = norm(v);
  if (nq == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot(q, v) / (nq * nv), 0.0, 1.0);
}

Ranking rank_researchers(const TfidfModel& model, const QueryVector& query, std::size_t k) {
  if (k == 0) throw InvalidParamError("invalid_top", "top-k must be at least 1");
  if (query.empty()) {
    std::string message = "no query term matches the corpus vocabulary";
    if (!query.dropped_terms.empty()) {
      message += " (dropped:";
      for (const auto& t : query.dropped_terms) message += " " + t;
      message += ")";
    }
    throw EmptyQueryError(message);
  }

  Ranking ranking;
  ranking.scores.reserve(model.cols());
  for (const auto& column : model.columns) {
    ranking.scores.push_back(cosine_similarity(query.weights, column));
  }

  std::vector<std::size_t> order(model.cols());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto better = [&](std::size_t a, std::size_t b) {
    if (ranking.scores[a] != ranking.scores[b]) return ranking.scores[a] > ranking.scores[b];
    return model.researcher_ids[a] < model.researcher_ids[b];
  };
  const std::size_t keep = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    better);
  ranking.top.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    ranking.top.push_back({model.researcher_ids[order[i]], ranking.scores[order[i]]});
  }
  return ranking;
}

}  // namespace scholarmap
