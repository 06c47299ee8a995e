#include <gtest/gtest.h>

#include <thread>

#include "scholarmap/errors.hpp"
#include "scholarmap/mapstate.hpp"
#include "scholarmap/service.hpp"
#include "test_support.hpp"

namespace sm = scholarmap;
namespace smt = scholarmap::testing;

namespace {

const sm::Dataset& fixture() {
  static const sm::Dataset ds = sm::load_dataset(smt::fixture_csv());
  return ds;
}

}  // namespace

TEST(MapParams, DefaultsAndBounds) {
  EXPECT_EQ(sm::default_params(10), (sm::MapParams{sm::PublicationSet::MostCited, 1, 5, 42}));
  EXPECT_EQ(sm::default_params(3).k, 3);
  EXPECT_EQ(sm::max_clusters(83), 10);
  EXPECT_EQ(sm::max_clusters(4), 4);

  sm::MapParams p = sm::default_params(10);
  EXPECT_NO_THROW(sm::validate_params(p, 10));
  p.k = 0;
  EXPECT_THROW(sm::validate_params(p, 10), sm::InvalidKError);
  p.k = 11;
  EXPECT_THROW(sm::validate_params(p, 20), sm::InvalidKError);
  p.k = 5;
  EXPECT_THROW(sm::validate_params(p, 4), sm::InvalidKError);
  p.emphasis = 11;
  try {
    sm::validate_params(p, 10);
    FAIL();
  } catch (const sm::InvalidParamError& e) {
    EXPECT_EQ(e.code(), "invalid_emphasis");
  }
}

TEST(MapState, FixtureDefaultsCardinality) {
  const auto state = sm::build_map_state(fixture(), sm::default_params(fixture().size()));
  EXPECT_EQ(state.coords().size(), 10u);
  EXPECT_EQ(state.labels().size(), 10u);
  EXPECT_EQ(state.summaries.size(), 10u);
  EXPECT_EQ(state.ellipses.size(), 5u);
  EXPECT_EQ(state.component_colors.size(), 5u);
  for (std::size_t i = 0; i < state.size(); ++i) {
    EXPECT_EQ(state.summaries[i].id, state.coords().researcher_ids[i]);
    EXPECT_EQ(state.summaries[i].id, fixture().researchers[i].id);
  }
  const auto& ada = state.summaries[0];
  EXPECT_EQ(ada.name, "Ada Chandra");
  EXPECT_EQ(ada.affiliation, "Georgia Institute of Technology");
  EXPECT_FALSE(ada.keywords.empty());
}

TEST(MapState, DeterministicSerialization) {
  const auto p = sm::default_params(10);
  EXPECT_EQ(sm::map_document(sm::build_map_state(fixture(), p)), sm::map_document(sm::build_map_state(fixture(), p)));
}

TEST(MapState, KAndSeedOnlyAffectClustering) {
  auto p = sm::default_params(10);
  p.k = 3;
  const auto a = sm::build_map_state(fixture(), p);
  p.k = 4;
  p.seed = 7;
  const auto b = sm::build_map_state(fixture(), p);
  EXPECT_EQ(a.coords().points, b.coords().points);
  EXPECT_NE(a.ellipses.size(), b.ellipses.size());
  EXPECT_EQ(smt::points_block(sm::map_document(a)), smt::points_block(sm::map_document(b)));
}

TEST(MapState, EmphasisAndSetChangeTheEmbedding) {
  auto p = sm::default_params(10);
  const auto base = sm::build_map_state(fixture(), p);
  p.pub_set = sm::PublicationSet::MostRecent;
  EXPECT_NE(sm::build_map_state(fixture(), p).coords().points, base.coords().points);
  p = sm::default_params(10);
  p.emphasis = 5;
  EXPECT_NE(sm::build_map_state(fixture(), p).coords().points, base.coords().points);
}

TEST(MapState, PropagatesErrors) {
  const auto one = sm::parse_dataset(
      "name,scholar_url,most_cited_publications,most_recent_publications,keywords,citation_count,affiliation,"
      "photo_url\nSolo,u,\"[{\"\"title\"\": \"\"graphs\"\"}]\",[],k,1,U,\n");
  EXPECT_THROW(sm::build_map_state(one, sm::default_params(1)), sm::DegenerateDataError);

  const auto blank = sm::parse_dataset(
      "name,scholar_url,most_cited_publications,most_recent_publications,keywords,citation_count,affiliation,"
      "photo_url\nA,u,[],[],,1,U,\nB,u,[],[],,1,U,\n");
  EXPECT_THROW(sm::build_map_state(blank, sm::default_params(2)), sm::EmptyCorpusError);

  auto p = sm::default_params(10);
  p.k = 11;
  EXPECT_THROW(sm::build_map_state(fixture(), p), sm::InvalidKError);
}

TEST(MapState, QueryMap) {
  const auto state = sm::build_map_state(fixture(), sm::default_params(10));
  const auto r = sm::query_map(state, "algorithms");
  EXPECT_EQ(r.matched_terms, std::vector<std::string>{"algorithm"});
  EXPECT_EQ(r.top.size(), 5u);
  EXPECT_EQ(r.scores.size(), 10u);
  EXPECT_EQ(r.top[0].id, "ben-okafor");
  EXPECT_THROW(sm::query_map(state, "the of and"), sm::EmptyQueryError);
}

TEST(MapState, NameSearch) {
  const auto state = sm::build_map_state(fixture(), sm::default_params(10));
  const auto hits = sm::find_by_name(state.summaries, "cha");
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].id, "ada-chandra");
  EXPECT_EQ(hits[1].id, "charlotte-reyes");
  EXPECT_EQ(sm::find_by_name(state.summaries, "CHA").size(), 2u);
  EXPECT_TRUE(sm::find_by_name(state.summaries, "  ").empty());
  EXPECT_TRUE(sm::find_by_name(state.summaries, "zzz").empty());
}

TEST(MapEngine, CacheCoherence) {
  sm::MapEngine engine(fixture());
  for (int k = 1; k <= 10; ++k) {
    auto p = sm::default_params(10);
    p.k = k;
    const auto cached = engine.map(p);
    EXPECT_EQ(cached, engine.map(p));
    EXPECT_EQ(sm::map_document(*cached), sm::map_document(sm::build_map_state(fixture(), p)));
  }
  const auto stats = engine.stats();
  EXPECT_EQ(stats.map_misses, 10u);
  EXPECT_EQ(stats.map_hits, 10u);
  EXPECT_EQ(stats.embedding_misses, 1u);
}

TEST(MapEngine, EvictsBeyondCapacity) {
  sm::MapEngine engine(fixture(), 2);
  auto p = sm::default_params(10);
  for (std::uint64_t s = 0; s < 3; ++s) {
    p.seed = s;
    engine.map(p);
  }
  p.seed = 0;
  engine.map(p);
  EXPECT_EQ(engine.stats().map_misses, 4u);
}

TEST(MapEngine, FailedBuildIsNotCached) {
  sm::MapEngine engine(fixture());
  auto p = sm::default_params(10);
  p.k = 0;
  EXPECT_THROW(engine.map(p), sm::InvalidKError);
  EXPECT_THROW(engine.map(p), sm::InvalidKError);
}

TEST(MapEngine, ConcurrentIdenticalRequestsShareOneBuild) {
  sm::MapEngine engine(sm::parse_dataset(smt::synthetic_csv(40, 3000, 4)));
  const auto p = sm::default_params(40);
  std::vector<std::shared_ptr<const sm::MapState>> results(8);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t) {
    threads.emplace_back([&, t] { results[t] = engine.map(p); });
  }
  for (auto& th : threads) th.join();
  for (const auto& r : results) EXPECT_EQ(r, results[0]);
  const auto stats = engine.stats();
  EXPECT_EQ(stats.map_misses, 1u);
  EXPECT_EQ(stats.embedding_misses, 1u);
}

TEST(MapEngine, ConcurrentDistinctRequestsAreConsistent) {
  sm::MapEngine engine(fixture());
  std::vector<std::string> docs(10);
  std::vector<std::thread> threads;
  for (int k = 1; k <= 10; ++k) {
    threads.emplace_back([&, k] {
      auto p = sm::default_params(10);
      p.k = k;
      docs[k - 1] = sm::map_document(*engine.map(p));
      engine.query("graph mining", p.pub_set, p.emphasis);
    });
  }
  for (auto& th : threads) th.join();
  for (int k = 1; k <= 10; ++k) {
    auto p = sm::default_params(10);
    p.k = k;
    EXPECT_EQ(docs[k - 1], sm::map_document(sm::build_map_state(fixture(), p)));
  }
}

TEST(MapEngine, Lookups) {
  sm::MapEngine engine(fixture());
  ASSERT_NE(engine.find("grace-liu"), nullptr);
  EXPECT_EQ(engine.find("grace-liu")->name, "Grace Liu");
  EXPECT_EQ(engine.find("Grace-Liu"), nullptr);
  EXPECT_EQ(engine.defaults(), sm::default_params(10));
  EXPECT_EQ(engine.summaries().size(), 10u);
}
