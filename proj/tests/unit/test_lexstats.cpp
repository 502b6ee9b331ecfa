#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "hashlens/lexstats.hpp"
#include "oracles.hpp"

using namespace hashlens;

namespace {

TokenizedDoc doc(std::vector<std::string> tokens) { return {"", std::move(tokens)}; }

}  // namespace

TEST_CASE("build_lexicon counts unigrams and per-document bigrams") {
  const auto lex = build_lexicon({doc({"a", "b", "a"})}, "g");
  CHECK(lex.unigram_counts == std::map<std::string, std::uint64_t>{{"a", 2}, {"b", 1}});
  CHECK(lex.bigram_counts == std::map<Bigram, std::uint64_t>{{{"a", "b"}, 1}, {{"b", "a"}, 1}});
  CHECK(lex.total_tokens == 3);
  CHECK(lex.total_bigram_positions == 2);

  const auto empty = build_lexicon({});
  CHECK(empty.unigram_counts.empty());
  CHECK(empty.total_tokens == 0);
  CHECK(empty.total_bigram_positions == 0);

  const auto two = build_lexicon({doc({"x", "y"}), doc({"z"}), doc({})});
  CHECK(two.bigram_counts.size() == 1);
  CHECK_FALSE(two.bigram_counts.contains({"y", "z"}));
  CHECK(two.total_bigram_positions == 1);
}

TEST_CASE("common_words ranking and group threshold") {
  const auto g1 = build_lexicon({doc({"alpha", "beta", "beta", "solo"})}, "g1");
  const auto g2 = build_lexicon({doc({"alpha", "beta", "gamma"})}, "g2");
  const auto g3 = build_lexicon({doc({"alpha", "gamma", "delta", "delta"})}, "g3");
  const auto common = common_words({g1, g2, g3}, 2, 10);
  REQUIRE(common.size() == 3);
  CHECK(common[0] == CommonWord{"alpha", 3, 3});
  CHECK(common[1] == CommonWord{"beta", 2, 3});
  CHECK(common[2] == CommonWord{"gamma", 2, 2});
  CHECK(common_words({g1, g2, g3}, 3, 10).size() == 1);
  CHECK_THROWS_AS(common_words({g1}, 1, 10), std::invalid_argument);

  const auto t1 = build_lexicon({doc({"zz", "yy"})});
  const auto t2 = build_lexicon({doc({"yy", "zz"})});
  const auto tied = common_words({t1, t2}, 2, 10);
  REQUIRE(tied.size() == 2);
  CHECK(tied[0].token == "yy");
}

TEST_CASE("distinctive_words excludes common words and ranks by count") {
  const auto lex = build_lexicon({doc({"x", "x", "x", "y", "y", "y", "z"})});
  CHECK(distinctive_words(lex, {}, 1) == std::vector<std::pair<std::string, std::uint64_t>>{{"x", 3}});
  CHECK(distinctive_words(lex, {"x", "y", "z"}, 10).empty());
  const auto rest = distinctive_words(lex, {"x"}, 10);
  REQUIRE(rest.size() == 2);
  CHECK(rest[0].first == "y");
}

TEST_CASE("common and distinctive words are disjoint") {
  std::mt19937_64 rng(5);
  std::vector<GroupLexicon> lexicons;
  for (int g = 0; g < 4; ++g) {
    std::vector<std::string> tokens;
    for (int i = 0; i < 80; ++i) tokens.push_back("t" + std::to_string(std::uniform_int_distribution<int>(0, 30)(rng)));
    lexicons.push_back(build_lexicon({doc(tokens)}));
  }
  std::set<std::string> common;
  for (const auto& c : common_words(lexicons, 2, 10)) common.insert(c.token);
  for (const auto& lex : lexicons) {
    for (const auto& [token, count] : distinctive_words(lex, common, 10)) CHECK_FALSE(common.contains(token));
  }
}

TEST_CASE("chi_squared fixed tables") {
  CHECK(std::abs(chi_squared({{2, 1, 1, 6}}) - 1210.0 / 441.0) < 1e-12);
  CHECK(chi_squared({{1, 1, 1, 1}}) == 0.0);
  CHECK(chi_squared({{3, 0, 0, 0}}) == 0.0);
  CHECK(chi_squared({{0, 0, 0, 0}}) == 0.0);
}

TEST_CASE("chi_squared closed form matches the expected-count oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    Contingency t;
    for (auto& c : t.cells) c = std::uniform_int_distribution<std::uint64_t>(0, 200)(rng);
    const double closed = chi_squared(t);
    const double oracle = testing::chi_squared_oracle(t);
    CAPTURE(t.cells[0]);
    CHECK(closed >= 0.0);
    CHECK(std::abs(closed - oracle) <= 1e-9 * std::max(1.0, oracle));
  }
}

TEST_CASE("bigram_collocations builds contingency tables over bigram positions") {
  // "toilet paper" appears 3 times among 9 positions.
  const auto lex = build_lexicon({doc({"toilet", "paper", "run", "toilet", "paper", "shop", "toilet", "paper"}),
                                  doc({"run", "shop", "run"})});
  const auto stats = bigram_collocations(lex, 3, 10);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].bigram == Bigram{"toilet", "paper"});
  CHECK(stats[0].observed.cells == std::array<std::uint64_t, 4>{3, 0, 0, 6});
  CHECK(stats[0].observed.total() == lex.total_bigram_positions);
  CHECK(std::abs(stats[0].chi2 - 9.0) < 1e-12);

  const auto all = bigram_collocations(lex, 1, 100);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK((all[i - 1].chi2 > all[i].chi2 || (all[i - 1].chi2 == all[i].chi2 && all[i - 1].bigram < all[i].bigram)));
  }
  for (const auto& s : all) CHECK(s.observed.total() == lex.total_bigram_positions);
  CHECK(bigram_collocations(build_lexicon({doc({"solo"})}), 1, 10).empty());
}

TEST_CASE("tfidf values and annihilation") {
  const std::vector<std::pair<std::string, TermCounts>> groups = {
      {"g1", {{"only", 4}, {"shared", 2}}},
      {"g2", {{"shared", 1}, {"pair", 1}}},
      {"g3", {{"shared", 5}, {"pair", 2}}},
      {"empty", {}},
  };
  const auto table = tfidf(groups);
  CHECK(std::abs(table.at({"g1", "only"}) - 4.0 * std::log(4.0)) < 1e-12);
  CHECK(std::abs(table.at({"g2", "pair"}) - std::log(2.0)) < 1e-12);
  CHECK(table.at({"g1", "shared"}) > 0.0);

  const std::vector<std::pair<std::string, TermCounts>> three = {
      {"a", {{"only", 4}, {"all", 1}}}, {"b", {{"all", 2}}}, {"c", {{"all", 3}}}};
  const auto t3 = tfidf(three);
  CHECK(std::abs(t3.at({"a", "only"}) - 4.3944491546724391) < 1e-9);
  CHECK(t3.at({"a", "all"}) == 0.0);
  CHECK(t3.at({"c", "all"}) == 0.0);
  CHECK_FALSE(t3.contains({"b", "only"}));
}

TEST_CASE("tfidf is zero exactly when tf is zero or df equals G") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto G = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<std::pair<std::string, TermCounts>> groups;
    for (int g = 0; g < G; ++g) {
      TermCounts counts;
      for (int t = 0; t < 6; ++t) {
        const auto c = std::uniform_int_distribution<int>(0, 3)(rng);
        if (c > 0) counts["t" + std::to_string(t)] = static_cast<std::uint64_t>(c);
      }
      groups.emplace_back("g" + std::to_string(g), counts);
    }
    const auto table = tfidf(groups);
    for (int t = 0; t < 6; ++t) {
      const std::string term = "t" + std::to_string(t);
      int df = 0;
      for (const auto& [name, counts] : groups) df += counts.contains(term) ? 1 : 0;
      for (const auto& [name, counts] : groups) {
        const bool present = counts.contains(term);
        const auto it = table.find({name, term});
        if (!present) {
          CHECK(it == table.end());
        } else {
          REQUIRE(it != table.end());
          CHECK((it->second == 0.0) == (df == G));
        }
      }
    }
  }
}

TEST_CASE("single-group smoothing keeps terms when there is one group") {
  const std::vector<std::pair<std::string, TermCounts>> one = {{"g", {{"a", 3}}}};
  CHECK(tfidf(one).at({"g", "a"}) == 0.0);
  CHECK(std::abs(tfidf(one, true).at({"g", "a"}) - 3.0 * std::log(2.0)) < 1e-12);
}
