#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "hashlens/porter.hpp"
#include "hashlens/textprep.hpp"

using namespace hashlens;
using Tokens = std::vector<std::string>;

namespace {

NormalizationConfig config(bool stem, std::unordered_set<std::string> stopwords = {"your"}) {
  NormalizationConfig c;
  c.stopwords = std::move(stopwords);
  c.stem = stem;
  return c;
}

}  // namespace

TEST_CASE("normalize examples") {
  CHECK(normalize("Wash your hands! https://x.co @who", config(true)) == Tokens{"wash", "hand"});
  CHECK(normalize("", config(true)).empty());
  CHECK(normalize("#ToiletPaper shortage", config(true)) == Tokens{"toiletpap", "shortag"});
  CHECK(normalize("#ToiletPaper shortage", config(false)) == Tokens{"toiletpaper", "shortage"});
}

TEST_CASE("normalize splits on non-letters and drops short tokens") {
  CHECK(normalize("COVID-19: a day@home, 2nd wave", config(false)) == Tokens{"covid", "day", "nd", "wave"});
  CHECK(normalize("café naïve ÉCOLE", config(false)) == Tokens{"café", "naïve", "école"});
  CHECK(normalize("see http://a.b/c?d=e and ftp://x then @someone_else", config(false)) ==
        Tokens{"see", "and", "then"});
}

TEST_CASE("normalize output invariants over random text") {
  const std::unordered_set<std::string> stop = {"the", "and", "her", "is", "in", "your"};
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJ ,.!#@1_-";
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const auto len = std::uniform_int_distribution<int>(0, 60)(rng);
    for (int i = 0; i < len; ++i) text += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    if (trial % 7 == 0) text += " the hers agreed https://t.co/q and Hers";
    for (bool stem : {false, true}) {
      const auto tokens = normalize(text, config(stem, stop));
      for (const auto& t : tokens) {
        CAPTURE(text);
        CHECK(t.size() >= 2);
        CHECK_FALSE(stop.contains(t));
        for (char c : t) CHECK((c >= 'a' && c <= 'z'));
      }
      CHECK(normalize(text, config(stem, stop)) == tokens);
    }
    std::string joined;
    const auto unstemmed = normalize(text, config(false, stop));
    for (const auto& t : unstemmed) joined += t + " ";
    CHECK(normalize(joined, config(false, stop)) == unstemmed);
  }
}

TEST_CASE("stemmed output never contains stopwords produced by stemming") {
  CHECK(normalize("hers", config(true, {"her"})).empty());
}

TEST_CASE("split_hashtag components") {
  CHECK(split_hashtag("QuarantineLife") == Tokens{"quarantine", "life"});
  CHECK(split_hashtag("covid19") == Tokens{"covid"});
  CHECK(split_hashtag("StayTheFHome") == Tokens{"stay", "the", "f", "home"});
  CHECK(split_hashtag("COVIDUpdates") == Tokens{"covid", "updates"});
  CHECK(split_hashtag("stay_home") == Tokens{"stay", "home"});
  CHECK(split_hashtag("#SocialDistancing2020") == Tokens{"social", "distancing"});
  CHECK(split_hashtag("2020").empty());
}

TEST_CASE("filter_category_echo") {
  CategoryTaxonomy taxonomy;
  taxonomy.add("General COVID", {"covid19"});
  taxonomy.add("Panic Buying", {"PanicBuying"});
  SUBCASE("affix split of a hashtag removes its word component") {
    CHECK(filter_category_echo({"covid", "hoard"}, taxonomy, {}) == Tokens{"hoard"});
  }
  SUBCASE("exclusions remove named entities") {
    CHECK(filter_category_echo({"cuomo", "mask"}, taxonomy, {"cuomo"}) == Tokens{"mask"});
  }
  SUBCASE("camel-case components compare by stem") {
    CHECK(filter_category_echo({porter_stem("buying"), "panic", "food"}, taxonomy, {}) == Tokens{"food"});
    CHECK(filter_category_echo({"buying", "foods"}, taxonomy, {}) == Tokens{"foods"});
  }
  SUBCASE("no overlap is the identity") {
    CategoryTaxonomy other;
    other.add("Other", {"weather"});
    const Tokens tokens = {"wash", "hand", "soap"};
    CHECK(filter_category_echo(tokens, other, {}) == tokens);
  }
}
