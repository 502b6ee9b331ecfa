#pragma once

// Test-only generators: a planted-topic corpus for the topic model and a
// small tweet dataset (corpus, taxonomy, seeds, parses, scores) written to
// disk for CLI runs.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hashlens/textprep.hpp"
#include "hashlens/topics.hpp"

namespace hashlens::testing {

struct PlantedCorpus {
  std::vector<TokenizedDoc> docs;
  std::vector<std::string> planted;  // dominant topic name per doc
  SeedSpec seeds;
};

struct PlantedOptions {
  std::size_t num_docs = 2000;
  std::size_t doc_length = 15;
  std::size_t num_topics = 5;
  std::size_t vocab_size = 500;
  double word_concentration = 0.1;  // symmetric Dirichlet over words
  double dominant_weight = 0.85;    // remaining mass spread over the other topics
  std::size_t seeds_per_topic = 4;
  std::size_t unseeded = 2;
  std::uint64_t seed = 7;
};

/// Topics are named "topic0".."topicK-1", words "w000".. ; each topic is
/// seeded with its highest-probability planted words.
PlantedCorpus planted_corpus(const PlantedOptions& options = {});

struct TweetFixture {
  std::filesystem::path dir;
  std::filesystem::path corpus;     // JSONL
  std::filesystem::path taxonomy;   // 3 categories
  std::filesystem::path seeds;
  std::filesystem::path parses;
  std::filesystem::path scores;
  std::filesystem::path exclusions;
  std::size_t num_tweets = 0;
};

/// Writes a deterministic synthetic dataset of `num_tweets` tweets into `dir`.
TweetFixture write_tweet_fixture(const std::filesystem::path& dir, std::size_t num_tweets = 500,
                                 std::uint64_t seed = 11);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace hashlens::testing
