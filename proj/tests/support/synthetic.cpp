#include "synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include <fmt/format.h>
#include "json.hpp"

#include "hashlens/corpus.hpp"
#include "hashlens/text_util.hpp"

namespace hashlens::testing {

namespace fs = std::filesystem;

namespace {

std::size_t draw(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  const double u = std::uniform_real_distribution<double>(0.0, cumulative.back())(rng);
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> running_sum(const std::vector<double>& weights) {
  std::vector<double> out(weights.size());
  std::partial_sum(weights.begin(), weights.end(), out.begin());
  return out;
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

}  // namespace

PlantedCorpus planted_corpus(const PlantedOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::gamma_distribution<double> gamma(o.word_concentration, 1.0);

  std::vector<std::string> words(o.vocab_size);
  for (std::size_t w = 0; w < o.vocab_size; ++w) words[w] = fmt::format("w{:03}", w);

  std::vector<std::vector<double>> phi(o.num_topics, std::vector<double>(o.vocab_size));
  for (auto& topic : phi) {
    for (auto& p : topic) p = gamma(rng);
    const double total = std::accumulate(topic.begin(), topic.end(), 0.0);
    for (auto& p : topic) p /= total;
  }

  PlantedCorpus out;
  out.seeds.unseeded = o.unseeded;
  for (std::size_t k = 0; k < o.num_topics; ++k) {
    std::vector<std::size_t> order(o.vocab_size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return phi[k][a] > phi[k][b]; });
    std::vector<std::string> seed_words;
    for (std::size_t i = 0; i < o.seeds_per_topic; ++i) seed_words.push_back(words[order[i]]);
    out.seeds.seeded.emplace_back(fmt::format("topic{}", k), std::move(seed_words));
  }

  std::vector<std::vector<double>> phi_cumulative;
  for (const auto& topic : phi) phi_cumulative.push_back(running_sum(topic));

  const double other = o.num_topics > 1 ? (1.0 - o.dominant_weight) / static_cast<double>(o.num_topics - 1) : 0.0;
  for (std::size_t d = 0; d < o.num_docs; ++d) {
    const std::size_t dominant = d % o.num_topics;
    std::vector<double> theta(o.num_topics, other);
    theta[dominant] = o.num_topics > 1 ? o.dominant_weight : 1.0;
    const auto theta_cumulative = running_sum(theta);

    TokenizedDoc doc;
    doc.tweet_id = fmt::format("d{:05}", d);
    for (std::size_t i = 0; i < o.doc_length; ++i) {
      const auto k = draw(rng, theta_cumulative);
      doc.tokens.push_back(words[draw(rng, phi_cumulative[k])]);
    }
    out.docs.push_back(std::move(doc));
    out.planted.push_back(fmt::format("topic{}", dominant));
  }
  return out;
}

namespace {

struct FixtureCategory {
  std::string name;
  std::vector<std::string> tags;   // spellings as they appear in tweets
  std::vector<std::string> words;
  std::vector<std::string> verbs;
  std::vector<std::string> nouns;
  std::vector<std::string> seeds;
};

const std::vector<FixtureCategory>& fixture_categories() {
  static const std::vector<FixtureCategory> all = {
      {"School Closures",
       {"SchoolClosures", "RemoteLearning", "homeschool"},
       {"teacher", "student", "class", "lesson", "online", "kids", "exam", "campus", "zoom", "homework"},
       {"teach", "learn", "close", "read"},
       {"student", "lesson", "book", "exam", "school"},
       {"teacher", "student", "lesson", "class"}},
      {"Panic Buying",
       {"PanicBuying", "ToiletPaper", "hoarding"},
       {"store", "shelf", "sanitizer", "grocery", "rice", "pasta", "empty", "aisle", "supply", "shopping"},
       {"buy", "stock", "hoard", "shop"},
       {"paper", "sanitizer", "rice", "food", "store"},
       {"store", "shelf", "sanitizer", "grocery"}},
      {"Lockdown",
       {"Lockdown", "StayHome", "QuarantineLife"},
       {"home", "family", "walk", "netflix", "cook", "garden", "inside", "couch", "bored", "puzzle"},
       {"stay", "cook", "watch", "work"},
       {"family", "movie", "dinner", "home", "garden"},
       {"home", "family", "netflix", "garden"}},
  };
  return all;
}

const std::vector<std::string> kCommonWords = {"covid", "people", "today", "time", "week", "news", "world", "cuomo"};
const std::vector<std::string> kMoodWords = {"love", "great", "happy", "hope", "sad", "worried", "fear",
                                             "terrible", "good", "bad", "crisis", "thankful"};
const std::vector<std::string> kCommonVerbs = {"get", "need"};
const std::vector<std::string> kPronouns = {"we", "i", "they"};
const std::vector<std::string> kSubjectNouns = {"people", "parents", "neighbors"};
const std::vector<std::string> kPrepositions = {"with", "for", "about"};

std::string node_row(std::size_t index, const std::string& form, const std::string& pos, std::size_t head,
                     const std::string& rel) {
  return fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", index, form, form, pos, head, rel);
}

}  // namespace

TweetFixture write_tweet_fixture(const fs::path& dir, std::size_t num_tweets, std::uint64_t seed) {
  fs::create_directories(dir);
  std::mt19937_64 rng(seed);
  const auto& cats = fixture_categories();

  TweetFixture f;
  f.dir = dir;
  f.corpus = dir / "tweets.jsonl";
  f.taxonomy = dir / "taxonomy.json";
  f.seeds = dir / "seeds.json";
  f.parses = dir / "parses.conllu";
  f.scores = dir / "scores.jsonl";
  f.exclusions = dir / "exclusions.txt";
  f.num_tweets = num_tweets;

  nlohmann::ordered_json taxonomy = nlohmann::ordered_json::object();
  nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
  for (const auto& c : cats) {
    taxonomy[c.name] = c.tags;
    seeds[c.name] = c.seeds;
  }
  write_file(f.taxonomy, taxonomy.dump(2) + "\n");
  write_file(f.seeds, seeds.dump(2) + "\n");
  write_file(f.exclusions, "# names kept out of word lists\ncuomo\n");

  const auto start = std::chrono::sys_days{std::chrono::year{2020} / 3 / 1};
  std::string corpus, parses, scores;
  for (std::size_t i = 0; i < num_tweets; ++i) {
    const std::string id = fmt::format("t{:04}", i);
    std::vector<std::size_t> mine;
    const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (r < 0.05) {
      // no category
    } else if (r < 0.15) {
      const auto a = std::uniform_int_distribution<std::size_t>(0, cats.size() - 1)(rng);
      mine = {a, (a + 1) % cats.size()};
    } else {
      mine = {std::uniform_int_distribution<std::size_t>(0, cats.size() - 1)(rng)};
    }

    std::vector<std::string> text_words;
    const auto length = std::uniform_int_distribution<std::size_t>(6, 11)(rng);
    for (std::size_t w = 0; w < length; ++w) {
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      if (!mine.empty() && u < 0.6) {
        text_words.push_back(pick(rng, cats[pick(rng, mine)].words));
      } else if (u < 0.85) {
        text_words.push_back(pick(rng, kCommonWords));
      } else {
        text_words.push_back(pick(rng, kMoodWords));
      }
    }
    std::string text;
    for (const auto& w : text_words) text += (text.empty() ? "" : " ") + w;
    for (auto c : mine) text += " #" + pick(rng, cats[c].tags);
    if (chance(rng, 0.2)) text += " https://t.co/x" + std::to_string(i);
    if (chance(rng, 0.2)) text = "@user" + std::to_string(i % 17) + " " + text;

    const auto offset = std::uniform_int_distribution<long>(0, 14L * 86400 - 1)(rng);
    const auto day = start + std::chrono::days{offset / 86400};
    const long secs = offset % 86400;
    const auto when = fmt::format("{}T{:02}:{:02}:{:02}Z", format_day(day), secs / 3600, secs / 60 % 60, secs % 60);
    corpus += nlohmann::ordered_json{{"id", id},
                                     {"created_at", when},
                                     {"text", text}}
                  .dump() +
              "\n";

    static const std::vector<std::string> labels = {"strongly_positive", "positive", "neutral", "negative",
                                                    "strongly_negative"};
    scores += nlohmann::ordered_json{{"id", id}, {"label", pick(rng, labels)}}.dump() + "\n";

    if (chance(rng, 0.8)) {
      const std::string verb = !mine.empty() && chance(rng, 0.7) ? pick(rng, cats[mine.front()].verbs)
                                                                 : pick(rng, kCommonVerbs);
      const auto& nouns = mine.empty() ? kSubjectNouns : cats[mine.front()].nouns;
      parses += "# tweet_id = " + id + "\n";
      if (chance(rng, 0.5)) {
        parses += node_row(1, pick(rng, kPronouns), "PRON", 2, "nsubj");
      } else {
        parses += node_row(1, pick(rng, kSubjectNouns), "NOUN", 2, "nsubj");
      }
      parses += node_row(2, verb, "VERB", 0, "root");
      parses += node_row(3, pick(rng, nouns), "NOUN", 2, "dobj");
      parses += node_row(4, pick(rng, kPrepositions), "ADP", 2, "prep");
      parses += node_row(5, pick(rng, nouns), "NOUN", 4, "pobj");
      parses += "\n";
    }
  }
  write_file(f.corpus, corpus);
  write_file(f.parses, parses);
  write_file(f.scores, scores);
  return f;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hashlens_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace hashlens::testing
