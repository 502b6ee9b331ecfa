#pragma once

// Seeded LDA trained with collapsed Gibbs sampling.
//
// Seed words get an informed topic-word prior: for topic t and word w
//
//   B(t, w)  = beta + mu * [w is a seed of t]
//   Bsum(t)  = V * beta + mu * |seeds(t) in vocabulary|
//
// and tokens that are seeds start out in (one of) their seeded topics.
// Each sweep resamples every token position from
//
//   P(z = t) ~ (n_dt + alpha) * (n_tw + B(t, w)) / (n_t + Bsum(t))
//
// with the position's own assignment removed from the counts.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hashlens/textprep.hpp"

namespace hashlens {

inline constexpr std::string_view kUnassigned = "unassigned";

struct SeedSpec {
  std::vector<std::pair<std::string, std::vector<std::string>>> seeded;  // category -> seed words
  std::size_t unseeded = 2;

  /// Throws std::invalid_argument on duplicate names or empty seed sets.
  void validate() const;
};

/// Seed file: JSON object {category: [seed words]}, order preserved.
/// `transform` (e.g. stemming) is applied to every seed word.
SeedSpec load_seed_spec(const std::filesystem::path& path, std::size_t unseeded,
                        const std::function<std::string(std::string_view)>& transform = {});

struct LdaParams {
  double alpha = 0.01;
  double beta = 0.0001;
  double mu = 0.5;
  std::size_t iterations = 2000;
  std::uint64_t rng_seed = 20200314;
};

/// Deterministic random source shared by training and classification.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n).
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

class SeededLdaModel;

enum class InvariantCheck { Endpoints, EverySweep };

struct TrainOptions {
#ifdef NDEBUG
  InvariantCheck check = InvariantCheck::Endpoints;
#else
  InvariantCheck check = InvariantCheck::EverySweep;
#endif
  /// Called after each sweep with the 1-based sweep number.
  std::function<void(const SeededLdaModel&, std::size_t)> on_sweep;
};

class SeededLdaModel {
 public:
  struct TopicCount {
    std::int32_t topic;
    std::int32_t count;
  };

  /// Builds a model in a given state. `docs` hold word ids into
  /// `vocabulary`; `assignments` has the same shape and gives each
  /// position's topic. Throws std::invalid_argument on inconsistent input.
  static SeededLdaModel from_state(std::vector<std::string> vocabulary, const SeedSpec& seeds,
                                   const LdaParams& params, std::vector<std::string> doc_ids,
                                   const std::vector<std::vector<std::int32_t>>& docs,
                                   const std::vector<std::vector<std::int32_t>>& assignments);

  std::size_t num_topics() const { return topic_labels_.size(); }
  std::size_t num_seeded() const { return num_seeded_; }
  std::size_t num_docs() const { return doc_ids_.size(); }
  std::size_t vocab_size() const { return vocabulary_.size(); }
  std::size_t total_tokens() const { return tokens_.size(); }

  const LdaParams& params() const { return params_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  std::optional<std::int32_t> word_id(std::string_view word) const;

  const std::string& doc_id(std::size_t d) const { return doc_ids_[d]; }
  std::size_t doc_length(std::size_t d) const { return doc_offsets_[d + 1] - doc_offsets_[d]; }
  std::span<const std::int32_t> doc_words(std::size_t d) const;
  std::span<const std::int32_t> doc_assignments(std::size_t d) const;

  /// Category name of a seeded topic, "" for unseeded topics.
  const std::string& topic_label(std::size_t t) const { return topic_labels_[t]; }
  const std::vector<std::int32_t>& topic_seeds(std::size_t t) const { return topic_seeds_[t]; }

  std::int64_t doc_topic_count(std::size_t d, std::size_t t) const { return doc_topic_[d * num_topics() + t]; }
  std::int64_t topic_word_count(std::size_t t, std::int32_t w) const;
  std::int64_t topic_total(std::size_t t) const { return topic_totals_[t]; }
  std::span<const TopicCount> word_topic_list(std::int32_t w) const { return word_topics_[static_cast<std::size_t>(w)]; }

  double prior(std::size_t t, std::int32_t w) const;
  double prior_sum(std::size_t t) const { return prior_sums_[t]; }

  /// Unnormalized conditional of position `pos` in doc `d` over all topics,
  /// with that position's current assignment removed from the counts.
  void conditional_weights(std::size_t d, std::size_t pos, std::span<double> out) const;

  /// (n_tw + B(t, w)) / (n_t + Bsum(t)) over the vocabulary.
  std::vector<double> topic_word_distribution(std::size_t t) const;

  /// Verifies count conservation against the assignments; throws
  /// std::logic_error describing the first violation.
  void check_invariants() const;

  /// Words missing from the vocabulary when the model was built.
  const std::vector<std::string>& missing_seeds() const { return missing_seeds_; }
  /// Ids of zero-length documents dropped before training.
  const std::vector<std::string>& dropped_docs() const { return dropped_docs_; }
  std::size_t sweeps_done() const { return sweeps_done_; }

 private:
  friend SeededLdaModel train(const std::vector<TokenizedDoc>&, const SeedSpec&, const LdaParams&,
                              const TrainOptions&);
  friend SeededLdaModel load_model(const std::filesystem::path&);

  SeededLdaModel() = default;

  void init_topics(const SeedSpec& seeds);
  void rebuild_counts();
  void add(std::size_t d, std::int32_t w, std::int32_t t, std::int32_t delta);
  void sweep(Rng& rng, std::vector<double>& scratch);

  LdaParams params_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::int32_t> word_ids_;
  std::vector<std::string> topic_labels_;
  std::size_t num_seeded_ = 0;
  std::vector<std::vector<std::int32_t>> topic_seeds_;        // per topic, sorted word ids
  std::vector<std::vector<std::int32_t>> seed_topics_of_word_;  // per word
  std::vector<double> prior_sums_;

  std::vector<std::string> doc_ids_;
  std::vector<std::size_t> doc_offsets_{0};
  std::vector<std::int32_t> tokens_;
  std::vector<std::int32_t> assignments_;

  std::vector<std::int64_t> doc_topic_;                // dense D x K
  std::vector<std::vector<TopicCount>> word_topics_;   // sparse, per word
  std::vector<std::int64_t> topic_totals_;

  std::vector<std::string> missing_seeds_;
  std::vector<std::string> dropped_docs_;
  std::size_t sweeps_done_ = 0;
};

/// Trains from scratch: builds the vocabulary in first-seen order, drops
/// empty documents, seeds the initial assignment and runs
/// `params.iterations` sweeps. Single-threaded and deterministic in
/// (docs, seeds, params). Throws DataError when no tokens remain.
SeededLdaModel train(const std::vector<TokenizedDoc>& docs, const SeedSpec& seeds,
                     const LdaParams& params = {}, const TrainOptions& options = {});

/// theta_t = (n_dt + alpha) / (N_d + K alpha)
std::vector<double> doc_topic_distribution(const SeededLdaModel& model, std::size_t d);

/// Category of the most probable topic; exact ties are broken uniformly at
/// random with `rng`. Unseeded winners give "unassigned".
std::string classify(const SeededLdaModel& model, std::size_t d, Rng& rng);

/// Same rule applied to an explicit distribution; `labels[t]` is the
/// category of topic t or "" when unseeded.
std::string classify_distribution(std::span<const double> theta, std::span<const std::string> labels,
                                  Rng& rng);

/// Versioned JSON dump (vocabulary, hyperparameters, seeds, documents and
/// assignments). Loading rebuilds and checks the count tables.
void save_model(const SeededLdaModel& model, const std::filesystem::path& path);
SeededLdaModel load_model(const std::filesystem::path& path);

}  // namespace hashlens
