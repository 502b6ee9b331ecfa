#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hashlens/corpus.hpp"
#include "hashlens/textprep.hpp"

namespace hashlens {

enum class SentimentLabel { StronglyPositive, Positive, Neutral, Negative, StronglyNegative };

inline constexpr std::array<SentimentLabel, 5> kAllLabels = {
    SentimentLabel::StronglyPositive, SentimentLabel::Positive, SentimentLabel::Neutral,
    SentimentLabel::Negative, SentimentLabel::StronglyNegative};

/// Labels reported in a distribution (neutral is excluded).
inline constexpr std::array<SentimentLabel, 4> kPolarLabels = {
    SentimentLabel::StronglyPositive, SentimentLabel::Positive, SentimentLabel::Negative,
    SentimentLabel::StronglyNegative};

std::string_view to_string(SentimentLabel label);
std::optional<SentimentLabel> parse_sentiment_label(std::string_view s);

struct SentimentThresholds {
  double strong = 0.5;
  double weak = 0.05;
};

using ValenceLexicon = std::unordered_map<std::string, double>;

/// Mean valence of the tokens found in `lexicon` (0 when none), bucketed
/// by the thresholds. Throws std::invalid_argument unless
/// 0 < weak < strong <= 1.
SentimentLabel score_lexicon(const std::vector<std::string>& tokens, const ValenceLexicon& lexicon,
                             const SentimentThresholds& thresholds = {});

/// CSV "token,valence"; a header row is allowed. Valences outside [-1, 1]
/// or unparseable rows are reported and skipped.
ValenceLexicon load_valence_lexicon(const std::filesystem::path& path,
                                    std::vector<Diagnostic>* diagnostics = nullptr);

struct ScoreLoad {
  std::map<std::string, SentimentLabel> labels;
  std::vector<Diagnostic> diagnostics;
};

/// JSONL of {"id": ..., "label": ...}. Unknown labels are skipped with a
/// diagnostic; a repeated id keeps the last label and warns.
ScoreLoad ingest_scores(const std::filesystem::path& path);

/// Source of per-tweet labels.
class SentimentScorer {
 public:
  virtual ~SentimentScorer() = default;
  /// nullopt when the scorer has no opinion about this tweet.
  virtual std::optional<SentimentLabel> score(const Tweet& tweet) const = 0;
};

class LexiconScorer final : public SentimentScorer {
 public:
  LexiconScorer(ValenceLexicon lexicon, NormalizationConfig tokenizer,
                SentimentThresholds thresholds = {});
  std::optional<SentimentLabel> score(const Tweet& tweet) const override;

 private:
  ValenceLexicon lexicon_;
  NormalizationConfig tokenizer_;
  SentimentThresholds thresholds_;
};

class IngestedScorer final : public SentimentScorer {
 public:
  explicit IngestedScorer(std::map<std::string, SentimentLabel> labels) : labels_(std::move(labels)) {}
  std::optional<SentimentLabel> score(const Tweet& tweet) const override;

 private:
  std::map<std::string, SentimentLabel> labels_;
};

std::map<std::string, SentimentLabel> score_corpus(const std::vector<Tweet>& corpus,
                                                   const SentimentScorer& scorer);

struct SentimentDistribution {
  std::string category;
  std::array<std::size_t, 5> counts{};  // indexed like kAllLabels
  std::array<double, 4> shares{};       // percentages, indexed like kPolarLabels
  bool insufficient_data = true;

  double share(SentimentLabel label) const;
};

/// Per category: the four non-neutral label counts over member tweets as
/// percentages of their sum. The last non-zero share takes the remainder,
/// so the shares add up to exactly 100 in kPolarLabels order. Categories
/// are reported in `category_order`, followed by any others by name.
std::vector<SentimentDistribution> category_distribution(
    const std::map<std::string, SentimentLabel>& labels, const Membership& membership,
    const std::vector<std::string>& category_order = {});

std::string sentiment_csv(const std::vector<SentimentDistribution>& dists);

}  // namespace hashlens
