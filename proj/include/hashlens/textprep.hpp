#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hashlens/corpus.hpp"

namespace hashlens {

struct NormalizationConfig {
  std::unordered_set<std::string> stopwords;
  bool stem = true;
  std::size_t min_length = 2;  // in code points
};

struct TokenizedDoc {
  std::string tweet_id;
  std::vector<std::string> tokens;
};

/// Tweet text -> tokens. Steps, in order: drop URLs and @-mentions and
/// turn '#' into a separator; casefold; split on non-letters; drop short
/// tokens; drop stopwords; Porter-stem. Short tokens and stopwords are
/// filtered again after stemming so no output token is either.
std::vector<std::string> normalize(std::string_view text, const NormalizationConfig& config);

TokenizedDoc tokenize_tweet(const Tweet& tweet, const NormalizationConfig& config);

/// Splits a hashtag spelling into its word components at case changes,
/// letter/digit boundaries and underscores, e.g. "QuarantineLife" ->
/// {"quarantine", "life"}, "covid19" -> {"covid"}. Components are
/// casefolded and only alphabetic components are kept.
std::vector<std::string> split_hashtag(std::string_view spelling);

/// Stemmed forms a token is compared against when removing category echoes.
std::unordered_set<std::string> echo_forms(const CategoryTaxonomy& taxonomy,
                                           const std::unordered_set<std::string>& exclusions);

/// Removes tokens that restate a taxonomy hashtag, a component of one, or
/// an exclusion entry (all compared by stemmed form).
std::vector<std::string> filter_category_echo(const std::vector<std::string>& tokens,
                                              const CategoryTaxonomy& taxonomy,
                                              const std::unordered_set<std::string>& exclusions);

std::vector<std::string> filter_category_echo(const std::vector<std::string>& tokens,
                                              const std::unordered_set<std::string>& forms);

}  // namespace hashlens
