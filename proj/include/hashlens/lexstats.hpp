#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hashlens/textprep.hpp"

namespace hashlens {

using Bigram = std::pair<std::string, std::string>;

struct GroupLexicon {
  std::string category;
  std::map<std::string, std::uint64_t> unigram_counts;
  std::map<Bigram, std::uint64_t> bigram_counts;
  std::uint64_t total_tokens = 0;
  std::uint64_t total_bigram_positions = 0;
};

/// Unigram and adjacent-pair counts; bigrams never span two documents.
GroupLexicon build_lexicon(const std::vector<TokenizedDoc>& docs, std::string category = {});

struct CommonWord {
  std::string token;
  std::size_t group_count = 0;
  std::uint64_t total_freq = 0;

  friend bool operator==(const CommonWord&, const CommonWord&) = default;
};

/// Tokens present in at least `min_groups` lexicons, ranked by group count,
/// then combined frequency, then token. Throws std::invalid_argument when
/// min_groups < 2.
std::vector<CommonWord> common_words(const std::vector<GroupLexicon>& lexicons,
                                     std::size_t min_groups, std::size_t n);

/// Lexicon tokens outside `common`, by count desc then token asc.
std::vector<std::pair<std::string, std::uint64_t>> distinctive_words(
    const GroupLexicon& lexicon, const std::set<std::string>& common, std::size_t n = 10);

/// 2x2 table over bigram positions:
///   cells[0] = O11  (w1 followed by w2)
///   cells[1] = O12  (w1 followed by something else)
///   cells[2] = O21  (something else followed by w2)
///   cells[3] = O22  (neither)
struct Contingency {
  std::array<std::uint64_t, 4> cells{};

  std::uint64_t total() const { return cells[0] + cells[1] + cells[2] + cells[3]; }
};

/// Pearson's chi-squared statistic of a 2x2 table from the closed form
/// N (O11 O22 - O12 O21)^2 / (row and column margin product). Zero when
/// any margin is zero.
double chi_squared(const Contingency& table);

struct CollocationStat {
  Bigram bigram;
  double chi2 = 0.0;
  Contingency observed;
};

/// Bigrams with count >= min_count ranked by chi-squared desc, then
/// bigram asc; top n. Empty when the lexicon has no bigram positions.
std::vector<CollocationStat> bigram_collocations(const GroupLexicon& lexicon,
                                                 std::uint64_t min_count = 5, std::size_t n = 10);

using TermCounts = std::map<std::string, std::uint64_t>;
using TfidfTable = std::map<std::pair<std::string, std::string>, double>;

/// tf-idf over group pseudo-documents: tf is the raw count in the group,
/// idf = ln(G / df). Only terms with tf > 0 get an entry.
/// `single_group_smoothing` switches to ln((G + 1) / df) when G == 1.
TfidfTable tfidf(const std::vector<std::pair<std::string, TermCounts>>& group_docs,
                 bool single_group_smoothing = false);

}  // namespace hashlens
