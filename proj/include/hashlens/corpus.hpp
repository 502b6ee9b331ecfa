#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hashlens/text_util.hpp"

namespace hashlens {

using Timestamp = std::chrono::sys_seconds;
using Day = std::chrono::sys_days;

struct Tweet {
  std::string id;
  Timestamp timestamp{};
  std::string text;
  std::vector<std::string> hashtags;  // casefolded, deduplicated, first-seen order

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

enum class CorpusFormat { Jsonl, Csv };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

struct CorpusLoad {
  std::vector<Tweet> tweets;
  std::vector<Diagnostic> diagnostics;
};

/// Reads tweets in file order. Bad records and duplicate ids produce a
/// diagnostic and are skipped; a missing file throws IoError.
CorpusLoad load_corpus(const std::filesystem::path& path, CorpusFormat format);

/// Parses ISO-8601 date-times with an explicit zone ("Z", "+hh:mm", "+hhmm"),
/// e.g. "2020-03-14T10:00:00Z". Fractional seconds are truncated.
std::optional<Timestamp> parse_iso8601(std::string_view s);

std::string format_day(Day day);

/// Every maximal run of letters, digits and '_' that directly follows a
/// '#', casefolded, in order of appearance (duplicates kept).
std::vector<std::string> extract_hashtags(std::string_view text);

/// extract_hashtags with duplicates removed, keeping first occurrences.
std::vector<std::string> unique_hashtags(std::string_view text);

Tweet make_tweet(std::string id, Timestamp ts, std::string text);

/// Removes a leading '#' and casefolds.
std::string normalize_tag(std::string_view tag);

struct Category {
  std::string name;
  std::set<std::string> hashtags;       // casefolded
  std::vector<std::string> spellings;   // as written in the taxonomy file, without '#'
};

/// Ordered collection of named hashtag groups. A hashtag may belong to
/// several categories.
class CategoryTaxonomy {
 public:
  CategoryTaxonomy() = default;

  /// Throws DataError when `name` is already present.
  void add(std::string name, const std::vector<std::string>& tags);

  const std::vector<Category>& categories() const { return categories_; }
  std::size_t size() const { return categories_.size(); }
  bool empty() const { return categories_.empty(); }
  std::vector<std::string> names() const;
  const Category* find(std::string_view name) const;

 private:
  std::vector<Category> categories_;
};

/// Taxonomy file: JSON object {category: [tags]}, tags with or without '#'.
CategoryTaxonomy load_taxonomy(const std::filesystem::path& path);

inline constexpr std::string_view kUncategorized = "(uncategorized)";

/// Names of every category whose hashtag set meets tweet.hashtags, in
/// taxonomy order.
std::vector<std::string> assign_categories(const Tweet& tweet, const CategoryTaxonomy& taxonomy);

using Membership = std::map<std::string, std::vector<std::string>>;

/// tweet id -> assigned categories, for every tweet (possibly empty lists).
Membership build_membership(const std::vector<Tweet>& corpus, const CategoryTaxonomy& taxonomy);

struct TrendPoint {
  Day day;
  std::size_t count = 0;

  friend bool operator==(const TrendPoint&, const TrendPoint&) = default;
};

struct TrendSeries {
  std::string category;
  std::vector<TrendPoint> points;
};

/// One series per category in taxonomy order, then "(uncategorized)".
/// Each series covers every UTC day between the first and last tweet of
/// the corpus, with zero days emitted explicitly.
std::vector<TrendSeries> trend_series(const std::vector<Tweet>& corpus,
                                      const CategoryTaxonomy& taxonomy);

std::string trends_csv(const std::vector<TrendSeries>& series);

/// Tags ranked by number of tweets carrying them, ties lexicographic.
std::vector<std::pair<std::string, std::size_t>> top_hashtags(const std::vector<Tweet>& corpus,
                                                              std::size_t n);

}  // namespace hashlens
