#include "hashlens/lexstats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace hashlens {

GroupLexicon build_lexicon(const std::vector<TokenizedDoc>& docs, std::string category) {
  GroupLexicon lex;
  lex.category = std::move(category);
  for (const auto& doc : docs) {
    const auto& t = doc.tokens;
    for (std::size_t i = 0; i < t.size(); ++i) {
      ++lex.unigram_counts[t[i]];
      if (i + 1 < t.size()) ++lex.bigram_counts[{t[i], t[i + 1]}];
    }
    lex.total_tokens += t.size();
    if (t.size() > 1) lex.total_bigram_positions += t.size() - 1;
  }
  return lex;
}

std::vector<CommonWord> common_words(const std::vector<GroupLexicon>& lexicons,
                                     std::size_t min_groups, std::size_t n) {
  if (min_groups < 2) throw std::invalid_argument("common_words: min_groups must be >= 2");
  std::map<std::string, CommonWord> acc;
  for (const auto& lex : lexicons) {
    for (const auto& [token, count] : lex.unigram_counts) {
      if (count == 0) continue;
      auto& w = acc[token];
      w.token = token;
      ++w.group_count;
      w.total_freq += count;
    }
  }
  std::vector<CommonWord> ranked;
  for (auto& [_, w] : acc) {
    if (w.group_count >= min_groups) ranked.push_back(std::move(w));
  }
  std::sort(ranked.begin(), ranked.end(), [](const CommonWord& a, const CommonWord& b) {
    if (a.group_count != b.group_count) return a.group_count > b.group_count;
    if (a.total_freq != b.total_freq) return a.total_freq > b.total_freq;
    return a.token < b.token;
  });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

std::vector<std::pair<std::string, std::uint64_t>> distinctive_words(
    const GroupLexicon& lexicon, const std::set<std::string>& common, std::size_t n) {
  std::vector<std::pair<std::string, std::uint64_t>> ranked;
  for (const auto& [token, count] : lexicon.unigram_counts) {
    if (count > 0 && !common.count(token)) ranked.emplace_back(token, count);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

double chi_squared(const Contingency& table) {
  const double o11 = static_cast<double>(table.cells[0]);
  const double o12 = static_cast<double>(table.cells[1]);
  const double o21 = static_cast<double>(table.cells[2]);
  const double o22 = static_cast<double>(table.cells[3]);
  const double r1 = o11 + o12;
  const double r2 = o21 + o22;
  const double c1 = o11 + o21;
  const double c2 = o12 + o22;
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) return 0.0;
  const double n = r1 + r2;
  const double diff = o11 * o22 - o12 * o21;
  return n * diff * diff / (r1 * r2 * c1 * c2);
}

std::vector<CollocationStat> bigram_collocations(const GroupLexicon& lexicon,
                                                 std::uint64_t min_count, std::size_t n) {
  std::vector<CollocationStat> stats;
  const std::uint64_t total = lexicon.total_bigram_positions;
  if (total == 0) return stats;

  std::unordered_map<std::string, std::uint64_t> as_first;
  std::unordered_map<std::string, std::uint64_t> as_second;
  for (const auto& [bg, count] : lexicon.bigram_counts) {
    as_first[bg.first] += count;
    as_second[bg.second] += count;
  }

  for (const auto& [bg, count] : lexicon.bigram_counts) {
    if (count < min_count || count == 0) continue;
    Contingency t;
    t.cells[0] = count;
    t.cells[1] = as_first[bg.first] - count;
    t.cells[2] = as_second[bg.second] - count;
    t.cells[3] = total - t.cells[0] - t.cells[1] - t.cells[2];
    assert(t.cells[0] + t.cells[1] + t.cells[2] <= total);
    assert(t.total() == total);
    stats.push_back({bg, chi_squared(t), t});
  }
  std::sort(stats.begin(), stats.end(), [](const CollocationStat& a, const CollocationStat& b) {
    if (a.chi2 != b.chi2) return a.chi2 > b.chi2;
    return a.bigram < b.bigram;
  });
  if (stats.size() > n) stats.resize(n);
  return stats;
}

TfidfTable tfidf(const std::vector<std::pair<std::string, TermCounts>>& group_docs,
                 bool single_group_smoothing) {
  TfidfTable table;
  const double groups = static_cast<double>(group_docs.size());
  std::map<std::string, std::size_t> df;
  for (const auto& [_, counts] : group_docs) {
    for (const auto& [term, tf] : counts) {
      if (tf > 0) ++df[term];
    }
  }
  const double numerator = (single_group_smoothing && group_docs.size() == 1) ? groups + 1 : groups;
  for (const auto& [group, counts] : group_docs) {
    for (const auto& [term, tf] : counts) {
      if (tf == 0) continue;
      const double idf = std::log(numerator / static_cast<double>(df[term]));
      table[{group, term}] = static_cast<double>(tf) * idf;
    }
  }
  return table;
}

}  // namespace hashlens
