#include "hashlens/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include "json.hpp"

namespace hashlens {

namespace {

std::size_t label_index(SentimentLabel label) { return static_cast<std::size_t>(label); }

}  // namespace

std::string_view to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::StronglyPositive: return "strongly_positive";
    case SentimentLabel::Positive: return "positive";
    case SentimentLabel::Neutral: return "neutral";
    case SentimentLabel::Negative: return "negative";
    case SentimentLabel::StronglyNegative: return "strongly_negative";
  }
  return "neutral";
}

std::optional<SentimentLabel> parse_sentiment_label(std::string_view s) {
  for (auto label : kAllLabels) {
    if (to_string(label) == s) return label;
  }
  return std::nullopt;
}

SentimentLabel score_lexicon(const std::vector<std::string>& tokens, const ValenceLexicon& lexicon,
                             const SentimentThresholds& thresholds) {
  if (!(thresholds.weak > 0 && thresholds.weak < thresholds.strong && thresholds.strong <= 1)) {
    throw std::invalid_argument("sentiment thresholds must satisfy 0 < weak < strong <= 1");
  }
  double sum = 0.0;
  std::size_t hits = 0;
  for (const auto& t : tokens) {
    auto it = lexicon.find(t);
    if (it == lexicon.end()) continue;
    sum += it->second;
    ++hits;
  }
  const double mean = hits ? sum / static_cast<double>(hits) : 0.0;
  if (mean >= thresholds.strong) return SentimentLabel::StronglyPositive;
  if (mean >= thresholds.weak) return SentimentLabel::Positive;
  if (mean <= -thresholds.strong) return SentimentLabel::StronglyNegative;
  if (mean <= -thresholds.weak) return SentimentLabel::Negative;
  return SentimentLabel::Neutral;
}

ValenceLexicon load_valence_lexicon(const std::filesystem::path& path,
                                    std::vector<Diagnostic>* diagnostics) {
  ValenceLexicon lexicon;
  const auto records = parse_csv(read_file(path));
  auto report = [&](std::size_t line, std::string msg) {
    if (diagnostics) diagnostics->push_back({line, std::move(msg)});
  };
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() == 1 && trim(rec.fields[0]).empty()) continue;
    if (!rec.fields.empty() && !trim(rec.fields[0]).empty() && trim(rec.fields[0]).front() == '#') continue;
    if (rec.fields.size() != 2) {
      report(rec.line, "expected token,valence");
      continue;
    }
    const auto value = trim(rec.fields[1]);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      if (r == 0) continue;  // header row
      report(rec.line, fmt::format("unparseable valence \"{}\"", value));
      continue;
    }
    if (v < -1.0 || v > 1.0) {
      report(rec.line, fmt::format("valence {} outside [-1, 1]", v));
      continue;
    }
    lexicon[casefold(trim(rec.fields[0]))] = v;
  }
  return lexicon;
}

ScoreLoad ingest_scores(const std::filesystem::path& path) {
  ScoreLoad result;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("label") || !obj["label"].is_string()) {
      result.diagnostics.push_back({line_no, "expected {\"id\": string, \"label\": string}, skipped"});
      continue;
    }
    const auto id = obj["id"].get<std::string>();
    const auto text = obj["label"].get<std::string>();
    const auto label = parse_sentiment_label(text);
    if (!label) {
      result.diagnostics.push_back({line_no, fmt::format("unknown label \"{}\", skipped", text)});
      continue;
    }
    auto [it, inserted] = result.labels.insert_or_assign(id, *label);
    if (!inserted) {
      result.diagnostics.push_back(
          {line_no, fmt::format("duplicate id \"{}\", keeping the later label", id)});
    }
  }
  return result;
}

LexiconScorer::LexiconScorer(ValenceLexicon lexicon, NormalizationConfig tokenizer,
                             SentimentThresholds thresholds)
    : lexicon_(std::move(lexicon)), tokenizer_(std::move(tokenizer)), thresholds_(thresholds) {
  if (!(thresholds_.weak > 0 && thresholds_.weak < thresholds_.strong && thresholds_.strong <= 1)) {
    throw std::invalid_argument("sentiment thresholds must satisfy 0 < weak < strong <= 1");
  }
}

std::optional<SentimentLabel> LexiconScorer::score(const Tweet& tweet) const {
  return score_lexicon(normalize(tweet.text, tokenizer_), lexicon_, thresholds_);
}

std::optional<SentimentLabel> IngestedScorer::score(const Tweet& tweet) const {
  auto it = labels_.find(tweet.id);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, SentimentLabel> score_corpus(const std::vector<Tweet>& corpus,
                                                   const SentimentScorer& scorer) {
  std::map<std::string, SentimentLabel> labels;
  for (const auto& t : corpus) {
    if (auto label = scorer.score(t)) labels[t.id] = *label;
  }
  return labels;
}

double SentimentDistribution::share(SentimentLabel label) const {
  for (std::size_t i = 0; i < kPolarLabels.size(); ++i) {
    if (kPolarLabels[i] == label) return shares[i];
  }
  return 0.0;
}

std::vector<SentimentDistribution> category_distribution(
    const std::map<std::string, SentimentLabel>& labels, const Membership& membership,
    const std::vector<std::string>& category_order) {
  std::map<std::string, std::array<std::size_t, 5>> counts;
  for (const auto& name : category_order) counts[name];
  for (const auto& [tweet_id, categories] : membership) {
    auto it = labels.find(tweet_id);
    for (const auto& cat : categories) {
      auto& c = counts[cat];
      if (it != labels.end()) ++c[label_index(it->second)];
    }
  }

  std::vector<std::string> order = category_order;
  const std::set<std::string> listed(category_order.begin(), category_order.end());
  for (const auto& [name, _] : counts) {
    if (!listed.count(name)) order.push_back(name);
  }

  std::vector<SentimentDistribution> out;
  for (const auto& name : order) {
    SentimentDistribution d;
    d.category = name;
    d.counts = counts[name];
    std::size_t polar_total = 0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < kPolarLabels.size(); ++i) {
      const auto c = d.counts[label_index(kPolarLabels[i])];
      polar_total += c;
      if (c > 0) last_nonzero = i;
    }
    d.insufficient_data = polar_total == 0;
    if (!d.insufficient_data) {
      double partial = 0.0;
      for (std::size_t i = 0; i < last_nonzero; ++i) {
        const auto c = d.counts[label_index(kPolarLabels[i])];
        d.shares[i] = 100.0 * static_cast<double>(c) / static_cast<double>(polar_total);
        partial += d.shares[i];
      }
      d.shares[last_nonzero] = 100.0 - partial;
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::string sentiment_csv(const std::vector<SentimentDistribution>& dists) {
  std::string out = "category,label,percentage\n";
  for (const auto& d : dists) {
    for (std::size_t i = 0; i < kPolarLabels.size(); ++i) {
      out += csv_line({d.category, std::string(to_string(kPolarLabels[i])),
                       fmt::format("{:.6f}", d.shares[i])});
    }
  }
  return out;
}

}  // namespace hashlens
