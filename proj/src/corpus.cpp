#include "hashlens/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include "json.hpp"

namespace hashlens {

namespace {

using nlohmann::json;

bool parse_fixed_int(std::string_view s, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > s.size()) return false;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::from_chars(s.data() + pos, s.data() + pos + width, out);
  return true;
}

struct RawRecord {
  std::size_t line;
  std::string id;
  std::string created_at;
  std::string text;
};

void append_records(std::vector<RawRecord>& out, std::vector<Diagnostic>& diags,
                    const std::string& contents, CorpusFormat format) {
  if (format == CorpusFormat::Jsonl) {
    std::istringstream in(contents);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object()) {
        diags.push_back({line_no, "malformed JSON record, skipped"});
        continue;
      }
      bool ok = true;
      for (const char* key : {"id", "created_at", "text"}) {
        auto it = obj.find(key);
        if (it == obj.end() || !it->is_string()) {
          diags.push_back({line_no, fmt::format("missing or non-string \"{}\", skipped", key)});
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      out.push_back({line_no, obj["id"].get<std::string>(), obj["created_at"].get<std::string>(),
                     obj["text"].get<std::string>()});
    }
    return;
  }

  std::vector<CsvRecord> records;
  try {
    records = parse_csv(contents);
  } catch (const DataError& e) {
    throw DataError(std::string("CSV corpus: ") + e.what());
  }
  if (records.empty()) return;
  const auto& header = records.front().fields;
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  const auto id_col = column("id");
  const auto ts_col = column("created_at");
  const auto text_col = column("text");
  if (!id_col || !ts_col || !text_col) {
    throw DataError("CSV corpus header must name columns id, created_at, text");
  }
  const std::size_t needed = std::max({*id_col, *ts_col, *text_col}) + 1;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;  // blank line
    if (rec.fields.size() < needed) {
      diags.push_back({rec.line, fmt::format("expected at least {} columns, found {}, skipped",
                                             needed, rec.fields.size())});
      continue;
    }
    out.push_back({rec.line, rec.fields[*id_col], rec.fields[*ts_col], rec.fields[*text_col]});
  }
}

}  // namespace

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::Jsonl;
  if (name == "csv") return CorpusFormat::Csv;
  return std::nullopt;
}

std::optional<Timestamp> parse_iso8601(std::string_view s) {
  using namespace std::chrono;
  s = trim(s);
  int y, mo, d, h, mi, sec;
  if (s.size() < 20) return std::nullopt;
  if (!parse_fixed_int(s, 0, 4, y) || s[4] != '-' || !parse_fixed_int(s, 5, 2, mo) ||
      s[7] != '-' || !parse_fixed_int(s, 8, 2, d) || (s[10] != 'T' && s[10] != ' ') ||
      !parse_fixed_int(s, 11, 2, h) || s[13] != ':' || !parse_fixed_int(s, 14, 2, mi) ||
      s[16] != ':' || !parse_fixed_int(s, 17, 2, sec)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
    ++pos;
    const std::size_t digits_start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == digits_start) return std::nullopt;
  }
  if (pos >= s.size()) return std::nullopt;  // zone is mandatory

  int offset_minutes = 0;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    if (pos + 1 != s.size()) return std::nullopt;
  } else if (s[pos] == '+' || s[pos] == '-') {
    const int sign = s[pos] == '-' ? -1 : 1;
    int oh, om;
    if (!parse_fixed_int(s, pos + 1, 2, oh)) return std::nullopt;
    std::size_t p = pos + 3;
    if (p < s.size() && s[p] == ':') ++p;
    if (!parse_fixed_int(s, p, 2, om) || p + 2 != s.size()) return std::nullopt;
    if (oh > 23 || om > 59) return std::nullopt;
    offset_minutes = sign * (oh * 60 + om);
  } else {
    return std::nullopt;
  }

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  const auto local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
  return local - minutes{offset_minutes};
}

std::string format_day(Day day) {
  const std::chrono::year_month_day ymd{day};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::vector<std::string> extract_hashtags(std::string_view text) {
  std::vector<std::string> tags;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = next_code_point(text, pos);
    if (cp != U'#') continue;
    const std::size_t start = pos;
    std::size_t end = pos;
    while (end < text.size()) {
      std::size_t next = end;
      if (!is_word_char(next_code_point(text, next))) break;
      end = next;
    }
    if (end > start) tags.push_back(casefold(text.substr(start, end - start)));
    pos = end;
  }
  return tags;
}

std::vector<std::string> unique_hashtags(std::string_view text) {
  std::vector<std::string> unique;
  std::unordered_set<std::string> seen;
  for (auto& tag : extract_hashtags(text)) {
    if (seen.insert(tag).second) unique.push_back(std::move(tag));
  }
  return unique;
}

Tweet make_tweet(std::string id, Timestamp ts, std::string text) {
  Tweet t{std::move(id), ts, std::move(text), {}};
  t.hashtags = unique_hashtags(t.text);
  return t;
}

CorpusLoad load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  const std::string contents = read_file(path);
  CorpusLoad result;
  std::vector<RawRecord> records;
  append_records(records, result.diagnostics, contents, format);

  std::unordered_map<std::string, std::size_t> first_line;
  for (auto& rec : records) {
    if (rec.id.empty()) {
      result.diagnostics.push_back({rec.line, "empty id, skipped"});
      continue;
    }
    const auto ts = parse_iso8601(rec.created_at);
    if (!ts) {
      result.diagnostics.push_back(
          {rec.line, fmt::format("unparseable created_at \"{}\", skipped", rec.created_at)});
      continue;
    }
    auto [it, inserted] = first_line.emplace(rec.id, rec.line);
    if (!inserted) {
      result.diagnostics.push_back(
          {rec.line, fmt::format("duplicate id \"{}\" (first seen on line {}), skipped", rec.id,
                                 it->second)});
      continue;
    }
    result.tweets.push_back(make_tweet(std::move(rec.id), *ts, std::move(rec.text)));
  }
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  return result;
}

std::string normalize_tag(std::string_view tag) {
  tag = trim(tag);
  if (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
  return casefold(tag);
}

void CategoryTaxonomy::add(std::string name, const std::vector<std::string>& tags) {
  if (find(name)) throw DataError("duplicate category name \"" + name + "\"");
  Category cat;
  cat.name = std::move(name);
  for (const auto& raw : tags) {
    auto folded = normalize_tag(raw);
    if (folded.empty()) continue;
    std::string_view spelling = trim(raw);
    if (!spelling.empty() && spelling.front() == '#') spelling.remove_prefix(1);
    cat.spellings.emplace_back(spelling);
    cat.hashtags.insert(std::move(folded));
  }
  categories_.push_back(std::move(cat));
}

std::vector<std::string> CategoryTaxonomy::names() const {
  std::vector<std::string> out;
  out.reserve(categories_.size());
  for (const auto& c : categories_) out.push_back(c.name);
  return out;
}

const Category* CategoryTaxonomy::find(std::string_view name) const {
  for (const auto& c : categories_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

CategoryTaxonomy load_taxonomy(const std::filesystem::path& path) {
  const auto doc = nlohmann::ordered_json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw DataError(path.string() + ": taxonomy must be a JSON object");
  }
  CategoryTaxonomy taxonomy;
  for (const auto& [name, tags] : doc.items()) {
    if (!tags.is_array()) {
      throw DataError(path.string() + ": category \"" + name + "\" must map to an array");
    }
    std::vector<std::string> list;
    for (const auto& t : tags) {
      if (!t.is_string()) {
        throw DataError(path.string() + ": category \"" + name + "\" has a non-string tag");
      }
      list.push_back(t.get<std::string>());
    }
    taxonomy.add(name, list);
  }
  return taxonomy;
}

std::vector<std::string> assign_categories(const Tweet& tweet, const CategoryTaxonomy& taxonomy) {
  std::vector<std::string> out;
  for (const auto& cat : taxonomy.categories()) {
    const bool hit = std::any_of(tweet.hashtags.begin(), tweet.hashtags.end(),
                                 [&](const std::string& tag) { return cat.hashtags.count(tag); });
    if (hit) out.push_back(cat.name);
  }
  return out;
}

Membership build_membership(const std::vector<Tweet>& corpus, const CategoryTaxonomy& taxonomy) {
  Membership m;
  for (const auto& t : corpus) m[t.id] = assign_categories(t, taxonomy);
  return m;
}

std::vector<TrendSeries> trend_series(const std::vector<Tweet>& corpus,
                                      const CategoryTaxonomy& taxonomy) {
  using std::chrono::floor;
  std::vector<TrendSeries> series;
  for (const auto& name : taxonomy.names()) series.push_back({name, {}});
  series.push_back({std::string(kUncategorized), {}});
  if (corpus.empty()) return series;

  Day first = floor<std::chrono::days>(corpus.front().timestamp);
  Day last = first;
  for (const auto& t : corpus) {
    const Day d = floor<std::chrono::days>(t.timestamp);
    first = std::min(first, d);
    last = std::max(last, d);
  }
  const auto span = static_cast<std::size_t>((last - first).count()) + 1;
  std::vector<std::vector<std::size_t>> counts(series.size(), std::vector<std::size_t>(span, 0));

  const auto& cats = taxonomy.categories();
  for (const auto& t : corpus) {
    const auto offset = static_cast<std::size_t>((floor<std::chrono::days>(t.timestamp) - first).count());
    bool any = false;
    for (std::size_t c = 0; c < cats.size(); ++c) {
      const bool hit = std::any_of(t.hashtags.begin(), t.hashtags.end(),
                                   [&](const std::string& tag) { return cats[c].hashtags.count(tag); });
      if (hit) {
        ++counts[c][offset];
        any = true;
      }
    }
    if (!any) ++counts.back()[offset];
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    series[s].points.reserve(span);
    for (std::size_t i = 0; i < span; ++i) {
      series[s].points.push_back({first + std::chrono::days{static_cast<int>(i)}, counts[s][i]});
    }
  }
  return series;
}

std::string trends_csv(const std::vector<TrendSeries>& series) {
  std::string out = "category,date,count\n";
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      out += csv_line({s.category, format_day(p.day), std::to_string(p.count)});
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> top_hashtags(const std::vector<Tweet>& corpus,
                                                              std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& t : corpus) {
    for (const auto& tag : t.hashtags) ++counts[tag];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

}  // namespace hashlens
