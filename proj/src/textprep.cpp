#include "hashlens/textprep.hpp"

#include "hashlens/porter.hpp"

namespace hashlens {

namespace {

bool is_url_scheme_char(char32_t cp) {
  return (cp < 0x80) && (std::isalnum(static_cast<int>(cp)) || cp == U'+' || cp == U'-' || cp == U'.');
}

// Replaces URLs, @-mentions and '#' with spaces.
std::string strip_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    // URL: scheme "://" followed by a run of non-space characters
    if (text.compare(pos, 3, "://") == 0) {
      std::size_t scheme_start = out.size();
      while (scheme_start > 0 && is_url_scheme_char(static_cast<unsigned char>(out[scheme_start - 1]))) {
        --scheme_start;
      }
      if (scheme_start < out.size()) {
        out.resize(scheme_start);
        pos += 3;
        while (pos < text.size()) {
          std::size_t next = pos;
          if (is_space(next_code_point(text, next))) break;
          pos = next;
        }
        out += ' ';
        continue;
      }
    }
    const std::size_t start = pos;
    const char32_t cp = next_code_point(text, pos);
    if (cp == U'@') {
      while (pos < text.size()) {
        std::size_t next = pos;
        if (!is_word_char(next_code_point(text, next))) break;
        pos = next;
      }
      out += ' ';
    } else if (cp == U'#') {
      out += ' ';
    } else {
      out.append(text.substr(start, pos - start));
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> normalize(std::string_view text, const NormalizationConfig& config) {
  const std::string folded = casefold(strip_markup(text));

  std::vector<std::string> tokens;
  std::string current;
  auto keep = [&](const std::string& token) {
    return code_point_count(token) >= config.min_length && !config.stopwords.count(token);
  };
  auto flush = [&] {
    if (current.empty()) return;
    if (keep(current)) {
      if (config.stem) {
        std::string stemmed = porter_stem(current);
        if (keep(stemmed)) tokens.push_back(std::move(stemmed));
      } else {
        tokens.push_back(current);
      }
    }
    current.clear();
  };

  for (std::size_t pos = 0; pos < folded.size();) {
    const std::size_t start = pos;
    const char32_t cp = next_code_point(folded, pos);
    if (is_alpha(cp)) {
      current.append(folded, start, pos - start);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

TokenizedDoc tokenize_tweet(const Tweet& tweet, const NormalizationConfig& config) {
  return {tweet.id, normalize(tweet.text, config)};
}

std::vector<std::string> split_hashtag(std::string_view spelling) {
  enum class Kind { Lower, Upper, Digit, Other };
  struct Unit {
    std::string_view bytes;
    Kind kind;
  };
  std::vector<Unit> units;
  for (std::size_t pos = 0; pos < spelling.size();) {
    const std::size_t start = pos;
    const char32_t cp = next_code_point(spelling, pos);
    Kind kind = Kind::Other;
    if (is_digit(cp)) {
      kind = Kind::Digit;
    } else if (is_upper(cp)) {
      kind = Kind::Upper;
    } else if (is_alpha(cp)) {
      kind = Kind::Lower;
    }
    units.push_back({spelling.substr(start, pos - start), kind});
  }

  auto is_letter = [](Kind k) { return k == Kind::Lower || k == Kind::Upper; };
  std::vector<std::string> parts;
  std::string current;
  bool current_alpha = false;
  auto flush = [&] {
    if (!current.empty() && current_alpha) parts.push_back(casefold(current));
    current.clear();
  };
  for (std::size_t i = 0; i < units.size(); ++i) {
    const Kind kind = units[i].kind;
    if (kind == Kind::Other) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const Kind prev = units[i - 1].kind;
      const bool class_change = is_letter(prev) != is_letter(kind);
      const bool camel = prev == Kind::Lower && kind == Kind::Upper;
      // "PPEShortage": the last capital of a run opens the next word
      const bool acronym_end = prev == Kind::Upper && kind == Kind::Upper &&
                               i + 1 < units.size() && units[i + 1].kind == Kind::Lower;
      if (class_change || camel || acronym_end) flush();
    }
    if (current.empty()) current_alpha = is_letter(kind);
    current.append(units[i].bytes);
  }
  flush();
  return parts;
}

std::unordered_set<std::string> echo_forms(const CategoryTaxonomy& taxonomy,
                                           const std::unordered_set<std::string>& exclusions) {
  std::unordered_set<std::string> forms;
  for (const auto& cat : taxonomy.categories()) {
    for (const auto& tag : cat.hashtags) {
      forms.insert(porter_stem(tag));
      for (const auto& part : split_hashtag(tag)) forms.insert(porter_stem(part));
    }
    for (const auto& spelling : cat.spellings) {
      for (const auto& part : split_hashtag(spelling)) forms.insert(porter_stem(part));
    }
  }
  for (const auto& e : exclusions) forms.insert(porter_stem(casefold(e)));
  return forms;
}

std::vector<std::string> filter_category_echo(const std::vector<std::string>& tokens,
                                              const std::unordered_set<std::string>& forms) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens) {
    // tokens may already be stems, so the token itself is compared too
    if (forms.count(t) || forms.count(porter_stem(t))) continue;
    kept.push_back(t);
  }
  return kept;
}

std::vector<std::string> filter_category_echo(const std::vector<std::string>& tokens,
                                              const CategoryTaxonomy& taxonomy,
                                              const std::unordered_set<std::string>& exclusions) {
  return filter_category_echo(tokens, echo_forms(taxonomy, exclusions));
}

}  // namespace hashlens
