#include "hashlens/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "CLI11.hpp"

#include "hashlens/corpus.hpp"
#include "hashlens/evaluation.hpp"
#include "hashlens/lexstats.hpp"
#include "hashlens/porter.hpp"
#include "hashlens/sentiment.hpp"
#include "hashlens/syntax.hpp"
#include "hashlens/textprep.hpp"
#include "hashlens/topics.hpp"

#ifndef HASHLENS_DATA_DIR
#define HASHLENS_DATA_DIR "data"
#endif

namespace hashlens {

namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"trends", "daily tweet counts per category and top hashtags"},
    {"words", "most frequent words per category and words shared across categories"},
    {"bigrams", "chi-squared ranked bigram collocations per category"},
    {"sentiment", "positive/negative/neutral shares per category"},
    {"verbs", "most distinctive verbs per category"},
    {"pairs", "verb-noun pairs from dependency parses"},
    {"topics-train", "train a seeded LDA model"},
    {"topics-classify", "label each document with its most probable topic"},
    {"topics-eval", "score predictions against hashtag-derived labels"},
    {"report", "collect existing artifacts into summary.json"}};

// One settable field: its flag/key name and how to read or write it.
struct Field {
  std::string name;
  std::function<nlohmann::ordered_json(const RunConfig&)> get;
  std::function<void(RunConfig&, const nlohmann::json&)> set;
  std::function<CLI::Option*(CLI::App&, RunConfig&)> add_flag;
};

template <typename T>
Field field(std::string name, T RunConfig::*member, std::string help) {
  Field f;
  f.name = name;
  f.get = [member](const RunConfig& c) { return nlohmann::ordered_json(c.*member); };
  f.set = [member](RunConfig& c, const nlohmann::json& j) { c.*member = j.get<T>(); };
  f.add_flag = [name, member, help](CLI::App& app, RunConfig& c) {
    return app.add_option("--" + name, c.*member, help);
  };
  return f;
}

Field bool_field(std::string name, bool RunConfig::*member, std::string help) {
  Field f = field(name, member, help);
  f.add_flag = [name, member, help](CLI::App& app, RunConfig& c) {
    return app.add_option("--" + name, c.*member, help + " (true/false)");
  };
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      field("corpus", &RunConfig::corpus, "tweet corpus file"),
      field("format", &RunConfig::format, "corpus format: jsonl or csv"),
      field("taxonomy", &RunConfig::taxonomy, "taxonomy JSON {category: [hashtags]}"),
      field("stopwords", &RunConfig::stopwords, "stopword list (one word per line)"),
      field("exclusions", &RunConfig::exclusions, "named-entity exclusion list"),
      field("lexicon", &RunConfig::lexicon, "valence lexicon CSV token,valence"),
      field("parses", &RunConfig::parses, "dependency parses (CoNLL-U subset)"),
      field("scores", &RunConfig::scores, "external sentiment labels (JSONL)"),
      field("seed-file", &RunConfig::seed_file, "seed words JSON {category: [words]}"),
      field("model", &RunConfig::model, "model dump path (default <out>/model.json)"),
      field("predictions", &RunConfig::predictions, "predictions CSV (default <out>/predictions.csv)"),
      field("out", &RunConfig::out, "output directory"),
      field("alpha", &RunConfig::alpha, "document-topic prior"),
      field("beta", &RunConfig::beta, "topic-word prior"),
      field("mu", &RunConfig::mu, "extra prior mass for seed words"),
      field("iters", &RunConfig::iters, "Gibbs sweeps"),
      field("unseeded", &RunConfig::unseeded, "number of unseeded topics"),
      field("rng-seed", &RunConfig::rng_seed, "random seed"),
      field("top-n", &RunConfig::top_n, "entries per ranked list"),
      field("min-count", &RunConfig::min_count, "minimum bigram count"),
      field("min-groups", &RunConfig::min_groups, "groups a common word must occur in"),
      field("pair-verbs", &RunConfig::pair_verbs, "top verbs per category examined by pairs"),
      field("verb", &RunConfig::verb, "verb lemma for pairs (repeatable)"),
      field("relations", &RunConfig::relations, "relation labels: clear or universal"),
      bool_field("subtree", &RunConfig::subtree, "collect nouns from the whole verb subtree"),
      bool_field("stem", &RunConfig::stem, "apply Porter stemming"),
      field("gold-policy", &RunConfig::gold_policy, "rarest, priority or exclude_multi"),
  };
  return all;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

fs::path data_dir() {
  if (const char* env = std::getenv("HASHLENS_DATA_DIR"); env && *env) return env;
  return HASHLENS_DATA_DIR;
}

void validate_values(const RunConfig& c) {
  if (!parse_corpus_format(c.format)) throw UsageError("--format must be jsonl or csv");
  if (!parse_gold_policy(c.gold_policy)) throw UsageError("--gold-policy must be rarest, priority or exclude_multi");
  if (c.relations != "clear" && c.relations != "universal") throw UsageError("--relations must be clear or universal");
  if (!(c.alpha > 0)) throw UsageError("--alpha must be positive");
  if (!(c.beta > 0)) throw UsageError("--beta must be positive");
  if (!(c.mu >= 0)) throw UsageError("--mu must be non-negative");
  if (c.iters == 0) throw UsageError("--iters must be positive");
  if (c.top_n == 0) throw UsageError("--top-n must be positive");
  if (c.min_groups < 2) throw UsageError("--min-groups must be at least 2");
  if (c.out.empty()) throw UsageError("--out must not be empty");
}

// Names a missing input; exit code 2.
void require(const std::string& path, std::string_view what) {
  if (path.empty()) throw DataError(fmt::format("missing required input: {} (--{})", what, what));
  if (!fs::is_regular_file(path)) throw DataError(fmt::format("{} not found: {}", what, path));
}

void optional_input(const std::string& path, std::string_view what) {
  if (!path.empty() && !fs::is_regular_file(path)) throw DataError(fmt::format("{} not found: {}", what, path));
}

struct Context {
  const RunConfig& config;
  std::ostream& out;
  std::ostream& err;
  fs::path out_dir;

  void warn(const fs::path& file, const std::vector<Diagnostic>& diags) const {
    for (const auto& d : diags) err << "warning: " << format_diagnostic(file, d) << "\n";
  }

  void write(const std::string& name, const std::string& contents) const {
    write_file(out_dir / name, contents);
  }

  fs::path stopword_path() const {
    return config.stopwords.empty() ? data_dir() / "stopwords_en.txt" : fs::path(config.stopwords);
  }

  fs::path lexicon_path() const {
    return config.lexicon.empty() ? data_dir() / "valence_en.csv" : fs::path(config.lexicon);
  }

  fs::path model_path() const { return config.model.empty() ? out_dir / "model.json" : fs::path(config.model); }

  fs::path predictions_path() const {
    return config.predictions.empty() ? out_dir / "predictions.csv" : fs::path(config.predictions);
  }

  std::vector<Tweet> corpus() const {
    auto loaded = load_corpus(config.corpus, *parse_corpus_format(config.format));
    warn(config.corpus, loaded.diagnostics);
    return std::move(loaded.tweets);
  }

  NormalizationConfig normalization(bool stem) const {
    NormalizationConfig n;
    n.stopwords = load_word_list(stopword_path());
    n.stem = stem;
    return n;
  }
};

std::string fixed(double v) { return fmt::format("{:.6f}", v); }

// Runs of tokens between category echoes, so that removing an echo never
// makes its neighbours adjacent.
std::vector<TokenizedDoc> echo_free_runs(const TokenizedDoc& doc, const std::unordered_set<std::string>& echo) {
  std::vector<TokenizedDoc> runs(1, TokenizedDoc{doc.tweet_id, {}});
  for (const auto& token : doc.tokens) {
    if (filter_category_echo({token}, echo).empty()) {
      if (!runs.back().tokens.empty()) runs.push_back({doc.tweet_id, {}});
    } else {
      runs.back().tokens.push_back(token);
    }
  }
  return runs;
}

enum class EchoMode { Drop, Split };

// Tokenized tweets of each category, taxonomy order, with category echoes
// dropped from the token stream or used as document breaks.
std::vector<std::pair<std::string, std::vector<TokenizedDoc>>> docs_by_category(
    const std::vector<Tweet>& corpus, const CategoryTaxonomy& taxonomy, const NormalizationConfig& norm,
    const std::unordered_set<std::string>& echo, EchoMode mode) {
  std::vector<std::pair<std::string, std::vector<TokenizedDoc>>> groups;
  for (const auto& name : taxonomy.names()) groups.emplace_back(name, std::vector<TokenizedDoc>{});
  for (const auto& tweet : corpus) {
    const auto cats = assign_categories(tweet, taxonomy);
    if (cats.empty()) continue;
    auto doc = tokenize_tweet(tweet, norm);
    std::vector<TokenizedDoc> pieces;
    if (mode == EchoMode::Split) {
      pieces = echo_free_runs(doc, echo);
    } else {
      doc.tokens = filter_category_echo(doc.tokens, echo);
      pieces.push_back(std::move(doc));
    }
    for (const auto& c : cats) {
      for (auto& [name, docs] : groups) {
        if (name == c) docs.insert(docs.end(), pieces.begin(), pieces.end());
      }
    }
  }
  return groups;
}

std::unordered_set<std::string> exclusion_list(const RunConfig& config) {
  return config.exclusions.empty() ? std::unordered_set<std::string>{} : load_word_list(config.exclusions);
}

int cmd_trends(const Context& ctx) {
  require(ctx.config.corpus, "corpus");
  require(ctx.config.taxonomy, "taxonomy");
  const auto taxonomy = load_taxonomy(ctx.config.taxonomy);
  const auto corpus = ctx.corpus();
  fs::create_directories(ctx.out_dir);

  const auto series = trend_series(corpus, taxonomy);
  ctx.write("trends.csv", trends_csv(series));
  std::string tags = "rank,hashtag,count\n";
  std::size_t rank = 0;
  for (const auto& [tag, count] : top_hashtags(corpus, ctx.config.top_n)) {
    tags += csv_line({std::to_string(++rank), tag, std::to_string(count)});
  }
  ctx.write("hashtags.csv", tags);
  const std::size_t days = series.empty() ? 0 : series.front().points.size();
  ctx.out << fmt::format("trends: {} tweets, {} categories over {} days -> {}\n", corpus.size(),
                         taxonomy.size(), days, (ctx.out_dir / "trends.csv").string());
  return kExitOk;
}

int cmd_words(const Context& ctx) {
  require(ctx.config.corpus, "corpus");
  require(ctx.config.taxonomy, "taxonomy");
  require(ctx.stopword_path().string(), "stopwords");
  optional_input(ctx.config.exclusions, "exclusions");
  const auto taxonomy = load_taxonomy(ctx.config.taxonomy);
  const auto norm = ctx.normalization(ctx.config.stem);
  const auto exclusions = exclusion_list(ctx.config);
  const auto corpus = ctx.corpus();
  fs::create_directories(ctx.out_dir);

  const auto echo = echo_forms(taxonomy, exclusions);
  std::vector<GroupLexicon> lexicons;
  for (auto& [name, docs] : docs_by_category(corpus, taxonomy, norm, echo, EchoMode::Drop)) {
    lexicons.push_back(build_lexicon(docs, name));
  }
  const auto common = common_words(lexicons, ctx.config.min_groups, ctx.config.top_n);
  std::set<std::string> common_set;
  std::string csv = "category,rank,term,count,score\n";
  std::size_t rank = 0;
  for (const auto& w : common) {
    common_set.insert(w.token);
    csv += csv_line({"(common)", std::to_string(++rank), w.token, std::to_string(w.total_freq),
                     std::to_string(w.group_count)});
  }
  for (const auto& lex : lexicons) {
    rank = 0;
    for (const auto& [token, count] : distinctive_words(lex, common_set, ctx.config.top_n)) {
      const double share = static_cast<double>(count) / static_cast<double>(lex.total_tokens);
      csv += csv_line({lex.category, std::to_string(++rank), token, std::to_string(count), fixed(share)});
    }
  }
  ctx.write("words.csv", csv);
  ctx.out << fmt::format("words: {} common words, {} category lexicons -> {}\n", common.size(), lexicons.size(),
                         (ctx.out_dir / "words.csv").string());
  return kExitOk;
}

int cmd_bigrams(const Context& ctx) {
  require(ctx.config.corpus, "corpus");
  require(ctx.config.taxonomy, "taxonomy");
  require(ctx.stopword_path().string(), "stopwords");
  optional_input(ctx.config.exclusions, "exclusions");
  const auto taxonomy = load_taxonomy(ctx.config.taxonomy);
  const auto norm = ctx.normalization(ctx.config.stem);
  const auto echo = echo_forms(taxonomy, exclusion_list(ctx.config));
  const auto corpus = ctx.corpus();
  fs::create_directories(ctx.out_dir);

  std::string csv = "category,rank,term,count,score\n";
  std::size_t rows = 0;
  for (auto& [name, docs] : docs_by_category(corpus, taxonomy, norm, echo, EchoMode::Split)) {
    const auto lex = build_lexicon(docs, name);
    std::size_t rank = 0;
    for (const auto& stat : bigram_collocations(lex, ctx.config.min_count, ctx.config.top_n)) {
      csv += csv_line({name, std::to_string(++rank), stat.bigram.first + " " + stat.bigram.second,
                       std::to_string(stat.observed.cells[0]), fixed(stat.chi2)});
      ++rows;
    }
  }
  ctx.write("bigrams.csv", csv);
  ctx.out << fmt::format("bigrams: {} collocations -> {}\n", rows, (ctx.out_dir / "bigrams.csv").string());
  return kExitOk;
}

int cmd_sentiment(const Context& ctx) {
  require(ctx.config.corpus, "corpus");
  require(ctx.config.taxonomy, "taxonomy");
  if (ctx.config.scores.empty()) {
    require(ctx.lexicon_path().string(), "lexicon");
    require(ctx.stopword_path().string(), "stopwords");
  } else {
    require(ctx.config.scores, "scores");
  }
  const auto taxonomy = load_taxonomy(ctx.config.taxonomy);
  std::unique_ptr<SentimentScorer> scorer;
  std::string source;
  if (!ctx.config.scores.empty()) {
    auto loaded = ingest_scores(ctx.config.scores);
    ctx.warn(ctx.config.scores, loaded.diagnostics);
    scorer = std::make_unique<IngestedScorer>(std::move(loaded.labels));
    source = "ingested scores";
  } else {
    std::vector<Diagnostic> diags;
    auto lexicon = load_valence_lexicon(ctx.lexicon_path(), &diags);
    ctx.warn(ctx.lexicon_path(), diags);
    scorer = std::make_unique<LexiconScorer>(std::move(lexicon), ctx.normalization(false));
    source = "valence lexicon";
  }
  const auto corpus = ctx.corpus();
  fs::create_directories(ctx.out_dir);

  const auto labels = score_corpus(corpus, *scorer);
  const auto dists = category_distribution(labels, build_membership(corpus, taxonomy), taxonomy.names());
  std::size_t flagged = 0;
  for (const auto& d : dists) {
    if (d.insufficient_data) {
      ++flagged;
      ctx.err << "warning: category \"" << d.category << "\" has no non-neutral tweets (insufficient data)\n";
    }
  }
  ctx.write("sentiment.csv", sentiment_csv(dists));
  ctx.out << fmt::format("sentiment: {} labelled tweets via {}, {} categories ({} insufficient) -> {}\n",
                         labels.size(), source, dists.size(), flagged, (ctx.out_dir / "sentiment.csv").string());
  return kExitOk;
}

struct SyntaxInputs {
  std::vector<DependencyTree> trees;
  GroupedTrees groups;
};

SyntaxInputs load_syntax(const Context& ctx) {
  require(ctx.config.corpus, "corpus");
  require(ctx.config.taxonomy, "taxonomy");
  require(ctx.config.parses, "parses");
  const auto taxonomy = load_taxonomy(ctx.config.taxonomy);
  auto parsed = load_parses(ctx.config.parses);
  ctx.warn(ctx.config.parses, parsed.diagnostics);
  const auto membership = build_membership(ctx.corpus(), taxonomy);

  SyntaxInputs in;
  in.trees = std::move(parsed.trees);
  for (const auto& name : taxonomy.names()) in.groups.emplace_back(name, std::vector<const DependencyTree*>{});
  std::size_t unknown = 0;
  for (const auto& tree : in.trees) {
    auto it = membership.find(tree.tweet_id);
    if (it == membership.end()) {
      ++unknown;
      continue;
    }
    for (const auto& cat : it->second) {
      for (auto& [name, list] : in.groups) {
        if (name == cat) list.push_back(&tree);
      }
    }
  }
  if (unknown) ctx.err << fmt::format("warning: {} parses refer to tweets not in the corpus\n", unknown);
  return in;
}

int cmd_verbs(const Context& ctx) {
  const auto in = load_syntax(ctx);
  fs::create_directories(ctx.out_dir);
  std::string csv = "category,verb,count,score\n";
  std::size_t rows = 0;
  for (const auto& profile : distinctive_verbs(in.groups, ctx.config.top_n)) {
    for (const auto& v : profile.verbs) {
      csv += csv_line({profile.category, v.lemma, std::to_string(v.count), fixed(v.tfidf)});
      ++rows;
    }
  }
  ctx.write("verbs.csv", csv);
  ctx.out << fmt::format("verbs: {} trees, {} verb rows -> {}\n", in.trees.size(), rows,
                         (ctx.out_dir / "verbs.csv").string());
  return kExitOk;
}

int cmd_pairs(const Context& ctx) {
  const auto in = load_syntax(ctx);
  fs::create_directories(ctx.out_dir);
  std::vector<std::string> verbs;
  for (const auto& v : ctx.config.verb) {
    auto folded = casefold(v);
    if (std::find(verbs.begin(), verbs.end(), folded) == verbs.end()) verbs.push_back(folded);
  }
  if (verbs.empty()) {
    for (const auto& profile : distinctive_verbs(in.groups, ctx.config.pair_verbs)) {
      for (const auto& v : profile.verbs) {
        if (std::find(verbs.begin(), verbs.end(), v.lemma) == verbs.end()) verbs.push_back(v.lemma);
      }
    }
  }
  RelationConfig rel = ctx.config.relations == "universal" ? RelationConfig::universal() : RelationConfig{};
  rel.whole_subtree = ctx.config.subtree;

  std::string csv = "verb,noun,count\n";
  std::size_t rows = 0;
  for (const auto& verb : verbs) {
    const auto table = verb_noun_pairs(in.trees, verb, rel);
    std::size_t shown = 0;
    for (const auto& [noun, count] : table.nouns) {
      if (shown++ == ctx.config.top_n) break;
      csv += csv_line({table.verb, noun, std::to_string(count)});
      ++rows;
    }
  }
  ctx.write("pairs.csv", csv);
  ctx.out << fmt::format("pairs: {} verbs, {} verb-noun rows -> {}\n", verbs.size(), rows,
                         (ctx.out_dir / "pairs.csv").string());
  return kExitOk;
}

int cmd_topics_train(const Context& ctx) {
  require(ctx.config.corpus, "corpus");
  require(ctx.config.seed_file, "seed-file");
  require(ctx.stopword_path().string(), "stopwords");
  const auto norm = ctx.normalization(ctx.config.stem);
  std::function<std::string(std::string_view)> transform;
  if (ctx.config.stem) transform = [](std::string_view w) { return porter_stem(w); };
  const auto seeds = load_seed_spec(ctx.config.seed_file, ctx.config.unseeded, transform);
  const auto corpus = ctx.corpus();
  fs::create_directories(ctx.out_dir);

  std::vector<TokenizedDoc> docs;
  docs.reserve(corpus.size());
  for (const auto& t : corpus) docs.push_back(tokenize_tweet(t, norm));

  LdaParams params;
  params.alpha = ctx.config.alpha;
  params.beta = ctx.config.beta;
  params.mu = ctx.config.mu;
  params.iterations = ctx.config.iters;
  params.rng_seed = ctx.config.rng_seed;
  const auto model = train(docs, seeds, params);
  for (const auto& w : model.missing_seeds()) ctx.err << "warning: seed word \"" << w << "\" is not in the vocabulary\n";
  if (!model.dropped_docs().empty()) {
    ctx.err << fmt::format("warning: {} empty documents dropped before training\n", model.dropped_docs().size());
  }
  const auto path = ctx.model_path();
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  save_model(model, path);
  ctx.out << fmt::format("topics-train: {} docs, {} words, {} topics, {} sweeps -> {}\n", model.num_docs(),
                         model.vocab_size(), model.num_topics(), model.sweeps_done(), path.string());
  return kExitOk;
}

int cmd_topics_classify(const Context& ctx) {
  require(ctx.model_path().string(), "model");
  const auto model = load_model(ctx.model_path());
  fs::create_directories(ctx.out_dir);
  Rng rng(ctx.config.rng_seed);
  std::string csv = "id,label\n";
  std::map<std::string, std::size_t> tally;
  for (std::size_t d = 0; d < model.num_docs(); ++d) {
    const auto label = classify(model, d, rng);
    ++tally[label];
    csv += csv_line({model.doc_id(d), label});
  }
  const auto path = ctx.predictions_path();
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file(path, csv);
  ctx.out << fmt::format("topics-classify: {} docs, {} unassigned -> {}\n", model.num_docs(),
                         tally[std::string(kUnassigned)], path.string());
  return kExitOk;
}

std::map<std::string, std::string> load_predictions(const fs::path& path) {
  const auto records = parse_csv(read_file(path));
  if (records.empty() || records.front().fields.size() < 2 || records.front().fields[0] != "id" ||
      records.front().fields[1] != "label") {
    throw DataError(path.string() + ": expected header id,label");
  }
  std::map<std::string, std::string> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 2) throw DataError(fmt::format("{}:{}: expected id,label", path.string(), records[r].line));
    out[f[0]] = f[1];
  }
  return out;
}

int cmd_topics_eval(const Context& ctx) {
  require(ctx.predictions_path().string(), "predictions");
  require(ctx.config.corpus, "corpus");
  require(ctx.config.taxonomy, "taxonomy");
  const auto taxonomy = load_taxonomy(ctx.config.taxonomy);
  const auto predictions_all = load_predictions(ctx.predictions_path());
  const auto corpus = ctx.corpus();
  fs::create_directories(ctx.out_dir);

  const auto policy = *parse_gold_policy(ctx.config.gold_policy);
  const auto gold_all = derive_gold(build_membership(corpus, taxonomy), policy, taxonomy.names());
  std::map<std::string, std::string> predictions, gold;
  for (const auto& [id, label] : gold_all.labels) {
    auto it = predictions_all.find(id);
    if (it == predictions_all.end()) continue;
    gold[id] = label;
    predictions[id] = it->second;
  }
  if (gold.empty()) throw DataError("topics-eval: no document has both a prediction and a gold label");
  const std::size_t skipped = gold_all.labels.size() - gold.size();
  if (skipped) ctx.err << fmt::format("warning: {} gold-labelled tweets have no prediction\n", skipped);

  const auto report = evaluate(predictions, gold, taxonomy.names());
  auto j = nlohmann::ordered_json::parse(report_json(report, to_string(policy)));
  j["excluded"] = {{"no_category", gold_all.excluded_unassigned},
                   {"multi_category", gold_all.excluded_multi},
                   {"no_prediction", skipped}};
  ctx.write("report.json", j.dump(2) + "\n");
  ctx.out << fmt::format("topics-eval: {} docs, accuracy {:.4f}, macro F1 {:.4f} ({}) -> {}\n", report.total,
                         report.accuracy, report.macro_f1, to_string(policy),
                         (ctx.out_dir / "report.json").string());
  return kExitOk;
}

int cmd_report(const Context& ctx) {
  if (!fs::is_directory(ctx.out_dir)) throw DataError("output directory not found: " + ctx.out_dir.string());
  nlohmann::ordered_json summary;
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::object();
  for (const char* name : {"trends.csv", "hashtags.csv", "words.csv", "bigrams.csv", "sentiment.csv",
                           "verbs.csv", "pairs.csv", "predictions.csv"}) {
    const auto path = ctx.out_dir / name;
    if (!fs::is_regular_file(path)) continue;
    const auto records = parse_csv(read_file(path));
    artifacts[name] = {{"rows", records.empty() ? 0 : records.size() - 1}};
  }
  if (const auto path = ctx.model_path(); fs::is_regular_file(path)) {
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw DataError(path.string() + ": unreadable model dump");
    artifacts["model.json"] = {{"documents", j.value("documents", nlohmann::json::array()).size()},
                               {"vocabulary", j.value("vocabulary", nlohmann::json::array()).size()},
                               {"seeded_topics", j.value("seeded_topics", nlohmann::json::array()).size()},
                               {"unseeded_topics", j.value("unseeded_topics", 0)}};
  }
  if (const auto path = ctx.out_dir / "report.json"; fs::is_regular_file(path)) {
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw DataError(path.string() + ": unreadable evaluation report");
    artifacts["report.json"] = {{"documents", j.value("documents", 0)},
                                {"accuracy", j.value("accuracy", 0.0)},
                                {"macro", j.value("macro", nlohmann::json::object())},
                                {"gold_policy", j.value("gold_policy", "")}};
  }
  if (artifacts.empty()) throw DataError("no artifacts found in " + ctx.out_dir.string());
  summary["artifacts"] = artifacts;
  ctx.write("summary.json", summary.dump(2) + "\n");
  ctx.out << fmt::format("report: {} artifacts summarized -> {}\n", artifacts.size(),
                         (ctx.out_dir / "summary.json").string());
  return kExitOk;
}

const std::map<std::string, int (*)(const Context&)>& commands() {
  static const std::map<std::string, int (*)(const Context&)> table = {
      {"trends", cmd_trends},
      {"words", cmd_words},
      {"bigrams", cmd_bigrams},
      {"sentiment", cmd_sentiment},
      {"verbs", cmd_verbs},
      {"pairs", cmd_pairs},
      {"topics-train", cmd_topics_train},
      {"topics-classify", cmd_topics_classify},
      {"topics-eval", cmd_topics_eval},
      {"report", cmd_report},
  };
  return table;
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& f : fields()) j[f.name] = f.get(config);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  RunConfig config;
  for (const auto& [key, value] : j.items()) {
    auto it = std::find_if(fields().begin(), fields().end(), [&](const Field& f) { return f.name == key; });
    if (it == fields().end()) throw std::invalid_argument("unknown config key \"" + key + "\"");
    try {
      it->set(config, value);
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("config key \"" + key + "\" has the wrong type");
    }
  }
  return config;
}

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hashlens: hashtag-group text analytics and seeded topic models", "hashlens"};
  app.require_subcommand(1, 1);

  RunConfig flags;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  std::vector<std::pair<CLI::Option*, const Field*>> bound;
  for (const auto& f : fields()) bound.emplace_back(f.add_flag(app, flags), &f);

  for (const auto& [name, help] : kSubcommands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> argv_storage;
  argv_storage.emplace_back("hashlens");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  RunConfig config;
  try {
    if (!config_path.empty()) {
      if (!fs::is_regular_file(config_path)) throw DataError("config not found: " + config_path);
      const auto j = nlohmann::json::parse(read_file(config_path), nullptr, false);
      if (j.is_discarded()) throw DataError(config_path + ": config is not valid JSON");
      config = config_from_json(j);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << config_path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  for (const auto& [option, f] : bound) {
    if (option->count() > 0) f->set(config, f->get(flags));
  }
  try {
    validate_values(config);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Context ctx{config, out, err, fs::path(config.out)};
  try {
    return commands().at(subcommand)(ctx);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << subcommand << ": " << e.what() << "\n";
  }
  return kExitData;
}

}  // namespace hashlens
