#include "hashlens/topics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include "json.hpp"

namespace hashlens {

void SeedSpec::validate() const {
  std::set<std::string> names;
  for (const auto& [name, words] : seeded) {
    if (!names.insert(name).second) throw std::invalid_argument("duplicate seeded topic \"" + name + "\"");
    if (words.empty()) throw std::invalid_argument("seeded topic \"" + name + "\" has no seed words");
  }
}

SeedSpec load_seed_spec(const std::filesystem::path& path, std::size_t unseeded,
                        const std::function<std::string(std::string_view)>& transform) {
  const auto doc = nlohmann::ordered_json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw DataError(path.string() + ": seed file must be a JSON object");
  }
  SeedSpec spec;
  spec.unseeded = unseeded;
  for (const auto& [name, words] : doc.items()) {
    if (!words.is_array()) throw DataError(path.string() + ": \"" + name + "\" must map to an array");
    std::vector<std::string> list;
    for (const auto& w : words) {
      if (!w.is_string()) throw DataError(path.string() + ": \"" + name + "\" has a non-string seed");
      auto word = casefold(trim(w.get<std::string>()));
      if (transform) word = transform(word);
      if (!word.empty() && std::find(list.begin(), list.end(), word) == list.end()) list.push_back(word);
    }
    spec.seeded.emplace_back(name, std::move(list));
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return spec;
}

std::optional<std::int32_t> SeededLdaModel::word_id(std::string_view word) const {
  auto it = word_ids_.find(std::string(word));
  if (it == word_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::int32_t> SeededLdaModel::doc_words(std::size_t d) const {
  return std::span<const std::int32_t>(tokens_).subspan(doc_offsets_[d], doc_length(d));
}

std::span<const std::int32_t> SeededLdaModel::doc_assignments(std::size_t d) const {
  return std::span<const std::int32_t>(assignments_).subspan(doc_offsets_[d], doc_length(d));
}

std::int64_t SeededLdaModel::topic_word_count(std::size_t t, std::int32_t w) const {
  for (const auto& tc : word_topics_[static_cast<std::size_t>(w)]) {
    if (tc.topic == static_cast<std::int32_t>(t)) return tc.count;
  }
  return 0;
}

double SeededLdaModel::prior(std::size_t t, std::int32_t w) const {
  const auto& topics = seed_topics_of_word_[static_cast<std::size_t>(w)];
  const bool seeded = std::find(topics.begin(), topics.end(), static_cast<std::int32_t>(t)) != topics.end();
  return params_.beta + (seeded ? params_.mu : 0.0);
}

void SeededLdaModel::init_topics(const SeedSpec& seeds) {
  const std::size_t k = seeds.seeded.size() + seeds.unseeded;
  num_seeded_ = seeds.seeded.size();
  topic_labels_.assign(k, std::string());
  topic_seeds_.assign(k, {});
  seed_topics_of_word_.assign(vocabulary_.size(), {});
  missing_seeds_.clear();
  std::set<std::string> missing;
  for (std::size_t t = 0; t < seeds.seeded.size(); ++t) {
    topic_labels_[t] = seeds.seeded[t].first;
    std::set<std::int32_t> ids;
    for (const auto& word : seeds.seeded[t].second) {
      if (auto id = word_id(word)) {
        ids.insert(*id);
      } else {
        missing.insert(word);
      }
    }
    topic_seeds_[t].assign(ids.begin(), ids.end());
    for (auto id : ids) seed_topics_of_word_[static_cast<std::size_t>(id)].push_back(static_cast<std::int32_t>(t));
  }
  missing_seeds_.assign(missing.begin(), missing.end());

  prior_sums_.assign(k, 0.0);
  const double v = static_cast<double>(vocabulary_.size());
  for (std::size_t t = 0; t < k; ++t) {
    prior_sums_[t] = v * params_.beta + params_.mu * static_cast<double>(topic_seeds_[t].size());
  }
}

void SeededLdaModel::add(std::size_t d, std::int32_t w, std::int32_t t, std::int32_t delta) {
  doc_topic_[d * num_topics() + static_cast<std::size_t>(t)] += delta;
  topic_totals_[static_cast<std::size_t>(t)] += delta;
  auto& list = word_topics_[static_cast<std::size_t>(w)];
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].topic != t) continue;
    list[i].count += delta;
    if (list[i].count == 0) {
      list[i] = list.back();
      list.pop_back();
    }
    return;
  }
  assert(delta > 0);
  list.push_back({t, delta});
}

void SeededLdaModel::rebuild_counts() {
  const std::size_t k = num_topics();
  doc_topic_.assign(num_docs() * k, 0);
  word_topics_.assign(vocabulary_.size(), {});
  topic_totals_.assign(k, 0);
  for (std::size_t d = 0; d < num_docs(); ++d) {
    for (std::size_t i = doc_offsets_[d]; i < doc_offsets_[d + 1]; ++i) add(d, tokens_[i], assignments_[i], 1);
  }
}

SeededLdaModel SeededLdaModel::from_state(std::vector<std::string> vocabulary, const SeedSpec& seeds,
                                          const LdaParams& params, std::vector<std::string> doc_ids,
                                          const std::vector<std::vector<std::int32_t>>& docs,
                                          const std::vector<std::vector<std::int32_t>>& assignments) {
  seeds.validate();
  if (docs.size() != doc_ids.size() || docs.size() != assignments.size()) {
    throw std::invalid_argument("from_state: docs, ids and assignments differ in length");
  }
  SeededLdaModel m;
  m.params_ = params;
  m.vocabulary_ = std::move(vocabulary);
  for (std::size_t i = 0; i < m.vocabulary_.size(); ++i) {
    if (!m.word_ids_.emplace(m.vocabulary_[i], static_cast<std::int32_t>(i)).second) {
      throw std::invalid_argument("from_state: duplicate vocabulary entry \"" + m.vocabulary_[i] + "\"");
    }
  }
  m.doc_ids_ = std::move(doc_ids);
  m.init_topics(seeds);
  const auto k = static_cast<std::int32_t>(m.num_topics());
  const auto v = static_cast<std::int32_t>(m.vocabulary_.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].size() != assignments[d].size()) {
      throw std::invalid_argument(fmt::format("from_state: document {} has {} tokens but {} assignments", d,
                                              docs[d].size(), assignments[d].size()));
    }
    for (std::size_t i = 0; i < docs[d].size(); ++i) {
      if (docs[d][i] < 0 || docs[d][i] >= v) throw std::invalid_argument("from_state: word id out of range");
      if (assignments[d][i] < 0 || assignments[d][i] >= k) throw std::invalid_argument("from_state: topic out of range");
      m.tokens_.push_back(docs[d][i]);
      m.assignments_.push_back(assignments[d][i]);
    }
    m.doc_offsets_.push_back(m.tokens_.size());
  }
  m.rebuild_counts();
  m.check_invariants();
  return m;
}

void SeededLdaModel::conditional_weights(std::size_t d, std::size_t pos, std::span<double> out) const {
  const std::size_t k = num_topics();
  assert(out.size() == k);
  const std::size_t index = doc_offsets_[d] + pos;
  const std::int32_t w = tokens_[index];
  const std::int32_t own = assignments_[index];
  for (std::size_t t = 0; t < k; ++t) {
    const bool self = static_cast<std::int32_t>(t) == own;
    const double ndt = static_cast<double>(doc_topic_count(d, t) - (self ? 1 : 0));
    const double ntw = static_cast<double>(topic_word_count(t, w) - (self ? 1 : 0));
    const double nt = static_cast<double>(topic_totals_[t] - (self ? 1 : 0));
    out[t] = (ndt + params_.alpha) * (ntw + prior(t, w)) / (nt + prior_sums_[t]);
  }
}

void SeededLdaModel::sweep(Rng& rng, std::vector<double>& scratch) {
  const std::size_t k = num_topics();
  scratch.assign(3 * k, 0.0);
  double* weights = scratch.data();
  double* word_counts = weights + k;
  double* word_prior = word_counts + k;
  const double alpha = params_.alpha;

  for (std::size_t d = 0; d < num_docs(); ++d) {
    std::int64_t* doc_counts = &doc_topic_[d * k];
    for (std::size_t i = doc_offsets_[d]; i < doc_offsets_[d + 1]; ++i) {
      const std::int32_t w = tokens_[i];
      add(d, w, assignments_[i], -1);

      std::fill(word_counts, word_counts + k, 0.0);
      for (const auto& tc : word_topics_[static_cast<std::size_t>(w)]) {
        word_counts[tc.topic] = static_cast<double>(tc.count);
      }
      std::fill(word_prior, word_prior + k, params_.beta);
      for (auto t : seed_topics_of_word_[static_cast<std::size_t>(w)]) word_prior[t] += params_.mu;

      double total = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        total += (static_cast<double>(doc_counts[t]) + alpha) * (word_counts[t] + word_prior[t]) /
                 (static_cast<double>(topic_totals_[t]) + prior_sums_[t]);
        weights[t] = total;
      }
      assert(total > 0.0 && std::isfinite(total));

      const double u = rng.uniform() * total;
      std::size_t chosen = 0;
      while (chosen + 1 < k && weights[chosen] <= u) ++chosen;
      assignments_[i] = static_cast<std::int32_t>(chosen);
      add(d, w, assignments_[i], 1);
    }
  }
  ++sweeps_done_;
}

std::vector<double> SeededLdaModel::topic_word_distribution(std::size_t t) const {
  std::vector<double> phi(vocabulary_.size());
  const double denom = static_cast<double>(topic_totals_[t]) + prior_sums_[t];
  for (std::size_t w = 0; w < phi.size(); ++w) {
    const auto id = static_cast<std::int32_t>(w);
    phi[w] = (static_cast<double>(topic_word_count(t, id)) + prior(t, id)) / denom;
  }
  return phi;
}

void SeededLdaModel::check_invariants() const {
  const std::size_t k = num_topics();
  std::vector<std::int64_t> doc_topic(num_docs() * k, 0);
  std::vector<std::vector<std::int64_t>> topic_word(k, std::vector<std::int64_t>(vocabulary_.size(), 0));
  std::vector<std::int64_t> totals(k, 0);
  for (std::size_t d = 0; d < num_docs(); ++d) {
    for (std::size_t i = doc_offsets_[d]; i < doc_offsets_[d + 1]; ++i) {
      const auto t = static_cast<std::size_t>(assignments_[i]);
      if (t >= k) throw std::logic_error(fmt::format("token {} has topic {} outside [0, {})", i, t, k));
      ++doc_topic[d * k + t];
      ++topic_word[t][static_cast<std::size_t>(tokens_[i])];
      ++totals[t];
    }
  }

  std::int64_t grand_total = 0;
  for (std::size_t d = 0; d < num_docs(); ++d) {
    std::int64_t row = 0;
    for (std::size_t t = 0; t < k; ++t) {
      const auto c = doc_topic_count(d, t);
      if (c < 0) throw std::logic_error(fmt::format("n_dt[{},{}] is negative", d, t));
      if (c != doc_topic[d * k + t]) throw std::logic_error(fmt::format("n_dt[{},{}] out of sync", d, t));
      row += c;
    }
    if (row != static_cast<std::int64_t>(doc_length(d))) {
      throw std::logic_error(fmt::format("sum_t n_dt[{},t] = {} but document length is {}", d, row, doc_length(d)));
    }
  }
  for (std::size_t w = 0; w < vocabulary_.size(); ++w) {
    std::set<std::int32_t> seen;
    for (const auto& tc : word_topics_[w]) {
      if (tc.count <= 0) throw std::logic_error(fmt::format("n_tw entry for word {} is not positive", w));
      if (!seen.insert(tc.topic).second) throw std::logic_error(fmt::format("word {} lists topic twice", w));
    }
  }
  for (std::size_t t = 0; t < k; ++t) {
    std::int64_t sum = 0;
    for (std::size_t w = 0; w < vocabulary_.size(); ++w) {
      const auto c = topic_word_count(t, static_cast<std::int32_t>(w));
      if (c != topic_word[t][w]) throw std::logic_error(fmt::format("n_tw[{},{}] out of sync", t, w));
      sum += c;
    }
    if (topic_totals_[t] < 0) throw std::logic_error(fmt::format("n_t[{}] is negative", t));
    if (sum != topic_totals_[t] || totals[t] != topic_totals_[t]) {
      throw std::logic_error(fmt::format("sum_w n_tw[{},w] = {} but n_t = {}", t, sum, topic_totals_[t]));
    }
    grand_total += topic_totals_[t];
  }
  if (grand_total != static_cast<std::int64_t>(tokens_.size())) {
    throw std::logic_error(fmt::format("sum_t n_t = {} but corpus has {} tokens", grand_total, tokens_.size()));
  }
}

SeededLdaModel train(const std::vector<TokenizedDoc>& docs, const SeedSpec& seeds, const LdaParams& params,
                     const TrainOptions& options) {
  seeds.validate();
  if (!(params.alpha > 0) || !(params.beta > 0) || !(params.mu >= 0)) {
    throw std::invalid_argument("train: alpha and beta must be positive and mu non-negative");
  }
  if (params.iterations == 0) throw std::invalid_argument("train: iterations must be positive");
  if (seeds.seeded.size() + seeds.unseeded == 0) throw std::invalid_argument("train: no topics");

  SeededLdaModel m;
  m.params_ = params;
  for (const auto& doc : docs) {
    if (doc.tokens.empty()) {
      m.dropped_docs_.push_back(doc.tweet_id);
      continue;
    }
    m.doc_ids_.push_back(doc.tweet_id);
    for (const auto& token : doc.tokens) {
      auto [it, inserted] = m.word_ids_.emplace(token, static_cast<std::int32_t>(m.vocabulary_.size()));
      if (inserted) m.vocabulary_.push_back(token);
      m.tokens_.push_back(it->second);
    }
    m.doc_offsets_.push_back(m.tokens_.size());
  }
  if (m.vocabulary_.empty()) throw DataError("train: vocabulary is empty (no non-empty documents)");

  m.init_topics(seeds);
  const std::size_t k = m.num_topics();

  Rng rng(params.rng_seed);
  m.assignments_.resize(m.tokens_.size());
  for (std::size_t i = 0; i < m.tokens_.size(); ++i) {
    const auto& seeded_in = m.seed_topics_of_word_[static_cast<std::size_t>(m.tokens_[i])];
    if (seeded_in.size() == 1) {
      m.assignments_[i] = seeded_in.front();
    } else if (seeded_in.size() > 1) {
      m.assignments_[i] = seeded_in[rng.index(seeded_in.size())];
    } else {
      m.assignments_[i] = static_cast<std::int32_t>(rng.index(k));
    }
  }
  m.rebuild_counts();
  m.check_invariants();

  std::vector<double> scratch;
  for (std::size_t s = 1; s <= params.iterations; ++s) {
    m.sweep(rng, scratch);
    if (options.check == InvariantCheck::EverySweep) m.check_invariants();
    if (options.on_sweep) options.on_sweep(m, s);
  }
  if (options.check == InvariantCheck::Endpoints) m.check_invariants();
  return m;
}

std::vector<double> doc_topic_distribution(const SeededLdaModel& model, std::size_t d) {
  const std::size_t k = model.num_topics();
  const double alpha = model.params().alpha;
  const double denom = static_cast<double>(model.doc_length(d)) + static_cast<double>(k) * alpha;
  std::vector<double> theta(k);
  for (std::size_t t = 0; t < k; ++t) theta[t] = (static_cast<double>(model.doc_topic_count(d, t)) + alpha) / denom;
  return theta;
}

std::string classify_distribution(std::span<const double> theta, std::span<const std::string> labels, Rng& rng) {
  if (theta.empty() || theta.size() != labels.size()) {
    throw std::invalid_argument("classify: distribution and labels differ in length");
  }
  const double best = *std::max_element(theta.begin(), theta.end());
  std::vector<std::size_t> tied;
  for (std::size_t t = 0; t < theta.size(); ++t) {
    if (theta[t] == best) tied.push_back(t);
  }
  const std::size_t winner = tied.size() == 1 ? tied.front() : tied[rng.index(tied.size())];
  return labels[winner].empty() ? std::string(kUnassigned) : labels[winner];
}

std::string classify(const SeededLdaModel& model, std::size_t d, Rng& rng) {
  std::vector<std::string> labels(model.num_topics());
  for (std::size_t t = 0; t < labels.size(); ++t) labels[t] = model.topic_label(t);
  const auto theta = doc_topic_distribution(model, d);
  return classify_distribution(theta, labels, rng);
}

}  // namespace hashlens
