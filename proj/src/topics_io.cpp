#include <fmt/format.h>
#include "json.hpp"

#include "hashlens/topics.hpp"

namespace hashlens {

namespace {

constexpr std::string_view kFormat = "hashlens.seeded_lda";
constexpr int kVersion = 1;

}  // namespace

void save_model(const SeededLdaModel& model, const std::filesystem::path& path) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  const auto& p = model.params();
  j["params"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"mu", p.mu},
                 {"iterations", p.iterations}, {"rng_seed", p.rng_seed}};
  j["sweeps_done"] = model.sweeps_done();

  ordered_json seeded = ordered_json::array();
  for (std::size_t t = 0; t < model.num_seeded(); ++t) {
    ordered_json words = ordered_json::array();
    for (auto w : model.topic_seeds(t)) words.push_back(model.vocabulary()[static_cast<std::size_t>(w)]);
    seeded.push_back({{"category", model.topic_label(t)}, {"seeds", words}});
  }
  j["seeded_topics"] = seeded;
  j["unseeded_topics"] = model.num_topics() - model.num_seeded();
  j["missing_seeds"] = model.missing_seeds();
  j["dropped_docs"] = model.dropped_docs();
  j["vocabulary"] = model.vocabulary();

  ordered_json docs = ordered_json::array();
  for (std::size_t d = 0; d < model.num_docs(); ++d) {
    const auto words = model.doc_words(d);
    const auto topics = model.doc_assignments(d);
    docs.push_back({{"id", model.doc_id(d)},
                    {"words", std::vector<std::int32_t>(words.begin(), words.end())},
                    {"topics", std::vector<std::int32_t>(topics.begin(), topics.end())}});
  }
  j["documents"] = docs;
  write_file(path, j.dump() + "\n");
}

SeededLdaModel load_model(const std::filesystem::path& path) {
  const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw DataError(path.string() + ": not a JSON model dump");
  if (j.value("format", "") != kFormat) throw DataError(path.string() + ": unknown model format");
  if (j.value("version", 0) != kVersion) {
    throw DataError(fmt::format("{}: unsupported model version {}", path.string(), j.value("version", 0)));
  }
  try {
    LdaParams params;
    const auto& p = j.at("params");
    params.alpha = p.at("alpha").get<double>();
    params.beta = p.at("beta").get<double>();
    params.mu = p.at("mu").get<double>();
    params.iterations = p.at("iterations").get<std::size_t>();
    params.rng_seed = p.at("rng_seed").get<std::uint64_t>();

    SeedSpec seeds;
    for (const auto& topic : j.at("seeded_topics")) {
      seeds.seeded.emplace_back(topic.at("category").get<std::string>(),
                                topic.at("seeds").get<std::vector<std::string>>());
    }
    seeds.unseeded = j.at("unseeded_topics").get<std::size_t>();

    std::vector<std::string> ids;
    std::vector<std::vector<std::int32_t>> words;
    std::vector<std::vector<std::int32_t>> topics;
    for (const auto& doc : j.at("documents")) {
      ids.push_back(doc.at("id").get<std::string>());
      words.push_back(doc.at("words").get<std::vector<std::int32_t>>());
      topics.push_back(doc.at("topics").get<std::vector<std::int32_t>>());
    }
    // seeds whose words were absent at training time are not stored, so an
    // emptied seed list is legal here
    SeedSpec checked = seeds;
    for (auto& [_, list] : checked.seeded) {
      if (list.empty()) list.push_back("");
    }
    auto model = SeededLdaModel::from_state(j.at("vocabulary").get<std::vector<std::string>>(), checked,
                                            params, std::move(ids), words, topics);
    model.missing_seeds_ = j.at("missing_seeds").get<std::vector<std::string>>();
    model.dropped_docs_ = j.at("dropped_docs").get<std::vector<std::string>>();
    model.sweeps_done_ = j.at("sweeps_done").get<std::size_t>();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": malformed model dump: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(path.string() + ": inconsistent model dump: " + e.what());
  } catch (const std::logic_error& e) {
    throw DataError(path.string() + ": model dump fails count checks: " + e.what());
  }
}

}  // namespace hashlens
