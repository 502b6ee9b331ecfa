#include "hashlens/evaluation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace hashlens {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

const ClassMetrics* EvaluationReport::find(std::string_view label) const {
  for (const auto& m : per_class) {
    if (m.label == label) return &m;
  }
  return nullptr;
}

EvaluationReport evaluate(const std::map<std::string, std::string>& predictions,
                          const std::map<std::string, std::string>& gold,
                          const std::vector<std::string>& label_order) {
  if (predictions.size() != gold.size() ||
      !std::equal(predictions.begin(), predictions.end(), gold.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw std::invalid_argument("evaluate: predictions and gold cover different documents");
  }

  std::set<std::string> seen;
  std::set<std::string> gold_labels;
  for (const auto& [_, g] : gold) {
    seen.insert(g);
    gold_labels.insert(g);
  }
  for (const auto& [_, p] : predictions) seen.insert(p);

  EvaluationReport r;
  for (const auto& l : label_order) {
    if (seen.count(l) && l != kUnassigned && std::find(r.labels.begin(), r.labels.end(), l) == r.labels.end()) {
      r.labels.push_back(l);
    }
  }
  for (const auto& l : seen) {
    if (l != kUnassigned && std::find(r.labels.begin(), r.labels.end(), l) == r.labels.end()) {
      r.labels.push_back(l);
    }
  }
  if (seen.count(std::string(kUnassigned))) r.labels.emplace_back(kUnassigned);

  const std::size_t n = r.labels.size();
  auto index_of = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(r.labels.begin(), r.labels.end(), l) - r.labels.begin());
  };
  r.matrix.assign(n, std::vector<std::size_t>(n, 0));
  auto p_it = predictions.begin();
  for (auto g_it = gold.begin(); g_it != gold.end(); ++g_it, ++p_it) {
    ++r.matrix[index_of(g_it->second)][index_of(p_it->second)];
  }
  r.total = gold.size();

  std::size_t trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += r.matrix[i][i];
  r.accuracy = ratio(trace, r.total);

  std::size_t pooled_tp = 0, pooled_fp = 0, pooled_fn = 0;
  std::size_t gold_classes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ClassMetrics m;
    m.label = r.labels[i];
    m.tp = r.matrix[i][i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      m.fp += r.matrix[j][i];
      m.fn += r.matrix[i][j];
    }
    m.support = m.tp + m.fn;
    m.precision = ratio(m.tp, m.tp + m.fp);
    m.recall = ratio(m.tp, m.tp + m.fn);
    m.f1 = harmonic(m.precision, m.recall);
    if (gold_labels.count(m.label)) {
      ++gold_classes;
      r.macro_precision += m.precision;
      r.macro_recall += m.recall;
      r.macro_f1 += m.f1;
      pooled_tp += m.tp;
      pooled_fp += m.fp;
      pooled_fn += m.fn;
    }
    r.per_class.push_back(std::move(m));
  }
  if (gold_classes > 0) {
    r.macro_precision /= static_cast<double>(gold_classes);
    r.macro_recall /= static_cast<double>(gold_classes);
    r.macro_f1 /= static_cast<double>(gold_classes);
  }
  r.micro_precision = ratio(pooled_tp, pooled_tp + pooled_fp);
  r.micro_recall = ratio(pooled_tp, pooled_tp + pooled_fn);
  r.micro_f1 = harmonic(r.micro_precision, r.micro_recall);
  return r;
}

std::optional<GoldPolicy> parse_gold_policy(std::string_view name) {
  if (name == "rarest") return GoldPolicy::Rarest;
  if (name == "priority") return GoldPolicy::Priority;
  if (name == "exclude_multi") return GoldPolicy::ExcludeMulti;
  return std::nullopt;
}

std::string_view to_string(GoldPolicy policy) {
  switch (policy) {
    case GoldPolicy::Rarest: return "rarest";
    case GoldPolicy::Priority: return "priority";
    case GoldPolicy::ExcludeMulti: return "exclude_multi";
  }
  return "rarest";
}

GoldLabels derive_gold(const Membership& membership, GoldPolicy policy,
                       const std::vector<std::string>& category_order) {
  std::map<std::string, std::size_t> sizes;
  for (const auto& [_, cats] : membership) {
    for (const auto& c : cats) ++sizes[c];
  }
  auto rank = [&](const std::string& c) {
    const auto it = std::find(category_order.begin(), category_order.end(), c);
    return static_cast<std::size_t>(it - category_order.begin());
  };
  // categories missing from category_order sort after it, by name
  auto before = [&](const std::string& a, const std::string& b) {
    const auto ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a < b;
  };

  GoldLabels out;
  for (const auto& [tweet, cats] : membership) {
    if (cats.empty()) {
      ++out.excluded_unassigned;
      continue;
    }
    if (cats.size() == 1) {
      out.labels[tweet] = cats.front();
      continue;
    }
    switch (policy) {
      case GoldPolicy::ExcludeMulti:
        ++out.excluded_multi;
        break;
      case GoldPolicy::Priority:
        out.labels[tweet] = *std::min_element(cats.begin(), cats.end(), before);
        break;
      case GoldPolicy::Rarest:
        out.labels[tweet] = *std::min_element(cats.begin(), cats.end(), [&](const auto& a, const auto& b) {
          return sizes[a] != sizes[b] ? sizes[a] < sizes[b] : before(a, b);
        });
        break;
    }
  }
  return out;
}

std::string report_json(const EvaluationReport& r, std::string_view gold_policy) {
  nlohmann::ordered_json j;
  j["gold_policy"] = gold_policy;
  j["documents"] = r.total;
  j["labels"] = r.labels;
  j["matrix"] = r.matrix;
  j["accuracy"] = r.accuracy;
  j["macro"] = {{"precision", r.macro_precision}, {"recall", r.macro_recall}, {"f1", r.macro_f1}};
  j["micro"] = {{"precision", r.micro_precision}, {"recall", r.micro_recall}, {"f1", r.micro_f1}};
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& m : r.per_class) {
    classes.push_back({{"label", m.label}, {"support", m.support}, {"tp", m.tp}, {"fp", m.fp},
                       {"fn", m.fn}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}});
  }
  j["per_class"] = classes;
  return j.dump(2) + "\n";
}

}  // namespace hashlens
