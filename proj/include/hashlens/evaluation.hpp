#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hashlens/corpus.hpp"
#include "hashlens/topics.hpp"

namespace hashlens {

struct ClassMetrics {
  std::string label;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t support = 0;  // gold count
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvaluationReport {
  std::vector<std::string> labels;                  // row and column order
  std::vector<std::vector<std::size_t>> matrix;     // [gold][predicted]
  std::size_t total = 0;
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;              // one per label
  // unweighted means over labels that occur in the gold set
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  // pooled counts over the gold labels
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f1 = 0.0;

  const ClassMetrics* find(std::string_view label) const;
};

/// Confusion matrix and metrics. Labels are ordered as in `label_order`,
/// then any others alphabetically, with "unassigned" last. Precision,
/// recall and F1 are 0 when their denominator is 0. Throws
/// std::invalid_argument when the two maps have different key sets.
EvaluationReport evaluate(const std::map<std::string, std::string>& predictions,
                          const std::map<std::string, std::string>& gold,
                          const std::vector<std::string>& label_order = {});

enum class GoldPolicy { Rarest, Priority, ExcludeMulti };

std::optional<GoldPolicy> parse_gold_policy(std::string_view name);
std::string_view to_string(GoldPolicy policy);

struct GoldLabels {
  std::map<std::string, std::string> labels;
  std::size_t excluded_unassigned = 0;  // no category at all
  std::size_t excluded_multi = 0;       // dropped by ExcludeMulti
};

/// Single gold category per tweet. Rarest picks the member category with
/// the fewest tweets in `membership` (ties by `category_order`); Priority
/// picks the first in `category_order`; ExcludeMulti drops tweets with
/// more than one category. Tweets without categories are excluded.
GoldLabels derive_gold(const Membership& membership, GoldPolicy policy,
                       const std::vector<std::string>& category_order);

/// JSON document with labels, matrix, accuracy, per-class, macro and micro
/// metrics and the gold policy.
std::string report_json(const EvaluationReport& report, std::string_view gold_policy);

}  // namespace hashlens
