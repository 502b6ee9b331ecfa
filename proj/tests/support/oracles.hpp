#pragma once

// Independent reference computations used to check library results.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hashlens/evaluation.hpp"
#include "hashlens/lexstats.hpp"

namespace hashlens::testing {

/// Pearson's statistic as the sum of (O - E)^2 / E with E = row * col / N.
/// Zero when any expected count is zero.
inline double chi_squared_oracle(const Contingency& t) {
  const double o[2][2] = {{double(t.cells[0]), double(t.cells[1])}, {double(t.cells[2]), double(t.cells[3])}};
  const double n = o[0][0] + o[0][1] + o[1][0] + o[1][1];
  const double row[2] = {o[0][0] + o[0][1], o[1][0] + o[1][1]};
  const double col[2] = {o[0][0] + o[1][0], o[0][1] + o[1][1]};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double e = row[i] * col[j] / n;
      if (e == 0.0) return 0.0;
      sum += (o[i][j] - e) * (o[i][j] - e) / e;
    }
  }
  return sum;
}

/// Recomputes every report field by scanning all (gold, prediction) pairs
/// once per label or label pair, using the report's label order. Returns
/// a description of the first disagreement, or "" when everything matches
/// exactly.
inline std::string compare_with_brute_force(const EvaluationReport& r,
                                            const std::map<std::string, std::string>& predictions,
                                            const std::map<std::string, std::string>& gold) {
  std::vector<std::pair<std::string, std::string>> pairs;  // (gold, predicted)
  for (const auto& [id, g] : gold) pairs.emplace_back(g, predictions.at(id));

  std::set<std::string> labels, gold_labels;
  for (const auto& [g, p] : pairs) {
    labels.insert(g);
    labels.insert(p);
    gold_labels.insert(g);
  }
  if (std::set<std::string>(r.labels.begin(), r.labels.end()) != labels || r.labels.size() != labels.size()) {
    return "label set";
  }
  if (r.total != pairs.size()) return "total";

  auto ratio = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : double(a) / double(b); };
  auto f1 = [](double p, double q) { return p + q == 0.0 ? 0.0 : 2.0 * p * q / (p + q); };

  std::size_t correct = 0;
  for (const auto& [g, p] : pairs) correct += g == p ? 1 : 0;
  if (r.accuracy != ratio(correct, pairs.size())) return "accuracy";

  double macro_p = 0, macro_r = 0, macro_f = 0;
  std::size_t classes = 0, all_tp = 0, all_fp = 0, all_fn = 0;
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const auto& a = r.labels[i];
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
      std::size_t cell = 0;
      for (const auto& [g, p] : pairs) cell += (g == a && p == r.labels[j]) ? 1 : 0;
      if (r.matrix[i][j] != cell) return "matrix cell " + a + "/" + r.labels[j];
    }
    std::size_t tp = 0, fp = 0, fn = 0;
    for (const auto& [g, p] : pairs) {
      tp += (g == a && p == a) ? 1 : 0;
      fp += (g != a && p == a) ? 1 : 0;
      fn += (g == a && p != a) ? 1 : 0;
    }
    const auto* m = r.find(a);
    if (!m) return "missing class " + a;
    const double prec = ratio(tp, tp + fp), rec = ratio(tp, tp + fn);
    if (m->tp != tp || m->fp != fp || m->fn != fn || m->support != tp + fn) return "counts of " + a;
    if (m->precision != prec || m->recall != rec || m->f1 != f1(prec, rec)) return "metrics of " + a;
    if (gold_labels.contains(a)) {
      ++classes;
      macro_p += prec;
      macro_r += rec;
      macro_f += f1(prec, rec);
      all_tp += tp;
      all_fp += fp;
      all_fn += fn;
    }
  }
  if (classes) {
    macro_p /= double(classes);
    macro_r /= double(classes);
    macro_f /= double(classes);
  }
  if (r.macro_precision != macro_p || r.macro_recall != macro_r || r.macro_f1 != macro_f) return "macro";
  const double micro_p = ratio(all_tp, all_tp + all_fp), micro_r = ratio(all_tp, all_tp + all_fn);
  if (r.micro_precision != micro_p || r.micro_recall != micro_r || r.micro_f1 != f1(micro_p, micro_r)) {
    return "micro";
  }
  return "";
}

}  // namespace hashlens::testing
