// Copyright 2026 The scriptlid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCRIPTLID_EVAL_HPP
#define SCRIPTLID_EVAL_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace scriptlid {

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // gold count
};

/// Per-class and macro precision/recall/F1 plus the confusion matrix of one
/// evaluation run. Macro scores average over the classes present in gold.
struct EvaluationReport {
  std::map<std::string, ClassScores> per_class;  // keys: classes present in gold
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<std::string> matrix_labels;  // union of gold and predicted labels, sorted
  std::vector<std::uint64_t> matrix;       // row-major, rows = predicted, cols = true
  std::size_t n = 0;
  std::string dataset_name;
  int noise_level = 0;

  std::uint64_t matrix_at(std::size_t pred, std::size_t truth) const {
    return matrix[pred * matrix_labels.size() + truth];
  }
};

/// Standard per-class precision/recall/F1 from the prediction/gold pairs.
/// F1 is 0 where P+R is 0; a class never predicted has precision 0.
inline EvaluationReport score(const std::vector<std::string>& predictions,
                              const std::vector<std::string>& gold) {
  if (predictions.size() != gold.size()) {
    throw std::invalid_argument("score: predictions and gold differ in length");
  }
  if (gold.empty()) throw std::invalid_argument("score: empty input");

  EvaluationReport report;
  report.n = gold.size();
  std::set<std::string> label_set(gold.begin(), gold.end());
  const std::set<std::string> gold_set = label_set;
  label_set.insert(predictions.begin(), predictions.end());
  report.matrix_labels.assign(label_set.begin(), label_set.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < report.matrix_labels.size(); ++i) {
    index[report.matrix_labels[i]] = i;
  }
  const std::size_t m = report.matrix_labels.size();
  report.matrix.assign(m * m, 0);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    report.matrix[index.at(predictions[i]) * m + index.at(gold[i])] += 1;
  }

  for (const auto& label : gold_set) {
    const std::size_t c = index.at(label);
    std::uint64_t tp = report.matrix[c * m + c];
    std::uint64_t pred_total = 0, gold_total = 0;
    for (std::size_t t = 0; t < m; ++t) pred_total += report.matrix[c * m + t];
    for (std::size_t p = 0; p < m; ++p) gold_total += report.matrix[p * m + c];
    ClassScores s;
    s.support = gold_total;
    s.precision = pred_total == 0 ? 0.0
                                  : static_cast<double>(tp) / static_cast<double>(pred_total);
    s.recall = gold_total == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(gold_total);
    s.f1 = (s.precision + s.recall) == 0.0
               ? 0.0
               : 2.0 * s.precision * s.recall / (s.precision + s.recall);
    report.per_class[label] = s;
  }
  for (const auto& [label, s] : report.per_class) {
    (void)label;
    report.macro_precision += s.precision;
    report.macro_recall += s.recall;
    report.macro_f1 += s.f1;
  }
  const double k = static_cast<double>(report.per_class.size());
  report.macro_precision /= k;
  report.macro_recall /= k;
  report.macro_f1 /= k;
  return report;
}

/// Inverse standard normal CDF (Acklam's rational approximation,
/// |relative error| < 1.15e-9).
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("inverse_normal_cdf: p must be in (0,1)");
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  const double phigh = 1.0 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > phigh) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

/// Outcome of the one-tailed Z-test comparing two macro-F1 scores.
struct SignificanceResult {
  double f_root = 0.0;
  double f_hier = 0.0;
  double delta = 0.0;        // f_hier - f_root
  std::size_t n = 0;         // test sample count
  double alpha = 0.01;
  double upper_bound = 0.0;  // one-tailed CI bound around f_root
  bool significant = false;  // f_hier strictly above the bound
};

/// One-tailed Z-test at level alpha: builds the (1-alpha) one-sided
/// confidence bound f_root + z * sqrt(f_root (1 - f_root) / n) using the
/// binomial proportion variance, and calls the difference significant when
/// f_hier lies strictly above it. Requires n > 30 (normal approximation).
inline SignificanceResult significance_test(double f_root, double f_hier, std::size_t n,
                                            double alpha = 0.01) {
  if (!(f_root >= 0.0 && f_root <= 1.0 && f_hier >= 0.0 && f_hier <= 1.0)) {
    throw std::invalid_argument("significance_test: F1 scores must lie in [0,1]");
  }
  if (n <= 30) {
    throw std::invalid_argument(
        "significance_test: needs n > 30 for the normal approximation to hold");
  }
  SignificanceResult r;
  r.f_root = f_root;
  r.f_hier = f_hier;
  r.delta = f_hier - f_root;
  r.n = n;
  r.alpha = alpha;
  const double z = inverse_normal_cdf(1.0 - alpha);
  r.upper_bound = f_root + z * std::sqrt(f_root * (1.0 - f_root) / static_cast<double>(n));
  r.significant = f_hier > r.upper_bound;
  return r;
}

}  // namespace scriptlid

#endif  // SCRIPTLID_EVAL_HPP
