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

#ifndef SCRIPTLID_CLASSIFIER_HPP
#define SCRIPTLID_CLASSIFIER_HPP

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scriptlid {

enum class ModelKind : unsigned char {
  kMnb = 0,
  kMlp = 1,
  kSubwordLinear = 2,
  kHierarchical = 3,
};

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kMnb: return "mnb";
    case ModelKind::kMlp: return "mlp";
    case ModelKind::kSubwordLinear: return "subword";
    case ModelKind::kHierarchical: return "hierarchical";
  }
  return "unknown";
}

struct Prediction {
  std::string label;
  double probability = 0.0;
};

/// Common prediction contract. Trained models are immutable; prediction is
/// safe under unrestricted concurrent readers.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual ModelKind kind() const = 0;
  virtual const std::vector<std::string>& labels() const = 0;

  /// Probability per label (same order as labels()); sums to 1.
  virtual std::vector<double> predict_proba(std::string_view text) const = 0;

  virtual void save(std::ostream& out) const = 0;

  /// Argmax label with its probability. Exact ties break toward the
  /// lexicographically smallest label.
  Prediction predict(std::string_view text) const {
    const auto proba = predict_proba(text);
    const auto& names = labels();
    std::size_t best = 0;
    for (std::size_t i = 1; i < proba.size(); ++i) {
      if (proba[i] > proba[best] ||
          (proba[i] == proba[best] && names[i] < names[best])) {
        best = i;
      }
    }
    return Prediction{names[best], proba[best]};
  }
};

}  // namespace scriptlid

#endif  // SCRIPTLID_CLASSIFIER_HPP
