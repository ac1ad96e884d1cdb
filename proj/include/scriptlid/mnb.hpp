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

#ifndef SCRIPTLID_MNB_HPP
#define SCRIPTLID_MNB_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scriptlid/classifier.hpp"
#include "scriptlid/dataset.hpp"
#include "scriptlid/ngram.hpp"

namespace scriptlid {

/// Multinomial Naive Bayes over character n-gram counts. Learned class
/// priors, no additive smoothing: an in-vocabulary feature with zero count
/// under a class zeroes that class's posterior. Features never seen in
/// training are uninformative and skipped. If every class is zeroed (or the
/// input yields no features), the posterior falls back to the priors.
///
/// The model stores exact integer counts as its parameters; probabilities
/// are derived deterministically from them, so save/load round-trips are
/// bit-exact and the posterior matches direct Bayes enumeration.
class MnbModel final : public Classifier {
 public:
  MnbModel(std::vector<std::string> labels, NgramSpec spec, std::vector<std::string> vocab,
           std::vector<std::uint64_t> class_doc_counts,
           std::vector<std::vector<std::uint64_t>> feature_counts)
      : labels_(std::move(labels)),
        spec_(std::move(spec)),
        vocab_(std::move(vocab)),
        class_doc_counts_(std::move(class_doc_counts)),
        feature_counts_(std::move(feature_counts)) {
    total_docs_ = 0;
    for (auto c : class_doc_counts_) total_docs_ += c;
    vocab_index_.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) vocab_index_.emplace(vocab_[i], i);
    class_feature_totals_.assign(labels_.size(), 0);
    log_prior_.assign(labels_.size(), 0.0);
    log_prob_.assign(labels_.size(), {});
    for (std::size_t c = 0; c < labels_.size(); ++c) {
      std::uint64_t total = 0;
      for (auto v : feature_counts_[c]) total += v;
      class_feature_totals_[c] = total;
      log_prior_[c] = std::log(static_cast<double>(class_doc_counts_[c]) /
                               static_cast<double>(total_docs_));
      auto& lp = log_prob_[c];
      lp.resize(vocab_.size());
      for (std::size_t f = 0; f < vocab_.size(); ++f) {
        lp[f] = feature_counts_[c][f] == 0
                    ? -std::numeric_limits<double>::infinity()
                    : std::log(static_cast<double>(feature_counts_[c][f]) /
                               static_cast<double>(total));
      }
    }
  }

  ModelKind kind() const override { return ModelKind::kMnb; }
  const std::vector<std::string>& labels() const override { return labels_; }
  const NgramSpec& ngram_spec() const { return spec_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<std::uint64_t>& class_doc_counts() const { return class_doc_counts_; }
  const std::vector<std::vector<std::uint64_t>>& feature_counts() const { return feature_counts_; }

  /// Per-class unnormalized log scores (prior + likelihood); -inf marks a
  /// zeroed class. Exposed for diagnostics and scale-invariance checks.
  std::vector<double> log_scores(std::string_view text) const {
    std::vector<double> scores(log_prior_);
    bool any_known = false;
    for (const auto& gram : extract_char_ngrams(text, spec_)) {
      auto it = vocab_index_.find(gram);
      if (it == vocab_index_.end()) continue;  // out-of-vocabulary: uninformative
      any_known = true;
      for (std::size_t c = 0; c < scores.size(); ++c) {
        scores[c] += log_prob_[c][it->second];
      }
    }
    if (!any_known) return log_prior_;
    return scores;
  }

  std::vector<double> predict_proba(std::string_view text) const override {
    auto scores = log_scores(text);
    double max_score = -std::numeric_limits<double>::infinity();
    for (double s : scores) max_score = std::max(max_score, s);
    if (std::isinf(max_score)) {
      // Every class hit a zero-probability feature: fall back to priors.
      scores = log_prior_;
      max_score = *std::max_element(scores.begin(), scores.end());
    }
    std::vector<double> proba(scores.size());
    double z = 0.0;
    for (std::size_t c = 0; c < scores.size(); ++c) {
      proba[c] = std::isinf(scores[c]) ? 0.0 : std::exp(scores[c] - max_score);
      z += proba[c];
    }
    for (double& p : proba) p /= z;
    return proba;
  }

  void save(std::ostream& out) const override;  // defined in model_io.hpp

 private:
  std::vector<std::string> labels_;
  NgramSpec spec_;
  std::vector<std::string> vocab_;
  std::vector<std::uint64_t> class_doc_counts_;
  std::vector<std::vector<std::uint64_t>> feature_counts_;  // [class][feature]

  // derived
  std::uint64_t total_docs_ = 0;
  std::unordered_map<std::string, std::size_t> vocab_index_;
  std::vector<std::uint64_t> class_feature_totals_;
  std::vector<double> log_prior_;
  std::vector<std::vector<double>> log_prob_;
};

inline MnbModel train_mnb(const Dataset& train, const NgramSpec& spec) {
  spec.validate();
  if (train.entries.empty()) throw std::invalid_argument("train_mnb: empty dataset");

  std::vector<std::string> labels;
  {
    auto set = train.labels();
    labels.assign(set.begin(), set.end());
  }
  std::map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) label_index[labels[i]] = i;

  std::unordered_map<std::string, std::size_t> vocab_index;
  std::vector<std::string> vocab;
  std::vector<std::uint64_t> doc_counts(labels.size(), 0);
  std::vector<std::unordered_map<std::size_t, std::uint64_t>> sparse_counts(labels.size());

  for (const auto& e : train.entries) {
    const std::size_t c = label_index.at(e.lang);
    ++doc_counts[c];
    for (const auto& gram : extract_char_ngrams(e.text, spec)) {
      auto [it, inserted] = vocab_index.emplace(gram, vocab.size());
      if (inserted) vocab.push_back(gram);
      ++sparse_counts[c][it->second];
    }
  }
  // Deterministic vocabulary order: sort grams, remap indices.
  std::vector<std::size_t> order(vocab.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vocab[a] < vocab[b]; });
  std::vector<std::size_t> remap(vocab.size());
  std::vector<std::string> sorted_vocab(vocab.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    remap[order[pos]] = pos;
    sorted_vocab[pos] = vocab[order[pos]];
  }
  std::vector<std::vector<std::uint64_t>> counts(labels.size(),
                                                 std::vector<std::uint64_t>(vocab.size(), 0));
  for (std::size_t c = 0; c < labels.size(); ++c) {
    for (const auto& [old_idx, v] : sparse_counts[c]) counts[c][remap[old_idx]] = v;
  }
  return MnbModel(std::move(labels), spec, std::move(sorted_vocab), std::move(doc_counts),
                  std::move(counts));
}

}  // namespace scriptlid

#endif  // SCRIPTLID_MNB_HPP
