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

#ifndef SCRIPTLID_MLP_HPP
#define SCRIPTLID_MLP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scriptlid/classifier.hpp"
#include "scriptlid/dataset.hpp"
#include "scriptlid/linear.hpp"  // stable_softmax
#include "scriptlid/ngram.hpp"
#include "scriptlid/rng.hpp"

namespace scriptlid {

struct MlpHyper {
  int hidden = 500;
  int max_iter = 500;  // epochs over the training data
  int batch = 1000;
  double lr = 0.1;
  std::uint64_t seed = 0;

  void validate() const {
    if (hidden <= 0 || max_iter <= 0 || batch <= 0 || lr <= 0.0) {
      throw std::invalid_argument("mlp hyperparameters must be positive");
    }
  }
};

/// Sparse n-gram count vector: (vocabulary index, count) pairs.
using SparseCounts = std::vector<std::pair<std::uint32_t, float>>;

namespace detail {

/// Forward pass of the one-hidden-layer network: h = relu(W1 x + b1),
/// p = softmax(W2 h + b2). Shared by training, prediction and the
/// finite-difference checks.
template <typename Scalar>
inline void mlp_forward(const std::vector<Scalar>& w1, const std::vector<Scalar>& b1,
                        const std::vector<Scalar>& w2, const std::vector<Scalar>& b2,
                        std::size_t hidden, std::size_t vocab, std::size_t n_labels,
                        const SparseCounts& x, std::vector<Scalar>& z1, std::vector<Scalar>& h,
                        std::vector<Scalar>& p) {
  z1.assign(hidden, Scalar{0});
  for (const auto& [f, v] : x) {
    const Scalar val = static_cast<Scalar>(v);
    for (std::size_t j = 0; j < hidden; ++j) {
      z1[j] += w1[j * vocab + f] * val;
    }
  }
  h.resize(hidden);
  for (std::size_t j = 0; j < hidden; ++j) {
    z1[j] += b1[j];
    h[j] = z1[j] > Scalar{0} ? z1[j] : Scalar{0};
  }
  p.assign(n_labels, Scalar{0});
  for (std::size_t c = 0; c < n_labels; ++c) {
    Scalar acc = b2[c];
    const Scalar* row = w2.data() + c * hidden;
    for (std::size_t j = 0; j < hidden; ++j) acc += row[j] * h[j];
    p[c] = acc;
  }
  stable_softmax(p);
}

/// Summed cross-entropy over a batch with optional analytic gradients;
/// finite-differenced by the test suite against the same code the training
/// loop runs.
template <typename Scalar>
inline Scalar mlp_batch_loss_grad(const std::vector<Scalar>& w1, const std::vector<Scalar>& b1,
                                  const std::vector<Scalar>& w2, const std::vector<Scalar>& b2,
                                  std::size_t hidden, std::size_t vocab, std::size_t n_labels,
                                  const std::vector<SparseCounts>& xs,
                                  const std::vector<std::size_t>& labels,
                                  std::vector<Scalar>* dw1, std::vector<Scalar>* db1,
                                  std::vector<Scalar>* dw2, std::vector<Scalar>* db2) {
  Scalar loss = 0;
  std::vector<Scalar> z1, h, p, dh(hidden);
  for (std::size_t e = 0; e < xs.size(); ++e) {
    mlp_forward(w1, b1, w2, b2, hidden, vocab, n_labels, xs[e], z1, h, p);
    loss -= std::log(std::max(p[labels[e]], Scalar(1e-300)));
    if (dw1 == nullptr) continue;
    p[labels[e]] -= Scalar{1};  // p becomes dlogits
    for (std::size_t c = 0; c < n_labels; ++c) {
      const Scalar g = p[c];
      Scalar* row = dw2->data() + c * hidden;
      for (std::size_t j = 0; j < hidden; ++j) row[j] += g * h[j];
      (*db2)[c] += g;
    }
    for (std::size_t j = 0; j < hidden; ++j) {
      Scalar acc = 0;
      for (std::size_t c = 0; c < n_labels; ++c) acc += p[c] * w2[c * hidden + j];
      dh[j] = z1[j] > Scalar{0} ? acc : Scalar{0};  // relu gate
      (*db1)[j] += dh[j];
    }
    for (const auto& [f, v] : xs[e]) {
      const Scalar val = static_cast<Scalar>(v);
      for (std::size_t j = 0; j < hidden; ++j) {
        (*dw1)[j * vocab + f] += dh[j] * val;
      }
    }
  }
  return loss;
}

}  // namespace detail

class MlpModel final : public Classifier {
 public:
  MlpModel(std::vector<std::string> labels, NgramSpec spec, MlpHyper hyper,
           std::vector<std::string> vocab, std::vector<float> w1, std::vector<float> b1,
           std::vector<float> w2, std::vector<float> b2)
      : labels_(std::move(labels)),
        spec_(std::move(spec)),
        hyper_(std::move(hyper)),
        vocab_(std::move(vocab)),
        w1_(std::move(w1)),
        b1_(std::move(b1)),
        w2_(std::move(w2)),
        b2_(std::move(b2)) {
    for (std::size_t i = 0; i < vocab_.size(); ++i) vocab_index_.emplace(vocab_[i], i);
  }

  ModelKind kind() const override { return ModelKind::kMlp; }
  const std::vector<std::string>& labels() const override { return labels_; }
  const NgramSpec& ngram_spec() const { return spec_; }
  const MlpHyper& hyper() const { return hyper_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<float>& w1() const { return w1_; }
  const std::vector<float>& b1() const { return b1_; }
  const std::vector<float>& w2() const { return w2_; }
  const std::vector<float>& b2() const { return b2_; }

  SparseCounts featurize(std::string_view text) const {
    std::unordered_map<std::uint32_t, float> counts;
    for (const auto& gram : extract_char_ngrams(text, spec_)) {
      auto it = vocab_index_.find(gram);
      if (it != vocab_index_.end()) counts[static_cast<std::uint32_t>(it->second)] += 1.0f;
    }
    SparseCounts x(counts.begin(), counts.end());
    std::sort(x.begin(), x.end());
    return x;
  }

  std::vector<double> predict_proba(std::string_view text) const override {
    const auto x = featurize(text);
    const std::size_t hidden = b1_.size();
    const std::size_t n_labels = labels_.size();
    std::vector<double> z1(hidden, 0.0);
    for (const auto& [f, v] : x) {
      for (std::size_t j = 0; j < hidden; ++j) {
        z1[j] += static_cast<double>(w1_[j * vocab_.size() + f]) * static_cast<double>(v);
      }
    }
    std::vector<double> h(hidden);
    for (std::size_t j = 0; j < hidden; ++j) {
      z1[j] += static_cast<double>(b1_[j]);
      h[j] = z1[j] > 0.0 ? z1[j] : 0.0;
    }
    std::vector<double> logits(n_labels);
    for (std::size_t c = 0; c < n_labels; ++c) {
      double acc = static_cast<double>(b2_[c]);
      for (std::size_t j = 0; j < hidden; ++j) acc += static_cast<double>(w2_[c * hidden + j]) * h[j];
      logits[c] = acc;
    }
    detail::stable_softmax(logits);
    return logits;
  }

  void save(std::ostream& out) const override;  // defined in model_io.hpp

 private:
  std::vector<std::string> labels_;
  NgramSpec spec_;
  MlpHyper hyper_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::size_t> vocab_index_;
  std::vector<float> w1_;  // hidden x vocab
  std::vector<float> b1_;  // hidden
  std::vector<float> w2_;  // labels x hidden
  std::vector<float> b2_;  // labels
};

/// Mini-batch gradient descent on n-gram count vectors; stops after
/// hyper.max_iter epochs.
inline MlpModel train_mlp(const Dataset& train, const MlpHyper& hyper, const NgramSpec& spec) {
  hyper.validate();
  spec.validate();
  if (train.entries.empty()) throw std::invalid_argument("train_mlp: empty dataset");
  std::vector<std::string> labels;
  {
    auto set = train.labels();
    labels.assign(set.begin(), set.end());
  }
  if (labels.size() < 2) throw std::invalid_argument("train_mlp: need at least two labels");
  std::map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) label_index[labels[i]] = i;

  // Build the vocabulary (sorted for determinism) and featurize.
  std::map<std::string, std::uint32_t> vocab_map;
  std::vector<std::vector<std::string>> doc_grams(train.entries.size());
  for (std::size_t i = 0; i < train.entries.size(); ++i) {
    doc_grams[i] = extract_char_ngrams(train.entries[i].text, spec);
    for (const auto& g : doc_grams[i]) vocab_map.emplace(g, 0);
  }
  std::vector<std::string> vocab;
  vocab.reserve(vocab_map.size());
  for (auto& [g, idx] : vocab_map) {
    idx = static_cast<std::uint32_t>(vocab.size());
    vocab.push_back(g);
  }
  std::vector<SparseCounts> xs(train.entries.size());
  std::vector<std::size_t> ys(train.entries.size());
  for (std::size_t i = 0; i < train.entries.size(); ++i) {
    std::map<std::uint32_t, float> counts;
    for (const auto& g : doc_grams[i]) counts[vocab_map.at(g)] += 1.0f;
    xs[i].assign(counts.begin(), counts.end());
    ys[i] = label_index.at(train.entries[i].lang);
  }
  doc_grams.clear();

  const std::size_t hidden = static_cast<std::size_t>(hyper.hidden);
  const std::size_t nv = vocab.size();
  const std::size_t n_labels = labels.size();
  Rng rng(hyper.seed);
  auto glorot = [&](std::size_t fan_in, std::size_t fan_out, std::vector<float>& w) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (auto& v : w) v = static_cast<float>((rng.next_double() * 2.0 - 1.0) * limit);
  };
  std::vector<float> w1(hidden * nv), b1(hidden, 0.0f), w2(n_labels * hidden), b2(n_labels, 0.0f);
  glorot(nv, hidden, w1);
  glorot(hidden, n_labels, w2);

  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<float> dw1(w1.size()), db1(b1.size()), dw2(w2.size()), db2(b2.size());
  std::vector<SparseCounts> batch_x;
  std::vector<std::size_t> batch_y;
  for (int epoch = 0; epoch < hyper.max_iter; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(hyper.batch)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(hyper.batch));
      batch_x.clear();
      batch_y.clear();
      for (std::size_t k = start; k < end; ++k) {
        batch_x.push_back(xs[order[k]]);
        batch_y.push_back(ys[order[k]]);
      }
      std::fill(dw1.begin(), dw1.end(), 0.0f);
      std::fill(db1.begin(), db1.end(), 0.0f);
      std::fill(dw2.begin(), dw2.end(), 0.0f);
      std::fill(db2.begin(), db2.end(), 0.0f);
      detail::mlp_batch_loss_grad(w1, b1, w2, b2, hidden, nv, n_labels, batch_x, batch_y, &dw1,
                                  &db1, &dw2, &db2);
      const float step = static_cast<float>(hyper.lr) / static_cast<float>(batch_x.size());
      for (std::size_t i = 0; i < w1.size(); ++i) w1[i] -= step * dw1[i];
      for (std::size_t i = 0; i < b1.size(); ++i) b1[i] -= step * db1[i];
      for (std::size_t i = 0; i < w2.size(); ++i) w2[i] -= step * dw2[i];
      for (std::size_t i = 0; i < b2.size(); ++i) b2[i] -= step * db2[i];
    }
  }
  return MlpModel(std::move(labels), spec, hyper, std::move(vocab), std::move(w1), std::move(b1),
                  std::move(w2), std::move(b2));
}

}  // namespace scriptlid

#endif  // SCRIPTLID_MLP_HPP
