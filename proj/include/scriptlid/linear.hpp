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

#ifndef SCRIPTLID_LINEAR_HPP
#define SCRIPTLID_LINEAR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptlid/classifier.hpp"
#include "scriptlid/dataset.hpp"
#include "scriptlid/ngram.hpp"
#include "scriptlid/rng.hpp"

namespace scriptlid {

/// Hyperparameters of the subword linear classifier: bag of hashed character
/// n-grams, averaged feature embeddings, linear layer, softmax loss, SGD
/// with a linearly decaying learning rate.
struct SubwordHyper {
  int dim = 64;
  NgramSpec ngrams{2, 6, /*word_boundaries=*/true, /*hash_buckets=*/2'000'000u};
  double lr = 1.0;
  int epochs = 25;
  std::uint64_t seed = 0;

  void validate() const {
    ngrams.validate();
    if (!ngrams.hash_buckets.has_value()) {
      throw std::invalid_argument("subword model needs ngrams.hash_buckets");
    }
    if (dim <= 0 || epochs <= 0 || lr <= 0.0) {
      throw std::invalid_argument("subword hyperparameters must be positive");
    }
  }
};

namespace detail {

template <typename Scalar>
inline void stable_softmax(std::vector<Scalar>& logits) {
  Scalar mx = logits[0];
  for (Scalar v : logits) mx = std::max(mx, v);
  Scalar z = 0;
  for (Scalar& v : logits) {
    v = std::exp(v - mx);
    z += v;
  }
  for (Scalar& v : logits) v /= z;
}

/// Forward pass shared by training, prediction and the finite-difference
/// checks: h = mean of the feature embeddings, p = softmax(W h + b).
template <typename Scalar>
inline void subword_forward(const std::vector<Scalar>& emb, const std::vector<Scalar>& w,
                            const std::vector<Scalar>& b, std::size_t dim,
                            std::size_t n_labels, const std::vector<std::uint32_t>& ids,
                            std::vector<Scalar>& h, std::vector<Scalar>& p) {
  h.assign(dim, Scalar{0});
  if (!ids.empty()) {
    for (std::uint32_t id : ids) {
      const Scalar* row = emb.data() + static_cast<std::size_t>(id) * dim;
      for (std::size_t j = 0; j < dim; ++j) h[j] += row[j];
    }
    const Scalar inv = Scalar{1} / static_cast<Scalar>(ids.size());
    for (std::size_t j = 0; j < dim; ++j) h[j] *= inv;
  }
  p.assign(n_labels, Scalar{0});
  for (std::size_t c = 0; c < n_labels; ++c) {
    Scalar acc = b[c];
    const Scalar* row = w.data() + c * dim;
    for (std::size_t j = 0; j < dim; ++j) acc += row[j] * h[j];
    p[c] = acc;
  }
  stable_softmax(p);
}

/// Turns p into dlogits (p[label] -= 1) and computes dh = W^T dlogits.
/// Must run before W is updated.
template <typename Scalar>
inline void subword_backward_head(const std::vector<Scalar>& w, std::size_t dim,
                                  std::size_t n_labels, std::size_t label,
                                  std::vector<Scalar>& p, std::vector<Scalar>& dh) {
  p[label] -= Scalar{1};
  dh.assign(dim, Scalar{0});
  for (std::size_t c = 0; c < n_labels; ++c) {
    const Scalar g = p[c];
    const Scalar* row = w.data() + c * dim;
    for (std::size_t j = 0; j < dim; ++j) dh[j] += g * row[j];
  }
}

/// Summed cross-entropy loss over a batch; optionally accumulates analytic
/// gradients. This is the exact math the SGD loop applies, factored out so
/// tests can finite-difference it.
template <typename Scalar>
inline Scalar subword_batch_loss_grad(const std::vector<Scalar>& emb,
                                      const std::vector<Scalar>& w, const std::vector<Scalar>& b,
                                      std::size_t dim, std::size_t n_labels,
                                      const std::vector<std::vector<std::uint32_t>>& batch_ids,
                                      const std::vector<std::size_t>& batch_labels,
                                      std::vector<Scalar>* demb, std::vector<Scalar>* dw,
                                      std::vector<Scalar>* db) {
  Scalar loss = 0;
  std::vector<Scalar> h, p, dh;
  for (std::size_t e = 0; e < batch_ids.size(); ++e) {
    const auto& ids = batch_ids[e];
    const std::size_t y = batch_labels[e];
    subword_forward(emb, w, b, dim, n_labels, ids, h, p);
    loss -= std::log(std::max(p[y], Scalar(1e-300)));
    if (demb == nullptr) continue;
    subword_backward_head(w, dim, n_labels, y, p, dh);
    for (std::size_t c = 0; c < n_labels; ++c) {
      const Scalar g = p[c];
      Scalar* dwrow = dw->data() + c * dim;
      for (std::size_t j = 0; j < dim; ++j) dwrow[j] += g * h[j];
      (*db)[c] += g;
    }
    if (!ids.empty()) {
      const Scalar inv = Scalar{1} / static_cast<Scalar>(ids.size());
      for (std::uint32_t id : ids) {
        Scalar* row = demb->data() + static_cast<std::size_t>(id) * dim;
        for (std::size_t j = 0; j < dim; ++j) row[j] += dh[j] * inv;
      }
    }
  }
  return loss;
}

}  // namespace detail

class SubwordLinearModel final : public Classifier {
 public:
  SubwordLinearModel(std::vector<std::string> labels, SubwordHyper hyper,
                     std::vector<float> embeddings, std::vector<float> w, std::vector<float> b)
      : labels_(std::move(labels)),
        hyper_(std::move(hyper)),
        embeddings_(std::move(embeddings)),
        w_(std::move(w)),
        b_(std::move(b)) {}

  ModelKind kind() const override { return ModelKind::kSubwordLinear; }
  const std::vector<std::string>& labels() const override { return labels_; }
  const SubwordHyper& hyper() const { return hyper_; }
  const std::vector<float>& embeddings() const { return embeddings_; }
  const std::vector<float>& output_weights() const { return w_; }
  const std::vector<float>& output_bias() const { return b_; }

  std::vector<double> predict_proba(std::string_view text) const override {
    const auto ids = extract_hashed_ngrams(text, hyper_.ngrams);
    const std::size_t dim = static_cast<std::size_t>(hyper_.dim);
    const std::size_t n_labels = labels_.size();
    std::vector<double> h(dim, 0.0);
    if (!ids.empty()) {
      for (std::uint32_t id : ids) {
        const float* row = embeddings_.data() + static_cast<std::size_t>(id) * dim;
        for (std::size_t j = 0; j < dim; ++j) h[j] += static_cast<double>(row[j]);
      }
      for (std::size_t j = 0; j < dim; ++j) h[j] /= static_cast<double>(ids.size());
    }
    std::vector<double> logits(n_labels, 0.0);
    for (std::size_t c = 0; c < n_labels; ++c) {
      double acc = static_cast<double>(b_[c]);
      const float* row = w_.data() + c * dim;
      for (std::size_t j = 0; j < dim; ++j) acc += static_cast<double>(row[j]) * h[j];
      logits[c] = acc;
    }
    detail::stable_softmax(logits);
    return logits;
  }

  void save(std::ostream& out) const override;  // defined in model_io.hpp

 private:
  std::vector<std::string> labels_;
  SubwordHyper hyper_;
  std::vector<float> embeddings_;  // buckets x dim
  std::vector<float> w_;           // labels x dim
  std::vector<float> b_;           // labels
};

/// Trains the subword linear classifier with plain SGD (one example per
/// update, shuffled each epoch, learning rate decaying linearly to zero).
/// Deterministic for a fixed hyper.seed.
inline SubwordLinearModel train_subword_linear(const Dataset& train, const SubwordHyper& hyper) {
  hyper.validate();
  if (train.entries.empty()) throw std::invalid_argument("train_subword_linear: empty dataset");
  std::vector<std::string> labels;
  {
    auto set = train.labels();
    labels.assign(set.begin(), set.end());
  }
  if (labels.size() < 2) {
    throw std::invalid_argument("train_subword_linear: need at least two labels");
  }
  std::map<std::string, std::size_t> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) label_index[labels[i]] = i;

  const std::size_t dim = static_cast<std::size_t>(hyper.dim);
  const std::size_t n_labels = labels.size();
  const std::size_t buckets = *hyper.ngrams.hash_buckets;

  std::vector<std::vector<std::uint32_t>> ids(train.entries.size());
  std::vector<std::size_t> ys(train.entries.size());
  for (std::size_t i = 0; i < train.entries.size(); ++i) {
    ids[i] = extract_hashed_ngrams(train.entries[i].text, hyper.ngrams);
    ys[i] = label_index.at(train.entries[i].lang);
  }

  Rng rng(hyper.seed);
  std::vector<float> emb(buckets * dim);
  const double span = 1.0 / static_cast<double>(dim);
  for (auto& v : emb) v = static_cast<float>((rng.next_double() * 2.0 - 1.0) * span);
  std::vector<float> w(n_labels * dim, 0.0f);
  std::vector<float> b(n_labels, 0.0f);

  const std::size_t total_updates = static_cast<std::size_t>(hyper.epochs) * ids.size();
  std::size_t t = 0;
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<float> h, p, dh;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const float lr = static_cast<float>(
          hyper.lr * (1.0 - static_cast<double>(t) / static_cast<double>(total_updates)));
      ++t;
      const auto& x = ids[idx];
      const std::size_t y = ys[idx];
      detail::subword_forward(emb, w, b, dim, n_labels, x, h, p);
      detail::subword_backward_head(w, dim, n_labels, y, p, dh);
      // p now holds dlogits; apply the SGD step.
      for (std::size_t c = 0; c < n_labels; ++c) {
        const float g = lr * p[c];
        float* wrow = w.data() + c * dim;
        for (std::size_t j = 0; j < dim; ++j) wrow[j] -= g * h[j];
        b[c] -= g;
      }
      if (!x.empty()) {
        const float scale = lr / static_cast<float>(x.size());
        for (std::uint32_t id : x) {
          float* row = emb.data() + static_cast<std::size_t>(id) * dim;
          for (std::size_t j = 0; j < dim; ++j) row[j] -= scale * dh[j];
        }
      }
    }
  }
  return SubwordLinearModel(std::move(labels), hyper, std::move(emb), std::move(w), std::move(b));
}

}  // namespace scriptlid

#endif  // SCRIPTLID_LINEAR_HPP
