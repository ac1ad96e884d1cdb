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

#ifndef SCRIPTLID_HIER_HPP
#define SCRIPTLID_HIER_HPP

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptlid/classifier.hpp"
#include "scriptlid/confusion.hpp"
#include "scriptlid/dataset.hpp"
#include "scriptlid/linear.hpp"
#include "scriptlid/mlp.hpp"
#include "scriptlid/mnb.hpp"
#include "scriptlid/rng.hpp"

namespace scriptlid {

/// Which classifier family to train, with its hyperparameters.
struct TrainConfig {
  ModelKind kind = ModelKind::kSubwordLinear;
  SubwordHyper subword;
  MlpHyper mlp;
  NgramSpec count_ngrams{2, 4, false, std::nullopt};  // for MNB and MLP features
  std::uint64_t seed = 0;

  TrainConfig with_seed(std::uint64_t s) const {
    TrainConfig c = *this;
    c.seed = s;
    c.subword.seed = s;
    c.mlp.seed = s;
    return c;
  }
};

inline std::shared_ptr<Classifier> train_classifier(const Dataset& train,
                                                    const TrainConfig& config) {
  switch (config.kind) {
    case ModelKind::kMnb:
      return std::make_shared<MnbModel>(train_mnb(train, config.count_ngrams));
    case ModelKind::kMlp:
      return std::make_shared<MlpModel>(train_mlp(train, config.mlp, config.count_ngrams));
    case ModelKind::kSubwordLinear:
      return std::make_shared<SubwordLinearModel>(train_subword_linear(train, config.subword));
    case ModelKind::kHierarchical:
      break;
  }
  throw std::invalid_argument("train_classifier: hierarchical models are trained via "
                              "train_hierarchical");
}

/// Root classifier over every label plus one expert per confused cluster,
/// trained only on that cluster's labels. If the root predicts a clustered
/// label, the routed expert's prediction is final; otherwise the root's is.
class HierarchicalModel final : public Classifier {
 public:
  HierarchicalModel(std::shared_ptr<const Classifier> root,
                    std::vector<std::shared_ptr<const Classifier>> experts, ClusterSet clusters)
      : root_(std::move(root)), experts_(std::move(experts)), clusters_(std::move(clusters)) {
    if (experts_.size() != clusters_.clusters.size()) {
      throw std::invalid_argument("hierarchical model: one expert per cluster required");
    }
    for (std::size_t i = 0; i < experts_.size(); ++i) {
      if (experts_[i]->labels() != clusters_.clusters[i]) {
        throw std::invalid_argument("hierarchical model: expert " + std::to_string(i) +
                                    " labels differ from its cluster");
      }
      for (const auto& l : clusters_.clusters[i]) routing_[l] = i;
    }
  }

  ModelKind kind() const override { return ModelKind::kHierarchical; }
  const std::vector<std::string>& labels() const override { return root_->labels(); }
  const Classifier& root() const { return *root_; }
  const ClusterSet& clusters() const { return clusters_; }
  std::size_t expert_count() const { return experts_.size(); }
  const Classifier& expert(std::size_t i) const { return *experts_[i]; }
  std::shared_ptr<const Classifier> root_ptr() const { return root_; }
  std::shared_ptr<const Classifier> expert_ptr(std::size_t i) const { return experts_[i]; }

  /// Cluster index for a label, or ClusterSet::npos when unclustered.
  std::size_t route(const std::string& label) const {
    auto it = routing_.find(label);
    return it == routing_.end() ? ClusterSet::npos : it->second;
  }

  std::vector<double> predict_proba(std::string_view text) const override {
    const auto root_pred = root_->predict(text);
    const std::size_t cluster = route(root_pred.label);
    if (cluster == ClusterSet::npos) return root_->predict_proba(text);
    const auto& expert = *experts_[cluster];
    const auto expert_proba = expert.predict_proba(text);
    // Expand the expert's distribution over the full label universe.
    const auto& all = root_->labels();
    std::vector<double> out(all.size(), 0.0);
    for (std::size_t i = 0; i < expert.labels().size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (all[j] == expert.labels()[i]) {
          out[j] = expert_proba[i];
          break;
        }
      }
    }
    return out;
  }

  void save(std::ostream& out) const override;  // defined in model_io.hpp

 private:
  std::shared_ptr<const Classifier> root_;
  std::vector<std::shared_ptr<const Classifier>> experts_;
  ClusterSet clusters_;
  std::map<std::string, std::size_t> routing_;
};

/// Trains the root (unless a pre-trained one is supplied) and one expert per
/// cluster on that cluster's subset of the training data, all with the same
/// configuration. Expert seeds are derived from the config seed and the
/// cluster index.
inline std::shared_ptr<HierarchicalModel> train_hierarchical(
    const Dataset& train, const ClusterSet& clusters, const TrainConfig& config,
    std::shared_ptr<const Classifier> pretrained_root = nullptr) {
  const auto train_labels = train.labels();
  for (const auto& cluster : clusters.clusters) {
    for (const auto& l : cluster) {
      if (train_labels.count(l) == 0) {
        throw std::invalid_argument("train_hierarchical: cluster label '" + l +
                                    "' absent from training data");
      }
    }
  }
  std::shared_ptr<const Classifier> root = std::move(pretrained_root);
  if (root == nullptr) root = train_classifier(train, config);

  std::vector<std::shared_ptr<const Classifier>> experts;
  for (std::size_t i = 0; i < clusters.clusters.size(); ++i) {
    const std::set<std::string> members(clusters.clusters[i].begin(),
                                        clusters.clusters[i].end());
    Dataset subset;
    subset.mode = train.mode;
    subset.split = train.split;
    for (const auto& e : train.entries) {
      if (members.count(e.lang) != 0) subset.entries.push_back(e);
    }
    const auto expert_config = config.with_seed(derive_seed(config.seed, i + 1));
    experts.push_back(train_classifier(subset, expert_config));
  }
  return std::make_shared<HierarchicalModel>(root, std::move(experts), clusters);
}

}  // namespace scriptlid

#endif  // SCRIPTLID_HIER_HPP
