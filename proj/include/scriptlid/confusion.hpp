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

#ifndef SCRIPTLID_CONFUSION_HPP
#define SCRIPTLID_CONFUSION_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scriptlid/classifier.hpp"
#include "scriptlid/dataset.hpp"

namespace scriptlid {

/// Square confusion matrix; rows index predictions, columns index true
/// labels, so a column sum is that class's sample count.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> counts;  // row-major, labels.size()^2

  std::uint64_t& at(std::size_t pred, std::size_t truth) {
    return counts[pred * labels.size() + truth];
  }
  std::uint64_t at(std::size_t pred, std::size_t truth) const {
    return counts[pred * labels.size() + truth];
  }

  std::uint64_t column_sum(std::size_t truth) const {
    std::uint64_t s = 0;
    for (std::size_t p = 0; p < labels.size(); ++p) s += at(p, truth);
    return s;
  }

  std::uint64_t total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  }
};

/// Runs the model over the dataset and tallies (prediction, true label)
/// pairs. Every entry's label must be in the model's label set.
inline ConfusionMatrix build_confusion(const Classifier& model, const Dataset& data) {
  ConfusionMatrix cm;
  cm.labels = model.labels();
  cm.counts.assign(cm.labels.size() * cm.labels.size(), 0);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < cm.labels.size(); ++i) index[cm.labels[i]] = i;
  for (const auto& e : data.entries) {
    auto it = index.find(e.lang);
    if (it == index.end()) {
      throw std::invalid_argument("build_confusion: label '" + e.lang +
                                  "' outside the model's label set");
    }
    const auto pred = model.predict(e.text);
    cm.at(index.at(pred.label), it->second) += 1;
  }
  return cm;
}

/// Disjoint groups of mutually-confused labels (each of size >= 2) plus the
/// labels left out of every group.
struct ClusterSet {
  std::vector<std::vector<std::string>> clusters;  // each sorted; list sorted by first member
  std::vector<std::string> unclustered;            // sorted

  bool empty() const { return clusters.empty(); }

  /// Index of the cluster containing the label, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t cluster_of(const std::string& label) const {
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (std::find(clusters[i].begin(), clusters[i].end(), label) != clusters[i].end()) return i;
    }
    return npos;
  }

  void validate_partition(const std::vector<std::string>& universe) const {
    std::set<std::string> seen;
    for (const auto& c : clusters) {
      if (c.size() < 2) throw std::invalid_argument("cluster of size < 2");
      for (const auto& l : c) {
        if (!seen.insert(l).second) throw std::invalid_argument("label '" + l + "' in two clusters");
      }
    }
    for (const auto& l : unclustered) {
      if (!seen.insert(l).second) throw std::invalid_argument("label '" + l + "' duplicated");
    }
    std::set<std::string> uni(universe.begin(), universe.end());
    if (seen != uni) throw std::invalid_argument("clusters do not partition the label universe");
  }
};

/// Pairwise confusion rate: the larger of the two column-normalized
/// off-diagonal counts between a and b.
inline double confusion_rate(const ConfusionMatrix& cm, std::size_t a, std::size_t b,
                             const std::vector<std::uint64_t>& colsums) {
  const double r1 = static_cast<double>(cm.at(a, b)) / static_cast<double>(colsums[b]);
  const double r2 = static_cast<double>(cm.at(b, a)) / static_cast<double>(colsums[a]);
  return std::max(r1, r2);
}

/// Thresholds the pairwise confusion rates at tau and returns the connected
/// components of size >= 2 as clusters. Invariant to uniform scaling of the
/// counts; monotone in tau (raising tau never merges components).
inline ClusterSet detect_clusters(const ConfusionMatrix& cm, double tau) {
  const std::size_t n = cm.labels.size();
  std::vector<std::uint64_t> colsums(n);
  for (std::size_t t = 0; t < n; ++t) {
    colsums[t] = cm.column_sum(t);
    if (colsums[t] == 0) {
      throw std::invalid_argument("detect_clusters: class '" + cm.labels[t] +
                                  "' has no samples");
    }
  }
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (confusion_rate(cm, a, b, colsums) >= tau) {
        parent[find(a)] = find(b);
      }
    }
  }
  std::map<std::size_t, std::vector<std::string>> comps;
  for (std::size_t i = 0; i < n; ++i) comps[find(i)].push_back(cm.labels[i]);
  ClusterSet out;
  for (auto& [root, members] : comps) {
    (void)root;
    std::sort(members.begin(), members.end());
    if (members.size() >= 2) {
      out.clusters.push_back(std::move(members));
    } else {
      out.unclustered.push_back(members.front());
    }
  }
  std::sort(out.clusters.begin(), out.clusters.end());
  std::sort(out.unclustered.begin(), out.unclustered.end());
  return out;
}

// ---------------------------------------------------------------------------
// File formats

/// Confusion matrix TSV: first data line lists the labels (columns = true
/// labels); each following line is a predicted label followed by its counts.
inline ConfusionMatrix read_confusion_tsv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open confusion matrix " + file.string());
  ConfusionMatrix cm;
  std::string line;
  int lineno = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    if (cm.labels.empty()) {
      std::string tok;
      while (ss >> tok) cm.labels.push_back(tok);
      if (cm.labels.empty()) throw std::runtime_error(file.string() + ": empty label header");
      cm.counts.assign(cm.labels.size() * cm.labels.size(), 0);
      continue;
    }
    if (row >= cm.labels.size()) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": too many rows");
    }
    std::string row_label;
    ss >> row_label;
    if (row_label != cm.labels[row]) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": row label '" + row_label + "' out of order");
    }
    for (std::size_t t = 0; t < cm.labels.size(); ++t) {
      std::uint64_t v;
      if (!(ss >> v)) {
        throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                 ": expected " + std::to_string(cm.labels.size()) + " counts");
      }
      cm.at(row, t) = v;
    }
    ++row;
  }
  if (row != cm.labels.size()) {
    throw std::runtime_error(file.string() + ": expected " + std::to_string(cm.labels.size()) +
                             " rows, got " + std::to_string(row));
  }
  return cm;
}

inline void write_confusion_tsv(const ConfusionMatrix& cm, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write confusion matrix " + file.string());
  for (std::size_t i = 0; i < cm.labels.size(); ++i) {
    out << (i == 0 ? "" : "\t") << cm.labels[i];
  }
  out << '\n';
  for (std::size_t p = 0; p < cm.labels.size(); ++p) {
    out << cm.labels[p];
    for (std::size_t t = 0; t < cm.labels.size(); ++t) out << '\t' << cm.at(p, t);
    out << '\n';
  }
}

/// Cluster config: one cluster per line as comma-separated ISO codes;
/// '#' comments. Labels absent from every line are unclustered.
inline ClusterSet read_clusters(const std::filesystem::path& file,
                                const std::vector<std::string>& universe) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open cluster config " + file.string());
  ClusterSet cs;
  std::set<std::string> used;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> members;
    std::string tok;
    std::istringstream ss(line);
    while (std::getline(ss, tok, ',')) {
      // trim
      const auto b = tok.find_first_not_of(" \t\r");
      const auto e = tok.find_last_not_of(" \t\r");
      if (b == std::string::npos) continue;
      members.push_back(tok.substr(b, e - b + 1));
    }
    if (members.empty()) continue;
    if (members.size() < 2) {
      throw std::runtime_error(file.string() + ": cluster needs at least two labels");
    }
    std::sort(members.begin(), members.end());
    for (const auto& m : members) used.insert(m);
    cs.clusters.push_back(std::move(members));
  }
  std::sort(cs.clusters.begin(), cs.clusters.end());
  for (const auto& l : universe) {
    if (used.count(l) == 0) cs.unclustered.push_back(l);
  }
  std::sort(cs.unclustered.begin(), cs.unclustered.end());
  cs.validate_partition(universe);
  return cs;
}

inline void write_clusters(const ClusterSet& cs, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write cluster config " + file.string());
  for (const auto& c : cs.clusters) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i == 0 ? "" : ",") << c[i];
    out << '\n';
  }
}

}  // namespace scriptlid

#endif  // SCRIPTLID_CONFUSION_HPP
