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

#ifndef SCRIPTLID_DATASET_HPP
#define SCRIPTLID_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scriptlid/hash.hpp"
#include "scriptlid/normalize.hpp"
#include "scriptlid/rng.hpp"

namespace scriptlid {

enum class DatasetMode { kClean, kNoisy, kAll, kMerged };
enum class Split { kTrain, kTest, kUnsplit };

inline std::string to_string(DatasetMode m) {
  switch (m) {
    case DatasetMode::kClean: return "CLEAN";
    case DatasetMode::kNoisy: return "NOISY";
    case DatasetMode::kAll: return "ALL";
    case DatasetMode::kMerged: return "MERGED";
  }
  return "CLEAN";
}

inline std::string to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kTest: return "test";
    case Split::kUnsplit: return "unsplit";
  }
  return "unsplit";
}

/// A labeled sentence collection with provenance. The label of an entry is
/// its Sentence::lang.
struct Dataset {
  std::vector<Sentence> entries;
  DatasetMode mode = DatasetMode::kClean;
  int noise_level = 0;  // meaningful for kNoisy
  Split split = Split::kUnsplit;

  std::size_t size() const { return entries.size(); }

  std::set<std::string> labels() const {
    std::set<std::string> out;
    for (const auto& e : entries) out.insert(e.lang);
    return out;
  }

  std::map<std::string, std::size_t> label_counts() const {
    std::map<std::string, std::size_t> out;
    for (const auto& e : entries) ++out[e.lang];
    return out;
  }
};

// ---------------------------------------------------------------------------
// Train/test splitting

struct SplitPolicy {
  /// Default test share when no low-resource band applies.
  double test_fraction = 0.2;
  /// Low-resource bands: languages with fewer than 2000 available sentences
  /// reserve 500 for test; languages with 2001..9999 reserve 2000. Disable
  /// for plain fractional splits.
  bool low_resource_bands = true;
  /// Explicit per-language test counts override everything else.
  std::map<std::string, std::size_t> explicit_test_counts;

  static SplitPolicy plain_fraction(double fraction) {
    SplitPolicy p;
    p.test_fraction = fraction;
    p.low_resource_bands = false;
    return p;
  }
};

struct SplitResult {
  std::map<std::string, std::vector<Sentence>> train;
  std::map<std::string, std::vector<Sentence>> test;
};

namespace detail {

inline std::size_t test_count_for(const std::string& lang, std::size_t available,
                                  const SplitPolicy& policy) {
  auto it = policy.explicit_test_counts.find(lang);
  if (it != policy.explicit_test_counts.end()) {
    if (it->second >= available) {
      throw std::invalid_argument("split: explicit test count for " + lang +
                                  " leaves no training data");
    }
    return it->second;
  }
  if (policy.low_resource_bands) {
    if (available < 2000) {
      if (available <= 500) {
        throw std::invalid_argument("split: language " + lang + " has only " +
                                    std::to_string(available) +
                                    " sentences; the 500-sentence test reservation needs an "
                                    "explicit test count");
      }
      return 500;
    }
    if (available > 2000 && available <= 9999) return 2000;
  }
  return static_cast<std::size_t>(static_cast<double>(available) * policy.test_fraction);
}

}  // namespace detail

/// Splits each language's sentences into train/test. Sentences are deduped
/// by exact text first (so no string can appear on both sides), then
/// shuffled with a per-language stream derived from the seed.
inline SplitResult split_train_test(const std::map<std::string, std::vector<Sentence>>& corpus,
                                    std::uint64_t seed, const SplitPolicy& policy = {}) {
  SplitResult result;
  for (const auto& [lang, sentences] : corpus) {
    if (sentences.empty()) {
      throw std::invalid_argument("split: language " + lang + " has no sentences");
    }
    std::vector<Sentence> unique;
    unique.reserve(sentences.size());
    std::set<std::string_view> seen;
    for (const auto& s : sentences) {
      if (seen.insert(s.text).second) unique.push_back(s);
    }
    Rng rng(derive_seed(seed, fnv1a64(lang)));
    rng.shuffle(unique);
    const std::size_t t = detail::test_count_for(lang, unique.size(), policy);
    auto& test = result.test[lang];
    auto& train = result.train[lang];
    test.assign(unique.begin(), unique.begin() + static_cast<std::ptrdiff_t>(t));
    train.assign(unique.begin() + static_cast<std::ptrdiff_t>(t), unique.end());
  }
  return result;
}

// ---------------------------------------------------------------------------
// Upsampling

struct UpsampleRule {
  enum class Kind { kCoefficient, kToTarget } kind = Kind::kCoefficient;
  std::size_t value = 1;

  static UpsampleRule coefficient(std::size_t c) { return {Kind::kCoefficient, c}; }
  static UpsampleRule to_target(std::size_t n) { return {Kind::kToTarget, n}; }
};

/// coefficient(c): every sentence appears exactly c times. to_target(n):
/// the pool is repeated whole times, then topped up with a uniform sample
/// without replacement to reach exactly n.
inline std::vector<Sentence> upsample(const std::vector<Sentence>& pool, const UpsampleRule& rule,
                                      std::uint64_t seed = 0) {
  if (pool.empty()) throw std::invalid_argument("upsample: empty pool");
  std::vector<Sentence> out;
  if (rule.kind == UpsampleRule::Kind::kCoefficient) {
    if (rule.value == 0) throw std::invalid_argument("upsample: coefficient must be >= 1");
    out.reserve(pool.size() * rule.value);
    for (std::size_t rep = 0; rep < rule.value; ++rep) {
      out.insert(out.end(), pool.begin(), pool.end());
    }
    return out;
  }
  if (rule.value < pool.size()) {
    throw std::invalid_argument("upsample: target " + std::to_string(rule.value) +
                                " below pool size " + std::to_string(pool.size()));
  }
  const std::size_t whole = rule.value / pool.size();
  const std::size_t rest = rule.value % pool.size();
  out.reserve(rule.value);
  for (std::size_t rep = 0; rep < whole; ++rep) {
    out.insert(out.end(), pool.begin(), pool.end());
  }
  Rng rng(seed);
  for (std::size_t idx : rng.sample_indices(pool.size(), rest)) {
    out.push_back(pool[idx]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assembly of the CLEAN / NOISY / ALL / MERGED configurations

struct AssembleOptions {
  int noisy_level = 20;      // which NOISY(p) to return for kNoisy
  std::uint64_t seed = 0;    // drives the MERGED noisy subsample
  /// Optional reserve of extra clean sentences per conventional-only
  /// language. The MERGED tranche is drawn from here first; when the
  /// reserve runs short, clean sentences are reused.
  const std::map<std::string, std::vector<Sentence>>* reserve = nullptr;
};

/// Builds one of the four dataset configurations.
///
/// CLEAN and NOISY(p) pass the inputs through. ALL is the full union over
/// noise levels. MERGED pairs every language's clean sentences with an
/// equal number of noisy ones (drawn evenly across levels), and gives
/// conventional-only languages an extra clean tranche of the same size, so
/// every language ends at twice its clean count.
inline Dataset assemble(const Dataset& clean, const std::map<int, Dataset>& noisy,
                        DatasetMode mode, const AssembleOptions& opts = {}) {
  Dataset out;
  out.mode = mode;
  out.split = clean.split;
  switch (mode) {
    case DatasetMode::kClean:
      out = clean;
      out.mode = DatasetMode::kClean;
      return out;
    case DatasetMode::kNoisy: {
      auto it = noisy.find(opts.noisy_level);
      if (it == noisy.end()) {
        throw std::invalid_argument("assemble: missing noisy dataset for level " +
                                    std::to_string(opts.noisy_level));
      }
      out = it->second;
      out.mode = DatasetMode::kNoisy;
      out.noise_level = opts.noisy_level;
      return out;
    }
    case DatasetMode::kAll: {
      if (noisy.empty()) throw std::invalid_argument("assemble: ALL needs noisy datasets");
      for (const auto& [level, ds] : noisy) {
        (void)level;
        out.entries.insert(out.entries.end(), ds.entries.begin(), ds.entries.end());
      }
      return out;
    }
    case DatasetMode::kMerged:
      break;
  }

  if (noisy.empty()) throw std::invalid_argument("assemble: MERGED needs noisy datasets");
  out.entries = clean.entries;

  const auto clean_counts = [&] {
    std::map<std::string, std::size_t> counts;
    for (const auto& e : clean.entries) ++counts[e.lang];
    return counts;
  }();

  // Noisy side: per language, clean_count sentences spread evenly over the
  // levels, sampled without replacement inside each level.
  std::set<std::string> noisy_langs;
  {
    std::vector<int> levels;
    for (const auto& [level, ds] : noisy) {
      (void)ds;
      levels.push_back(level);
    }
    std::map<std::string, std::map<int, std::vector<const Sentence*>>> per_lang_level;
    for (const auto& [level, ds] : noisy) {
      for (const auto& e : ds.entries) per_lang_level[e.lang][level].push_back(&e);
    }
    for (auto& [lang, by_level] : per_lang_level) {
      noisy_langs.insert(lang);
      auto cit = clean_counts.find(lang);
      if (cit == clean_counts.end()) {
        throw std::invalid_argument("assemble: noisy language " + lang + " missing from clean");
      }
      const std::size_t want_total = cit->second;
      const std::size_t base = want_total / levels.size();
      std::size_t remainder = want_total % levels.size();
      for (int level : levels) {
        std::size_t want = base + (remainder > 0 ? 1 : 0);
        if (remainder > 0) --remainder;
        auto& pool = by_level[level];
        if (pool.size() < want) {
          throw std::invalid_argument("assemble: level " + std::to_string(level) +
                                      " has too few " + lang + " sentences for MERGED");
        }
        Rng rng(derive_seed(derive_seed(opts.seed, fnv1a64(lang)),
                            static_cast<std::uint64_t>(level)));
        for (std::size_t idx : rng.sample_indices(pool.size(), want)) {
          out.entries.push_back(*pool[idx]);
        }
      }
    }
  }

  // Conventional-only side: an extra clean tranche of clean_count sentences
  // per language, disjoint from CLEAN when a reserve provides enough.
  for (const auto& [lang, count] : clean_counts) {
    if (noisy_langs.count(lang) != 0) continue;
    std::vector<const Sentence*> reserve_pool;
    if (opts.reserve != nullptr) {
      auto rit = opts.reserve->find(lang);
      if (rit != opts.reserve->end()) {
        for (const auto& s : rit->second) reserve_pool.push_back(&s);
      }
    }
    std::size_t need = count;
    for (const Sentence* s : reserve_pool) {
      if (need == 0) break;
      out.entries.push_back(*s);
      --need;
    }
    if (need > 0) {
      // Reserve exhausted: reuse clean sentences, cycling deterministically.
      std::vector<const Sentence*> own;
      for (const auto& e : clean.entries) {
        if (e.lang == lang) own.push_back(&e);
      }
      for (std::size_t i = 0; need > 0; ++i, --need) {
        out.entries.push_back(*own[i % own.size()]);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest and TSV I/O

struct DatasetManifest {
  struct Row {
    std::string lang;
    std::string split;
    int level = 0;
    std::size_t count = 0;
  };
  std::vector<Row> rows;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> source_digests;

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& r : rows) t += r.count;
    return t;
  }
};

inline DatasetManifest build_manifest(const Dataset& ds, std::uint64_t seed) {
  std::map<std::pair<std::string, int>, std::size_t> counts;
  for (const auto& e : ds.entries) ++counts[{e.lang, e.noise_level}];
  DatasetManifest m;
  m.seed = seed;
  for (const auto& [key, count] : counts) {
    m.rows.push_back({key.first, to_string(ds.split), key.second, count});
  }
  return m;
}

inline void write_dataset_tsv(const Dataset& ds, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write dataset file " + file.string());
  for (const auto& e : ds.entries) {
    out << e.lang << '\t' << e.noise_level << '\t' << e.text << '\n';
  }
  if (!out) throw std::runtime_error("failed writing dataset file " + file.string());
}

inline Dataset read_dataset_tsv(const std::filesystem::path& file,
                                DatasetMode mode = DatasetMode::kClean,
                                Split split = Split::kUnsplit) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open dataset file " + file.string());
  Dataset ds;
  ds.mode = mode;
  ds.split = split;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                               ": expected label<TAB>level<TAB>text");
    }
    Sentence s;
    s.lang = line.substr(0, t1);
    s.noise_level = std::stoi(line.substr(t1 + 1, t2 - t1 - 1));
    s.text = line.substr(t2 + 1);
    s.origin = s.noise_level == 0 ? Origin::kCorpus : Origin::kSynthetic;
    ds.entries.push_back(std::move(s));
  }
  return ds;
}

inline void write_manifest_tsv(const DatasetManifest& m, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write manifest file " + file.string());
  out << "# seed\t" << m.seed << '\n';
  for (const auto& [name, digest] : m.source_digests) {
    out << "# source\t" << name << '\t' << digest << '\n';
  }
  out << "lang\tsplit\tlevel\tcount\n";
  for (const auto& r : m.rows) {
    out << r.lang << '\t' << r.split << '\t' << r.level << '\t' << r.count << '\n';
  }
}

/// Sentences whose exact text occurs in both train and test. Must be empty
/// for every emitted configuration; checked before upsampling.
inline std::vector<std::string> split_leakage(const std::vector<Sentence>& train,
                                              const std::vector<Sentence>& test) {
  std::set<std::string_view> train_texts;
  for (const auto& s : train) train_texts.insert(s.text);
  std::set<std::string_view> seen;
  std::vector<std::string> leaked;
  for (const auto& s : test) {
    if (train_texts.count(s.text) != 0 && seen.insert(s.text).second) {
      leaked.emplace_back(s.text);
    }
  }
  return leaked;
}

}  // namespace scriptlid

#endif  // SCRIPTLID_DATASET_HPP
